"""Objective functions an agent can score candidate allocations with."""

from __future__ import annotations

import enum

import numpy as np

# Uniform floor inside the proportional-fairness logarithm so zero rewards
# stay finite without reordering positive ones.
LOG_FLOOR = 1e-9


class ObjectiveKind(str, enum.Enum):
    INTRINSIC = "intrinsic"
    SUM = "sum"
    MAXMIN = "maxmin"
    PROPORTIONAL_FAIR = "proportional_fair"


def evaluate(kind, rewards: np.ndarray, self_index: int = 0) -> float:
    """Score one reward vector under the given objective."""
    return float(evaluate_batch(kind, np.asarray(rewards, float)[None, :], self_index)[0])


def evaluate_batch(kind, rewards: np.ndarray, self_index: int = 0) -> np.ndarray:
    """Score each row of a (candidates, users) reward matrix."""
    kind = ObjectiveKind(kind)
    rewards = np.asarray(rewards, dtype=float)
    if kind is ObjectiveKind.INTRINSIC:
        return rewards[:, self_index].copy()
    if kind is ObjectiveKind.SUM:
        return rewards.sum(axis=1)
    if kind is ObjectiveKind.MAXMIN:
        return rewards.min(axis=1)
    return np.log(rewards + LOG_FLOOR).sum(axis=1)
