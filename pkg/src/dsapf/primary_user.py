"""Licensed (primary) user activity: per-slot band availability."""

from __future__ import annotations

import numpy as np

from .system import RngStream


def sample_availability(pu_busy_prob: float, n_bands: int, rng: RngStream) -> np.ndarray:
    """Boolean availability vector; True where the band owner is idle.

    Each band is busy independently with probability ``pu_busy_prob`` each
    slot.  The edge cases are exact: probability 0 frees every band,
    probability 1 blocks every band.
    """
    if not 0.0 <= pu_busy_prob <= 1.0:
        raise ValueError("pu_busy_prob must be in [0, 1]")
    return rng.generator().random(n_bands) >= pu_busy_prob


def occupancy(availability: np.ndarray) -> float:
    """Fraction of bands the licensed owners occupy this slot."""
    availability = np.asarray(availability, dtype=bool)
    return float(1.0 - availability.mean())
