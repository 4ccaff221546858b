"""Scenario configuration, validation, unit conversions, and the
deterministic random-substream contract shared by every other module."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

OBJECTIVE_NAMES = ("intrinsic", "sum", "maxmin", "proportional_fair")


class ConfigError(ValueError):
    """A scenario parameter violates its documented range."""


def dbm_to_watt(dbm: float) -> float:
    """Convert a dBm power level to linear watts."""
    return 10.0 ** (dbm / 10.0) * 1e-3


def watt_to_dbm(watt: float) -> float:
    """Convert linear watts back to dBm."""
    if watt <= 0.0:
        raise ValueError("watt must be > 0")
    return 10.0 * math.log10(watt * 1e3)


@dataclass(frozen=True)
class SystemConfig:
    """Full description of one simulated scenario.

    Power-like quantities are configured in dBm (per-Hz for the noise
    density) and converted to linear watts exactly once, by ``validate``.
    """

    n_users: int = 200              # transmitter-receiver pairs contending for spectrum
    n_bands: int = 15               # licensed bands
    max_bands_per_user: int = 1     # bands a user may occupy simultaneously
    n_particles: int = 10           # particles per agent filter
    bandwidth_hz: float = 1e6       # bandwidth of each band [Hz]
    p_total_max_dbm: float = 3.0    # per-user total transmit power budget [dBm]
    p_band_max_dbm: float = 3.0     # per-band transmit power cap [dBm]
    noise_psd_dbm_hz: float = -100.0  # noise power spectral density [dBm/Hz]
    beta: float = 0.5               # reward decay below the rate threshold
    rate_threshold_range_bps: tuple[float, float] = (0.0, 1e4)  # per-user demand draw
    path_loss_exponent: float = 3.0
    reference_distance_m: float = 1.0
    direct_gain_advantage_db: float = 3.0  # mean direct gain over mean cross gain
    ar_order: int = 1               # autoregressive fading model order
    doppler_coherence_product: float = 0.05  # doppler frequency x slot duration
    pu_busy_prob: float = 0.0       # per-band chance the licensed owner is active
    objective: str = "sum"          # intrinsic | sum | maxmin | proportional_fair
    likelihood_sigma_frac: float = 0.25  # reward-likelihood width vs. running mean
    mutation_prob: float = 0.2      # per-band particle mutation probability
    ess_threshold_frac: float = 0.5  # resample when ESS drops below this x n_particles
    n_slots: int = 20               # simulated time slots
    seed: int = 0                   # root seed; one seed == one trajectory


@dataclass(frozen=True)
class ValidatedConfig:
    """A checked ``SystemConfig`` plus cached linear-unit derivations.

    Scenario fields are reachable directly (``vcfg.n_users``); derived
    quantities are stored once so hot loops never re-convert units.
    """

    base: SystemConfig
    p_total_max_w: float
    p_band_max_w: float
    noise_psd_w_hz: float
    noise_band_w: float

    def __getattr__(self, name: str):
        return getattr(object.__getattribute__(self, "base"), name)


def validate(config: SystemConfig) -> ValidatedConfig:
    """Check every invariant and cache the linear-unit conversions.

    Raises ``ConfigError`` naming the first offending field.
    """

    c = config

    def fail(msg: str) -> None:
        raise ConfigError(msg)

    if not isinstance(c.n_users, int) or c.n_users < 1:
        fail("n_users must be an integer >= 1")
    if not isinstance(c.n_bands, int) or c.n_bands < 1:
        fail("n_bands must be an integer >= 1")
    if not isinstance(c.max_bands_per_user, int) or c.max_bands_per_user < 1:
        fail("max_bands_per_user must be an integer >= 1")
    if c.max_bands_per_user > c.n_bands:
        fail("max_bands_per_user exceeds n_bands")
    if not isinstance(c.n_particles, int) or c.n_particles < 1:
        fail("n_particles must be an integer >= 1")
    if not c.bandwidth_hz > 0.0:
        fail("bandwidth_hz must be > 0")
    if not math.isfinite(c.p_total_max_dbm):
        fail("p_total_max_dbm must be finite")
    if not math.isfinite(c.p_band_max_dbm):
        fail("p_band_max_dbm must be finite")
    if not math.isfinite(c.noise_psd_dbm_hz):
        fail("noise_psd_dbm_hz must be finite")
    if c.beta < 0.0:
        fail("beta must be >= 0")
    lo, hi = c.rate_threshold_range_bps
    if lo < 0.0 or hi < lo:
        fail("rate_threshold_range_bps must satisfy 0 <= low <= high")
    if not c.path_loss_exponent > 0.0:
        fail("path_loss_exponent must be > 0")
    if not c.reference_distance_m > 0.0:
        fail("reference_distance_m must be > 0")
    if c.direct_gain_advantage_db < 0.0:
        fail("direct_gain_advantage_db must be >= 0")
    if not isinstance(c.ar_order, int) or c.ar_order < 1:
        fail("ar_order must be an integer >= 1")
    if c.doppler_coherence_product < 0.0:
        fail("doppler_coherence_product must be >= 0")
    if not 0.0 <= c.pu_busy_prob <= 1.0:
        fail("pu_busy_prob must be in [0, 1]")
    if c.objective not in OBJECTIVE_NAMES:
        fail("objective must be one of " + ", ".join(OBJECTIVE_NAMES))
    if not c.likelihood_sigma_frac > 0.0:
        fail("likelihood_sigma_frac must be > 0")
    if not 0.0 <= c.mutation_prob <= 1.0:
        fail("mutation_prob must be in [0, 1]")
    if not 0.0 < c.ess_threshold_frac <= 1.0:
        fail("ess_threshold_frac must be in (0, 1]")
    if not isinstance(c.n_slots, int) or c.n_slots < 1:
        fail("n_slots must be an integer >= 1")
    if not isinstance(c.seed, int) or not 0 <= c.seed < 2**64:
        fail("seed must be an integer in [0, 2**64)")

    noise_psd_w = dbm_to_watt(c.noise_psd_dbm_hz)
    return ValidatedConfig(
        base=c,
        p_total_max_w=dbm_to_watt(c.p_total_max_dbm),
        p_band_max_w=dbm_to_watt(c.p_band_max_dbm),
        noise_psd_w_hz=noise_psd_w,
        noise_band_w=noise_psd_w * c.bandwidth_hz,
    )


# ---------------------------------------------------------------------------
# Deterministic substreams
# ---------------------------------------------------------------------------

class Domain(enum.IntEnum):
    """Namespace tags keeping every draw site on its own substream."""

    GEOMETRY = 1
    THRESHOLDS = 2
    CHANNEL_INIT = 3
    CHANNEL_BURNIN = 4
    CHANNEL_STEP = 5
    AVAILABILITY = 6
    PARTICLE_INIT = 7
    PARTICLE_PREDICT = 8
    PARTICLE_RESAMPLE = 9


@dataclass(frozen=True)
class RngStream:
    """Seeded, splittable random stream.

    A stream is identified by the root seed plus a tuple of integer tags;
    equal (seed, path) pairs always reproduce identical draws, and distinct
    paths are statistically independent.  Backed by the counter-based
    Philox generator.
    """

    seed: int
    path: tuple[int, ...] = ()

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self.path)
        return np.random.Generator(np.random.Philox(seq))


def derive_substream(stream: RngStream, tag) -> RngStream:
    """Child stream of ``stream`` for the given tag (ints or int-enums)."""
    if isinstance(tag, (int, np.integer, enum.IntEnum)):
        tag = (tag,)
    return RngStream(stream.seed, stream.path + tuple(int(t) for t in tag))


# ---------------------------------------------------------------------------
# Allocation / power invariants
# ---------------------------------------------------------------------------

def validate_allocation(alloc: np.ndarray, availability: np.ndarray,
                        max_bands_per_user: int) -> None:
    """Raise if any user occupies a busy band or exceeds its band budget."""
    if alloc.dtype != bool:
        raise ValueError("allocation matrix must be boolean")
    if np.any(alloc & ~availability[None, :]):
        raise ValueError("allocation uses a band the licensed owner occupies")
    if np.any(alloc.sum(axis=1) > max_bands_per_user):
        raise ValueError("allocation exceeds max_bands_per_user")


def validate_power(power_w: np.ndarray, alloc: np.ndarray, p_total_max_w: float,
                   p_band_max_w: float, rel_tol: float = 1e-9) -> None:
    """Raise if powers are negative, off-allocation, or over budget/cap."""
    if np.any(power_w < 0.0):
        raise ValueError("negative transmit power")
    if np.any((power_w > 0.0) & ~alloc):
        raise ValueError("transmit power on an unselected band")
    if np.any(power_w > p_band_max_w * (1.0 + rel_tol)):
        raise ValueError("per-band power cap exceeded")
    if np.any(power_w.sum(axis=1) > p_total_max_w * (1.0 + rel_tol)):
        raise ValueError("total power budget exceeded")
