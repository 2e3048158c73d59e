"""Monte Carlo model of the idealized qubit-based repeater chain.

Every link independently retries single-photon transmission until a photon
arrives (heralded by a QND check), so its attempt count is geometric with
success probability equal to the segment transmittance.  Once all links hold
a pair, entanglement swapping at the intermediate nodes is deterministic and
lossless, delivering one ebit per trial.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .bounds import ChainSpec
from .errors import DomainError, SpecificationError
from .photonics import fiber_transmittance, resolve_attenuation_length

#: Trials per RNG substream.  Fixed so results do not depend on worker count.
BLOCK_SIZE = 4096

THREADS_ENV = "QNETBOUND_THREADS"


def default_workers() -> int:
    """Worker cap from ``QNETBOUND_THREADS`` (default 1)."""
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise DomainError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


@dataclass(frozen=True)
class SimConfig:
    chain: ChainSpec
    trials: int
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 1:
            raise SpecificationError(f"trials must be a positive integer, got {self.trials!r}")
        if not 0 <= self.seed < 2**64:
            raise SpecificationError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


@dataclass(frozen=True)
class SimResult:
    trials: int
    total_channel_uses: float
    ebits: int
    rate_per_use: float
    stderr_rate: float
    per_link_mean_uses: Tuple[float, ...]


def block_rng(seed: int, block: int) -> np.random.Generator:
    """Independent generator for one block of trials."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _geometric_from_uniform(u: np.ndarray, eta: float) -> np.ndarray:
    # Inverse CDF; u in (0, 1].  Float counts: at eta ~ 1e-20 attempts overflow int64.
    if eta == 1.0:
        return np.ones_like(u)
    m = np.ceil(np.log(u) / math.log1p(-eta))
    return np.maximum(m, 1.0)


def sample_link_attempts(rng: np.random.Generator, eta: float) -> int:
    """Number of attempts until the first photon survives a link.

    Geometric on ``{1, 2, ...}`` with ``P(m) = (1 - eta)**(m - 1) * eta``,
    drawn by inverting the CDF so the cost is O(1) however small ``eta`` is.
    """
    if not 0.0 < eta <= 1.0:
        if eta == 0.0:
            raise DomainError("link never succeeds (transmittance 0)")
        raise DomainError(f"transmittance must lie in (0, 1], got {eta!r}")
    if eta == 1.0:
        return 1
    u = 1.0 - rng.random()
    return max(1, int(math.ceil(math.log(u) / math.log1p(-eta))))


def _run_block(seed: int, block: int, count: int, etas: Tuple[float, ...]) -> np.ndarray:
    u = 1.0 - block_rng(seed, block).random((count, len(etas)))
    return np.column_stack([_geometric_from_uniform(u[:, j], eta) for j, eta in enumerate(etas)])


def draw_attempts(config: SimConfig, workers: Optional[int] = None) -> np.ndarray:
    """Attempt counts as a ``(trials, n + 1)`` float array, one column per link.

    Trial ``t`` draws from substream ``t // BLOCK_SIZE`` of ``config.seed``, so
    the matrix depends only on ``(seed, trials)`` and not on ``workers``.
    """
    etas = config.chain.segment_transmittances()
    for j, eta in enumerate(etas):
        if eta <= 0.0:
            raise DomainError(f"link {j} never succeeds (transmittance 0)")
    trials = config.trials
    nblocks = -(-trials // BLOCK_SIZE)
    counts = [min(BLOCK_SIZE, trials - b * BLOCK_SIZE) for b in range(nblocks)]
    workers = workers or default_workers()

    if workers > 1 and nblocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(lambda b: _run_block(config.seed, b, counts[b], etas), range(nblocks))
            )
    else:
        parts = [_run_block(config.seed, b, counts[b], etas) for b in range(nblocks)]
    return np.concatenate(parts, axis=0)


def simulate(config: SimConfig, workers: Optional[int] = None) -> SimResult:
    """Run ``config.trials`` independent end-to-end ebit deliveries.

    The rate is the ratio of sums ``trials / total channel uses``; its standard
    error comes from the delta method applied to the mean uses per trial.
    """
    attempts = draw_attempts(config, workers)
    trials = config.trials
    per_trial = attempts.sum(axis=1)
    total = math.fsum(per_trial)
    per_link = tuple(math.fsum(attempts[:, j]) / trials for j in range(attempts.shape[1]))

    rate = trials / total
    if trials > 1:
        mean = total / trials
        sd = float(np.std(per_trial, ddof=1))
        stderr = sd / math.sqrt(trials) / mean**2
    else:
        stderr = math.nan
    return SimResult(trials, total, trials, rate, stderr, per_link)


def analytic_repeater_rate(chain: ChainSpec) -> float:
    """Expected ebits per channel use, ``eta_segment / (n + 1)``.

    This is the limit of the simulated ratio-of-sums estimator; it is not the
    mean of per-trial rates.
    """
    if not chain.equally_spaced:
        raise SpecificationError("analytic_repeater_rate requires equal spacing")
    return chain.eta_segment / chain.num_segments


SCALING_MODELS = ("point_to_point", "intercity")


def scaling_model_rate(
    model: str,
    length_km: float,
    attenuation_length_km: Optional[float] = None,
    loss_db_per_km: Optional[float] = None,
    prefactor: float = 1.0,
) -> float:
    """Reference rate curves: ``c * eta_L`` (point-to-point) or ``c * sqrt(eta_L)`` (intercity)."""
    if not prefactor > 0:
        raise DomainError(f"prefactor must be positive, got {prefactor!r}")
    att = resolve_attenuation_length(attenuation_length_km, loss_db_per_km)
    if model == "point_to_point":
        return prefactor * fiber_transmittance(length_km, att)
    if model == "intercity":
        return prefactor * fiber_transmittance(length_km / 2.0, att)
    raise DomainError(f"unknown scaling model {model!r}; expected one of {SCALING_MODELS}")
