"""Closed-form quantities for a single pure-loss optical channel.

All entropic quantities are in bits.  A channel use is one optical pulse,
which carries ``mode_factor`` optical modes (two for a polarization pair).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Optional, Union

from .errors import DomainError, SpecificationError

LN2 = math.log(2.0)
LN10 = math.log(10.0)

#: Loss of standard telecom fibre, dB/km.
STANDARD_FIBER_DB_PER_KM = 0.2

#: Largest epsilon (exclusive) for which the correction prefactor stays finite.
EPSILON_LIMIT = 1.0 / 256.0


def db_to_attenuation_length(loss_db_per_km: float) -> float:
    """Attenuation length in km for a fibre loss given in dB/km.

    This is the ``l_att`` for which ``exp(-L / l_att) == 10**(-loss * L / 10)``.

    >>> round(db_to_attenuation_length(0.2), 4)
    21.7147
    """
    if not loss_db_per_km > 0:
        raise DomainError(f"loss must be positive, got {loss_db_per_km!r} dB/km")
    return 10.0 / (loss_db_per_km * LN10)


def attenuation_length_to_db(attenuation_length_km: float) -> float:
    """Inverse of :func:`db_to_attenuation_length`."""
    if not attenuation_length_km > 0:
        raise DomainError(
            f"attenuation length must be positive, got {attenuation_length_km!r} km"
        )
    return 10.0 / (attenuation_length_km * LN10)


def resolve_attenuation_length(
    attenuation_length_km: Optional[float] = None,
    loss_db_per_km: Optional[float] = None,
) -> float:
    """Return the attenuation length from exactly one of the two representations."""
    if attenuation_length_km is not None and loss_db_per_km is not None:
        raise SpecificationError(
            "give either attenuation_length_km or loss_db_per_km, not both"
        )
    if attenuation_length_km is not None:
        if not attenuation_length_km > 0:
            raise SpecificationError(
                f"attenuation_length_km must be positive, got {attenuation_length_km!r}"
            )
        return float(attenuation_length_km)
    if loss_db_per_km is not None:
        if not loss_db_per_km > 0:
            raise SpecificationError(
                f"loss_db_per_km must be positive, got {loss_db_per_km!r}"
            )
        return db_to_attenuation_length(loss_db_per_km)
    raise SpecificationError("no attenuation given (attenuation_length_km or loss_db_per_km)")


def fiber_transmittance(length_km: float, attenuation_length_km: float) -> float:
    """``exp(-length / l_att)``; exactly 1.0 at zero length."""
    if length_km < 0:
        raise DomainError(f"length must be nonnegative, got {length_km!r} km")
    return math.exp(-length_km / attenuation_length_km)


@dataclass(frozen=True)
class ChannelSpec:
    """One directed pure-loss fibre channel between two nodes.

    Exactly one of ``attenuation_length_km`` / ``loss_db_per_km`` must be set
    unless ``transmittance_override`` is given, in which case the override wins.
    """

    from_node: Hashable
    to_node: Hashable
    length_km: float = 0.0
    attenuation_length_km: Optional[float] = None
    loss_db_per_km: Optional[float] = None
    mode_factor: int = 2
    transmittance_override: Optional[float] = None

    def __post_init__(self):
        if self.from_node == self.to_node:
            raise SpecificationError(f"self-loop channel at node {self.from_node!r}")
        if isinstance(self.mode_factor, bool) or not isinstance(self.mode_factor, int):
            raise SpecificationError(
                f"mode_factor must be an integer, got {self.mode_factor!r}"
            )
        if self.mode_factor < 1:
            raise SpecificationError(f"mode_factor must be >= 1, got {self.mode_factor}")
        if not (self.length_km >= 0 and math.isfinite(self.length_km)):
            raise SpecificationError(
                f"length_km must be finite and nonnegative, got {self.length_km!r}"
            )
        if self.transmittance_override is not None:
            if not 0.0 <= self.transmittance_override <= 1.0:
                raise SpecificationError(
                    "transmittance_override must lie in [0, 1], "
                    f"got {self.transmittance_override!r}"
                )
        else:
            # Raises if zero or two representations are given.
            resolve_attenuation_length(self.attenuation_length_km, self.loss_db_per_km)


def transmittance(spec: ChannelSpec) -> float:
    """Probability that a photon survives the channel."""
    if spec.transmittance_override is not None:
        return float(spec.transmittance_override)
    att = resolve_attenuation_length(spec.attenuation_length_km, spec.loss_db_per_km)
    return fiber_transmittance(spec.length_km, att)


def esq_lossy_bound(eta: float, mode_factor: int = 2) -> float:
    """Upper bound on the squashed entanglement of a pure-loss channel.

    Returns ``mode_factor * log2((1 + eta) / (1 - eta))`` bits per channel use,
    evaluated as ``2 atanh(eta) / ln 2`` so that tiny transmittances keep full
    relative precision.  A lossless channel (``eta == 1``) gives ``inf``.
    """
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"transmittance must lie in [0, 1], got {eta!r}")
    if mode_factor < 1:
        raise DomainError(f"mode_factor must be >= 1, got {mode_factor!r}")
    if eta == 1.0:
        return math.inf
    return mode_factor * (2.0 * math.atanh(eta) / LN2)


def binary_entropy(x: float) -> float:
    """Binary entropy in bits, with ``h(0) = h(1) = 0``."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"binary entropy argument must lie in [0, 1], got {x!r}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


@dataclass(frozen=True)
class EpsilonParams:
    """Failure tolerance of the final state; ``16 sqrt(eps) < 1`` is required."""

    epsilon: float = 0.0

    def __post_init__(self):
        eps = self.epsilon
        if not (eps >= 0 and math.isfinite(eps)):
            raise DomainError(f"epsilon must be a finite nonnegative number, got {eps!r}")
        if eps >= EPSILON_LIMIT:
            raise DomainError(
                f"epsilon too large: {eps!r} >= 1/256, bound vacuous at this epsilon"
            )


def _as_eps(eps: Union[EpsilonParams, float]) -> EpsilonParams:
    return eps if isinstance(eps, EpsilonParams) else EpsilonParams(float(eps))


def epsilon_adjust(raw_bound: float, eps: Union[EpsilonParams, float] = 0.0) -> float:
    """Apply the finite-epsilon correction to a cut bound.

    ``(raw + 4 h(2 sqrt(eps))) / (1 - 16 sqrt(eps))``; the identity at ``eps = 0``.
    """
    eps = _as_eps(eps)
    if math.isnan(raw_bound) or raw_bound < 0:
        raise DomainError(f"raw bound must be nonnegative, got {raw_bound!r}")
    if eps.epsilon == 0.0:
        return float(raw_bound)
    root = math.sqrt(eps.epsilon)
    return (raw_bound + 4.0 * binary_entropy(2.0 * root)) / (1.0 - 16.0 * root)
