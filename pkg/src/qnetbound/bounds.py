"""Rate upper bounds for general networks and for linear repeater chains.

Rates are in bits (secret bits or ebits) per channel use unless a function
name says otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from .errors import DomainError, SpecificationError
from .netgraph import Cut, Network, UseProfile, min_cut
from .photonics import (
    LN2,
    ChannelSpec,
    EpsilonParams,
    epsilon_adjust,
    esq_lossy_bound,
    fiber_transmittance,
    resolve_attenuation_length,
)


@dataclass(frozen=True)
class ChainSpec:
    """A linear chain A - C1 - ... - Cn - B of fibre segments.

    Without ``spacings_km`` the ``n + 1`` segments have equal length
    ``total_length_km / (n + 1)``.  A zero total length is accepted and gives
    lossless segments.
    """

    total_length_km: float
    num_intermediate: int = 0
    spacings_km: Optional[Tuple[float, ...]] = None
    attenuation_length_km: Optional[float] = None
    loss_db_per_km: Optional[float] = None
    mode_factor: int = 2

    def __post_init__(self):
        if not (self.total_length_km >= 0 and math.isfinite(self.total_length_km)):
            raise SpecificationError(
                f"total length must be finite and nonnegative, got {self.total_length_km!r}"
            )
        if isinstance(self.num_intermediate, bool) or not isinstance(self.num_intermediate, int):
            raise SpecificationError(
                f"num_intermediate must be an integer, got {self.num_intermediate!r}"
            )
        if self.num_intermediate < 0:
            raise SpecificationError(f"num_intermediate must be >= 0, got {self.num_intermediate}")
        if self.mode_factor < 1:
            raise SpecificationError(f"mode_factor must be >= 1, got {self.mode_factor}")
        resolve_attenuation_length(self.attenuation_length_km, self.loss_db_per_km)
        if self.spacings_km is not None:
            sp = tuple(float(s) for s in self.spacings_km)
            object.__setattr__(self, "spacings_km", sp)
            if len(sp) != self.num_intermediate + 1:
                raise SpecificationError(
                    f"expected {self.num_intermediate + 1} spacings, got {len(sp)}"
                )
            if any(not s > 0 for s in sp):
                raise SpecificationError("spacings must all be positive")
            total = math.fsum(sp)
            if abs(total - self.total_length_km) > 1e-9 * self.total_length_km:
                raise SpecificationError(
                    f"spacings sum to {total!r} km, expected {self.total_length_km!r}"
                )

    @property
    def attenuation_length(self) -> float:
        return resolve_attenuation_length(self.attenuation_length_km, self.loss_db_per_km)

    @property
    def num_segments(self) -> int:
        return self.num_intermediate + 1

    @property
    def equally_spaced(self) -> bool:
        return self.spacings_km is None

    @property
    def segment_length(self) -> float:
        """Length of one segment; only defined for equal spacing."""
        if not self.equally_spaced:
            raise SpecificationError("segment_length is undefined for uneven spacings")
        return self.total_length_km / self.num_segments

    def segment_lengths(self) -> Tuple[float, ...]:
        if self.spacings_km is not None:
            return self.spacings_km
        return (self.segment_length,) * self.num_segments

    @property
    def eta_segment(self) -> float:
        """Transmittance of one equal segment."""
        return fiber_transmittance(self.segment_length, self.attenuation_length)

    def segment_transmittances(self) -> Tuple[float, ...]:
        att = self.attenuation_length
        return tuple(fiber_transmittance(s, att) for s in self.segment_lengths())

    def node_ids(self) -> Tuple[str, ...]:
        return ("A",) + tuple(f"C{j}" for j in range(1, self.num_intermediate + 1)) + ("B",)

    def channels(self) -> Tuple[ChannelSpec, ...]:
        ids = self.node_ids()
        return tuple(
            ChannelSpec(
                ids[j],
                ids[j + 1],
                length_km=s,
                attenuation_length_km=self.attenuation_length,
                mode_factor=self.mode_factor,
            )
            for j, s in enumerate(self.segment_lengths())
        )


def chain_network(
    chain: ChainSpec, uses: Optional[Sequence[float]] = None
) -> Tuple[Network, UseProfile]:
    """The chain as a :class:`Network` plus a per-segment use profile."""
    net = Network(chain.node_ids(), chain.channels())
    if uses is None:
        return net, UseProfile()
    if len(uses) != chain.num_segments:
        raise SpecificationError(f"expected {chain.num_segments} use counts, got {len(uses)}")
    profile = UseProfile(dict(enumerate(uses)), total_uses=math.fsum(uses))
    return net, profile


@dataclass(frozen=True)
class BoundReport:
    raw_min_cut_bits: float
    adjusted_bits: float
    witness_cut: Cut
    epsilon: float
    per_use_bits: Optional[float] = None


def network_bound(
    network: Network,
    profile: Optional[UseProfile] = None,
    eps: Union[EpsilonParams, float] = 0.0,
) -> BoundReport:
    """Upper bound on the average bits A and B can share with the given channel uses.

    The raw value is the minimum cut; the adjusted value adds the finite-epsilon
    correction.  ``per_use_bits`` is the adjusted total divided by
    ``profile.total_uses`` and is only set when that budget is known and nonzero.
    """
    eps = eps if isinstance(eps, EpsilonParams) else EpsilonParams(float(eps))
    profile = profile if profile is not None else UseProfile()
    profile.check_total(network)
    raw, witness = min_cut(network, profile)
    adjusted = epsilon_adjust(raw, eps)
    per_use = None
    if profile.total_uses:
        per_use = adjusted / profile.total_uses
    return BoundReport(raw, adjusted, witness, eps.epsilon, per_use)


def _require_equal(chain: ChainSpec) -> None:
    if not chain.equally_spaced:
        raise SpecificationError(
            "chain has explicit spacings; use uneven_chain_bound_per_use instead"
        )


def chain_bound_per_use(chain: ChainSpec) -> float:
    """Bits per channel use for an equally spaced chain at epsilon ~ 0.

    ``E_sq(eta_segment) / (n + 1)``; with ``n = 0`` this is the point-to-point
    bound of a single lossy channel.
    """
    _require_equal(chain)
    return esq_lossy_bound(chain.eta_segment, chain.mode_factor) / chain.num_segments


def chain_bound_total(
    chain: ChainSpec, total_uses: float, eps: Union[EpsilonParams, float] = 0.0
) -> float:
    """Bound on the bits shared after ``total_uses`` channel uses over the chain."""
    _require_equal(chain)
    if not total_uses >= 0:
        raise DomainError(f"total uses must be nonnegative, got {total_uses!r}")
    eps = eps if isinstance(eps, EpsilonParams) else EpsilonParams(float(eps))
    if total_uses == 0:
        raw = 0.0
    else:
        raw = total_uses / chain.num_segments * esq_lossy_bound(
            chain.eta_segment, chain.mode_factor
        )
    return epsilon_adjust(raw, eps)


def harmonic_chain_bound(esq_values: Sequence[float]) -> float:
    """``1 / sum(1 / E_j)``: best per-use rate over all use allocations.

    Lossless segments (``E_j = inf``) add nothing to the sum; if every segment
    is lossless the result is ``inf``.
    """
    if len(esq_values) == 0:
        raise DomainError("need at least one segment")
    if any(not e >= 0 for e in esq_values):
        raise DomainError("segment bounds must be nonnegative")
    if any(e == 0 for e in esq_values):
        return 0.0
    if all(e == esq_values[0] for e in esq_values):
        return esq_values[0] / len(esq_values)
    inv = math.fsum(1.0 / e for e in esq_values if not math.isinf(e))
    return math.inf if inv == 0 else 1.0 / inv


def optimal_use_allocation(
    esq_values: Sequence[float], total_uses: float = 1.0
) -> Tuple[float, ...]:
    """Split ``total_uses`` across segments in proportion to ``1 / E_j``.

    This equalizes ``m_j E_j`` across finite segments and attains
    :func:`harmonic_chain_bound`.  Lossless segments receive no uses.
    """
    if all(math.isinf(e) for e in esq_values):
        k = len(esq_values)
        return (total_uses / k,) * k
    w = [0.0 if math.isinf(e) else 1.0 / e for e in esq_values]
    s = math.fsum(w)
    return tuple(total_uses * x / s for x in w)


def uneven_chain_bound_per_use(chain: ChainSpec) -> float:
    """Per-use bound for a chain whose nodes need not be evenly placed."""
    return harmonic_chain_bound(
        [esq_lossy_bound(eta, chain.mode_factor) for eta in chain.segment_transmittances()]
    )


def small_eta_chain_approx(chain: ChainSpec) -> float:
    """Linear-in-transmittance approximation ``2 mf eta / ((n+1) ln 2)`` of the chain bound."""
    _require_equal(chain)
    return 2.0 * chain.mode_factor * chain.eta_segment / (chain.num_segments * LN2)


def time_to_first_bit(rate_bits_per_use: float, clock_hz: float) -> float:
    """Expected seconds to accumulate one bit at the given rate and pulse clock."""
    if not rate_bits_per_use > 0:
        raise DomainError(f"rate must be positive, got {rate_bits_per_use!r}")
    if not clock_hz > 0:
        raise DomainError(f"clock must be positive, got {clock_hz!r}")
    return 1.0 / (rate_bits_per_use * clock_hz)

