"""Network model, bipartition cuts and minimum-cut search.

A network is a directed multigraph of :class:`~qnetbound.photonics.ChannelSpec`
edges.  For bound purposes direction does not matter: a channel crosses a cut
whenever its endpoints sit on different sides.  Node ids must be hashable and
mutually orderable (strings in practice) so witness cuts can be tie-broken.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from .errors import DomainError, NetworkValidationError, TooManyNodesError
from .photonics import ChannelSpec, esq_lossy_bound, transmittance

#: Use count assumed for edges absent from a UseProfile.
DEFAULT_USES = 1.0

#: Residual capacities at or below this many bits count as saturated.
FLOW_TOL = 1e-12

#: Largest number of intermediate nodes the brute-force oracle accepts.
ORACLE_MAX_INTERMEDIATE = 20


@dataclass(frozen=True)
class Network:
    """Nodes, channels and the two distinguished endpoints."""

    nodes: Tuple[Hashable, ...]
    edges: Tuple[ChannelSpec, ...]
    a: Hashable = "A"
    b: Hashable = "B"

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))

    @property
    def intermediates(self) -> Tuple[Hashable, ...]:
        return tuple(v for v in self.nodes if v != self.a and v != self.b)


@dataclass(frozen=True)
class Cut:
    """A bipartition given by the side holding endpoint ``a``."""

    side_a: FrozenSet[Hashable]

    def __post_init__(self):
        object.__setattr__(self, "side_a", frozenset(self.side_a))

    def side_b(self, network: Network) -> FrozenSet[Hashable]:
        return frozenset(network.nodes) - self.side_a

    def sorted_ids(self) -> Tuple[Hashable, ...]:
        return tuple(sorted(self.side_a))


@dataclass(frozen=True)
class UseProfile:
    """Average channel-use counts per edge index, plus an optional total budget.

    Edges missing from ``uses`` are read as :data:`DEFAULT_USES`.
    """

    uses: Mapping[int, float] = field(default_factory=dict)
    total_uses: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "uses", dict(self.uses))
        for idx, m in self.uses.items():
            if not m >= 0:
                raise DomainError(f"negative use count {m!r} on edge {idx}")
        if self.total_uses is not None and not self.total_uses >= 0:
            raise DomainError(f"total_uses must be nonnegative, got {self.total_uses!r}")

    def use(self, edge_index: int) -> float:
        return float(self.uses.get(edge_index, DEFAULT_USES))

    def check_total(self, network: Network, rtol: float = 1e-9) -> None:
        """Raise if ``total_uses`` is set and disagrees with the per-edge counts."""
        if self.total_uses is None:
            return
        s = math.fsum(self.use(i) for i in range(len(network.edges)))
        if abs(s - self.total_uses) > rtol * max(abs(s), abs(self.total_uses)):
            raise DomainError(
                f"per-edge uses sum to {s!r} but total_uses is {self.total_uses!r}"
            )


def validate(network: Network) -> None:
    """Raise :class:`NetworkValidationError` unless the network is well formed."""
    nodes = set(network.nodes)
    if len(nodes) != len(network.nodes):
        raise NetworkValidationError("duplicate node ids")
    if network.a == network.b:
        raise NetworkValidationError(f"endpoints coincide: {network.a!r}")
    for end in (network.a, network.b):
        if end not in nodes:
            raise NetworkValidationError(f"missing endpoint node {end!r}")
    for i, e in enumerate(network.edges):
        if e.from_node == e.to_node:
            raise NetworkValidationError(f"edge {i}: self-loop at {e.from_node!r}")
        for end in (e.from_node, e.to_node):
            if end not in nodes:
                raise NetworkValidationError(f"edge {i}: unknown node {end!r}")


def _check_cut(network: Network, cut: Cut) -> None:
    if network.a not in cut.side_a:
        raise NetworkValidationError(f"cut side_a must contain endpoint {network.a!r}")
    if network.b in cut.side_a:
        raise NetworkValidationError(f"cut side_a must not contain endpoint {network.b!r}")
    unknown = cut.side_a - set(network.nodes)
    if unknown:
        raise NetworkValidationError(f"cut contains unknown node(s) {sorted(unknown)!r}")


def cut_crossing_edges(network: Network, cut: Cut) -> FrozenSet[int]:
    """Indices of edges with one endpoint on each side, in either direction."""
    _check_cut(network, cut)
    side = cut.side_a
    return frozenset(
        i
        for i, e in enumerate(network.edges)
        if (e.from_node in side) != (e.to_node in side)
    )


def edge_capacity(spec: ChannelSpec, uses: float) -> float:
    """Bits a cut is charged for ``uses`` uses of one channel.

    Zero uses cost nothing, even on a lossless channel.
    """
    if not uses >= 0:
        raise DomainError(f"negative use count {uses!r}")
    if uses == 0:
        return 0.0
    return uses * esq_lossy_bound(transmittance(spec), spec.mode_factor)


def edge_capacities(network: Network, profile: Optional[UseProfile] = None) -> List[float]:
    profile = profile if profile is not None else UseProfile()
    return [edge_capacity(e, profile.use(i)) for i, e in enumerate(network.edges)]


def cut_value(network: Network, cut: Cut, profile: Optional[UseProfile] = None) -> float:
    """Sum of ``uses * E_sq`` over the channels crossing ``cut``."""
    crossing = cut_crossing_edges(network, cut)
    caps = edge_capacities(network, profile)
    return math.fsum(caps[i] for i in sorted(crossing)) if crossing else 0.0


def _undirected_capacities(
    network: Network, caps: Iterable[float]
) -> Dict[Hashable, Dict[Hashable, float]]:
    adj: Dict[Hashable, Dict[Hashable, float]] = {v: {} for v in network.nodes}
    for e, c in zip(network.edges, caps):
        if c <= 0:
            continue
        u, v = e.from_node, e.to_node
        adj[u][v] = adj[u].get(v, 0.0) + c
        adj[v][u] = adj[v].get(u, 0.0) + c
    return adj


def _residual_reach(residual, source, tol) -> Tuple[set, Dict[Hashable, Hashable]]:
    seen = {source}
    parent: Dict[Hashable, Hashable] = {}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in sorted(residual[u]):
            if v not in seen and residual[u][v] > tol:
                seen.add(v)
                parent[v] = u
                queue.append(v)
    return seen, parent


def min_cut(
    network: Network, profile: Optional[UseProfile] = None, *, tol: float = FLOW_TOL
) -> Tuple[float, Cut]:
    """Minimum A/B cut value and its witness.

    Runs Edmonds-Karp on the undirected capacity graph (parallel and
    antiparallel channels add).  The witness is the set reachable from ``a`` in
    the final residual graph, which is the smallest of all minimizing cuts.
    Disconnected endpoints give value 0; if every cut is infinite the value is
    ``inf`` with witness ``{a}``.
    """
    validate(network)
    caps = edge_capacities(network, profile)
    residual = _undirected_capacities(network, caps)
    s, t = network.a, network.b
    while True:
        reach, parent = _residual_reach(residual, s, tol)
        if t not in reach:
            break
        path = []
        v = t
        while v != s:
            u = parent[v]
            path.append((u, v))
            v = u
        push = min(residual[u][v] for u, v in path)
        if math.isinf(push):
            return math.inf, Cut({s})
        for u, v in path:
            residual[u][v] -= push
            residual[v][u] += push
    witness = Cut(reach)
    return cut_value(network, witness, profile), witness


def enumerate_cuts_oracle(
    network: Network, profile: Optional[UseProfile] = None, *, rtol: float = 1e-9
) -> Tuple[float, Cut]:
    """Brute-force minimum cut over all ``2**n`` bipartitions.

    Ties (within ``rtol``) go to the smallest ``side_a``, then to the
    lexicographically least sorted id tuple.
    """
    validate(network)
    inter = sorted(network.intermediates)
    n = len(inter)
    if n > ORACLE_MAX_INTERMEDIATE:
        raise TooManyNodesError(
            f"{n} intermediate nodes exceeds the oracle limit of {ORACLE_MAX_INTERMEDIATE}"
        )
    caps = np.asarray(edge_capacities(network, profile), dtype=float)

    masks = np.arange(2**n, dtype=np.int64)
    member = {network.a: np.ones(2**n, bool), network.b: np.zeros(2**n, bool)}
    for k, v in enumerate(inter):
        member[v] = ((masks >> k) & 1).astype(bool)

    finite = np.isfinite(caps)
    values = np.zeros(2**n)
    hits_inf = np.zeros(2**n, bool)
    for i, e in enumerate(network.edges):
        crosses = member[e.from_node] != member[e.to_node]
        if finite[i]:
            values += np.where(crosses, caps[i], 0.0)
        else:
            hits_inf |= crosses
    values[hits_inf] = np.inf

    best = values.min()
    if math.isinf(best):
        tied = masks
    else:
        tied = masks[values <= best + rtol * abs(best) + FLOW_TOL]

    def key(mask):
        side = [network.a] + [inter[k] for k in range(n) if (mask >> k) & 1]
        return (len(side), tuple(sorted(side)))

    pick = min((int(m) for m in tied), key=key)
    side = {network.a} | {inter[k] for k in range(n) if (pick >> k) & 1}
    witness = Cut(side)
    return cut_value(network, witness, profile), witness
