"""Single-path routing with bound-derived edge weights.

Weighting each channel by ``1 / E_sq`` (channel uses needed per bit of bound)
makes weights additive along a path, and the path's chain bound equals
``1 / total weight``.  Maximizing the bound is then a shortest-path problem.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Dict, Hashable, Tuple

from .bounds import harmonic_chain_bound
from .errors import DisconnectedError, NetworkValidationError
from .netgraph import Network, validate
from .photonics import ChannelSpec, esq_lossy_bound, transmittance


@dataclass(frozen=True)
class Route:
    nodes: Tuple[Hashable, ...]
    edges: Tuple[int, ...]
    per_use_bound_bits: float


def edge_weight(spec: ChannelSpec) -> float:
    """Channel uses per bit of bound: 0 for a lossless channel, ``inf`` if opaque."""
    eta = transmittance(spec)
    if eta == 1.0:
        return 0.0
    if eta == 0.0:
        return math.inf
    return 1.0 / esq_lossy_bound(eta, spec.mode_factor)


def _best_links(network: Network) -> Dict[Hashable, Dict[Hashable, Tuple[float, int]]]:
    # Cheapest usable channel per unordered node pair; ties go to the lower index.
    links: Dict[Hashable, Dict[Hashable, Tuple[float, int]]] = {v: {} for v in network.nodes}
    for i, e in enumerate(network.edges):
        w = edge_weight(e)
        if math.isinf(w):
            continue
        u, v = e.from_node, e.to_node
        if v not in links[u] or (w, i) < links[u][v]:
            links[u][v] = (w, i)
            links[v][u] = (w, i)
    return links


def best_path(network: Network) -> Route:
    """Simple A-B path with the largest per-use chain bound.

    Dijkstra over total weight; ties go to fewer hops, then to the
    lexicographically smaller node sequence.
    """
    validate(network)
    links = _best_links(network)
    a, b = network.a, network.b
    heap = [(0.0, 0, (a,), ())]
    done = set()
    while heap:
        w, hops, seq, edges = heapq.heappop(heap)
        u = seq[-1]
        if u in done:
            continue
        done.add(u)
        if u == b:
            return Route(seq, edges, path_bound(network, Route(seq, edges, math.nan)))
        for v, (we, idx) in links[u].items():
            if v not in done:
                heapq.heappush(heap, (w + we, hops + 1, seq + (v,), edges + (idx,)))
    raise DisconnectedError(f"no usable path between {a!r} and {b!r}")


def path_bound(network: Network, route: Route) -> float:
    """Per-use bound of the route viewed as an unevenly spaced chain."""
    if len(route.nodes) != len(route.edges) + 1 or len(route.edges) == 0:
        raise NetworkValidationError("route must list one more node than edges")
    if len(set(route.nodes)) != len(route.nodes):
        raise NetworkValidationError("route repeats a node")
    esq = []
    for k, idx in enumerate(route.edges):
        if not 0 <= idx < len(network.edges):
            raise NetworkValidationError(f"route edge {idx} is not in the network")
        e = network.edges[idx]
        if {e.from_node, e.to_node} != {route.nodes[k], route.nodes[k + 1]}:
            raise NetworkValidationError(
                f"edge {idx} does not join {route.nodes[k]!r} and {route.nodes[k + 1]!r}"
            )
        esq.append(esq_lossy_bound(transmittance(e), e.mode_factor))
    return harmonic_chain_bound(esq)
