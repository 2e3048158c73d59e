"""Exit criteria for the package, one test per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import math
import time

import mpmath
import networkx as nx
import numpy as np
import pytest
from scipy.optimize import linprog, minimize

from _netgen import random_network
from qnetbound import (
    ChainSpec,
    DisconnectedError,
    DomainError,
    EpsilonParams,
    UseProfile,
    analytic_repeater_rate,
    best_path,
    chain_bound_per_use,
    enumerate_cuts_oracle,
    epsilon_adjust,
    esq_lossy_bound,
    harmonic_chain_bound,
    min_cut,
    network_bound,
    optimal_use_allocation,
    simulate,
    SimConfig,
    time_to_first_bit,
    transmittance,
    uneven_chain_bound_per_use,
)
from qnetbound.photonics import EPSILON_LIMIT
from qnetbound.sweep import SweepSpec, sweep_rows

FOUR_OVER_LN2 = 4 / math.log(2)
SECONDS_PER_YEAR = 365.25 * 86400


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


# -- independent high-precision references ---------------------------------

mpmath.mp.dps = 50


def mp_esq(eta, mode_factor):
    eta = mpmath.mpf(eta)
    return mode_factor * mpmath.log((1 + eta) / (1 - eta), 2)


def mp_eta_segment(length, n, loss_db):
    latt = 10 / (mpmath.mpf(loss_db) * mpmath.log(10))
    return mpmath.exp(-(mpmath.mpf(length) / (n + 1)) / latt)


def lp_max_min(esq):
    k = len(esq)
    c = np.zeros(k + 1)
    c[-1] = -1.0
    a_ub = np.hstack([-np.diag(esq), np.ones((k, 1))])
    a_eq = np.hstack([np.ones((1, k)), np.zeros((1, 1))])
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(k), A_eq=a_eq, b_eq=[1.0],
                  bounds=[(0, None)] * (k + 1), method="highs",
                  options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10})
    assert res.success
    return -res.fun


# -- criteria ---------------------------------------------------------------

@pytest.mark.criterion(1, "closed forms match 50-digit recomputation to 1e-12 (20 points)")
def test_closed_form_fidelity():
    rng = np.random.default_rng(20240601)
    with Timer() as t:
        for _ in range(20):
            eta = float(rng.uniform(0.0, 0.999))
            mf = int(rng.integers(1, 5))
            got = esq_lossy_bound(eta, mf)
            ref = mp_esq(eta, mf)
            assert abs(got - ref) <= 1e-12 * abs(ref)

            length = float(rng.uniform(1.0, 1000.0))
            n = int(rng.integers(0, 11))
            loss = float(rng.uniform(0.1, 0.5))
            chain = ChainSpec(length, n, loss_db_per_km=loss)
            eta_ref = mp_eta_segment(length, n, loss)
            ref_bound = 2 * mpmath.log((1 + eta_ref) / (1 - eta_ref), 2) / (n + 1)
            assert abs(chain_bound_per_use(chain) - ref_bound) <= 1e-12 * ref_bound
            ref_rate = eta_ref / (n + 1)
            assert abs(analytic_repeater_rate(chain) - ref_rate) <= 1e-12 * ref_rate
    assert t.elapsed < 1.0


@pytest.mark.criterion(2, "sweep 50-1000 km, n in {0,1,2,4,8}: bound >= achievable, ratio -> 4/ln2 within 1%")
def test_rate_loss_structure():
    with Timer() as t:
        spec = SweepSpec(50.0, 1000.0, 10.0, (0, 1, 2, 4, 8), loss_db_per_km=0.2, epsilon=0.0)
        rows = sweep_rows(spec)
    assert t.elapsed < 5.0
    assert len(rows) == 96 * 5
    small = 0
    for r in rows:
        assert r.bound_per_use >= r.achievable_per_use
        if r.eta_segment <= 1e-3:
            small += 1
            ratio = r.bound_per_use / r.achievable_per_use
            assert abs(ratio - FOUR_OVER_LN2) / FOUR_OVER_LN2 <= 0.01
    assert small > 100


@pytest.mark.criterion(3, "min-cut equals brute-force enumeration on 200 random networks (1e-9)")
def test_min_cut_oracle_equivalence():
    rng = np.random.default_rng(777)
    with Timer() as t:
        for _ in range(200):
            net, prof = random_network(rng, max_intermediate=10, max_edges=30)
            value, _ = min_cut(net, prof)
            ref, _ = enumerate_cuts_oracle(net, prof)
            assert value == pytest.approx(ref, rel=1e-9, abs=1e-12)
    assert t.elapsed < 30.0


@pytest.mark.criterion(4, "Monte Carlo n=3, 200 km, 1e5 trials within 2% of analytic; deterministic")
def test_monte_carlo_convergence():
    chain = ChainSpec(200.0, 3, loss_db_per_km=0.2)
    cfg = SimConfig(chain, 100_000, seed=20151030)
    with Timer() as t:
        res = simulate(cfg)
        again = simulate(cfg)
    assert t.elapsed < 10.0
    analytic = analytic_repeater_rate(chain)
    assert abs(res.rate_per_use - analytic) / analytic <= 0.02
    expected_uses = 1 / chain.eta_segment
    for m in res.per_link_mean_uses:
        assert abs(m - expected_uses) / expected_uses <= 0.02
    assert res == again


@pytest.mark.criterion(5, "uneven-spacing formula matches LP max-min (1e-6); equal spacing is optimal (1e-4)")
def test_uneven_spacing_gate():
    rng = np.random.default_rng(55)
    with Timer() as t:
        for _ in range(50):
            n = int(rng.integers(0, 6))
            length = float(rng.uniform(20.0, 600.0))
            cuts = np.sort(rng.uniform(0, length, n))
            spacings = np.diff(np.concatenate([[0.0], cuts, [length]]))
            spacings = np.maximum(spacings, 1e-3)
            chain = ChainSpec(float(spacings.sum()), n, tuple(spacings),
                              attenuation_length_km=float(rng.uniform(10.0, 50.0)))
            esq = np.array([esq_lossy_bound(e) for e in chain.segment_transmittances()])
            # Divide by the weakest link so the LP optimum sits in [1/k, 1].
            scale = esq.min()
            got = uneven_chain_bound_per_use(chain)
            ref = lp_max_min(esq / scale) * scale
            assert abs(got - ref) <= 1e-6 * ref

        for length, n in [(100.0, 3), (200.0, 1), (400.0, 2), (800.0, 4), (1000.0, 5)]:
            equal = uneven_chain_bound_per_use(ChainSpec(length, n, loss_db_per_km=0.2))

            def neg_log_bound(z):
                w = np.exp(z - z.max())
                sp = length * w / w.sum()
                c = ChainSpec(length, n, tuple(sp * length / sp.sum()), loss_db_per_km=0.2)
                return -math.log(uneven_chain_bound_per_use(c))

            best = -math.inf
            for _ in range(4):
                z0 = rng.normal(0, 0.5, n + 1)
                res = minimize(neg_log_bound, z0, method="Nelder-Mead",
                               options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 20000})
                best = max(best, math.exp(-res.fun))
            assert abs(best - equal) / equal <= 1e-4
    assert t.elapsed < 30.0


@pytest.mark.criterion(6, "point-to-point bound at 1000 km: first bit takes 10-200 years at 1-10 GHz")
def test_century_scale():
    chain = ChainSpec(1000.0, 0, loss_db_per_km=0.2)
    rate = chain_bound_per_use(chain)
    assert rate == pytest.approx(FOUR_OVER_LN2 * 1e-20, rel=1e-9)
    with Timer() as t:
        years = {clock: time_to_first_bit(rate, clock) / SECONDS_PER_YEAR
                 for clock in np.geomspace(1e9, 1e10, 11)}
    assert t.elapsed < 1.0
    outside = {f"{c:.3g} Hz": round(y, 1) for c, y in years.items() if not 10 <= y <= 200}
    assert not outside, f"time to first bit outside [10, 200] years: {outside}"


@pytest.mark.criterion(7, "epsilon correction: identity at 0, monotone on [0, 1/256), rejects >= 1/256")
def test_epsilon_correction():
    with Timer() as t:
        for raw in (0.0, 1e-20, 0.37, 3.0, 1e4):
            assert epsilon_adjust(raw, EpsilonParams(0.0)) == raw
            grid = np.linspace(0.0, EPSILON_LIMIT, 2001, endpoint=False)
            vals = [epsilon_adjust(raw, float(e)) for e in grid]
            assert np.all(np.diff(vals) >= 0)
        for bad in (EPSILON_LIMIT, 0.01, 0.5, 1.0):
            with pytest.raises(DomainError):
                EpsilonParams(bad)
            with pytest.raises(DomainError):
                epsilon_adjust(1.0, bad)
    assert t.elapsed < 1.0


def _simple_path_max(net):
    g = nx.Graph()
    g.add_nodes_from(net.nodes)
    best_edge = {}
    for e in net.edges:
        key = frozenset((e.from_node, e.to_node))
        esq = esq_lossy_bound(transmittance(e), e.mode_factor)
        best_edge[key] = max(best_edge.get(key, 0.0), esq)
        g.add_edge(e.from_node, e.to_node)
    best = None
    for path in nx.all_simple_paths(g, net.a, net.b):
        value = harmonic_chain_bound([best_edge[frozenset(p)] for p in zip(path, path[1:])])
        best = value if best is None else max(best, value)
    return best


@pytest.mark.criterion(8, "routing: best path = max over simple paths; never above the min-cut per-use value")
def test_routing_optimality():
    rng = np.random.default_rng(8080)
    checked = 0
    with Timer() as t:
        while checked < 100:
            net, _ = random_network(rng, max_intermediate=6, max_edges=16)
            try:
                route = best_path(net)
            except DisconnectedError:
                assert _simple_path_max(net) is None
                continue
            checked += 1
            assert route.per_use_bound_bits == pytest.approx(_simple_path_max(net), rel=1e-12)

            esq = [esq_lossy_bound(transmittance(net.edges[i])) for i in route.edges]
            alloc = optimal_use_allocation(esq, 1.0)
            uses = {i: 0.0 for i in range(len(net.edges))}
            for i, m in zip(route.edges, alloc):
                uses[i] += m
            report = network_bound(net, UseProfile(uses, total_uses=1.0))
            assert route.per_use_bound_bits <= report.per_use_bits * (1 + 1e-9)
    assert t.elapsed < 30.0
