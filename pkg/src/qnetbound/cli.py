"""Command-line front end.

Subcommands: ``bound chain``, ``bound network``, ``simulate``, ``sweep``,
``route`` and ``convert``.  Exit codes: 0 ok, 1 domain error, 2 usage or
parse error, 3 endpoints disconnected (``route`` only).  Every error is one
line on stderr starting with ``error:``.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import List, Optional, Sequence

from . import netfile
from .bounds import (
    ChainSpec,
    chain_bound_per_use,
    chain_bound_total,
    network_bound,
    small_eta_chain_approx,
    time_to_first_bit,
    uneven_chain_bound_per_use,
)
from .errors import DisconnectedError
from .photonics import (
    STANDARD_FIBER_DB_PER_KM,
    EpsilonParams,
    attenuation_length_to_db,
    db_to_attenuation_length,
    epsilon_adjust,
)
from .repeater_sim import SimConfig, analytic_repeater_rate, simulate
from .routing import best_path
from .sweep import SweepSpec, sweep_rows, write_csv

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_DISCONNECTED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_USAGE)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _seed(text: str) -> int:
    v = _nonneg_int(text)
    if v >= 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> List[int]:
    return [_nonneg_int(x) for x in text.split(",") if x.strip()]


def _add_attenuation(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--loss-db-per-km", type=float, help="fibre loss in dB/km")
    g.add_argument("--att-length-km", type=float, help="attenuation length in km")
    g.add_argument(
        "--standard-fiber",
        action="store_true",
        help=f"shorthand for --loss-db-per-km {STANDARD_FIBER_DB_PER_KM}",
    )


def _attenuation_kwargs(args) -> dict:
    if args.standard_fiber:
        return {"loss_db_per_km": STANDARD_FIBER_DB_PER_KM}
    if args.loss_db_per_km is not None:
        return {"loss_db_per_km": args.loss_db_per_km}
    return {"attenuation_length_km": args.att_length_km}


def _add_chain(p: argparse.ArgumentParser) -> None:
    p.add_argument("--length-km", type=float, required=True, help="total A-B distance")
    p.add_argument("--nodes-n", type=_nonneg_int, default=0, help="number of intermediate nodes")
    p.add_argument(
        "--spacings", type=_float_list, help="comma-separated segment lengths (km), n+1 values"
    )
    _add_attenuation(p)


def _chain_from_args(args) -> ChainSpec:
    spacings = tuple(args.spacings) if args.spacings else None
    return ChainSpec(args.length_km, args.nodes_n, spacings, **_attenuation_kwargs(args))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qnetbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    bound = sub.add_parser("bound", help="rate upper bounds")
    bsub = bound.add_subparsers(dest="target", required=True, parser_class=_Parser)

    bc = bsub.add_parser("chain", help="bound for a linear repeater chain")
    _add_chain(bc)
    bc.add_argument("--epsilon", type=float, default=0.0)
    bc.add_argument("--uses-total", type=float, help="total channel uses l")
    bc.set_defaults(func=cmd_bound_chain)

    bn = bsub.add_parser("network", help="minimum-cut bound for a network file")
    bn.add_argument("--network", required=True, help="JSON network file")
    bn.add_argument("--epsilon", type=float, default=0.0)
    bn.set_defaults(func=cmd_bound_network)

    sim = sub.add_parser("simulate", help="Monte Carlo of the idealized repeater chain")
    _add_chain(sim)
    sim.add_argument("--trials", type=_positive_int, required=True)
    sim.add_argument("--seed", type=_seed, default=0)
    sim.set_defaults(func=cmd_simulate)

    sw = sub.add_parser("sweep", help="CSV of bounds and achievable rates versus distance")
    sw.add_argument("--l-min-km", type=float, required=True)
    sw.add_argument("--l-max-km", type=float, required=True)
    sw.add_argument("--step-km", type=float, required=True)
    sw.add_argument("--n-values", type=_int_list, required=True, help="e.g. 0,1,2,4,8")
    _add_attenuation(sw)
    sw.add_argument("--epsilon", type=float, default=0.0)
    sw.add_argument("--uses-total", type=float, help="needed when --epsilon > 0")
    sw.add_argument("--clock-hz", type=float, help="report time to first bit at L_max")
    sw.add_argument("--trials", type=_positive_int, help="adds Monte Carlo columns")
    sw.add_argument("--seed", type=_seed, default=0)
    sw.add_argument("--out", required=True, help="output CSV path")
    sw.set_defaults(func=cmd_sweep)

    rt = sub.add_parser("route", help="best single path by bound-derived weights")
    rt.add_argument("--network", required=True)
    rt.set_defaults(func=cmd_route)

    cv = sub.add_parser("convert", help="dB/km <-> attenuation length")
    g = cv.add_mutually_exclusive_group(required=True)
    g.add_argument("--db-per-km", type=float)
    g.add_argument("--att-length-km", type=float)
    cv.set_defaults(func=cmd_convert)
    return parser


def _chain_witness(chain: ChainSpec) -> List[str]:
    # At the optimal allocation every finite segment is tight; take the first.
    ids = chain.node_ids()
    for j, eta in enumerate(chain.segment_transmittances()):
        if eta < 1.0:
            return list(ids[: j + 1])
    return ["A"]


def cmd_bound_chain(args) -> int:
    chain = _chain_from_args(args)
    eps = EpsilonParams(args.epsilon)
    if chain.equally_spaced:
        per_use = chain_bound_per_use(chain)
    else:
        per_use = uneven_chain_bound_per_use(chain)
    print(f"per_use_bits={_fmt(per_use)}")
    if args.uses_total is not None:
        if chain.equally_spaced:
            total = chain_bound_total(chain, args.uses_total, eps)
        else:
            total = epsilon_adjust(args.uses_total * per_use if args.uses_total else 0.0, eps)
        print(f"total_bits={_fmt(total)}")
        if args.uses_total > 0:
            print(f"per_use_bits_eps_adjusted={_fmt(total / args.uses_total)}")
    if chain.equally_spaced:
        print(f"approx_per_use_bits={_fmt(small_eta_chain_approx(chain))}")
        print(f"eta_segment={_fmt(chain.eta_segment)}")
    print(f"epsilon={_fmt(eps.epsilon)}")
    print(f"witness={','.join(_chain_witness(chain))}")
    return EXIT_OK


def cmd_bound_network(args) -> int:
    network, profile = netfile.load(args.network)
    report = network_bound(network, profile, args.epsilon)
    side_b = sorted(set(network.nodes) - report.witness_cut.side_a)
    print(f"min_cut_bits={_fmt(report.raw_min_cut_bits)} witness={','.join(report.witness_cut.sorted_ids())}")
    print(f"side_b={','.join(side_b)}")
    print(f"adjusted_bits={_fmt(report.adjusted_bits)}")
    if report.per_use_bits is not None:
        print(f"per_use_bits={_fmt(report.per_use_bits)}")
    print(f"epsilon={_fmt(report.epsilon)}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    chain = _chain_from_args(args)
    res = simulate(SimConfig(chain, args.trials, args.seed))
    if chain.equally_spaced:
        bound = chain_bound_per_use(chain)
        analytic = _fmt(analytic_repeater_rate(chain))
    else:
        bound = uneven_chain_bound_per_use(chain)
        analytic = "n/a"
    print(f"rate_per_use={_fmt(res.rate_per_use)}")
    print(f"stderr={_fmt(res.stderr_rate)}")
    print(f"analytic_rate={analytic}")
    print(f"bound_per_use={_fmt(bound)}")
    print(f"ratio_to_bound={_fmt(res.rate_per_use / bound)}")
    print(f"trials={res.trials} total_channel_uses={_fmt(res.total_channel_uses)}")
    print("per_link_mean_uses=" + ",".join(_fmt(m) for m in res.per_link_mean_uses))
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = SweepSpec(
        args.l_min_km,
        args.l_max_km,
        args.step_km,
        tuple(args.n_values),
        epsilon=args.epsilon,
        total_uses=args.uses_total,
        clock_hz=args.clock_hz,
        trials=args.trials,
        seed=args.seed if args.trials else None,
        **_attenuation_kwargs(args),
    )
    rows = sweep_rows(spec)
    write_csv(rows, args.out, with_mc=spec.with_mc)
    print(f"wrote {len(rows)} rows to {args.out}")
    if spec.clock_hz:
        last = {}
        for r in rows:
            last[r.n] = r
        for n, r in sorted(last.items()):
            if r.bound_per_use > 0 and math.isfinite(r.bound_per_use):
                t = time_to_first_bit(r.bound_per_use, spec.clock_hz)
                print(f"n={n} L_km={_fmt(r.L_km)} time_to_first_bit_s={_fmt(t)}")
    return EXIT_OK


def cmd_route(args) -> int:
    network, _ = netfile.load(args.network)
    route = best_path(network)
    print("path=" + ",".join(str(v) for v in route.nodes))
    print("edges=" + ",".join(str(i) for i in route.edges))
    print(f"per_use_bits={_fmt(route.per_use_bound_bits)}")
    return EXIT_OK


def cmd_convert(args) -> int:
    if args.db_per_km is not None:
        print(f"attenuation_length_km={_fmt(db_to_attenuation_length(args.db_per_km))}")
    else:
        print(f"loss_db_per_km={_fmt(attenuation_length_to_db(args.att_length_km))}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except netfile.NetworkFileError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except DisconnectedError as exc:
        sys.stderr.write(f"error: disconnected: {exc}\n")
        return EXIT_DISCONNECTED
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
