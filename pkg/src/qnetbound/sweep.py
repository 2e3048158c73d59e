"""Distance/node-count sweeps comparing chain bounds with the idealized repeater."""

from __future__ import annotations

import csv
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from .bounds import ChainSpec, chain_bound_per_use, chain_bound_total, small_eta_chain_approx
from .errors import DomainError, SpecificationError
from .photonics import EpsilonParams
from .repeater_sim import SimConfig, analytic_repeater_rate, default_workers, simulate

COLUMNS = ("L_km", "n", "eta_segment", "bound_per_use", "achievable_per_use", "approx_per_use")
MC_COLUMNS = ("mc_rate", "mc_stderr")


@dataclass(frozen=True)
class SweepSpec:
    l_min_km: float
    l_max_km: float
    step_km: float
    n_values: Tuple[int, ...]
    attenuation_length_km: Optional[float] = None
    loss_db_per_km: Optional[float] = None
    epsilon: float = 0.0
    total_uses: Optional[float] = None
    clock_hz: Optional[float] = None
    trials: Optional[int] = None
    seed: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(sorted(set(int(n) for n in self.n_values))))
        if not self.n_values or self.n_values[0] < 0:
            raise SpecificationError("n_values must be a non-empty list of nonnegative integers")
        if not (self.l_min_km >= 0 and self.l_max_km >= self.l_min_km):
            raise SpecificationError("need 0 <= L_min <= L_max")
        if not self.step_km > 0:
            raise SpecificationError("step must be positive")
        EpsilonParams(self.epsilon)
        if self.epsilon > 0 and self.total_uses is None:
            raise SpecificationError("a nonzero epsilon needs total_uses to give a per-use bound")
        if self.trials is not None and self.trials < 1:
            raise SpecificationError("trials must be >= 1")
        if self.clock_hz is not None and not self.clock_hz > 0:
            raise SpecificationError("clock_hz must be positive")

    @property
    def with_mc(self) -> bool:
        return self.trials is not None

    def lengths(self) -> List[float]:
        count = int(math.floor((self.l_max_km - self.l_min_km) / self.step_km * (1 + 1e-12))) + 1
        return [self.l_min_km + i * self.step_km for i in range(count)]

    def chain(self, length_km: float, n: int) -> ChainSpec:
        return ChainSpec(
            length_km,
            n,
            attenuation_length_km=self.attenuation_length_km,
            loss_db_per_km=self.loss_db_per_km,
        )


@dataclass(frozen=True)
class SweepRow:
    L_km: float
    n: int
    eta_segment: float
    bound_per_use: float
    achievable_per_use: float
    approx_per_use: float
    mc_rate: Optional[float] = None
    mc_stderr: Optional[float] = None


def _row(spec: SweepSpec, length_km: float, n: int) -> SweepRow:
    chain = spec.chain(length_km, n)
    if spec.epsilon > 0:
        bound = chain_bound_total(chain, spec.total_uses, spec.epsilon) / spec.total_uses
    else:
        bound = chain_bound_per_use(chain)
    mc_rate = mc_stderr = None
    if spec.with_mc:
        res = simulate(SimConfig(chain, spec.trials, spec.seed or 0), workers=1)
        mc_rate, mc_stderr = res.rate_per_use, res.stderr_rate
    return SweepRow(
        length_km,
        n,
        chain.eta_segment,
        bound,
        analytic_repeater_rate(chain),
        small_eta_chain_approx(chain),
        mc_rate,
        mc_stderr,
    )


def sweep_rows(spec: SweepSpec, workers: Optional[int] = None) -> List[SweepRow]:
    """One row per ``(L, n)``, sorted by ``n`` and then ``L``."""
    grid = [(length, n) for n in spec.n_values for length in spec.lengths()]
    workers = workers or default_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda p: _row(spec, *p), grid))
    return [_row(spec, length, n) for length, n in grid]


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def format_rows(rows: Sequence[SweepRow], with_mc: bool) -> List[List[str]]:
    out = [list(COLUMNS + (MC_COLUMNS if with_mc else ()))]
    for r in rows:
        line = [
            _fmt(r.L_km),
            str(r.n),
            _fmt(r.eta_segment),
            _fmt(r.bound_per_use),
            _fmt(r.achievable_per_use),
            _fmt(r.approx_per_use),
        ]
        if with_mc:
            line += [_fmt(r.mc_rate), _fmt(r.mc_stderr)]
        out.append(line)
    return out


def write_csv(rows: Sequence[SweepRow], path: Union[str, Path], with_mc: bool = False) -> None:
    """Write rows atomically (temporary file in the target directory, then rename)."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    except OSError as exc:
        raise DomainError(f"cannot write {path}: {exc.strerror}") from None
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh, lineterminator="\n").writerows(format_rows(rows, with_mc))
        os.replace(tmp, path)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise DomainError(f"cannot write {path}: {exc.strerror}") from None
