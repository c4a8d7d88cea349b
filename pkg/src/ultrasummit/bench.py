"""
Random elements and the summit-set experiments.

Randomness comes from :class:`random.Random` (MT19937), seeded explicitly, so
a given ``(seed, presentation, n, r, sample index)`` always yields the same
element on every platform. Per-sample seeds are derived from a string seed,
which Python hashes with SHA-512.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Optional, Sequence

from .garside import CanonicalForm, GarsidePresentation, multiply
from .oracle import BudgetExceeded, OracleBudget, brute_sss
from .summit import _cycle, _sss_pieces, ultra_summit_set
from .wordfmt import format_element, presentation


def _as_rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_product(p: GarsidePresentation, r: int, rng: random.Random) -> CanonicalForm:
    """``δ^k A_1⋯A_m`` with uniform simples ``A_i`` drawn until the product has length ``r``; ``k ∈ {0, 1}``."""
    x = p.identity_element()
    while len(x.factors) != r:
        x = multiply(x, p.simple_element(p.random_simple(rng)))
    k = rng.randrange(2)
    return multiply(p.delta_power(k), x)


def summit_length(x: CanonicalForm) -> int:
    y, _ = _sss_pieces(x)
    return len(y.factors)


def random_canonical(p: GarsidePresentation, r: int, seed, summit: bool = False) -> CanonicalForm:
    """
    A random element of canonical length ``r``.

    With ``summit`` set, draws are repeated until the summit length (the
    canonical length of a super summit conjugate) equals ``r``.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    rng = _as_rng(seed)
    while True:
        x = random_product(p, r, rng)
        if not summit or summit_length(x) == r:
            return x


def random_fixed_factors(p: GarsidePresentation, r: int, seed) -> CanonicalForm:
    """``δ^k A_1⋯A_r`` with exactly ``r`` independent uniform simples and ``k ∈ {0, 1}``."""
    rng = _as_rng(seed)
    k = rng.randrange(2)
    x = p.delta_power(k)
    for _ in range(r):
        x = multiply(x, p.simple_element(p.random_simple(rng)))
    return x


def sample_seeds(seed: int, kind: str, n: int, r: int, samples: int, table: str) -> list[int]:
    rng = random.Random(f"{table}/{seed}/{kind}/{n}/{r}")
    return [rng.getrandbits(63) for _ in range(samples)]


# -- per-sample measurements ------------------------------------------------

def measure_table1(kind: str, n: int, r: int, sample_seed: int, budget: Optional[OracleBudget]) -> dict:
    p = presentation(kind, n)
    x = random_canonical(p, r, sample_seed, summit=True)
    t0 = time.perf_counter()
    uss = ultra_summit_set(x)
    t_u = (time.perf_counter() - t0) * 1000
    rec = {
        "word": format_element(x),
        "len": len(x.factors),
        "U": len(uss),
        "nU": uss.n_trajectories,
        "tU_ms": t_u,
        "S": None,
        "tS_ms": None,
    }
    if budget is not None:
        try:
            t0 = time.perf_counter()
            S = brute_sss(x, budget)
            rec["tS_ms"] = (time.perf_counter() - t0) * 1000
            rec["S"] = len(S)
        except BudgetExceeded:
            pass
    return rec


def in_summit_sets(x: CanonicalForm) -> tuple[int, bool, bool]:
    """``(len_s(x), x ∈ S_x, x ∈ U_x)``."""
    y, _ = _sss_pieces(x)
    in_s = (x.inf, x.sup) == (y.inf, y.sup)
    in_u = False
    if in_s:
        # inside S_x cycling is eventually periodic; x is in U_x iff it comes back
        z, seen = x, set()
        while z not in seen:
            seen.add(z)
            z = _cycle(z)[0]
        in_u = z == x
    return len(y.factors), in_s, in_u


def measure_table3(kind: str, n: int, r: int, sample_seed: int, budget=None) -> dict:
    p = presentation(kind, n)
    x = random_fixed_factors(p, r, sample_seed)
    len_s, in_s, in_u = in_summit_sets(x)
    return {"word": format_element(x), "len": len(x.factors), "len_s": len_s, "in_S": in_s, "in_U": in_u}


MEASURES = {"table1": measure_table1, "table3": measure_table3}


def _run_one(args):
    table, kind, n, r, index, s, budget = args
    rec = MEASURES[table](kind, n, r, s, budget)
    rec.update({"table": table, "presentation": kind, "n": n, "r": r, "index": index, "sample_seed": s})
    return rec


def run_samples(table: str, kind: str, n: int, r: int, samples: int, seed: int,
                budget: Optional[OracleBudget] = None, jobs: int = 1) -> list[dict]:
    """Measure ``samples`` seeded samples; results are in sample order regardless of ``jobs``."""
    seeds = sample_seeds(seed, kind, n, r, samples, table)
    work = [(table, kind, n, r, i, s, budget) for i, s in enumerate(seeds)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_run_one, work))
    return [_run_one(w) for w in work]


# -- aggregation --------------------------------------------------------------

@dataclass
class ExperimentRecord:
    """One CSV row. Columns that do not apply to a table are left empty."""

    table: str
    presentation: str
    n: int
    r: int
    samples: int
    seed: int
    len_avg: Optional[float] = None
    len_s_avg: Optional[float] = None
    U_avg: Optional[float] = None
    U_max: Optional[int] = None
    S_avg: Optional[float] = None
    S_max: Optional[int] = None
    S_samples: Optional[int] = None
    nU_avg: Optional[float] = None
    nU_max: Optional[int] = None
    tU_avg_ms: Optional[float] = None
    tU_max_ms: Optional[float] = None
    tS_avg_ms: Optional[float] = None
    tS_max_ms: Optional[float] = None
    eps_S: Optional[float] = None
    eps_U: Optional[float] = None


CSV_COLUMNS = [f.name for f in fields(ExperimentRecord)]


def _avg(xs):
    xs = list(xs)
    return sum(xs) / len(xs) if xs else None


def summarize(table: str, kind: str, n: int, r: int, seed: int, recs: Sequence[dict]) -> ExperimentRecord:
    """Aggregate per-sample records (as logged) into a row."""
    row = ExperimentRecord(table, kind, n, r, len(recs), seed)
    row.len_avg = _avg(x["len"] for x in recs)
    if table == "table1":
        row.U_avg = _avg(x["U"] for x in recs)
        row.U_max = max(x["U"] for x in recs)
        row.nU_avg = _avg(x["nU"] for x in recs)
        row.nU_max = max(x["nU"] for x in recs)
        row.tU_avg_ms = _avg(x["tU_ms"] for x in recs)
        row.tU_max_ms = max(x["tU_ms"] for x in recs)
        with_s = [x for x in recs if x["S"] is not None]
        if with_s:
            row.S_samples = len(with_s)
            row.S_avg = _avg(x["S"] for x in with_s)
            row.S_max = max(x["S"] for x in with_s)
            row.tS_avg_ms = _avg(x["tS_ms"] for x in with_s)
            row.tS_max_ms = max(x["tS_ms"] for x in with_s)
    else:
        row.len_s_avg = _avg(x["len_s"] for x in recs)
        row.eps_S = 100.0 * sum(x["in_S"] for x in recs) / len(recs)
        row.eps_U = 100.0 * sum(x["in_U"] for x in recs) / len(recs)
    return row


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def write_csv(rows: Iterable[ExperimentRecord], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        d = asdict(row)
        w.writerow([_cell(d[c]) for c in CSV_COLUMNS])


def csv_text(rows: Iterable[ExperimentRecord]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def write_jsonl(recs: Iterable[dict], out) -> None:
    for rec in recs:
        out.write(json.dumps(rec, sort_keys=True) + "\n")


def run_experiment(table: str, kind: str, ns: Sequence[int], rs: Sequence[int], samples: int, seed: int,
                   budget: Optional[OracleBudget] = None, jobs: int = 1) -> tuple[list[ExperimentRecord], list[dict]]:
    rows, log = [], []
    for n in ns:
        for r in rs:
            recs = run_samples(table, kind, n, r, samples, seed, budget, jobs)
            log.extend(recs)
            rows.append(summarize(table, kind, n, r, seed, recs))
    return rows, log
