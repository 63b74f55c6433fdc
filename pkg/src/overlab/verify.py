"""Exhaustive cross-checks of the identities.

Each family is tallied by its own enumerator.  None of them goes through a
bijection, so agreement between the tables is evidence, not a tautology.
Reports are plain dicts ready for JSON.
"""
from __future__ import annotations

import os
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

from . import qseries as qs
from .core import (
    Overpartition,
    durfee_dissection,
    in_family_b,
    iter_frobenius,
    iter_overpartitions,
    iter_superpartitions,
    multiplicity_sequence,
    multuple_division,
    n_durfee_size,
    partitions,
    sequence_length,
    successive_ranks,
)
from .paths import LatticePath, height_profile, iter_paths_upto, peaks, relative_heights, validate

FAMILIES = ("B", "C", "D", "E")
LIMIT_ENV = "OVERLAB_MAX_N"
DEFAULT_LIMIT = 24


class ResourceLimitError(RuntimeError):
    """A request exceeds the enumeration ceiling set by ``OVERLAB_MAX_N``."""


def max_n() -> int:
    raw = os.environ.get(LIMIT_ENV)
    if raw is None:
        return DEFAULT_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise ResourceLimitError(f"{LIMIT_ENV} must be an integer, got {raw!r}") from None


def guard(nmax: int) -> None:
    limit = max_n()
    if nmax > limit:
        raise ResourceLimitError(f"nmax={nmax} exceeds the ceiling {limit} (raise {LIMIT_ENV} to allow it)")


def _check_ki(k: int, i: int) -> None:
    if k < 2 or not (1 <= i <= k):
        raise ValueError(f"invalid (k, i) = ({k}, {i})")


Cell = Tuple[int, int, int]


@dataclass
class CountTable:
    family: str
    k: int
    i: int
    nmax: int
    cells: Counter = field(default_factory=Counter)

    def marginal(self) -> Counter:
        """Counts by ``(n, j)``."""
        out: Counter = Counter()
        for (n, j, _N), c in self.cells.items():
            out[(n, j)] += c
        return out

    def totals(self) -> list:
        out = [0] * (self.nmax + 1)
        for (n, _j, _N), c in self.cells.items():
            out[n] += c
        return out

    def to_json(self) -> dict:
        return {"family": self.family, "k": self.k, "i": self.i, "nmax": self.nmax,
                "cells": [[n, j, N, c] for (n, j, N), c in sorted(self.cells.items())]}


def _in_interval(ranks, lo: int, hi: int) -> bool:
    return all(lo <= r <= hi for r in ranks)


def count_family(family: str, k: int, i: int, nmax: int,
                 rank_interval: Optional[Tuple[int, int]] = None) -> CountTable:
    """Tally ``(n, j, N)`` for one family by direct enumeration.

    * B: gap condition and at most i-1 ones; j overlines, N multiplicity-sequence length
    * C: Frobenius symbols with ranks in [2-i, 2k-i-1]; j plain bottom entries, N columns
    * D: Durfee dissection; j overlines, N the first block size
    * E: (k, i)-paths; j South steps, N peaks
    """
    _check_ki(k, i)
    guard(nmax)
    table = CountTable(family, k, i, nmax)
    cells = table.cells
    if family == "B":
        for n in range(nmax + 1):
            for op in iter_overpartitions(n):
                if in_family_b(op, k, i):
                    cells[(n, op.overlined_count, sequence_length(op))] += 1
    elif family == "C":
        lo, hi = rank_interval or (2 - i, 2 * k - i - 1)
        for n in range(nmax + 1):
            for f in iter_frobenius(n):
                if _in_interval(successive_ranks(f), lo, hi):
                    cells[(n, f.non_overlined_bottom, len(f))] += 1
    elif family == "D":
        for n in range(nmax + 1):
            for op in iter_overpartitions(n):
                prof = durfee_dissection(op, k, i)
                if prof is not None:
                    cells[(n, op.overlined_count, prof.sizes[0])] += 1
    elif family == "E":
        for p in iter_paths_upto(k, i, nmax):
            pk = peaks(p)
            n = sum(q.x for q in pk)
            cells[(n, sum(1 for q in pk if q.kind == "NES"), len(pk))] += 1
    else:
        raise ValueError(f"unknown family {family!r}")
    return table


def _first_difference(tables: Dict[str, Counter]):
    keys = sorted(set().union(*tables.values()))
    for key in keys:
        vals = {name: t.get(key, 0) for name, t in tables.items()}
        if len(set(vals.values())) > 1:
            return {"cell": list(key), "counts": vals}
    return None


def _report(identity: str, ok: bool, diff, started: float, **params) -> dict:
    return {"identity": identity, "pass": bool(ok), "first_discrepancy": diff,
            "seconds": round(time.perf_counter() - started, 3), "params": params}


def verify_main(k: int, i: int, nmax: int, rank_interval: Optional[Tuple[int, int]] = None,
                with_series: bool = True) -> dict:
    """Compare the four (n, j, N)-tables, then the (n, j) marginal with the series."""
    started = time.perf_counter()
    tables = {fam: count_family(fam, k, i, nmax, rank_interval).cells for fam in FAMILIES}
    diff = _first_difference(tables)
    if diff is None and with_series:
        e = qs.e_series(k, i, nmax)
        series = Counter({(q, a): c for q, a, _x, c in e.terms()})
        marg = Counter()
        for (n, j, _N), c in tables["E"].items():
            marg[(n, j)] += c
        diff = _first_difference({"E": marg, "series": series})
    params = {"k": k, "i": i, "nmax": nmax}
    if rank_interval is not None:
        params["rank_interval"] = list(rank_interval)
    return _report("main", diff is None, diff, started, **params)


# ---------------------------------------------------------------------------
# series identities

def _series_report(identity: str, left: qs.TruncatedSeries, right: qs.TruncatedSeries,
                   started: float, **params) -> dict:
    d = left.first_difference(right)
    diff = None if d is None else {"q": d[0], "a": d[1], "x": d[2], "left": str(d[3]), "right": str(d[4])}
    return _report(identity, d is None, diff, started, **params)


def verify_path_series(k: int, i: int, nmax: int) -> dict:
    """Bivariate coefficients of the series against a tally of the paths."""
    started = time.perf_counter()
    guard(nmax)
    counts = Counter()
    for p in iter_paths_upto(k, i, nmax):
        pk = peaks(p)
        counts[(sum(q.x for q in pk), 0, sum(1 for q in pk if q.kind == "NES"))] += 1
    paths = qs.TruncatedSeries(nmax, {(n, a, 0): c for (n, _, a), c in counts.items()})
    return _series_report("path-series", qs.e_series(k, i, nmax), paths, started, k=k, i=i, nmax=nmax)


def verify_closed_forms(k: int, Nmax: int, qmax: int) -> dict:
    """Closed forms for the peak-refined series against the recurrences."""
    started = time.perf_counter()
    E, G = qs.recurrence_tables(k, Nmax, qmax)
    for N in range(Nmax + 1):
        for i in range(1, k + 1):
            d = E[N][i].first_difference(qs.e_n_series(k, i, N, qmax))
            if d:
                return _report("closed-forms", False, {"series": "E", "i": i, "N": N, "term": list(d)},
                               started, k=k, Nmax=Nmax, qmax=qmax)
        for i in range(k):
            d = G[N][i].first_difference(qs.gamma_n_series(k, i, N, qmax))
            if d:
                return _report("closed-forms", False, {"series": "Gamma", "i": i, "N": N, "term": list(d)},
                               started, k=k, Nmax=Nmax, qmax=qmax)
    return _report("closed-forms", True, None, started, k=k, Nmax=Nmax, qmax=qmax)


def verify_durfee_series(k: int, i: int, qmax: int) -> dict:
    started = time.perf_counter()
    return _series_report("durfee-series", qs.d_series(k, i, qmax), qs.e_series(k, i, qmax), started,
                          k=k, i=i, qmax=qmax)


def verify_product_side(which: str, k: int, i: int, qmax: int) -> dict:
    started = time.perf_counter()
    return _series_report(which, qs.specialized_e(which, k, i, qmax), qs.product_side(which, k, i, qmax),
                          started, k=k, i=i, qmax=qmax)


def verify_telescoping(k: int, i: int, qmax: int) -> dict:
    """E(1,q) for i and i+1 sum to a single theta product times (-1)_inf/(q)_inf."""
    started = time.perf_counter()
    left = qs.specialized_e("eq5", k, i, qmax) + qs.specialized_e("eq5", k, i + 1, qmax)
    right = qs.overpartition_gf(qmax, marked=False) * 2 * qs.theta_product((i, 2 * k - i, 2 * k), 2 * k, qmax)
    return _series_report("telescoping", left, right, started, k=k, i=i, qmax=qmax)


def verify_n_durfee(n: int, qmax: int, weight_max: Optional[int] = None) -> dict:
    """The n-Durfee series identity; for n >= 0 also each stratum against enumeration."""
    started = time.perf_counter()
    ok = qs.n_durfee_identity_check(n, qmax)
    if not ok:
        d = qs.n_durfee_sum(n, qmax).first_difference(qs.overpartition_gf(qmax))
        return _report("n-durfee", False, {"series": list(d)}, started, n=n, qmax=qmax)
    if weight_max is not None and n >= 0:
        guard(weight_max)
        tally = Counter()
        for w in range(weight_max + 1):
            for op in iter_overpartitions(w):
                tally[(n_durfee_size(op, n), w, op.overlined_count)] += 1
        for N in range(n, weight_max + 2):
            s = qs.durfee_stratum(n, N, weight_max)
            for w in range(weight_max + 1):
                for j in range(w + 1):
                    if s.coeff(w, j) != tally.get((N, w, j), 0):
                        return _report("n-durfee", False,
                                       {"N": N, "n": w, "j": j, "series": s.coeff(w, j),
                                        "count": tally.get((N, w, j), 0)},
                                       started, n=n, qmax=qmax, weight_max=weight_max)
    return _report("n-durfee", True, None, started, n=n, qmax=qmax, weight_max=weight_max)


def part_count_table(k: int, i: int, nmax: int) -> Counter:
    """B-family tallies by ``(n, j, number of parts)``."""
    guard(nmax)
    out = Counter()
    for n in range(nmax + 1):
        for op in iter_overpartitions(n):
            if in_family_b(op, k, i):
                out[(n, op.overlined_count, len(op))] += 1
    return out


def verify_part_counts(k: int, i: int, nmax: int) -> dict:
    """Coefficients of J(-a, x, q) against B-tallies refined by the number of parts."""
    started = time.perf_counter()
    J = qs.j_series(k, i, nmax).negate_a()
    series = Counter({(q, a, x): c for q, a, x, c in J.terms()})
    tally = part_count_table(k, i, nmax)
    diff = _first_difference({"series": series, "count": tally})
    return _report("part-counts", diff is None, diff, started, k=k, i=i, nmax=nmax)


# ---------------------------------------------------------------------------
# the map F and its recurrences

def _b_by_length(k: int, i: int, nmax: int) -> Dict[int, qs.TruncatedSeries]:
    i = min(i, k)
    out: Dict[int, Dict] = {}
    for n in range(nmax + 1):
        for op in iter_overpartitions(n):
            if in_family_b(op, k, i):
                N = sequence_length(op)
                d = out.setdefault(N, {})
                d[(n, op.overlined_count, 0)] = d.get((n, op.overlined_count, 0), 0) + 1
    return {N: qs.TruncatedSeries(nmax, d) for N, d in out.items()}


def _opening(op: Overpartition):
    """The multuple starting at f_0, if there is one."""
    tuples, _ = multuple_division(multiplicity_sequence(op))
    return tuples[0] if tuples and tuples[0].start == 0 else None


def verify_burge(k: int, nmax: int) -> dict:
    """Trichotomy of F on every B-object, then the recurrences on tallies."""
    from .bijections import burge_F

    started = time.perf_counter()
    guard(nmax)
    zero = qs.TruncatedSeries.zero(nmax)
    B = {i: _b_by_length(k, i, nmax) for i in range(1, k + 2)}
    G: Dict[Tuple[int, int], Dict] = {}
    for i in range(1, k + 1):
        for n in range(nmax + 1):
            for op in iter_overpartitions(n):
                if not in_family_b(op, k, i):
                    continue
                N = sequence_length(op)
                if N == 0:
                    continue
                img = burge_F(multiplicity_sequence(op)).to_overpartition()
                head = _opening(op)
                if img.weight != n - N:
                    return _report("burge", False, {"object": str(op), "reason": "weight"}, started, k=k, nmax=nmax)
                if head is not None and (head.length > 1 or head.values[-1] == (1, True)):
                    ok = (img.overlined_count == op.overlined_count - 1 and in_family_b(img, k, i)
                          and sequence_length(img) == N - 1)
                elif head is not None:
                    ok = img.overlined_count == op.overlined_count
                    if i >= 2:
                        d = G.setdefault((i - 1, N), {})
                        key = (img.weight, img.overlined_count, 0)
                        d[key] = d.get(key, 0) + 1
                else:
                    ok = (img.overlined_count == op.overlined_count
                          and in_family_b(img, k, min(i + 1, k)) and sequence_length(img) == N)
                if not ok:
                    return _report("burge", False, {"object": str(op), "image": str(img)},
                                   started, k=k, nmax=nmax)
    Gs = {key: qs.TruncatedSeries(nmax, d) for key, d in G.items()}

    def b(i, N):
        return B[min(i, k)].get(N, qs.TruncatedSeries.one(nmax) if N == 0 else zero) if N >= 0 else zero

    def g(i, N):
        return Gs.get((i, N), zero)

    Nmax = max((N for i in B for N in B[i]), default=0)
    for N in range(1, Nmax + 1):
        qN, qN1 = qs.Mono(1, 0, N), qs.Mono(1, 0, N - 1)
        checks = [("B1", b(1, N), b(2, N).shift(qN), nmax)]
        for i in range(2, k + 1):
            rhs = (b(i + 1, N) + g(i - 1, N) + b(i, N - 1).shift(qs.Mono(1, 1, 0))).shift(qN)
            checks.append((f"B{i}", b(i, N), rhs, nmax))
        checks.append(("G1", g(1, N), b(2, N - 1).shift(qN1), nmax - N))
        for i in range(2, k):
            rhs = b(i + 1, N - 1).shift(qN1) + g(i - 1, N).shift(qN) + b(i, N - 1).shift(qs.Mono(1, 1, N))
            checks.append((f"G{i}", g(i, N), rhs, nmax - N))
        for name, left, right, deg in checks:
            if deg < 0:
                continue
            d = left.truncate(deg).first_difference(right.truncate(deg))
            if d:
                return _report("burge", False, {"recurrence": name, "N": N, "term": list(d)},
                               started, k=k, nmax=nmax)
    return _report("burge", True, None, started, k=k, nmax=nmax)


# ---------------------------------------------------------------------------
# random peak moves

def random_move_check(trials: int, seed: int, nmax: int = 12, ks=(2, 3, 4, 5)) -> dict:
    """Move random relative-height-one peaks once; the height profile must not change."""
    from .bijections import move_right

    started = time.perf_counter()
    guard(nmax)
    rng = random.Random(seed)
    pool = []
    for k in ks:
        for i in range(1, k + 1):
            for p in iter_paths_upto(k, i, nmax):
                ones = [q.index for q, h in zip(peaks(p), relative_heights(p)) if h == 1]
                if ones:
                    pool.append((p, k, i, ones))
    for t in range(trials):
        p, k, i, ones = rng.choice(pool)
        steps = list(p.steps)
        move_right(steps, rng.choice(ones))
        moved = LatticePath(p.start, tuple(steps))
        if not validate(moved, k, i) or height_profile(moved, k) != height_profile(p, k):
            return _report("moves", False, {"trial": t, "before": p.to_json(), "after": moved.to_json()},
                           started, trials=trials, seed=seed)
    return _report("moves", True, None, started, trials=trials, seed=seed)


# ---------------------------------------------------------------------------
# the 2-modular and superpartition theorems

def _avoids(values: Iterable[int], modulus: int, residues) -> bool:
    bad = {r % modulus for r in residues}
    return all(v % modulus not in bad for v in values)


def two_modular_counts(k: int, i: int, nmax: int) -> Dict[str, list]:
    """Five tallies by diagram weight n."""
    guard(nmax)
    out = {name: [0] * (nmax + 1) for name in ("congruence", "gap", "ranks", "durfee", "paths")}
    res = (2 * i - 1, -(2 * i - 1), 0)
    for n in range(nmax + 1):
        for lam in partitions(n):
            if _avoids(lam, 4, (2,)) and _avoids(lam, 4 * k, res):
                out["congruence"][n] += 1
            odd = [v for v in lam if v % 2]
            if len(odd) != len(set(odd)):
                continue
            ok = all(lam[l] - lam[l + k - 1] >= (3 if lam[l + k - 1] % 2 == 0 else 2)
                     for l in range(len(lam) - k + 1))
            if ok and sum(1 for v in lam if v in (1, 2)) < i:
                out["gap"][n] += 1
    # diagrams of weight n come from overpartitions of weight w with 2w - j = n
    wmax = nmax
    lo, hi = 2 - i, 2 * k - i - 1
    for w in range(wmax + 1):
        for f in iter_frobenius(w):
            n = 2 * w - f.non_overlined_bottom
            if n <= nmax and _in_interval(successive_ranks(f), lo, hi):
                out["ranks"][n] += 1
        for op in iter_overpartitions(w):
            n = 2 * w - op.overlined_count
            if n <= nmax and durfee_dissection(op, k, i) is not None:
                out["durfee"][n] += 1
    for p in iter_paths_upto(k, i, nmax):
        pk = peaks(p)
        n = 2 * sum(q.x for q in pk) - sum(1 for q in pk if q.kind == "NES")
        if n <= nmax:
            out["paths"][n] += 1
    return out


def superpartition_congruence_counts(k: int, i: int, nmax: int) -> Dict[str, list]:
    guard(nmax)
    out = {"overpartitions": [0] * (nmax + 1), "superpartitions": [0] * (nmax + 1)}
    for n in range(nmax + 1):
        for op in iter_overpartitions(n):
            out["overpartitions"][n] += in_family_b(op, k, i) + in_family_b(op, k, i + 1)
        for sp in iter_superpartitions(n):
            plain = [v for v, o in sp.parts if not o]
            if _avoids(plain, 2 * k, (0, i, -i)):
                out["superpartitions"][n] += 1
    return out


def superpartition_condition(parts, k: int, i: int) -> bool:
    """Gap and ones condition on a superpartition.

    Parts are read with the overlined copy first among equals; the gap
    ``lam_l - lam_{l+k-1}`` must be >= 1 when ``lam_l`` is overlined, else >= 2.
    """
    ps = sorted(parts, key=lambda p: (-p[0], not p[1]))
    for l in range(len(ps) - k + 1):
        if ps[l][0] - ps[l + k - 1][0] < (1 if ps[l][1] else 2):
            return False
    small = sum(1 for v, o in ps if (v == 1 and not o) or v == 0)
    return small <= i - 1


def superpartition_gap_counts(k: int, i: int, nmax: int) -> Dict[str, list]:
    guard(nmax)
    out = {"superpartitions": [0] * (nmax + 1), "overpartitions": [0] * (nmax + 1)}
    for n in range(nmax + 1):
        for sp in iter_superpartitions(n):
            if superpartition_condition(sp.parts, k, i):
                out["superpartitions"][n] += 1
        for op in iter_overpartitions(n):
            plain = op.non_overlined()
            out["overpartitions"][n] += _avoids(plain, 2 * k, (0, i, -i)) + _avoids(plain, 2 * k, (0, i - 1, 1 - i))
    return out


def verify_section7(which: str, k: int, i: int, nmax: int) -> dict:
    started = time.perf_counter()
    if which == "prop71":
        _check_ki(k, i)
        counts = two_modular_counts(k, i, nmax)
    elif which == "thm72":
        if not (1 <= i <= k - 1):
            raise ValueError("thm72 needs 1 <= i <= k-1")
        counts = superpartition_congruence_counts(k, i, nmax)
    elif which == "thm73":
        if not (2 <= i <= k - 1):
            raise ValueError("thm73 needs 2 <= i <= k-1")
        counts = superpartition_gap_counts(k, i, nmax)
    else:
        raise ValueError(f"unknown identity {which!r}")
    diff = None
    for n in range(nmax + 1):
        vals = {name: c[n] for name, c in counts.items()}
        if len(set(vals.values())) > 1:
            diff = {"n": n, "counts": vals}
            break
    return _report(which, diff is None, diff, started, k=k, i=i, nmax=nmax)
