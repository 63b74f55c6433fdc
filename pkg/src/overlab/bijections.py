"""Constructive correspondences between the four families.

* hook algorithm: Frobenius symbols <-> overpartitions
* Durfee map: Frobenius symbols <-> overpartitions by generalized Durfee square
* peaks <-> columns: (k, i)-paths <-> Frobenius symbols with ranks in range
* the map F on multiplicity sequences
* volcanic uplift and its inverse
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .core import (
    FrobeniusSymbol,
    InvalidObject,
    MultiplicitySequence,
    Overpartition,
    generalized_durfee_size,
    multuple_division,
    successive_ranks,
)
from .paths import E, NE, S, SE, LatticePath, check_shape, max_height, peaks, relative_heights


class BijectionError(ValueError):
    """Input lies outside the domain of a bijection."""


def conjugate(parts: Sequence[int]) -> List[int]:
    parts = [p for p in parts if p > 0]
    if not parts:
        return []
    return [sum(1 for p in parts if p >= c) for c in range(1, max(parts) + 1)]


# ---------------------------------------------------------------------------
# hook algorithm

def frobenius_to_overpartition(f: FrobeniusSymbol) -> Overpartition:
    """Columns right to left; an overlined bottom entry merges a hook into alpha."""
    alpha: List[int] = []
    beta: List[int] = []
    for a, (b, o) in reversed(list(zip(f.top, f.bottom))):
        A = a + 1
        if o:
            if b < len(alpha):
                raise BijectionError("hook is shorter than the current diagram")
            alpha = [A] + [p + 1 for p in alpha] + [1] * (b - len(alpha))
        else:
            alpha = [p + 1 if t < b else p for t, p in enumerate(alpha)] + [1] * max(0, b - len(alpha))
            beta.append(A)
    parts = [(v, False) for v in alpha] + [(v, True) for v in beta]
    return Overpartition.from_parts(parts)


def overpartition_to_frobenius(op: Overpartition) -> FrobeniusSymbol:
    """Peel columns left to right.

    If the largest non-overlined part beats the largest overlined one, the
    column was a merged hook (overlined bottom entry); otherwise it was an
    overlined part of beta next to a plain column.
    """
    alpha = sorted(op.non_overlined(), reverse=True)
    beta = sorted(op.overlined(), reverse=True)
    top: List[int] = []
    bottom: List[Tuple[int, bool]] = []
    while alpha or beta:
        if alpha and (not beta or alpha[0] > beta[0]):
            A = alpha[0]
            bottom.append((len(alpha) - 1, True))
            alpha = [p - 1 for p in alpha[1:] if p > 1]
        else:
            A = beta.pop(0)
            bottom.append((len(alpha), False))
            alpha = [p - 1 for p in alpha if p > 1]
        top.append(A - 1)
    return FrobeniusSymbol(tuple(top), tuple(bottom))


# ---------------------------------------------------------------------------
# Durfee map

@dataclass(frozen=True)
class DurfeeDecomposition:
    beta: Tuple[int, ...]
    delta: Tuple[int, ...]
    alpha: Tuple[int, ...]
    gamma: Overpartition


def durfee_decompose(f: FrobeniusSymbol) -> DurfeeDecomposition:
    N = len(f)
    beta = [a + 1 for a in f.top]
    alpha = [b for b, _ in f.bottom]
    delta = []
    for pos, (_b, o) in enumerate(f.bottom, start=1):
        if o:
            for t in range(pos - 1):
                alpha[t] -= 1
            delta.append(pos - 1)
    gamma = [(v, True) for v in beta]
    for d in delta:
        v, _ = gamma[d]
        gamma[d] = (v + d, False)
    if any(a < 0 for a in alpha) or any(alpha[t] < alpha[t + 1] for t in range(N - 1)):
        raise BijectionError("alpha is not a partition")
    return DurfeeDecomposition(tuple(beta), tuple(sorted(delta, reverse=True)),
                               tuple(a for a in alpha if a), Overpartition.from_parts(gamma))


def durfee_frobenius(f: FrobeniusSymbol) -> Overpartition:
    """Frobenius symbol with N columns -> overpartition with generalized Durfee square N."""
    dec = durfee_decompose(f)
    return Overpartition.from_parts(list(dec.gamma.parts) + [(v, False) for v in conjugate(dec.alpha)])


def durfee_frobenius_inverse(op: Overpartition) -> FrobeniusSymbol:
    N = generalized_durfee_size(op)
    over = sorted(op.overlined(), reverse=True)
    plain = sorted(op.non_overlined(), reverse=True)
    take = N - len(over)
    gamma = [(v, True) for v in over] + [(v, False) for v in plain[:take]]
    alpha = conjugate(plain[take:])
    if len(alpha) > N:
        raise BijectionError("part below the square is too wide")
    # undo the pairing: position p holds an overlined beta_p, or beta_p + (p - 1)
    pool = list(gamma)
    beta: List[int] = []
    overlined_at: List[bool] = []
    for p in range(1, N + 1):
        best = None
        for idx, (v, o) in enumerate(pool):
            cand = v if o else v - p + 1
            key = (cand, o)
            if best is None or key > best[0]:
                best = (key, idx)
        (cand, o), idx = best
        pool.pop(idx)
        beta.append(cand)
        overlined_at.append(not o)
    alpha = alpha + [0] * (N - len(alpha))
    bottom = []
    for j in range(N):
        later = sum(1 for p in range(j + 1, N) if overlined_at[p])
        bottom.append((alpha[j] + later, overlined_at[j]))
    return FrobeniusSymbol(tuple(b - 1 for b in beta), tuple(bottom))


# ---------------------------------------------------------------------------
# paths <-> Frobenius symbols

def path_to_frobenius(p: LatticePath, k: int, i: int) -> FrobeniusSymbol:
    """Each peak gives a column; columns are listed from the rightmost peak."""
    a = k - i
    if p.start != a:
        raise BijectionError(f"path must start at height {a}")
    top, bottom = [], []
    for pk in reversed(peaks(p)):
        x, y, u = pk.x, pk.y, pk.u
        if pk.east_parity == 0:
            s2, t2 = x + a - y + u, x - a + y - 2 - u
        else:
            s2, t2 = x + a + y - 1 + u, x - a - y - 1 - u
        if s2 % 2 or t2 % 2:
            raise BijectionError("peak coordinates have the wrong parity")
        top.append(s2 // 2)
        bottom.append((t2 // 2, pk.kind == "NESE"))
    try:
        return FrobeniusSymbol(tuple(top), tuple(bottom))
    except InvalidObject as exc:
        raise BijectionError(f"path does not give a Frobenius symbol: {exc}") from exc


def rank_violations(f: FrobeniusSymbol, k: int, i: int) -> List[int]:
    """0-based column indices whose successive rank lies outside [2-i, 2k-i-1]."""
    return [c for c, r in enumerate(successive_ranks(f)) if not (2 - i <= r <= 2 * k - i - 1)]


def frobenius_to_path(f: FrobeniusSymbol, k: int, i: int) -> LatticePath:
    """Rebuild the unique path: valleys are SE runs, E runs at height 0, NE runs."""
    bad = rank_violations(f, k, i)
    if bad:
        r = successive_ranks(f)[bad[0]]
        raise BijectionError(f"column {bad[0]} has rank {r} outside [{2 - i}, {2 * k - i - 1}]")
    a = k - i
    ranks = successive_ranks(f)
    cols = list(zip(f.top, f.bottom, ranks))[::-1]  # left to right
    steps: List[str] = []
    cx, cy, parity = 0, a, 0
    for s, (t, over), r in cols:
        kind = 0 if r <= a else 1
        y = a + 1 - r if kind == 0 else r - a
        x = s + t + 1
        tx, ty = x - 1, y - 1
        e = (tx - cx) - cy - ty
        if e > 0:
            if (kind - parity) % 2 != e % 2:
                raise BijectionError("East-step parity does not match the peak type")
            steps += [SE] * cy + [E] * e + [NE] * ty
        else:
            if e % 2 or kind != parity:
                raise BijectionError("valley between peaks cannot be drawn")
            h = -e // 2
            if h > min(cy, ty):
                raise BijectionError("peaks are too close together")
            steps += [SE] * (cy - h) + [NE] * (ty - h)
        parity = kind
        steps.append(NE)
        if over:
            steps.append(SE)
            cx, cy = x + 1, y - 1
        else:
            steps.append(S)
            cx, cy = x, y - 1
    steps += [SE] * cy
    path = LatticePath(a, tuple(steps))
    if check_shape(path) is not None or path_to_frobenius(path, k, i) != f:
        raise BijectionError("symbol does not correspond to a path")
    return path


# ---------------------------------------------------------------------------
# the map F

def burge_F(ms: MultiplicitySequence) -> MultiplicitySequence:
    """Apply F to every multuple; f_0 is reset (a zero part is discarded)."""
    entries = [list(e) for e in ms.entries]
    tuples, _N = multuple_division(ms)
    for mt in tuples:
        m, l = mt.start, mt.length
        last = entries[m + l]
        if last == [1, True]:
            last[1] = False
            entries[m][1] = True
        elif l > 1:
            entries[m + l - 1][1] = False
            entries[m][1] = True
        last[0] -= 1
        entries[m][0] += 1
        if last[0] == 0:
            last[1] = False
    entries[0] = [0, False]
    while len(entries) > 1 and entries[-1][0] == 0:
        entries.pop()
    return MultiplicitySequence(tuple((c, o) for c, o in entries))


def burge_F_multuple(start: int, values: Sequence[Tuple[int, bool]]) -> Tuple[Tuple[int, bool], ...]:
    """F on a single multuple given as a slice starting at index ``start``."""
    vals = [list(v) for v in values]
    l = len(vals) - 1
    if vals[l] == [1, True]:
        vals[l][1] = False
        vals[0][1] = True
    elif l > 1:
        vals[l - 1][1] = False
        vals[0][1] = True
    vals[l][0] -= 1
    vals[0][0] += 1
    return tuple((c, o) for c, o in vals)


# ---------------------------------------------------------------------------
# volcanic uplift

@dataclass(frozen=True)
class UpliftCertificate:
    base: LatticePath
    lam: Tuple[int, ...]
    b: Tuple[int, ...]
    k: int
    i: int

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        object.__setattr__(self, "b", tuple(self.b))

    @property
    def n2(self) -> int:
        return len(peaks(self.base))

    @property
    def n1(self) -> int:
        return self.n2 + len(self.b)

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "lambda": list(self.lam), "b": list(self.b),
                "k": self.k, "i": self.i}

    @classmethod
    def from_json(cls, obj) -> "UpliftCertificate":
        return cls(LatticePath.from_json(obj["base"]), tuple(obj["lambda"]), tuple(obj["b"]),
                   obj["k"], obj["i"])


def base_start(k: int, i: int) -> int:
    return k - max(i, 2)


def is_base_path(p: LatticePath, k: int, i: int) -> bool:
    """No S steps, starts at k - max(i, 2), stays below k - 1."""
    return (S not in p.steps and p.start == base_start(k, i)
            and check_shape(p) is None and max_height(p) <= k - 2)


def check_certificate(c: UpliftCertificate) -> None:
    if c.k < 2 or not (1 <= c.i <= c.k):
        raise BijectionError(f"invalid (k, i) = ({c.k}, {c.i})")
    if not is_base_path(c.base, c.k, c.i):
        raise BijectionError("base path is not in the pre-uplift class")
    n1 = c.n1
    if any(c.lam[t] <= c.lam[t + 1] for t in range(len(c.lam) - 1)):
        raise BijectionError("lambda must be strictly decreasing")
    if any(not (0 <= v < n1) for v in c.lam):
        raise BijectionError("lambda parts must lie in [0, n1 - 1]")
    if any(v < 0 for v in c.b) or any(c.b[t] < c.b[t + 1] for t in range(len(c.b) - 1)):
        raise BijectionError("b must be nonincreasing and nonnegative")


def volcanic_uplift(p: LatticePath) -> LatticePath:
    """Insert NE,S right after every peak's NE step."""
    marks = {pk.index for pk in peaks(p)}
    steps: List[str] = []
    for t, s in enumerate(p.steps):
        steps.append(s)
        if t in marks:
            steps += [NE, S]
    return LatticePath(p.start, tuple(steps))


def _peak_starts(steps: Sequence[str]) -> List[int]:
    return [t for t in range(len(steps) - 1) if steps[t] == NE and steps[t + 1] in (S, SE)]


def _adjacent_right(steps: Sequence[str], t: int) -> bool:
    return t + 3 < len(steps) and steps[t + 2] == NE and steps[t + 3] in (S, SE)


def _adjacent_left(steps: Sequence[str], t: int) -> bool:
    if t >= 1 and steps[t - 1] == S:
        return True
    return t >= 2 and steps[t - 1] == SE and steps[t - 2] == NE


def move_right(steps: List[str], t: int) -> int:
    """Move the peak whose NE is at ``t`` one unit right; returns the moved peak's new NE index.

    If the peak touches the next peak, the move passes to the rightmost peak of
    that run of adjacent peaks.
    """
    while _adjacent_right(steps, t):
        t += 2
    d = steps[t + 1]
    x = steps[t + 2] if t + 2 < len(steps) else E
    if x == E:
        steps[t:t + 3] = [E, NE, d]
    elif x == NE:
        steps[t:t + 3] = [NE, NE, d]
    elif x == SE:
        steps[t:t + 3] = [SE, NE, d]
    else:
        raise BijectionError(f"cannot move a peak followed by {d},{x}")
    return t + 1


def move_left(steps: List[str], t: int) -> int:
    """Reverse of :func:`move_right` for a peak that is not adjacent on its left."""
    prev = steps[t - 1]
    d = steps[t + 1]
    if prev == E:
        steps[t - 1:t + 2] = [NE, d, E]
        if t + 1 == len(steps) - 1:
            steps.pop()
    elif prev == NE:
        steps[t - 1:t + 2] = [NE, d, NE]
    elif prev == SE:
        steps[t - 1:t + 2] = [NE, d, SE]
    else:
        raise BijectionError(f"cannot move a peak preceded by {prev}")
    return t - 1


def _relative_one(steps: Sequence[str], start: int) -> List[int]:
    p = LatticePath(start, tuple(steps))
    return [pk.index for pk, h in zip(peaks(p), relative_heights(p)) if h == 1]


def uplift(c: UpliftCertificate) -> LatticePath:
    check_certificate(c)
    i = c.i
    m = len(c.b)
    up = volcanic_uplift(c.base)
    steps = [NE, S] * m + list(up.steps)
    start = up.start
    if i == 1:
        steps = [SE] + steps
        start += 1
    starts = _peak_starts(steps)
    n1 = len(starts)
    for part in c.lam:
        t = starts[n1 - 1 - part]  # the (part+1)-th peak from the right
        if steps[t + 1] != S:
            raise BijectionError("peak is already NESE")
        steps[t + 1] = SE
        starts = _peak_starts(steps)
    for j, moves in enumerate(c.b, start=1):
        ones = _relative_one(steps, start)
        t = ones[len(ones) - j]
        for _ in range(moves):
            t = move_right(steps, t)
    return LatticePath(start, tuple(steps))


def uplift_inverse(p: LatticePath, k: int, i: int) -> UpliftCertificate:
    from .paths import validate

    if not validate(p, k, i):
        raise BijectionError("not a valid (k, i)-path")
    steps = list(p.steps)
    start = p.start
    lead = 1 if i == 1 else 0
    if lead and steps and steps[0] != SE:
        raise BijectionError("a path for i = 1 must open with SE")
    if lead and not steps:
        raise BijectionError("a path for i = 1 cannot be empty")
    counts: List[int] = []
    target = lead
    while True:
        ones = _relative_one(steps, start)
        if len(ones) <= len(counts):
            break
        t = ones[len(counts)]
        n = 0
        while t != target:
            if t < target:
                raise BijectionError("peak passed its target")
            while t != target and _adjacent_left(steps, t):
                t -= 2
            if t == target:
                break
            t = move_left(steps, t)
            n += 1
        counts.append(n)
        target = t + 2
    b = tuple(reversed(counts))
    # NESE peaks back to NES, reading lambda
    starts = _peak_starts(steps)
    n1 = len(starts)
    lam = []
    for pos, t in enumerate(starts):
        if steps[t + 1] == SE:
            lam.append(n1 - 1 - pos)
            steps[t + 1] = S
    lam.sort(reverse=True)
    if lead:
        steps = steps[1:]
        start -= 1
    m = len(b)
    if steps[:2 * m] != [NE, S] * m:
        raise BijectionError("inserted peaks are missing at the start")
    steps = steps[2 * m:]
    base: List[str] = []
    t = 0
    while t < len(steps):
        if steps[t] == NE and t + 1 < len(steps) and steps[t + 1] == S:
            if not base or base[-1] != NE or t + 2 >= len(steps) or steps[t + 2] != SE:
                raise BijectionError("peak cannot be deflated")
            t += 2
            continue
        base.append(steps[t])
        t += 1
    cert = UpliftCertificate(LatticePath(start, tuple(base)), tuple(lam), b, k, i)
    check_certificate(cert)
    return cert
