"""Overpartitions, Frobenius symbols and their statistics.

Parts are stored as ``(value, overlined)`` pairs.  Overpartitions keep the
overlined copy of a value last among its equal parts; Frobenius bottom rows
keep it first.  Both conventions are enforced by the constructors, so two
equal objects always have equal tuples and equal JSON.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

Part = Tuple[int, bool]


class InvalidObject(ValueError):
    """Raised when a constructor receives data that breaks an invariant."""


def _coerce_parts(parts) -> Tuple[Part, ...]:
    out = []
    for p in parts:
        if isinstance(p, dict):
            v, o = p["v"], p.get("o", False)
        elif isinstance(p, int):
            v, o = p, False
        else:
            v, o = p
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidObject(f"part value {v!r} is not an integer")
        out.append((v, bool(o)))
    return tuple(out)


def _check_overline_rule(parts: Sequence[Part], overlined_last: bool, what: str) -> None:
    for v, group in itertools.groupby(parts, key=lambda p: p[0]):
        flags = [o for _, o in group]
        if sum(flags) > 1:
            raise InvalidObject(f"{what}: value {v} is overlined more than once")
        if sum(flags) == 1:
            pos = len(flags) - 1 if overlined_last else 0
            if not flags[pos]:
                where = "last" if overlined_last else "first"
                raise InvalidObject(f"{what}: overlined copy of {v} must come {where}")


def _canonical(parts: Iterable[Part], overlined_last: bool) -> Tuple[Part, ...]:
    # sort by value decreasing; the flag decides position within equal values
    if overlined_last:
        return tuple(sorted(parts, key=lambda p: (-p[0], p[1])))
    return tuple(sorted(parts, key=lambda p: (-p[0], not p[1])))


def _fmt(parts: Iterable[Part]) -> str:
    return " ".join(f"{v}'" if o else str(v) for v, o in parts)


_TOKEN = re.compile(r"^(\d+)('?)$")


def _parse_parts(text: str) -> Tuple[Part, ...]:
    """Parse ``"5' 4 3 3'"`` (a trailing quote marks an overline; commas allowed)."""
    out = []
    for tok in text.replace(",", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise InvalidObject(f"cannot parse part {tok!r}")
        out.append((int(m.group(1)), bool(m.group(2))))
    return tuple(out)


@dataclass(frozen=True)
class Overpartition:
    """Nonincreasing positive parts; the last copy of a value may be overlined."""

    parts: Tuple[Part, ...] = ()

    def __post_init__(self):
        parts = _coerce_parts(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(v <= 0 for v, _ in parts):
            raise InvalidObject("overpartition parts must be positive")
        if any(parts[t][0] < parts[t + 1][0] for t in range(len(parts) - 1)):
            raise InvalidObject("overpartition parts must be nonincreasing")
        _check_overline_rule(parts, True, "overpartition")

    @classmethod
    def from_parts(cls, parts) -> "Overpartition":
        """Build from parts in any order, canonicalising the overline position."""
        return cls(_canonical(_coerce_parts(parts), True))

    @classmethod
    def parse(cls, text: str) -> "Overpartition":
        return cls.from_parts(_parse_parts(text))

    @classmethod
    def from_json(cls, obj) -> "Overpartition":
        return cls(tuple((p["v"], p["o"]) for p in obj["parts"]))

    def to_json(self) -> dict:
        return {"parts": [{"v": v, "o": o} for v, o in self.parts]}

    def __str__(self) -> str:
        return f"({_fmt(self.parts)})"

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def values(self) -> Tuple[int, ...]:
        return tuple(v for v, _ in self.parts)

    @property
    def weight(self) -> int:
        return sum(v for v, _ in self.parts)

    @property
    def overlined_count(self) -> int:
        return sum(1 for _, o in self.parts if o)

    def overlined(self) -> List[int]:
        return [v for v, o in self.parts if o]

    def non_overlined(self) -> List[int]:
        return [v for v, o in self.parts if not o]


def weight(op: Overpartition) -> int:
    return op.weight


def overlined_count(op: Overpartition) -> int:
    return op.overlined_count


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    """Partitions of n with parts <= largest, in reverse lexicographic order."""
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int) -> Tuple[Tuple[int, ...], ...]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _partitions(n, n)


def _overlinings(values: Tuple[int, ...]) -> Iterator[Tuple[Part, ...]]:
    """All overline choices on a partition.

    Flags are chosen per distinct value; choices are ordered so that the
    flag of the smallest value varies slowest.
    """
    distinct = sorted(set(values), reverse=True)
    counts = {v: values.count(v) for v in distinct}
    for rev_flags in itertools.product((False, True), repeat=len(distinct)):
        flags = dict(zip(reversed(distinct), rev_flags))
        parts: List[Part] = []
        for v in distinct:
            parts.extend([(v, False)] * (counts[v] - 1))
            parts.append((v, flags[v]))
        yield tuple(parts)


def iter_overpartitions(n: int) -> Iterator[Overpartition]:
    """Every overpartition of n.

    Order: underlying partitions in reverse lexicographic order, then the
    overline choices with the smallest value's flag varying slowest.  For
    n = 3 this is (3), (3'), (2 1), (2' 1), (2 1'), (2' 1'), (1 1 1), (1 1 1').
    """
    for values in partitions(n):
        for parts in _overlinings(values):
            yield Overpartition(parts)


def enumerate_overpartitions(n: int) -> List[Overpartition]:
    return list(iter_overpartitions(n))


# ---------------------------------------------------------------------------
# multiplicity sequences and multuples

@dataclass(frozen=True)
class MultiplicitySequence:
    """Entries ``(f_0, f_1, ..., f_M)`` as ``(count, overlined)`` pairs, f_0 = 0 included."""

    entries: Tuple[Part, ...] = ((0, False),)

    def __post_init__(self):
        entries = _coerce_parts(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries or entries[0] != (0, False):
            raise InvalidObject("f_0 must be the plain entry 0")
        if any(c < 0 or (o and c == 0) for c, o in entries):
            raise InvalidObject("counts must be nonnegative and only positive counts overlined")
        if len(entries) > 1 and entries[-1][0] == 0:
            raise InvalidObject("trailing zero multiplicities must be trimmed")

    @classmethod
    def parse(cls, text: str) -> "MultiplicitySequence":
        return cls(_parse_parts(text))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, j: int) -> Part:
        if 0 <= j < len(self.entries):
            return self.entries[j]
        return (0, False)

    def __str__(self) -> str:
        return f"({_fmt(self.entries)})"

    @property
    def weight(self) -> int:
        return sum(j * c for j, (c, _) in enumerate(self.entries))

    def to_overpartition(self) -> Overpartition:
        parts: List[Part] = []
        for j in range(len(self.entries) - 1, 0, -1):
            c, o = self.entries[j]
            if c:
                parts.extend([(j, False)] * (c - 1) + [(j, o)])
        return Overpartition(tuple(parts))


def multiplicity_sequence(op: Overpartition) -> MultiplicitySequence:
    top = op.parts[0][0] if op.parts else 0
    counts = [[0, False] for _ in range(top + 1)]
    for v, o in op.parts:
        counts[v][0] += 1
        counts[v][1] = counts[v][1] or o
    return MultiplicitySequence(tuple((c, o) for c, o in counts))


@dataclass(frozen=True)
class Multuple:
    """A slice ``(f_m, ..., f_{m+l})`` of a multiplicity sequence."""

    start: int
    values: Tuple[Part, ...]

    @property
    def length(self) -> int:
        return len(self.values) - 1

    @property
    def weight(self) -> int:
        return sum((self.start + t) * c for t, (c, _) in enumerate(self.values))

    def __str__(self) -> str:
        return f"({_fmt(self.values)})"


def multuple_division(ms: MultiplicitySequence) -> Tuple[List[Multuple], int]:
    """Split into multuples from right to left; returns the list (left to right) and N."""
    out: List[Multuple] = []
    j = len(ms.entries) - 1
    while j > 0:
        if ms.entries[j][0] == 0:
            j -= 1
            continue
        m = j - 1
        while ms.entries[m][1]:
            m -= 1
        out.append(Multuple(m, ms.entries[m:j + 1]))
        j = m - 1
    out.reverse()
    return out, sum(t.length for t in out)


def sequence_length(op: Overpartition) -> int:
    return multuple_division(multiplicity_sequence(op))[1]


# ---------------------------------------------------------------------------
# the two forms of the difference condition

def satisfies_gap_condition(op: Overpartition, k: int) -> bool:
    """``lam_l - lam_{l+k-1} >= 1`` if the latter is overlined, else ``>= 2``."""
    p = op.parts
    for t in range(len(p) - k + 1):
        v, o = p[t + k - 1]
        if p[t][0] - v < (1 if o else 2):
            return False
    return True


def satisfies_multiplicity_condition(op: Overpartition, k: int) -> bool:
    """``f_l + f_{l+1} < k`` plus one extra when value l is overlined (l >= 1)."""
    ms = multiplicity_sequence(op).entries
    for l in range(1, len(ms)):
        c, o = ms[l]
        nxt = ms[l + 1][0] if l + 1 < len(ms) else 0
        if c + nxt >= k + (1 if o else 0):
            return False
    return True


def ones_count(op: Overpartition) -> int:
    return sum(1 for v, _ in op.parts if v == 1)


def in_family_b(op: Overpartition, k: int, i: int) -> bool:
    return ones_count(op) <= i - 1 and satisfies_gap_condition(op, k)


# ---------------------------------------------------------------------------
# Frobenius symbols

@dataclass(frozen=True)
class FrobeniusSymbol:
    """Two-rowed array: strictly decreasing top, overpartition-like bottom.

    In the bottom row the overlined copy of a value is stored first.
    """

    top: Tuple[int, ...] = ()
    bottom: Tuple[Part, ...] = ()

    def __post_init__(self):
        top = tuple(self.top)
        bottom = _coerce_parts(self.bottom)
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)
        if len(top) != len(bottom):
            raise InvalidObject("rows must have equal length")
        if any(a < 0 for a in top) or any(top[t] <= top[t + 1] for t in range(len(top) - 1)):
            raise InvalidObject("top row must be strictly decreasing and nonnegative")
        if any(b < 0 for b, _ in bottom) or any(
                bottom[t][0] < bottom[t + 1][0] for t in range(len(bottom) - 1)):
            raise InvalidObject("bottom row must be nonincreasing and nonnegative")
        _check_overline_rule(bottom, False, "frobenius bottom")

    @classmethod
    def from_rows(cls, top, bottom) -> "FrobeniusSymbol":
        """Build from rows, moving each overlined bottom copy to the front of its value."""
        return cls(tuple(top), _canonical(_coerce_parts(bottom), False))

    @classmethod
    def parse(cls, text: str) -> "FrobeniusSymbol":
        """Parse ``"7 4 2 0 / 3' 3 1 0'"``."""
        top, _, bottom = text.strip().strip("()").partition("/")
        t = _parse_parts(top)
        if any(o for _, o in t):
            raise InvalidObject("top row cannot carry overlines")
        return cls.from_rows([v for v, _ in t], _parse_parts(bottom))

    @classmethod
    def from_json(cls, obj) -> "FrobeniusSymbol":
        return cls(tuple(obj["top"]), tuple((p["v"], p["o"]) for p in obj["bottom"]))

    def to_json(self) -> dict:
        return {"top": list(self.top), "bottom": [{"v": v, "o": o} for v, o in self.bottom]}

    def __str__(self) -> str:
        return f"({' '.join(map(str, self.top))} / {_fmt(self.bottom)})"

    def __len__(self) -> int:
        return len(self.top)

    @property
    def weight(self) -> int:
        return len(self.top) + sum(self.top) + sum(b for b, _ in self.bottom)

    @property
    def non_overlined_bottom(self) -> int:
        return sum(1 for _, o in self.bottom if not o)


def successive_ranks(f: FrobeniusSymbol) -> List[int]:
    ranks = []
    plain_after = f.non_overlined_bottom
    for a, (b, o) in zip(f.top, f.bottom):
        if not o:
            plain_after -= 1
        ranks.append(a - b - plain_after)
    return ranks


def iter_frobenius(n: int) -> Iterator[FrobeniusSymbol]:
    """Every Frobenius symbol of weight n (independent of any bijection)."""
    for N in range(0, n + 1):
        rest = n - N
        # top: N distinct nonnegative integers summing to s
        for s in range(0, rest + 1):
            for top in _distinct_nonneg(s, N):
                for bottom in _bottoms(rest - s, N):
                    yield FrobeniusSymbol(top, bottom)


@lru_cache(maxsize=None)
def _distinct_nonneg(s: int, N: int) -> Tuple[Tuple[int, ...], ...]:
    """Strictly decreasing N-tuples of nonnegative integers with sum s."""
    if N == 0:
        return ((),) if s == 0 else ()
    if s < N * (N - 1) // 2:
        return ()
    out = []

    def rec(prefix, remaining, slots, cap):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for v in range(min(cap, remaining), slots - 2, -1):
            if v < 0:
                break
            rec(prefix + [v], remaining - v, slots - 1, v - 1)

    rec([], s, N, s)
    return tuple(out)


@lru_cache(maxsize=None)
def _bottoms(s: int, N: int) -> Tuple[Tuple[Part, ...], ...]:
    """Nonincreasing N-tuples of nonnegative parts with sum s, overlined first-occurrence style."""
    out = []
    for values in _weak_partitions(s, N):
        distinct = sorted(set(values), reverse=True)
        for flags in itertools.product((False, True), repeat=len(distinct)):
            fl = dict(zip(distinct, flags))
            parts = []
            seen = set()
            for v in values:
                parts.append((v, fl[v] and v not in seen))
                seen.add(v)
            out.append(tuple(parts))
    return tuple(out)


@lru_cache(maxsize=None)
def _weak_partitions(s: int, N: int, cap: Optional[int] = None) -> Tuple[Tuple[int, ...], ...]:
    if cap is None:
        cap = s
    if N == 0:
        return ((),) if s == 0 else ()
    out = []
    for v in range(min(cap, s), -1, -1):
        if v * N < s:
            break
        for rest in _weak_partitions(s - v, N - 1, v):
            out.append((v,) + rest)
    return tuple(out)


# ---------------------------------------------------------------------------
# Durfee statistics

def generalized_durfee_size(op: Overpartition) -> int:
    """Largest N with (#overlined) + #{non-overlined parts >= N} >= N."""
    return n_durfee_size(op, 0)


def n_durfee_size(op: Overpartition, n: int) -> int:
    """Largest N with #{overlined > n} + #{non-overlined >= N+n} >= N-n (always >= n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    over = sum(1 for v, o in op.parts if o and v > n)
    plain = op.non_overlined()
    N = n
    while over + sum(1 for v in plain if v >= N + 1 + n) >= N + 1 - n:
        N += 1
    return N


@dataclass(frozen=True)
class DurfeeProfile:
    """Block sizes ``n_1 >= ... >= n_{k-1} >= 0``."""

    k: int
    sizes: Tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if self.k < 2 or len(sizes) != self.k - 1:
            raise InvalidObject("a profile for k has k-1 sizes, k >= 2")
        if any(s < 0 for s in sizes) or any(sizes[t] < sizes[t + 1] for t in range(len(sizes) - 1)):
            raise InvalidObject("profile sizes must be nonincreasing and nonnegative")

    @classmethod
    def from_heights(cls, k: int, heights: Iterable[int]) -> "DurfeeProfile":
        """``n_j`` = number of entries >= j, for j = 1..k-1."""
        hs = list(heights)
        return cls(k, tuple(sum(1 for h in hs if h >= j) for j in range(1, k)))


def _generalized_block(over: List[int], plain: List[int], rect: bool):
    """First block: generalized square (rect=False) or (N+1) x N rectangle.

    Returns ``(N, rows, rest)`` where rows are the parts used by the block
    and rest the remaining non-overlined parts, or None if a side condition fails.
    """
    extra = 1 if rect else 0
    total = len(over) + len(plain)
    if total == 0:
        return 0, [], []
    if rect and total < 1:
        return None
    N = 0
    while len(over) + sum(1 for v in plain if v >= N + 1) >= N + 1 + extra:
        N += 1
    take = N + extra - len(over)
    if take < 0:
        # more overlined parts than rows in the block
        return None
    rows = over + plain[:take]
    rest = plain[take:]
    # overlined rows count as reaching past the rectangle, so the last row
    # of a generalized rectangle is a non-overlined part equal to N
    if rect and len(over) + sum(1 for v in plain[:take] if v > N) > N:
        return None
    return N, rows, rest


def _plain_block(rest: List[int], rect: bool):
    """Ordinary Durfee square or (d+1) x d rectangle on the remaining parts."""
    if not rest:
        return 0, []
    extra = 1 if rect else 0
    d = 0
    while sum(1 for v in rest if v >= d + 1) >= d + 1 + extra:
        d += 1
    rows = rest[:d + extra]
    if rect and sum(1 for v in rows if v > d) > d:
        return None
    return d, rest[d + extra:]


def durfee_blocks(op: Overpartition, schedule: Sequence[str]):
    """Apply a schedule of ``"square"``/``"rect"`` blocks.

    Returns ``(sizes, remainder)`` or None when a rectangle side condition
    fails.  Overlined parts are drawn above the non-overlined ones and all
    go into the first (generalized) block.
    """
    over = sorted(op.overlined(), reverse=True)
    plain = sorted(op.non_overlined(), reverse=True)
    sizes: List[int] = []
    if not schedule:
        return sizes, plain
    first = _generalized_block(over, plain, schedule[0] == "rect")
    if first is None:
        return None
    N, _rows, rest = first
    sizes.append(N)
    for kind in schedule[1:]:
        nxt = _plain_block(rest, kind == "rect")
        if nxt is None:
            return None
        d, rest = nxt
        sizes.append(d)
    return sizes, rest


def dissection_schedule(k: int, i: int) -> List[str]:
    if k < 2 or not (1 <= i <= k):
        raise ValueError(f"invalid (k, i) = ({k}, {i})")
    return ["square"] * (i - 1) + ["rect"] * (k - i)


def durfee_dissection(op: Overpartition, k: int, i: int) -> Optional[DurfeeProfile]:
    """Profile of i-1 successive Durfee squares then k-i rectangles, if the parts run out."""
    got = durfee_blocks(op, dissection_schedule(k, i))
    if got is None:
        return None
    sizes, rest = got
    if rest:
        return None
    if any(sizes[t] < sizes[t + 1] for t in range(len(sizes) - 1)):
        return None
    return DurfeeProfile(k, tuple(sizes))


# ---------------------------------------------------------------------------
# 2-modular diagrams and superpartitions

@dataclass(frozen=True)
class TwoModularDiagram:
    """Rows of 2s, each optionally ending in a single 1; row weights nonincreasing."""

    rows: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for r in rows:
            if not r or any(c != 2 for c in r[:-1]) or r[-1] not in (1, 2):
                raise InvalidObject("a row is a run of 2s with an optional final 1")
        ws = [sum(r) for r in rows]
        if any(ws[t] < ws[t + 1] for t in range(len(ws) - 1)):
            raise InvalidObject("row weights must be nonincreasing")
        odd = [w for w in ws if w % 2]
        if len(odd) != len(set(odd)):
            raise InvalidObject("two rows cannot both end in 1 with the same length")

    @classmethod
    def from_row_weights(cls, weights: Iterable[int]) -> "TwoModularDiagram":
        return cls(tuple((2,) * (w // 2) + ((1,) if w % 2 else ()) for w in weights))

    @property
    def weight(self) -> int:
        return sum(sum(r) for r in self.rows)

    @property
    def ones(self) -> int:
        return sum(1 for r in self.rows if r[-1] == 1)


def phi_two_modular(d: TwoModularDiagram) -> Overpartition:
    """Erase the 2s: each row becomes a part, a final 1 becoming the overline mark."""
    return Overpartition(tuple((len(r), r[-1] == 1) for r in d.rows))


def phi_inverse(op: Overpartition) -> TwoModularDiagram:
    return TwoModularDiagram.from_row_weights(2 * v - (1 if o else 0) for v, o in op.parts)


def iter_two_modular(n: int) -> Iterator[TwoModularDiagram]:
    """All 2-modular diagrams of weight n: partitions of n with distinct odd parts."""
    for values in partitions(n):
        odd = [v for v in values if v % 2]
        if len(odd) == len(set(odd)):
            yield TwoModularDiagram.from_row_weights(values)


@dataclass(frozen=True)
class Superpartition:
    """An overpartition that may also contain one overlined zero (stored last)."""

    parts: Tuple[Part, ...] = ()

    def __post_init__(self):
        parts = _coerce_parts(self.parts)
        object.__setattr__(self, "parts", parts)
        zeros = [p for p in parts if p[0] == 0]
        if zeros and (zeros != [(0, True)] or parts[-1] != (0, True)):
            raise InvalidObject("only a single overlined 0, stored last, is allowed")
        Overpartition(parts[:-1] if zeros else parts)

    @property
    def has_zero(self) -> bool:
        return bool(self.parts) and self.parts[-1][0] == 0

    @property
    def weight(self) -> int:
        return sum(v for v, _ in self.parts)

    def __str__(self) -> str:
        return f"({_fmt(self.parts)})"

    def to_json(self) -> dict:
        return {"parts": [{"v": v, "o": o} for v, o in self.parts]}


def iter_superpartitions(n: int) -> Iterator[Superpartition]:
    for op in iter_overpartitions(n):
        yield Superpartition(op.parts)
        yield Superpartition(op.parts + ((0, True),))
