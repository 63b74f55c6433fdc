"""Four-step lattice paths: NE, SE, S (only after NE) and E (only at height 0).

A path starts at ``(0, start)``.  A peak is a vertex reached by a NE step and
left by S (a NES peak) or SE (a NESE peak).  The major index is the sum of
the peak abscissae.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

NE, SE, S, E = "NE", "SE", "S", "E"
STEPS = (NE, SE, S, E)
_MOVE = {NE: (1, 1), SE: (1, -1), S: (0, -1), E: (1, 0)}


class InvalidPath(ValueError):
    pass


@dataclass(frozen=True)
class LatticePath:
    start: int = 0
    steps: Tuple[str, ...] = ()

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        if self.start < 0:
            raise InvalidPath("start height must be nonnegative")
        bad = [s for s in steps if s not in _MOVE]
        if bad:
            raise InvalidPath(f"unknown steps {bad}")

    @classmethod
    def from_vertices(cls, vertices: Sequence[Tuple[int, int]]) -> "LatticePath":
        """Rebuild a path from its corner points; runs of SE or NE may be compressed."""
        (x0, y0), rest = vertices[0], vertices[1:]
        if x0 != 0:
            raise InvalidPath("paths start at abscissa 0")
        steps: List[str] = []
        x, y = x0, y0
        for nx, ny in rest:
            dx, dy = nx - x, ny - y
            if dx == 0 and dy < 0:
                steps += [S] * (-dy)
            elif dy == 0 and dx > 0:
                steps += [E] * dx
            elif dx > 0 and abs(dy) == dx:
                steps += [NE if dy > 0 else SE] * dx
            else:
                raise InvalidPath(f"cannot join ({x},{y}) to ({nx},{ny})")
            x, y = nx, ny
        return cls(y0, tuple(steps))

    @classmethod
    def from_json(cls, obj) -> "LatticePath":
        return cls(obj["start"], tuple(obj["steps"]))

    def to_json(self) -> dict:
        return {"start": self.start, "steps": list(self.steps)}

    def __str__(self) -> str:
        return f"start={self.start} [{','.join(self.steps)}]"

    def __len__(self) -> int:
        return len(self.steps)

    def points(self) -> List[Tuple[int, int]]:
        """All lattice points visited, one per step plus the start."""
        x, y = 0, self.start
        pts = [(x, y)]
        for s in self.steps:
            dx, dy = _MOVE[s]
            x, y = x + dx, y + dy
            pts.append((x, y))
        return pts

    def vertices(self) -> List[Tuple[int, int]]:
        """Corner points only (where the step direction changes), plus both ends."""
        pts = self.points()
        if len(pts) <= 2:
            return pts
        out = [pts[0]]
        for t in range(1, len(pts) - 1):
            if self.steps[t - 1] != self.steps[t]:
                out.append(pts[t])
        out.append(pts[-1])
        return out

    def end_height(self) -> int:
        return self.start + sum(_MOVE[s][1] for s in self.steps)


@dataclass(frozen=True)
class Peak:
    x: int
    y: int
    u: int  # S steps strictly to the left
    kind: str  # "NES" or "NESE"
    east_parity: int  # parity of the E steps to the left
    index: int  # position of the peak's NE step in the step list


def check_shape(p: LatticePath) -> Optional[str]:
    """Reason the path breaks a structural rule, or None."""
    y = p.start
    prev = None
    for t, s in enumerate(p.steps):
        if s == S and prev != NE:
            return f"S step at position {t} does not follow NE"
        if s == E and y != 0:
            return f"E step at position {t} is at height {y}"
        y += _MOVE[s][1]
        if y < 0:
            return f"height becomes negative at position {t}"
        prev = s
    if p.steps:
        if p.steps[-1] not in (SE, S):
            return "a nonempty path must end with SE or S"
        if y != 0:
            return "path does not end at height 0"
    elif p.start != 0:
        return "the empty path must start at height 0"
    return None


def max_height(p: LatticePath) -> int:
    return max(y for _, y in p.points())


def validate(p: LatticePath, k: int, i: int) -> bool:
    """True iff ``p`` is a (k, i)-path: starts at k-i, stays below k, obeys the step rules."""
    if not (1 <= i <= k):
        return False
    return p.start == k - i and check_shape(p) is None and max_height(p) <= k - 1


def peaks(p: LatticePath) -> List[Peak]:
    out = []
    x, y = 0, p.start
    south = east = 0
    steps = p.steps
    for t, s in enumerate(steps):
        dx, dy = _MOVE[s]
        x, y = x + dx, y + dy
        if s == NE and t + 1 < len(steps) and steps[t + 1] in (S, SE):
            kind = "NES" if steps[t + 1] == S else "NESE"
            out.append(Peak(x, y, south, kind, east % 2, t))
        if s == S:
            south += 1
        elif s == E:
            east += 1
    return out


def major_index(p: LatticePath) -> int:
    return sum(pk.x for pk in peaks(p))


def south_count(p: LatticePath) -> int:
    return sum(1 for s in p.steps if s == S)


def relative_heights(p: LatticePath) -> List[int]:
    """Relative height of each peak, left to right.

    For level ``y - h`` we take the closest point at that level strictly to
    the left of the peak and the first point at that level after it
    (abscissa ``>= x``, so the foot of a South step counts).  Closest points
    give the smallest window, so they decide whether any pair works.
    """
    pts = p.points()
    pk = peaks(p)
    # peak positions as point indices (the vertex after the NE step)
    pos = [q.index + 1 for q in pk]
    out = []
    for q, vi in zip(pk, pos):
        h = 0
        while True:
            level = q.y - (h + 1)
            if level < 0:
                break
            left = next((t for t in range(vi - 1, -1, -1)
                         if pts[t][1] == level and pts[t][0] < q.x), None)
            right = next((t for t in range(vi + 1, len(pts)) if pts[t][1] == level), None)
            if left is None or right is None:
                break
            ok = True
            for other, oj in zip(pk, pos):
                if left < oj < right and oj != vi:
                    if other.y > q.y or (other.y == q.y and other.x < q.x):
                        ok = False
                        break
            if not ok:
                break
            h += 1
        out.append(h)
    return out


def height_profile(p: LatticePath, k: int) -> Tuple[int, ...]:
    """``n_j`` = number of peaks of relative height >= j, for j = 1..k-1."""
    hs = relative_heights(p)
    return tuple(sum(1 for h in hs if h >= j) for j in range(1, k))


def path_stats(p: LatticePath) -> Tuple[int, int, int]:
    """``(major index, South steps, peaks)``."""
    pk = peaks(p)
    return sum(q.x for q in pk), sum(1 for q in pk if q.kind == "NES"), len(pk)


# ---------------------------------------------------------------------------
# exhaustive generation

def iter_paths_upto(k: int, i: int, nmax: int) -> Iterator[LatticePath]:
    """Every (k, i)-path of major index <= nmax, each exactly once.

    Depth-first over steps.  A NE step from abscissa x forces a later peak at
    abscissa >= x+1, and an E step at x forces one at >= x+2, so both are
    pruned against the remaining major-index budget.  SE steps are bounded by
    the height, so every branch terminates.
    """
    if k < 1 or not (1 <= i <= k):
        raise ValueError(f"invalid (k, i) = ({k}, {i})")
    top = k - 1
    start = k - i
    steps: List[str] = []

    def rec(x: int, y: int, major: int, last: Optional[str]):
        if y == 0 and last in (SE, S):
            yield LatticePath(start, tuple(steps))
        if y + 1 <= top and major + x + 1 <= nmax:
            steps.append(NE)
            yield from rec(x + 1, y + 1, major, NE)
            steps.pop()
        if y >= 1:
            add = x if last == NE else 0
            steps.append(SE)
            yield from rec(x + 1, y - 1, major + add, SE)
            steps.pop()
            if last == NE:
                steps.append(S)
                yield from rec(x, y - 1, major + x, S)
                steps.pop()
        if y == 0 and major + x + 2 <= nmax:
            steps.append(E)
            yield from rec(x + 1, 0, major, E)
            steps.pop()

    if start == 0:
        yield LatticePath(0, ())
    yield from rec(0, start, 0, None)


def enumerate_paths_upto(k: int, i: int, nmax: int) -> Dict[int, List[LatticePath]]:
    out: Dict[int, List[LatticePath]] = {n: [] for n in range(nmax + 1)}
    for p in iter_paths_upto(k, i, nmax):
        out[major_index(p)].append(p)
    for n in out:
        out[n].sort(key=lambda q: q.steps)
    return out


def enumerate_paths(k: int, i: int, n: int) -> List[LatticePath]:
    """All (k, i)-paths of major index exactly n, sorted by step sequence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return enumerate_paths_upto(k, i, n)[n]
