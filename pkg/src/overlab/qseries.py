"""Exact truncated q-series with Laurent-polynomial coefficients in ``a``.

A :class:`TruncatedSeries` stores coefficients of ``q^n a^j x^p`` for
``0 <= n <= qmax`` (and ``p <= xmax`` when the optional marker ``x`` is
bounded).  All arithmetic is done on Python integers, so every result is
exact modulo ``q^(qmax+1)`` (and ``x^(xmax+1)``).

The generating functions of the overpartition families live at the bottom
of the module: :func:`e_series`, :func:`d_series`, :func:`e_n_series`,
:func:`gamma_n_series`, :func:`h_series`, :func:`j_series`,
:func:`product_side` and friends.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, NamedTuple, Optional, Tuple

INF = math.inf


class SeriesError(ValueError):
    """Raised for series requests that cannot be expanded exactly."""


class Mono(NamedTuple):
    """The monomial ``c * a**a * q**q * x**x``."""

    c: int = 1
    a: int = 0
    q: int = 0
    x: int = 0


Row = Dict[Tuple[int, int], int]


class TruncatedSeries:
    """Power series in ``q`` (and optionally ``x``) with Laurent coefficients in ``a``.

    Instances are treated as immutable; every operation returns a new series.
    ``xmax=None`` means the ``x`` degree is unbounded (only meaningful when
    ``x`` never appears without a positive power of ``q``).
    """

    __slots__ = ("qmax", "xmax", "_rows")

    def __init__(self, qmax: int, data=None, xmax: Optional[int] = None):
        if qmax < -1:
            raise SeriesError("qmax must be >= -1")
        self.qmax = qmax
        self.xmax = xmax
        self._rows: Dict[int, Row] = {}
        if data:
            items = data.items() if isinstance(data, dict) else data
            for key, c in items:
                if isinstance(key, int):
                    key = (key, 0, 0)
                elif len(key) == 2:
                    key = (key[0], key[1], 0)
                self._add_term(key[0], key[1], key[2], c)

    # -- construction helpers -------------------------------------------
    @classmethod
    def one(cls, qmax: int, xmax: Optional[int] = None) -> "TruncatedSeries":
        return cls.monomial(Mono(1), qmax, xmax)

    @classmethod
    def zero(cls, qmax: int, xmax: Optional[int] = None) -> "TruncatedSeries":
        return cls(qmax, xmax=xmax)

    @classmethod
    def monomial(cls, m: Mono, qmax: int, xmax: Optional[int] = None) -> "TruncatedSeries":
        s = cls(qmax, xmax=xmax)
        s._add_term(m.q, m.a, m.x, m.c)
        return s

    def _in_range(self, q: int, x: int) -> bool:
        if q < 0 or x < 0:
            raise SeriesError(f"negative exponent q^{q} x^{x}")
        return q <= self.qmax and (self.xmax is None or x <= self.xmax)

    def _add_term(self, q: int, a: int, x: int, c: int) -> None:
        if c == 0 or not self._in_range(q, x):
            return
        row = self._rows.setdefault(q, {})
        v = row.get((a, x), 0) + c
        if v:
            row[(a, x)] = v
        else:
            del row[(a, x)]
            if not row:
                del self._rows[q]

    def _new(self, qmax=None, xmax="keep") -> "TruncatedSeries":
        return TruncatedSeries(self.qmax if qmax is None else qmax,
                               xmax=self.xmax if xmax == "keep" else xmax)

    def copy(self) -> "TruncatedSeries":
        s = self._new()
        s._rows = {q: dict(r) for q, r in self._rows.items()}
        return s

    # -- access -----------------------------------------------------------
    def coeff(self, q: int, a: int = 0, x: int = 0) -> int:
        if q > self.qmax:
            raise SeriesError(f"q^{q} lies beyond the truncation q^{self.qmax}")
        return self._rows.get(q, {}).get((a, x), 0)

    def row(self, q: int) -> Row:
        return dict(self._rows.get(q, {}))

    def terms(self) -> Iterator[Tuple[int, int, int, int]]:
        """Yield ``(q, a, x, coefficient)`` sorted by q, then a, then x."""
        for q in sorted(self._rows):
            for (a, x), c in sorted(self._rows[q].items()):
                yield q, a, x, c

    def as_dict(self) -> Dict[Tuple[int, int, int], int]:
        return {(q, a, x): c for q, a, x, c in self.terms()}

    def q_coefficients(self) -> list:
        """Coefficients of ``q^0..q^qmax`` with ``a = x = 1`` substituted."""
        return [sum(self._rows.get(q, {}).values()) for q in range(self.qmax + 1)]

    def min_a_degree(self) -> int:
        return min((a for r in self._rows.values() for (a, _x) in r), default=0)

    def is_a_polynomial(self) -> bool:
        return self.min_a_degree() >= 0

    def __bool__(self) -> bool:
        return bool(self._rows)

    def __repr__(self) -> str:
        shown = []
        for q, a, x, c in self.terms():
            mon = "".join(s for s in (
                f"a^{a}" if a else "", f"x^{x}" if x else "", f"q^{q}" if q else ""))
            shown.append(f"{c}{'*' + mon if mon else ''}")
            if len(shown) > 12:
                shown.append("...")
                break
        return f"TruncatedSeries({' + '.join(shown) or '0'}; O(q^{self.qmax + 1}))"

    # -- truncation ----------------------------------------------------------
    def truncate(self, qmax: int, xmax="keep") -> "TruncatedSeries":
        xm = self.xmax if xmax == "keep" else xmax
        if qmax > self.qmax or (self.xmax is not None and (xm is None or xm > self.xmax)):
            raise SeriesError("cannot raise the truncation order of a series")
        s = TruncatedSeries(qmax, xmax=xm)
        for q, a, x, c in self.terms():
            if q <= qmax and (xm is None or x <= xm):
                s._add_term(q, a, x, c)
        return s

    def _common(self, other: "TruncatedSeries"):
        qmax = min(self.qmax, other.qmax)
        if self.xmax is None:
            xmax = other.xmax
        elif other.xmax is None:
            xmax = self.xmax
        else:
            xmax = min(self.xmax, other.xmax)
        return qmax, xmax

    # -- ring operations --------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.one(self.qmax, self.xmax) * other
        qmax, xmax = self._common(other)
        s = TruncatedSeries(qmax, xmax=xmax)
        for src in (self, other):
            for q, a, x, c in src.terms():
                if q <= qmax and (xmax is None or x <= xmax):
                    s._add_term(q, a, x, c)
        return s

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            s = self._new()
            if other:
                s._rows = {q: {k: c * other for k, c in r.items()} for q, r in self._rows.items()}
            return s
        if isinstance(other, Mono):
            return self.shift(other)
        qmax, xmax = self._common(other)
        s = TruncatedSeries(qmax, xmax=xmax)
        for q1, r1 in self._rows.items():
            for q2, r2 in other._rows.items():
                if q1 + q2 > qmax:
                    continue
                for (a1, x1), c1 in r1.items():
                    for (a2, x2), c2 in r2.items():
                        if xmax is None or x1 + x2 <= xmax:
                            s._add_term(q1 + q2, a1 + a2, x1 + x2, c1 * c2)
        return s

    __rmul__ = __mul__

    def shift(self, m: Mono) -> "TruncatedSeries":
        """Multiply by the monomial ``m``; q-shifts keep the truncation window."""
        s = self._new()
        for q, a, x, c in self.terms():
            s._add_term(q + m.q, a + m.a, x + m.x, c * m.c)
        return s

    def mul_factor(self, c: int, a: int = 0, q: int = 0, x: int = 0) -> "TruncatedSeries":
        """Multiply by ``1 + c a^a q^q x^x`` (q, x >= 0)."""
        s = self.copy()
        for qq, aa, xx, v in self.terms():
            s._add_term(qq + q, aa + a, xx + x, c * v)
        return s

    def div_factor(self, c: int, a: int = 0, q: int = 0, x: int = 0) -> "TruncatedSeries":
        """Divide by ``1 + c a^a q^q x^x``; needs ``q > 0`` or ``q == 0 < x`` with bounded x."""
        if q < 0 or x < 0 or (q == 0 and x == 0):
            raise SeriesError("division by a factor that is not a unit power series")
        if q == 0 and self.xmax is None:
            raise SeriesError("dividing by a q-free x factor needs a bounded xmax")
        out = self._new()
        for qq in range(self.qmax + 1):
            row = dict(self._rows.get(qq, {}))
            if q > 0:
                for (aa, xx), v in out._rows.get(qq - q, {}).items():
                    key = (aa + a, xx + x)
                    row[key] = row.get(key, 0) - c * v
            else:
                for xx in range(self.xmax + 1):
                    for (aa, x2), v in sorted(row.items()):
                        if x2 != xx or not v:
                            continue
                        if xx + x <= self.xmax:
                            key = (aa + a, xx + x)
                            row[key] = row.get(key, 0) - c * v
            for (aa, xx), v in row.items():
                out._add_term(qq, aa, xx, v)
        return out

    def reciprocal(self) -> "TruncatedSeries":
        """Inverse of a series whose ``q^0`` part is exactly 1."""
        if self._rows.get(0) != {(0, 0): 1}:
            raise SeriesError("reciprocal needs constant term exactly 1")
        out = TruncatedSeries.one(self.qmax, self.xmax)
        for n in range(1, self.qmax + 1):
            acc: Row = {}
            for m in range(1, n + 1):
                r1 = self._rows.get(m)
                r2 = out._rows.get(n - m)
                if not r1 or not r2:
                    continue
                for (a1, x1), c1 in r1.items():
                    for (a2, x2), c2 in r2.items():
                        if self.xmax is None or x1 + x2 <= self.xmax:
                            key = (a1 + a2, x1 + x2)
                            acc[key] = acc.get(key, 0) - c1 * c2
            for (a, x), v in acc.items():
                out._add_term(n, a, x, v)
        return out

    # -- comparison ---------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = TruncatedSeries.one(self.qmax, self.xmax) * other
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    def first_difference(self, other: "TruncatedSeries"):
        """First ``(q, a, x, mine, theirs)`` where the series disagree, else None."""
        qmax, xmax = self._common(other)
        mine = {k: v for k, v in self.as_dict().items()
                if k[0] <= qmax and (xmax is None or k[2] <= xmax)}
        theirs = {k: v for k, v in other.as_dict().items()
                  if k[0] <= qmax and (xmax is None or k[2] <= xmax)}
        for key in sorted(set(mine) | set(theirs)):
            if mine.get(key, 0) != theirs.get(key, 0):
                return key + (mine.get(key, 0), theirs.get(key, 0))
        return None

    # -- substitutions --------------------------------------------------------------
    def negate_a(self) -> "TruncatedSeries":
        """Substitute ``a -> -a``."""
        s = self._new()
        for q, a, x, c in self.terms():
            s._add_term(q, a, x, -c if a % 2 else c)
        return s

    def subs_x_q(self, power: int = 1) -> "TruncatedSeries":
        """Substitute ``x -> x q^power``."""
        s = self._new()
        for q, a, x, c in self.terms():
            s._add_term(q + power * x, a, x, c)
        return s

    def set_x(self, value: int) -> "TruncatedSeries":
        """Substitute ``x -> 0`` or ``x -> 1`` (the latter needs bounded-by-q x degrees)."""
        if value not in (0, 1):
            raise SeriesError("x can only be set to 0 or 1")
        s = TruncatedSeries(self.qmax, xmax=None)
        for q, a, x, c in self.terms():
            if value or x == 0:
                s._add_term(q, a, 0, c)
        return s

    def to_json(self) -> list:
        out = []
        for q in range(self.qmax + 1):
            row = self._rows.get(q, {})
            terms = []
            for (a, x), c in sorted(row.items()):
                t = {"a": a, "c": str(c)}
                if x or self.xmax is not None:
                    t["x"] = x
                terms.append(t)
            out.append({"q": q, "terms": terms})
        return out


# ---------------------------------------------------------------------------
# products of linear factors

def _canonical_factor(c: int, a: int, q: int, x: int):
    """Rewrite ``1 + c m`` as ``prefactor * (1 + c' m')`` with ``m'`` of positive order.

    Returns ``(prefactor Mono, factor tuple or None)``; the factor is None when
    ``m`` is constant, in which case the prefactor carries ``1 + c``.
    """
    if (q, x, a) == (0, 0, 0):
        return Mono(1 + c), None
    if (q, x, a) > (0, 0, 0):
        return Mono(1), (c, a, q, x)
    # 1 + c m = c m (1 + c^-1 m^-1) with c = +-1
    if c not in (1, -1):
        raise SeriesError("only unit coefficients can be normalised")
    return Mono(c, a, q, x), (c, -a, -q, -x)


@dataclass
class QProduct:
    """``prefactor * prod (1 + c a^a q^q x^x)^mult`` with integer multiplicities.

    Negative multiplicities are denominators.  Factors are kept in a canonical
    orientation so that a numerator and an equal denominator cancel.
    """

    coef: int = 1
    mono: Tuple[int, int, int] = (0, 0, 0)  # (a, q, x) exponents of the prefactor
    factors: Counter = None

    def __post_init__(self):
        if self.factors is None:
            self.factors = Counter()

    def copy(self) -> "QProduct":
        return QProduct(self.coef, self.mono, Counter(self.factors))

    def times_mono(self, m: Mono) -> "QProduct":
        p = self.copy()
        p.coef *= m.c
        p.mono = (p.mono[0] + m.a, p.mono[1] + m.q, p.mono[2] + m.x)
        return p

    def times_factor(self, c: int, a: int, q: int, x: int = 0, mult: int = 1) -> "QProduct":
        p = self.copy()
        pre, f = _canonical_factor(c, a, q, x)
        if f is None:
            if mult < 0 and abs(pre.c) != 1:
                raise SeriesError(f"cannot divide by the constant {pre.c}")
            p.coef *= pre.c ** abs(mult)
            return p
        # pre.c is +-1, so its inverse equals itself
        p.coef *= pre.c ** abs(mult)
        p.mono = (p.mono[0] + mult * pre.a, p.mono[1] + mult * pre.q, p.mono[2] + mult * pre.x)
        p.factors[f] += mult
        if p.factors[f] == 0:
            del p.factors[f]
        return p

    def __mul__(self, other: "QProduct") -> "QProduct":
        p = self.copy()
        p.coef *= other.coef
        p.mono = tuple(u + v for u, v in zip(p.mono, other.mono))
        p.factors.update(other.factors)
        p.factors = Counter({f: m for f, m in p.factors.items() if m})
        return p

    def inverse(self) -> "QProduct":
        if abs(self.coef) != 1:
            raise SeriesError("cannot invert a non-unit constant")
        return QProduct(self.coef, tuple(-u for u in self.mono),
                        Counter({f: -m for f, m in self.factors.items()}))

    def __truediv__(self, other: "QProduct") -> "QProduct":
        return self * other.inverse()

    def series(self, qmax: int, xmax: Optional[int] = None) -> TruncatedSeries:
        pa, pq, px = self.mono
        inner_q = qmax - pq
        if inner_q < 0:
            return TruncatedSeries(qmax, xmax=xmax)
        inner_x = None if xmax is None else xmax - px
        if inner_x is not None and inner_x < 0:
            return TruncatedSeries(qmax, xmax=xmax)
        s = TruncatedSeries.one(inner_q, inner_x) * self.coef
        # numerators first keep intermediate supports small
        for (c, a, q, x), m in sorted(self.factors.items(), key=lambda t: -t[1]):
            for _ in range(abs(m)):
                if not s:
                    break
                if m > 0:
                    if q <= inner_q:
                        s = s.mul_factor(c, a, q, x)
                else:
                    if q == 0 and x == 0:
                        raise SeriesError("denominator factor has order zero")
                    if q <= inner_q:
                        s = s.div_factor(c, a, q, x)
        out = TruncatedSeries(qmax, xmax=xmax)
        for q, a, x, c in s.terms():
            out._add_term(q + pq, a + pa, x + px, c)
        return out


def poch_product(z: Mono, n: int, base: int = 1) -> QProduct:
    """Finite ``(z; q^base)_n`` as a :class:`QProduct`; negative ``n`` allowed."""
    if abs(z.c) != 1:
        raise SeriesError("Pochhammer symbols need a unit-coefficient monomial")
    p = QProduct()
    if n >= 0:
        for j in range(n):
            p = p.times_factor(-z.c, z.a, z.q + base * j, z.x)
    else:
        # (z)_{-m} = 1 / prod_{j=1..m} (1 - z q^{-j})
        for j in range(1, -n + 1):
            p = p.times_factor(-z.c, z.a, z.q - base * j, z.x, mult=-1)
    return p


def poch(z: Mono, n, qmax: int, base: int = 1, xmax: Optional[int] = None) -> TruncatedSeries:
    """``(z; q^base)_n`` truncated at ``q^qmax``; ``n`` may be negative or ``INF``."""
    if n == INF:
        if base <= 0 or z.q < 0 or (z.q == 0 and z.x == 0 and z.a == 0):
            raise SeriesError("infinite product does not converge q-adically")
        if abs(z.c) != 1:
            raise SeriesError("Pochhammer symbols need a unit-coefficient monomial")
        s = TruncatedSeries.one(qmax, xmax)
        j = 0
        while z.q + base * j <= qmax:
            s = s.mul_factor(-z.c, z.a, z.q + base * j, z.x)
            j += 1
        return s
    return poch_product(z, int(n), base).series(qmax, xmax)


def poch_inv(z: Mono, qmax: int, base: int = 1, xmax: Optional[int] = None) -> TruncatedSeries:
    """``1 / (z; q^base)_inf``."""
    if base <= 0 or z.q < 0 or (z.q == 0 and (z.x == 0 or xmax is None)):
        raise SeriesError("infinite product cannot be inverted q-adically")
    s = TruncatedSeries.one(qmax, xmax)
    j = 0
    while z.q + base * j <= qmax:
        s = s.div_factor(-z.c, z.a, z.q + base * j, z.x)
        j += 1
    return s


def theta_product(exponents: Iterable[int], base: int, qmax: int) -> TruncatedSeries:
    """``(q^e1, q^e2, ...; q^base)_inf``; an exponent of 0 makes the product vanish."""
    s = TruncatedSeries.one(qmax)
    for e in exponents:
        if e == 0:
            return TruncatedSeries.zero(qmax)
        s = s * poch(Mono(1, 0, e), INF, qmax, base)
    return s


def qbinom(n: int, k: int, qmax: int) -> TruncatedSeries:
    """Gaussian binomial ``[n choose k]_q``; zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return TruncatedSeries.zero(qmax)
    q1 = Mono(1, 0, 1)
    p = poch_product(q1, n) / (poch_product(q1, k) * poch_product(q1, n - k))
    return p.series(qmax)


def overpartition_gf(qmax: int, marked: bool = True) -> TruncatedSeries:
    """``(-aq)_inf / (q)_inf``; with ``marked=False`` the ``a`` marker is set to 1."""
    a = 1 if marked else 0
    return poch(Mono(-1, a, 1), INF, qmax) * poch_inv(Mono(1, 0, 1), qmax)


# ---------------------------------------------------------------------------
# Jacobi triple product

def jtp_sides(z: Mono, qmax: int, base: int = 1):
    """Both sides of the triple product with ``q -> q^base`` and ``z = c q^e``.

    Product side ``(-1/z, -z q, q; q)_inf``, sum side ``sum z^n q^(base*C(n+1,2))``.
    """
    if z.a or z.x or abs(z.c) != 1:
        raise SeriesError("jtp_check supports z = +-q^e only")
    e = z.q
    if not (-base <= e <= 0):
        raise SeriesError("z exponent must lie in [-base, 0] to keep exponents nonnegative")
    prod = TruncatedSeries.one(qmax)
    # -1/z = -c q^{-e}; factor (1 + c q^{base*j - e})
    j = 0
    while base * j - e <= qmax:
        pre, f = _canonical_factor(z.c, 0, base * j - e, 0)
        if f is None:
            prod = prod * pre.c
        else:
            prod = prod.mul_factor(*f)
        j += 1
    j = 1
    while base * j + e <= qmax:
        pre, f = _canonical_factor(z.c, 0, base * j + e, 0)
        if f is None:
            prod = prod * pre.c
        else:
            prod = prod.mul_factor(*f)
        j += 1
    prod = prod * poch(Mono(1, 0, base), INF, qmax, base)
    total = TruncatedSeries.zero(qmax)
    bound = int(math.isqrt(2 * (qmax + base) // max(base, 1))) + 3
    for n in range(-bound - 2, bound + 3):
        deg = base * n * (n + 1) // 2 + e * n
        if 0 <= deg <= qmax:
            total = total + TruncatedSeries.monomial(Mono(z.c ** (n % 2), 0, deg), qmax)
        elif deg < 0:
            raise SeriesError("sum side has a negative exponent")
    return prod, total


def jtp_check(z: Mono, qmax: int, base: int = 1) -> bool:
    prod, total = jtp_sides(z, qmax, base)
    return prod == total


# ---------------------------------------------------------------------------
# generating functions of the path / overpartition families

def _check_ki(k: int, i: int, low: int = 1) -> None:
    if k < 1 or not (low <= i <= k):
        raise SeriesError(f"invalid (k, i) = ({k}, {i})")


def _e_sum_term(k: int, i: int, n: int, qmax: int) -> Optional[TruncatedSeries]:
    """``(-1)^n a^n q^(k n^2 + (k-i+1) n) (-1/a)_n / (-aq)_n`` or None if beyond qmax."""
    deg = k * n * n + (k - i + 1) * n
    ratio = poch_product(Mono(-1, -1, 0), n) / poch_product(Mono(-1, 1, 1), n)
    p = ratio.times_mono(Mono((-1) ** (n % 2), n, deg))
    # smallest q-degree of the term once the prefactors are cleared
    low = deg + min(0, _min_q_shift(ratio))
    if low > qmax:
        return None
    return p.series(qmax)


def _min_q_shift(p: QProduct) -> int:
    return p.mono[1]


def e_series(k: int, i: int, qmax: int) -> TruncatedSeries:
    """Bivariate generating function of the (k, i)-paths: ``a`` marks South steps."""
    _check_ki(k, i)
    total = TruncatedSeries.zero(qmax)
    for sign in (1, -1):
        n = 0 if sign == 1 else -1
        while True:
            term = _e_sum_term(k, i, n, qmax)
            if term is None:
                break
            total = total + term
            n += sign
    s = overpartition_gf(qmax) * total
    if not s.is_a_polynomial():
        raise SeriesError("e_series produced negative powers of a")
    return s


def e_n_series(k: int, i: int, N: int, qmax: int) -> TruncatedSeries:
    """Closed form for paths with exactly ``N`` peaks."""
    _check_ki(k, i)
    if N < 0:
        raise SeriesError("N must be nonnegative")
    q1 = Mono(1, 0, 1)
    head = poch_product(Mono(-1, -1, 0), N).times_mono(Mono(1, N, N * (N + 1) // 2))
    total = TruncatedSeries.zero(qmax)
    for n in range(-N, N + 1):
        deg = k * n * n + n * (k - i) - n * (n - 1) // 2
        den = poch_product(q1, N - n) * poch_product(q1, N + n)
        total = total + (head / den).times_mono(Mono((-1) ** (n % 2), 0, deg)).series(qmax)
    return total


def gamma_n_series(k: int, i: int, N: int, qmax: int) -> TruncatedSeries:
    """Closed form for the auxiliary series of paths that lost their first NE step."""
    if not (0 <= i < k):
        raise SeriesError("gamma series needs 0 <= i < k")
    if N < 0:
        raise SeriesError("N must be nonnegative")
    q1 = Mono(1, 0, 1)
    head = poch_product(Mono(-1, -1, 0), N).times_mono(Mono(1, N, N * (N - 1) // 2))
    total = TruncatedSeries.zero(qmax)
    for n in range(-N, N):
        deg = k * n * n + n * (k - i) - n * (n + 1) // 2
        den = poch_product(q1, N - n - 1) * poch_product(q1, N + n)
        total = total + (head / den).times_mono(Mono((-1) ** (n % 2), 0, deg)).series(qmax)
    return total


def recurrence_tables(k: int, Nmax: int, qmax: int):
    """Evaluate the peak-refined series from their recurrences alone.

    Returns ``(E, G)`` with ``E[N][i]`` for ``1 <= i <= k`` and ``G[N][i]`` for
    ``0 <= i < k``.
    """
    one = TruncatedSeries.one(qmax)
    zero = TruncatedSeries.zero(qmax)
    E = {0: {i: one for i in range(1, k + 1)}}
    G = {0: {i: zero for i in range(k)}}
    for N in range(1, Nmax + 1):
        qN = Mono(1, 0, N)
        g = {0: zero}
        for i in range(1, k):
            g[i] = g[i - 1].shift(qN) + E[N - 1][i + 1].shift(Mono(1, 1, 0)) \
                + E[N - 1][i + 1].shift(Mono(1, 0, N - 1))
        e = {k: g[k - 1].shift(qN).div_factor(-1, 0, N)}
        for i in range(k - 1, 0, -1):
            e[i] = e[i + 1].shift(qN) + g[i - 1].shift(qN)
        E[N], G[N] = e, g
    return E, G


def _profiles(k: int, bound):
    """Nonincreasing tuples (n1, ..., n_{k-1}) with ``bound(n1)`` true."""
    n1 = 0
    while bound(n1):
        def rest(prev, length):
            if length == 0:
                yield ()
                return
            for v in range(prev, -1, -1):
                for tail in rest(v, length - 1):
                    yield (v,) + tail
        for tail in rest(n1, k - 2):
            yield (n1,) + tail
        n1 += 1


def d_term(profile, k: int, i: int, qmax: int, form: str = "binomial") -> TruncatedSeries:
    """One summand of the Durfee-dissection multi-sum for the given profile."""
    n = list(profile)
    n1 = n[0]
    deg = n1 * (n1 + 1) // 2 + sum(n[i - 1:])
    head = poch_product(Mono(-1, -1, 0), n1).times_mono(Mono(1, n1, deg))
    q1 = Mono(1, 0, 1)
    if form == "binomial":
        s = (head / poch_product(q1, n1)).series(qmax)
        for j in range(1, k - 1):
            if not s:
                break
            sq = n[j] * n[j]
            if sq > qmax:
                return TruncatedSeries.zero(qmax)
            s = s * qbinom(n[j - 1], n[j], qmax).shift(Mono(1, 0, sq))
        return s
    if form == "product":
        deg2 = sum(v * v for v in n[1:])
        den = QProduct()
        for j in range(1, k - 1):
            den = den * poch_product(q1, n[j - 1] - n[j])
        den = den * poch_product(q1, n[-1])
        return (head.times_mono(Mono(1, 0, deg2)) / den).series(qmax)
    raise SeriesError(f"unknown form {form!r}")


def d_series(k: int, i: int, qmax: int, form: str = "binomial") -> TruncatedSeries:
    """Generating function of the Durfee-dissected overpartitions (a marks overlines)."""
    _check_ki(k, i)
    if k < 2:
        raise SeriesError("need k >= 2")
    total = TruncatedSeries.zero(qmax)
    for prof in _profiles(k, lambda n1: n1 * (n1 + 1) // 2 <= qmax):
        low = prof[0] * (prof[0] + 1) // 2 + sum(v * v for v in prof[1:]) + sum(prof[i - 1:])
        if low <= qmax:
            total = total + d_term(prof, k, i, qmax, form)
    return total


def durfee_stratum(n: int, N: int, qmax: int) -> TruncatedSeries:
    """Overpartitions whose generalized ``n``-Durfee square has size ``N``.

    Negative ``n`` is evaluated through genuine negative-index Pochhammer
    symbols, so the rewriting to ``|n|`` is checked rather than assumed.
    """
    if N < abs(n):
        return TruncatedSeries.zero(qmax)
    q1 = Mono(1, 0, 1)
    p = poch_product(Mono(-1, 1, 1), n) * poch_product(Mono(-1, -1, n), N - n)
    p = p / (poch_product(q1, N + n) * poch_product(q1, N - n))
    deg = N * (N + 1) // 2 - n * (n + 1) // 2
    return p.times_mono(Mono(1, N - n, deg)).series(qmax)


def n_durfee_sum(n: int, qmax: int) -> TruncatedSeries:
    total = TruncatedSeries.zero(qmax)
    N = abs(n)
    while True:
        # the minimal q-degree of a stratum is C(N+1,2) - C(n+1,2) - (N - n)-ish
        # shifted by the a-free part; stop once a few consecutive strata vanish
        s = durfee_stratum(n, N, qmax)
        if not s and N * (N + 1) // 2 - abs(n) * (abs(n) + 1) // 2 - 2 * N > qmax:
            break
        total = total + s
        N += 1
    return total


def n_durfee_identity_check(n: int, qmax: int) -> bool:
    return n_durfee_sum(n, qmax) == overpartition_gf(qmax)


def h_series(k: int, i: int, qmax: int, xmax: Optional[int] = None, x_shift: int = 0) -> TruncatedSeries:
    """``H_{k,i}(a, x q^x_shift, q)``.

    The result is exact modulo ``x^(xmax+1)`` (default ``xmax = qmax + k``).
    With ``x_shift >= 1`` every x brings a q, so nothing below ``q^(qmax+1)``
    is lost.
    """
    if i < 0 or k < 1:
        raise SeriesError("invalid (k, i)")
    if xmax is None:
        xmax = qmax + k
    total = TruncatedSeries.zero(qmax, xmax)
    if i == 0:
        return total
    s = x_shift
    n = 0
    while True:
        deg = k * n * n + n - i * n + s * k * n
        if deg > qmax or k * n > xmax:
            break
        # (1/a)_n with a^n pulled in: prod (a - q^j)
        p = poch_product(Mono(1, -1, 0), n).times_mono(Mono(1, n, deg, k * n))
        p = p / poch_product(Mono(1, 0, 1), n)
        # (1 - x^i q^{2ni}) with x -> x q^s
        p = p.times_factor(-1, 0, 2 * n * i + s * i, i)
        term = p.series(qmax, xmax)
        if term:
            term = term * poch(Mono(1, 1, n + 1 + s, 1), INF, qmax, xmax=xmax)
            term = term * poch_inv(Mono(1, 0, n + s, 1), qmax, xmax=xmax)
        total = total + term
        n += 1
    return total


def j_series(k: int, i: int, qmax: int, xmax: Optional[int] = None) -> TruncatedSeries:
    """``J_{k,i}(a, x, q) = H_{k,i}(a, xq, q) - a x q H_{k,i-1}(a, xq, q)``."""
    _check_ki(k, i)
    if xmax is None:
        xmax = qmax + k
    h1 = h_series(k, i, qmax, xmax, x_shift=1)
    h0 = h_series(k, i - 1, qmax, xmax, x_shift=1)
    return h1 - h0.shift(Mono(1, 1, 1, 1))


# ---------------------------------------------------------------------------
# specialisations and product sides

def _max_overlines(n: int) -> int:
    """Largest j with 1 + 2 + ... + j <= n (distinct overlined parts)."""
    j = 0
    while (j + 1) * (j + 2) // 2 <= n:
        j += 1
    return j


def specialize(s: TruncatedSeries, a_to, q_power: int = 1) -> TruncatedSeries:
    """Substitute ``a -> a_to`` and ``q -> q^q_power``.

    ``a_to`` is ``0``, ``1`` or ``("q", e)`` meaning ``a -> q^e``.  For
    ``e < 0`` the new truncation order assumes the a-degree of ``q^n`` never
    exceeds the largest ``j`` with ``j(j+1)/2 <= n`` (true for every
    overpartition series here); this is checked on the input.
    """
    if q_power < 1:
        raise SeriesError("q_power must be positive")
    if not s.is_a_polynomial():
        raise SeriesError("specialisation needs a polynomial in a")
    if a_to == 0:
        e, keep_only_zero = 0, True
    elif a_to == 1:
        e, keep_only_zero = 0, False
    elif isinstance(a_to, tuple) and a_to[0] == "q":
        e, keep_only_zero = int(a_to[1]), False
    else:
        raise SeriesError(f"unsupported value for a: {a_to!r}")
    if e >= 0:
        new_qmax = q_power * (s.qmax + 1) - 1
    else:
        for q, a, _x, _c in s.terms():
            if a > _max_overlines(q):
                raise SeriesError("a-degree exceeds the overline bound; cannot specialise")
        n = s.qmax + 1
        new_qmax = min(q_power * m + e * _max_overlines(m) for m in range(n, n + 2 * q_power + 50)) - 1
        if new_qmax < 0:
            raise SeriesError("specialisation leaves no reliable coefficients")
    out = TruncatedSeries(new_qmax, xmax=s.xmax)
    for q, a, x, c in s.terms():
        if keep_only_zero and a != 0:
            continue
        deg = q_power * q + e * a
        if deg < 0:
            raise SeriesError("specialisation produced a negative exponent")
        if deg <= new_qmax:
            out._add_term(deg, 0, x, c)
    return out


def product_side(which: str, k: int, i: int, qmax: int) -> TruncatedSeries:
    """Infinite-product forms of the four classical specialisations."""
    _check_ki(k, i)
    inv_q = poch_inv(Mono(1, 0, 1), qmax)
    if which == "eq3":
        m = 2 * k + 1
        return theta_product((i, m - i, m), m, qmax) * inv_q
    if which == "eq4":
        m = 4 * k
        return poch(Mono(1, 0, 2), INF, qmax, 4) * theta_product((2 * i - 1, m + 1 - 2 * i, m), m, qmax) * inv_q
    over = overpartition_gf(qmax, marked=False)
    m = 2 * k
    if which == "eq5":
        acc = TruncatedSeries.zero(qmax)
        for j in range(2 * (k - i) + 1):
            acc = acc + theta_product((i + j, m - i - j, m), m, qmax) * (-1) ** j
        return over * acc
    if which == "eq6":
        acc = theta_product((i, m - i, m), m, qmax) + theta_product((i - 1, m + 1 - i, m), m, qmax)
        return over * acc
    raise SeriesError(f"unknown product side {which!r}")


SPECIALISATIONS = {
    "eq3": (0, 1),
    "eq4": (("q", -1), 2),
    "eq5": (1, 1),
    "eq6": (("q", -1), 1),
}


def e_qmax_for(which: str, qmax: int) -> int:
    """Truncation of ``e_series`` needed to know a specialisation up to ``q^qmax``."""
    a_to, qp = SPECIALISATIONS[which]
    if not (isinstance(a_to, tuple)):
        return -(-(qmax + 1) // qp) - 1
    n = 0
    while True:
        e = a_to[1]
        got = min(qp * m + e * _max_overlines(m) for m in range(n + 1, n + 2 * qp + 50)) - 1
        if got >= qmax:
            return n
        n += 1


def specialized_e(which: str, k: int, i: int, qmax: int) -> TruncatedSeries:
    a_to, qp = SPECIALISATIONS[which]
    s = specialize(e_series(k, i, e_qmax_for(which, qmax)), a_to, qp)
    return s.truncate(qmax)
