"""Certified real roots: Sturm isolation and real solving of zero-dimensional systems.

Univariate polynomials are accepted either as :class:`Poly` objects with at
most one used variable or as ascending coefficient sequences.  Internally
every Sturm computation runs on primitive integer coefficient lists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Sequence

import gmpy2
from gmpy2 import mpz

from .groebner import Ideal, QuotientAlgebra, radical_zero_dim, is_zero_dimensional, DimensionError
from .ring import Poly, gcd_poly

__all__ = [
    "IsolatingInterval",
    "SturmChain",
    "RealPoint",
    "RetryBudgetExhausted",
    "as_coefficients",
    "sturm_isolate",
    "refine",
    "sign_at",
    "positive_root_lower_bounds",
    "positive_root_intervals",
    "solve_zero_dim_real",
]


class RetryBudgetExhausted(RuntimeError):
    """No separating linear form found within the retry budget."""


@dataclass(frozen=True)
class IsolatingInterval:
    """Closed rational interval [lo, hi] holding exactly one real root.

    ``exact`` marks a degenerate interval lo = hi at a rational root."""

    lo: Fraction
    hi: Fraction
    exact: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self) -> int | None:
        """Sign of every point of the interval, or None when it straddles or touches 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.exact and self.lo == 0:
            return 0
        return None

    def __str__(self) -> str:
        if self.exact:
            return f"[{self.lo}]"
        return f"[{self.lo}, {self.hi}]"


# ---------------------------------------------------------------------------
# univariate helpers on integer coefficient lists (ascending)


def as_coefficients(p) -> list[Fraction]:
    """Ascending rational coefficients of a univariate input."""
    if isinstance(p, Poly):
        used = p.used_variables()
        if len(used) > 1:
            raise ValueError("polynomial is not univariate")
        if not used:
            return [p.constant_term()] if not p.is_zero() else []
        i = used[0]
        out = [Fraction(0)] * (p.degree_in(i) + 1)
        for m, c in p.terms.items():
            out[m[i]] = c
        return out
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def _primitive_int(coeffs: Sequence) -> list[int]:
    fr = [Fraction(c) for c in coeffs]
    while fr and fr[-1] == 0:
        fr.pop()
    if not fr:
        return []
    den = reduce(lambda a, c: a * c.denominator // igcd(a, c.denominator), fr, 1)
    ints = [int(c * den) for c in fr]
    g = reduce(igcd, ints, 0)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _to_upoly(ints: Sequence[int]) -> Poly:
    return Poly(("x",), {(k,): c for k, c in enumerate(ints) if c})


def _squarefree_int(ints: list[int]) -> list[int]:
    if len(ints) <= 2:
        return list(ints)
    p = _to_upoly(ints)
    g = gcd_poly(p, p.diff(0))
    if g.is_constant():
        return list(ints)
    q = _udiv_exact(ints, _primitive_int(as_coefficients(g)))
    return _primitive_int(q)


def _udiv_exact(a: list[int], b: list[int]) -> list[Fraction]:
    a = [Fraction(c) for c in a]
    db = len(b) - 1
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / b[db]
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    return q


def _eval_sign(ints: Sequence[int], x: Fraction) -> int:
    """Exact sign of the integer polynomial at x = a/b (b > 0), homogenized Horner."""
    a, b = x.numerator, x.denominator
    acc = 0
    if b == 1:
        for c in reversed(ints):
            acc = acc * a + c
    else:
        bp = 1
        for c in reversed(ints):
            acc = acc * a + c * bp
            bp *= b
    return (acc > 0) - (acc < 0)


def _prem_int(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b)
    steps = 0
    while len(r) - 1 >= db and any(r):
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, bj in enumerate(b):
            r[j + shift] -= lr * bj
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        steps += 1
    # top up so the multiplier is exactly lc(b)^(delta+1)
    for _ in range(delta + 1 - steps):
        r = [c * lb for c in r]
    return r


@dataclass(frozen=True)
class SturmChain:
    """Signed primitive remainder sequence of (p, p') for squarefree p."""

    polynomials: tuple

    @classmethod
    def of(cls, p) -> "SturmChain":
        ints = _primitive_int(as_coefficients(p) if isinstance(p, Poly) else p)
        if not ints:
            raise ValueError("Sturm chain of the zero polynomial")
        # GMP integers: chain coefficients grow to tens of thousands of bits
        p0 = [mpz(c) for c in _squarefree_int(ints)]
        chain = [p0]
        if len(p0) > 1:
            p1 = [k * c for k, c in enumerate(p0)][1:]
            g = reduce(gmpy2.gcd, p1, mpz(0))
            chain.append([c // g for c in p1])
            while len(chain[-1]) > 1:
                a, b = chain[-2], chain[-1]
                r = _prem_int(a, b)
                if not r:
                    break
                delta = len(a) - len(b)
                r = [-c for c in r]
                if b[-1] < 0 and (delta + 1) % 2 == 1:
                    r = [-c for c in r]
                g = reduce(gmpy2.gcd, r, mpz(0))
                chain.append([c // g for c in r])
        return cls(tuple(tuple(q) for q in chain))

    @property
    def squarefree(self) -> tuple:
        return self.polynomials[0]

    def variations(self, x: Fraction) -> int:
        v = 0
        prev = 0
        for q in self.polynomials:
            s = _eval_sign(q, x)
            if s:
                if prev and s != prev:
                    v += 1
                prev = s
        return v

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """Number of distinct real roots in the open interval (lo, hi)."""
        n = self.variations(lo) - self.variations(hi)
        if _eval_sign(self.squarefree, hi) == 0:
            n -= 1
        return n

    def root_bound(self) -> Fraction:
        p = self.squarefree
        lc = abs(p[-1])
        b = 1 + Fraction(max(abs(c) for c in p), lc)
        k = 1
        while k <= b:
            k *= 2
        return Fraction(k)


def sign_at(p, x) -> int:
    ints = _primitive_int(as_coefficients(p) if isinstance(p, Poly) else p)
    if not ints:
        return 0
    return _eval_sign(ints, Fraction(x))


def sturm_isolate(p) -> list[IsolatingInterval]:
    """Disjoint isolating intervals of the distinct real roots, increasing."""
    return _isolate(SturmChain.of(p))


def _isolate(chain: "SturmChain") -> list[IsolatingInterval]:
    sq = chain.squarefree
    if len(sq) == 1:
        return []
    if len(sq) == 2:
        r = Fraction(-sq[0], sq[1])
        return [IsolatingInterval(r, r, True)]
    B = chain.root_bound()
    out: list[IsolatingInterval] = []
    stack = [(-B, B, chain.count(-B, B))]
    while stack:
        lo, hi, c = stack.pop()
        if c == 0:
            continue
        if c == 1 and _eval_sign(sq, lo) != 0 and _eval_sign(sq, hi) != 0:
            out.append(IsolatingInterval(lo, hi, False))
            continue
        mid = (lo + hi) / 2
        if _eval_sign(sq, mid) == 0:
            out.append(IsolatingInterval(mid, mid, True))
            left = chain.count(lo, mid)
            stack.append((lo, mid, left))
            stack.append((mid, hi, c - left - 1))
        else:
            left = chain.count(lo, mid)
            stack.append((lo, mid, left))
            stack.append((mid, hi, c - left))
    out.sort(key=lambda iv: iv.lo)
    # neighbours may share a bisection point; shrink them apart
    for i in range(len(out) - 1):
        while out[i].hi >= out[i + 1].lo:
            j = i if out[i].width >= out[i + 1].width else i + 1
            out[j] = _refine_int(sq, out[j], out[j].width / 2)
    return out


def _refine_int(sq: Sequence[int], iv: IsolatingInterval, width: Fraction, avoid_zero: bool = False) -> IsolatingInterval:
    if iv.exact:
        return iv
    lo, hi = iv.lo, iv.hi
    slo = _eval_sign(sq, lo)
    while hi - lo > width or (avoid_zero and lo <= 0 <= hi):
        mid = (lo + hi) / 2
        sm = _eval_sign(sq, mid)
        if sm == 0:
            return IsolatingInterval(mid, mid, True)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return IsolatingInterval(lo, hi, False)


def refine(p, iv: IsolatingInterval, width) -> IsolatingInterval:
    """Bisect iv down to width while it keeps isolating the same root."""
    ints = _primitive_int(as_coefficients(p) if isinstance(p, Poly) else p)
    if not ints:
        raise ValueError("cannot refine a root of the zero polynomial")
    return _refine_int(_squarefree_int(ints), iv, Fraction(width))


def positive_root_lower_bounds(p, width=None) -> list[Fraction]:
    """Lower endpoints a_i > 0 of isolating intervals of the positive roots."""
    return [iv.lo for iv in positive_root_intervals(p, width)]


def positive_root_intervals(p, width=None) -> list[IsolatingInterval]:
    """Isolating intervals of the positive roots, each with lo > 0 (or exact)."""
    coeffs = as_coefficients(p)
    if not coeffs:
        raise ValueError("zero polynomial has no isolated roots")
    chain = SturmChain.of(coeffs)
    sq = chain.squarefree
    out = []
    for iv in _isolate(chain):
        if iv.hi <= 0:
            continue
        if iv.lo <= 0:
            iv = _refine_int(sq, iv, iv.width, avoid_zero=True)
            if iv.hi <= 0:
                continue
        if width is not None:
            iv = _refine_int(sq, iv, Fraction(width))
        out.append(iv)
    return out


# ---------------------------------------------------------------------------
# zero-dimensional systems


def _hom_eval(ints: Sequence[int], a: int, b: int) -> int:
    """sum c_k a^k b^(d-k) for ascending integer coefficients c (d = len - 1)."""
    acc = 0
    bp = 1
    for c in reversed(ints):
        acc = acc * a + c * bp
        bp *= b
    return acc


@dataclass(frozen=True)
class _Param:
    """X = (sum num_k u^k) / den, with the positive and negative parts split."""

    pos: tuple
    neg: tuple
    den: int

    @classmethod
    def of(cls, coeffs: Sequence[Fraction]) -> "_Param":
        coeffs = [Fraction(c) for c in coeffs] or [Fraction(0)]
        den = reduce(lambda a, c: a * c.denominator // igcd(a, c.denominator), coeffs, 1)
        nums = [int(c * den) for c in coeffs]
        return cls(tuple(max(c, 0) for c in nums), tuple(max(-c, 0) for c in nums), den)

    def at(self, x: Fraction) -> Fraction:
        d = len(self.pos) - 1
        a, b = x.numerator, x.denominator
        v = _hom_eval(self.pos, a, b) - _hom_eval(self.neg, a, b)
        return Fraction(v, self.den * b**d)

    def _part(self, part: tuple, x: Fraction) -> Fraction:
        d = len(part) - 1
        return Fraction(_hom_eval(part, x.numerator, x.denominator), self.den * x.denominator**d)

    def enclose(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Range enclosure over [lo, hi] from monotone positive/negative parts."""
        if lo >= 0:
            return self._part(self.pos, lo) - self._part(self.neg, hi), self._part(self.pos, hi) - self._part(self.neg, lo)
        if hi <= 0:
            # x = -y with y in [-hi, -lo]: even powers keep their sign, odd powers flip
            pos = tuple((self.pos[k] if k % 2 == 0 else self.neg[k]) for k in range(len(self.pos)))
            neg = tuple((self.neg[k] if k % 2 == 0 else self.pos[k]) for k in range(len(self.pos)))
            return _Param(pos, neg, self.den).enclose(-hi, -lo)
        a1, b1 = self.enclose(lo, Fraction(0))
        a2, b2 = self.enclose(Fraction(0), hi)
        return min(a1, a2), max(b1, b2)


@dataclass
class RealPoint:
    """Box around one real solution, driven by a root of a separating element.

    The coordinates are images of an isolated root of the minimal polynomial
    of a separating linear form u under the parametrizations
    X_i = p_i(u) / d(u) (d = 1, or the derivative of the minimal polynomial)."""

    coordinates: tuple
    _minpoly: tuple = field(repr=False, default=())
    _param: tuple = field(repr=False, default=())
    _u: IsolatingInterval | None = field(repr=False, default=None)
    _den: "_Param | None" = field(repr=False, default=None)

    def box(self, i: int) -> IsolatingInterval:
        return self.coordinates[i]

    def refined(self, width, coordinate: int | None = None, avoid_zero: bool = False) -> "RealPoint":
        """Shrink the box until the chosen coordinate (all when None) has width <= width.

        With ``avoid_zero`` the chosen coordinate must also exclude 0, unless it
        is the exact rational 0; callers bound the loop through ``width``."""
        width = Fraction(width)
        idx = range(len(self.coordinates)) if coordinate is None else [coordinate]
        u = self._u
        coords = self.coordinates
        while True:
            ok = all(coords[i].width <= width for i in idx)
            if ok and avoid_zero:
                ok = all(coords[i].excludes_zero() or (coords[i].exact and coords[i].lo == 0) for i in idx)
            if ok or u.exact:
                break
            worst = max(coords[i].width for i in idx)
            shrink = max(Fraction(2), worst / width * 2) if worst > width else Fraction(4)
            u, coords = _boxes_at(self._minpoly, self._param, self._den, _refine_int(self._minpoly, u, u.width / shrink))
        return RealPoint(coords, self._minpoly, self._param, u, self._den)

    def center(self) -> tuple:
        return tuple(c.midpoint for c in self.coordinates)


def _floor_dyadic(x: Fraction, k: int) -> Fraction:
    return Fraction((x.numerator << k) // x.denominator, 1 << k)


def _ceil_dyadic(x: Fraction, k: int) -> Fraction:
    return Fraction(-((-x.numerator << k) // x.denominator), 1 << k)


def _divide(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> tuple[Fraction, Fraction]:
    """[a, b] / [c, d] for 0 < c or d < 0."""
    q = (a / c, a / d, b / c, b / d)
    return min(q), max(q)


def _coordinate_boxes(params: Sequence[_Param], den: _Param | None, u: IsolatingInterval) -> tuple | None:
    """Coordinate boxes over u, or None while the denominator range still contains 0."""
    if u.exact:
        dv = den.at(u.lo) if den is not None else 1
        return tuple(IsolatingInterval(v, v, True) for v in (p.at(u.lo) / dv for p in params))
    dlo = dhi = None
    if den is not None:
        dlo, dhi = den.enclose(u.lo, u.hi)
        if dlo <= 0 <= dhi:
            return None
    # outward rounding keeps endpoint sizes proportional to the precision
    k = max(0, u.width.denominator.bit_length() - u.width.numerator.bit_length()) + 16
    out = []
    for p in params:
        a, b = p.enclose(u.lo, u.hi)
        if den is not None:
            if a == b == 0:
                out.append(IsolatingInterval(a, b, True))
                continue
            a, b = _divide(a, b, dlo, dhi)
        if a == b:
            out.append(IsolatingInterval(a, b, True))
        else:
            out.append(IsolatingInterval(_floor_dyadic(a, k), _ceil_dyadic(b, k), False))
    return tuple(out)


def _boxes_at(minpoly: Sequence[int], params, den, u: IsolatingInterval) -> tuple:
    """Refine u until the coordinate boxes are defined; returns (u, boxes)."""
    while True:
        boxes = _coordinate_boxes(params, den, u)
        if boxes is not None:
            return u, boxes
        u = _refine_int(minpoly, u, u.width / 4)


def _separating_candidates(variables: Sequence[str], seed: int, tries: int):
    n = len(variables)
    gens = Poly.gens(variables)
    yield gens[-1]
    rng = random.Random(seed)
    for attempt in range(tries):
        bound = 3 + 2 * attempt
        u = gens[-1]
        for i in range(n - 1):
            u = u + rng.randint(-bound, bound) * gens[i]
        yield u


def solve_zero_dim_real(
    I: Ideal,
    distinguished: int | str | None = None,
    width=Fraction(1, 2**40),
    seed: int = 0,
    tries: int = 20,
    extra: Sequence[Poly] = (),
) -> list[RealPoint]:
    """Boxes around all real solutions of a zero-dimensional ideal.

    The ideal is radicalized, then a separating element u (first the last
    variable, then seeded random linear forms) is sought whose minimal
    polynomial has degree equal to the quotient dimension: this is shape
    position, and every coordinate is a polynomial in u.  Real solutions are
    then in bijection with the real roots of that minimal polynomial.

    Polynomials in ``extra`` are boxed as additional trailing coordinates
    (their values at each point); ``distinguished`` may index them too."""
    if not is_zero_dimensional(I):
        raise DimensionError("solve_zero_dim_real needs a zero-dimensional ideal")
    if I.is_unit():
        return []
    if isinstance(distinguished, str):
        distinguished = I.variables.index(distinguished)
    R = radical_zero_dim(I)
    Q = QuotientAlgebra(R)
    gens = Poly.gens(I.variables) + list(extra)
    for u in _separating_candidates(I.variables, seed, tries):
        shape = Q.shape_parametrization(u, gens)
        if shape is None:
            continue
        mp, coords, denom = shape
        params = tuple(_Param.of(c) for c in coords)
        den = _Param.of(denom) if denom is not None else None
        minpoly = tuple(_primitive_int(mp))
        points = []
        for iv in sturm_isolate(mp):
            iv, boxes = _boxes_at(minpoly, params, den, iv)
            pt = RealPoint(boxes, minpoly, params, iv, den)
            points.append(pt.refined(width, distinguished))
        return points
    raise RetryBudgetExhausted("no separating linear form found")
