"""Brute-force sampling oracle for extrema of f on a ball around the origin.

Every sample point is rational and every value is computed exactly, so a
sign reported here is never a rounding artefact.  Sampling can witness a
saddle (both signs near 0) but can only corroborate a minimizer or maximizer.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor, gcd, log2
from typing import Iterable, Sequence

from .ring import Poly, as_rational

__all__ = ["SampleReport", "OracleVerdict", "sample_extrema", "oracle_verdict", "contradicts"]

# lattice points beyond this count are thinned by doubling the step
_MAX_GRID = 200_000
_RANDOM_BITS = 16
_EPSILONS = (Fraction(1, 4), Fraction(1, 8), Fraction(1, 16))


class OracleVerdict(str, enum.Enum):
    SADDLE_CERTIFIED = "saddle_certified"
    MIN_CONSISTENT = "min_consistent"
    MAX_CONSISTENT = "max_consistent"
    INCONCLUSIVE = "inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass
class SampleReport:
    """Extrema of f seen at rational points strictly inside the ball of ``radius``.

    ``min_seen`` bounds the true minimum over the ball from above and
    ``max_seen`` bounds the maximum from below."""

    radius: Fraction
    min_seen: Fraction
    max_seen: Fraction
    min_witness: tuple[Fraction, ...]
    max_witness: tuple[Fraction, ...]
    samples: int
    density: int
    seed: int
    sources: dict = field(default_factory=dict)

    @property
    def witnesses(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        return self.min_witness, self.max_witness


class _Lattice:
    """Exact evaluation of f on the lattice h * Z^n using integer arithmetic only."""

    def __init__(self, f: Poly, h: Fraction):
        self.h = h
        scaled = {m: c * h ** sum(m) for m, c in f.terms.items()}
        den = 1
        for c in scaled.values():
            den = den * c.denominator // gcd(den, c.denominator)
        self.den = den
        self.terms = [(m, int(c * den)) for m, c in scaled.items()]

    def numerator(self, k: Sequence[int]) -> int:
        total = 0
        for m, a in self.terms:
            v = a
            for ki, e in zip(k, m):
                if e:
                    v *= ki**e
            total += v
        return total


class _Tracker:
    def __init__(self) -> None:
        self.lo: Fraction | None = None
        self.hi: Fraction | None = None
        self.lo_pt: tuple | None = None
        self.hi_pt: tuple | None = None
        self.count = 0

    def offer(self, value: Fraction, point: tuple) -> None:
        self.count += 1
        if self.lo is None or value < self.lo:
            self.lo, self.lo_pt = value, point
        if self.hi is None or value > self.hi:
            self.hi, self.hi_pt = value, point

    def offer_lattice(self, lat: _Lattice, ks: Iterable[tuple[int, ...]]) -> int:
        lo = hi = None
        lo_k = hi_k = None
        seen = 0
        for k in ks:
            v = lat.numerator(k)
            seen += 1
            if lo is None or v < lo:
                lo, lo_k = v, k
            if hi is None or v > hi:
                hi, hi_k = v, k
        if seen:
            h = lat.h
            self.offer(Fraction(lo, lat.den), tuple(h * x for x in lo_k))
            self.offer(Fraction(hi, lat.den), tuple(h * x for x in hi_k))
            self.count += seen - 2
        return seen


def _grid_step(r: Fraction, density: int, n: int) -> Fraction:
    h = Fraction(2) ** floor(log2(r / density))
    while (2 * floor(r / h) + 1) ** n > _MAX_GRID:
        h *= 2
    return h


def _inside(k: Sequence[int], bound_sq: Fraction) -> bool:
    return sum(x * x for x in k) < bound_sq


def _grid_points(r: Fraction, h: Fraction, n: int):
    K = floor(r / h)
    bound = (r / h) ** 2
    for k in product(range(-K, K + 1), repeat=n):
        if _inside(k, bound):
            yield k


def _random_points(r: Fraction, n: int, count: int, seed: int):
    rng = random.Random(seed)
    scale = 2**_RANDOM_BITS
    J = floor(r * scale)
    bound = (r * scale) ** 2
    made = 0
    attempts = 0
    while made < count and attempts < 50 * count:
        attempts += 1
        k = tuple(rng.randint(-J, J) for _ in range(n))
        if _inside(k, bound):
            made += 1
            yield k


def _witness_points(r: Fraction, n: int):
    """Points with coordinates in {0, +-eps, +-eps^2}, plus points on the axes."""
    r2 = r * r
    out = []
    for eps in _EPSILONS:
        vals = (0, eps, -eps, eps * eps, -eps * eps)
        for pt in product(vals, repeat=n):
            if n > 3 and sum(1 for x in pt if x) > 2:
                continue
            if any(pt) and sum(x * x for x in pt) < r2:
                out.append(tuple(Fraction(x) for x in pt))
    for i in range(n):
        for k in range(1, 5):
            for s in (1, -1):
                t = s * r * (1 - Fraction(1, 2**k))
                out.append(tuple(t if j == i else Fraction(0) for j in range(n)))
    return out


def sample_extrema(f: Poly, r, density: int = 8, seed: int = 0) -> SampleReport:
    """Exact values of f at a dyadic grid, seeded random points and witness families inside B_r."""
    r = as_rational(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    if density < 2:
        raise ValueError("density must be at least 2")
    n = f.nvars
    tr = _Tracker()
    origin = tuple(Fraction(0) for _ in range(n))
    tr.offer(f(*origin), origin)
    h = _grid_step(r, density, n)
    sources = {"grid_step": h}
    sources["grid"] = tr.offer_lattice(_Lattice(f, h), _grid_points(r, h, n))
    sources["random"] = tr.offer_lattice(
        _Lattice(f, Fraction(1, 2**_RANDOM_BITS)), _random_points(r, n, density * density, seed)
    )
    wit = _witness_points(r, n)
    for pt in wit:
        tr.offer(f(*pt), pt)
    sources["witness"] = len(wit)
    return SampleReport(r, tr.lo, tr.hi, tr.lo_pt, tr.hi_pt, tr.count, density, seed, sources)


def oracle_verdict(f: Poly, r, density: int = 8, seed: int = 0) -> OracleVerdict:
    rep = sample_extrema(f, r, density, seed)
    return _verdict_of(rep)


def _verdict_of(rep: SampleReport) -> OracleVerdict:
    neg, pos = rep.min_seen < 0, rep.max_seen > 0
    if neg and pos:
        return OracleVerdict.SADDLE_CERTIFIED
    if pos:
        return OracleVerdict.MIN_CONSISTENT
    if neg:
        return OracleVerdict.MAX_CONSISTENT
    return OracleVerdict.INCONCLUSIVE


def contradicts(verdict, oracle: OracleVerdict) -> bool:
    """True when sampling refutes a certified verdict ("local_minimizer", ...)."""
    v = str(verdict)
    if v == "local_minimizer":
        return oracle in (OracleVerdict.SADDLE_CERTIFIED, OracleVerdict.MAX_CONSISTENT)
    if v == "local_maximizer":
        return oracle in (OracleVerdict.SADDLE_CERTIFIED, OracleVerdict.MIN_CONSISTENT)
    if v == "saddle_point":
        return oracle is not OracleVerdict.SADDLE_CERTIFIED
    raise ValueError(f"unknown verdict {verdict!r}")
