"""Tangency ideal, critical ideal, curve ideal, Jacobian-minor sets, isolation radius.

The tangency variety of f at the origin is the locus where the gradient is
parallel to the position vector.  It is cut out by the 2x2 minors
``df/dX_i * X_j - df/dX_j * X_i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt

from .groebner import (
    DimensionError,
    Ideal,
    NonGenericCoordinatesError,
    eliminant,
    equidim_split_dim1,
    hilbert_dimension,
    ideal_intersection,
    is_zero_dimensional,
    radical_zero_dim,
    saturate_by_ideal,
)
from .realroots import positive_root_lower_bounds, solve_zero_dim_real
from .ring import MatrixQ, Poly, norm_squared, poly_det, substitute_linear

__all__ = [
    "TangencySystem",
    "DeltaSet",
    "IsolationRadiusResult",
    "IsolationError",
    "CoordinateChangeError",
    "gamma_generators",
    "critical_ideal",
    "curve_ideal_G",
    "ensure_dim_one",
    "delta_set",
    "isolation_radius",
    "dyadic_below_sqrt",
    "random_invertible_matrix",
]


class IsolationError(ArithmeticError):
    """The origin could not be certified as an isolated real critical point."""


class CoordinateChangeError(RuntimeError):
    """No admissible linear change of coordinates within the retry budget."""


@dataclass
class TangencySystem:
    f: Poly
    gamma: list[Poly]
    critical: Ideal
    ideal: Ideal
    coordinate_change: MatrixQ | None = None
    seed: int | None = None
    attempts: int = 0


@dataclass
class DeltaSet:
    generators: list[Poly]
    determinants: list[Poly]

    def polynomials(self) -> list[Poly]:
        return list(self.generators) + [d for d in self.determinants if not d.is_zero()]

    def ideal(self) -> Ideal:
        return Ideal(self.polynomials(), self.generators[0].variables)


@dataclass
class IsolationRadiusResult:
    radius: Fraction
    method: str
    nearest_sq_lower: Fraction | None = None
    details: dict = field(default_factory=dict)


def gamma_generators(f: Poly) -> list[Poly]:
    """The polynomials gamma_{i,j}, i < j, in lexicographic pair order."""
    n = f.nvars
    if n < 2:
        raise ValueError("the tangency ideal needs at least two variables")
    xs = Poly.gens(f.variables)
    grad = [f.diff(i) for i in range(n)]
    return [grad[i] * xs[j] - grad[j] * xs[i] for i, j in combinations(range(n), 2)]


def critical_ideal(f: Poly) -> Ideal:
    return Ideal([f.diff(i) for i in range(f.nvars)], f.variables)


def _radical_any(I: Ideal) -> Ideal:
    d = hilbert_dimension(I)
    if d <= 0:
        return radical_zero_dim(I) if d == 0 else Ideal.unit(I.variables)
    if d == 1:
        I0, I1 = equidim_split_dim1(I)
        if I0.is_unit():
            return I1
        return ideal_intersection(I0, I1)
    raise DimensionError(f"radical of a {d}-dimensional ideal is not supported")


def curve_ideal_G(f: Poly) -> Ideal:
    """Radical of the tangency ideal saturated by the critical ideal."""
    gam = [g for g in gamma_generators(f) if not g.is_zero()]
    C = critical_ideal(f)
    base = Ideal(gam, f.variables)
    if C.is_zero():
        raise DimensionError("f is constant")
    S = saturate_by_ideal(base, C) if gam else base
    return _radical_any(S)


def random_invertible_matrix(n: int, rng: random.Random, bound: int) -> MatrixQ:
    while True:
        A = MatrixQ([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if A.det() != 0:
            return A


def ensure_dim_one(
    f: Poly, seed: int = 0, max_attempts: int = 100, force_random: bool = False
) -> tuple[MatrixQ, Poly, Ideal]:
    """Coordinates in which the tangency variety is a curve.

    Keeps the identity when dim <gamma> = 1 (unless ``force_random``);
    otherwise draws seeded integer matrices (entries in [-5, 5], widened to
    [-50, 50] after ten failures)."""
    n = f.nvars
    gam = Ideal([g for g in gamma_generators(f) if not g.is_zero()], f.variables)
    if not force_random and not gam.is_zero() and hilbert_dimension(gam) == 1:
        return MatrixQ.identity(n), f, gam
    rng = random.Random(seed)
    for attempt in range(max_attempts):
        bound = 5 if attempt < 10 else 50
        A = random_invertible_matrix(n, rng, bound)
        fA = substitute_linear(f, A)
        try:
            G = curve_ideal_G(fA)
        except (DimensionError, NonGenericCoordinatesError):
            continue
        if hilbert_dimension(G) == 1:
            return A, fA, G
    raise CoordinateChangeError("no coordinate change produced a one-dimensional tangency curve")


def tangency_system(f: Poly, seed: int = 0) -> TangencySystem:
    A, fA, I = ensure_dim_one(f, seed)
    return TangencySystem(fA, gamma_generators(fA), critical_ideal(fA), I, None if A.is_identity() else A, seed)


def delta_set(I1: Ideal) -> DeltaSet:
    """Generators of I1 plus the Jacobian determinants against the squared norm."""
    gens = list(I1.gb().elements)
    n = I1.nvars
    if len(gens) < n - 1:
        raise ValueError("curve ideal has fewer than n-1 generators")
    nrm = norm_squared(I1.variables)
    last = [nrm.diff(j) for j in range(n)]
    dets = []
    for sub in combinations(gens, n - 1):
        rows = [[g.diff(j) for j in range(n)] for g in sub] + [last]
        d = poly_det(rows)
        if not d.is_zero():
            dets.append(d)
    return DeltaSet(gens, dets)


def dyadic_below_sqrt(a: Fraction, bits: int) -> Fraction:
    """Largest k/2^bits strictly below sqrt(a), for a > 0."""
    a = Fraction(a)
    scaled = a * 4**bits
    k = isqrt(scaled.numerator // scaled.denominator)
    if Fraction(k * k) == scaled:
        k -= 1
    if k <= 0:
        raise ValueError("bound below dyadic resolution; raise refine_bits")
    return Fraction(k, 2**bits)


def _box_norm_sq_lower(point) -> Fraction:
    total = Fraction(0)
    for iv in point.coordinates:
        if iv.lo > 0:
            total += iv.lo * iv.lo
        elif iv.hi < 0:
            total += iv.hi * iv.hi
    return total


def _is_origin(point) -> bool:
    return all(iv.exact and iv.lo == 0 for iv in point.coordinates)


def _nearest_real_point_sq(I: Ideal, bits: int, seed: int) -> Fraction | None:
    """Lower bound on min ||x||^2 over real points of I other than the origin."""
    width = Fraction(1, 2**bits)
    best = None
    for pt in solve_zero_dim_real(I, None, Fraction(1, 4), seed=seed):
        if _is_origin(pt):
            continue
        # shrink until the box is away from the origin, then to full precision
        w = Fraction(1, 4)
        while _box_norm_sq_lower(pt) == 0:
            if w < width**2:
                raise IsolationError("critical point indistinguishable from the origin")
            w /= 2
            pt = pt.refined(w)
        pt = pt.refined(width)
        lb = _box_norm_sq_lower(pt)
        lb = Fraction((lb.numerator << (2 * bits)) // lb.denominator, 1 << (2 * bits))
        best = lb if best is None else min(best, lb)
    return best


def _curve_distance_sq(I1: Ideal, bits: int, seed: int, depth: int) -> Fraction | None:
    """Lower bound on the squared distance from the origin to the real curve V(I1)."""
    if depth > 3:
        raise IsolationError("minors recursion did not terminate")
    D = delta_set(I1).ideal()
    if D.is_unit():
        return None
    if is_zero_dimensional(D):
        return _nearest_real_point_sq(D, bits, seed)
    E = eliminant(D, norm_squared(D.variables))
    if E.is_zero():
        return _positive_dim_sq(D, bits, seed, depth + 1)
    lows = positive_root_lower_bounds(E, Fraction(1, 2**bits))
    return min(lows) if lows else None


def _positive_dim_sq(C: Ideal, bits: int, seed: int, depth: int) -> Fraction | None:
    d = hilbert_dimension(C)
    if d < 0:
        return None
    if d == 0:
        return _nearest_real_point_sq(C, bits, seed)
    if d > 1:
        raise IsolationError(f"critical locus of dimension {d} is not supported")
    I0, I1 = equidim_split_dim1(C)
    cands = []
    if not I0.is_unit():
        v = _nearest_real_point_sq(I0, bits, seed)
        if v is not None:
            cands.append(v)
    origin = tuple(0 for _ in C.variables)
    if all(g(*origin) == 0 for g in I1.generators):
        raise IsolationError("the origin lies on a curve of critical points")
    v = _curve_distance_sq(I1, bits, seed, depth)
    if v is not None:
        cands.append(v)
    return min(cands) if cands else None


def isolation_radius(f: Poly, seed: int = 0, refine_bits: int = 40) -> IsolationRadiusResult:
    """A dyadic radius R_iso with Crit(f) meeting the closed ball only at 0.

    Zero-dimensional critical ideals are solved over the reals directly.
    Otherwise the critical ideal is split into points and a curve, and the
    curve's nearest approach is bounded through its Jacobian minors."""
    C = critical_ideal(f)
    if C.is_zero():
        raise IsolationError("f is constant")
    d = hilbert_dimension(C)
    if d == 0:
        sq = _nearest_real_point_sq(C, refine_bits, seed)
        method = "zero-dim-critical"
    else:
        sq = _positive_dim_sq(C, refine_bits, seed, 0)
        method = "minors-recursion"
    if sq is None:
        return IsolationRadiusResult(Fraction(1), method, None)
    # below both sqrt(a) and a: the smaller of the two is still a valid radius
    r = dyadic_below_sqrt(min(sq, sq * sq), refine_bits)
    return IsolationRadiusResult(r, method, sq)
