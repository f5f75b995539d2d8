"""Faithful radius, type determination and the end-to-end certificate.

``classify`` runs, in order: translation of the critical point to the origin,
the classical second-order test when the Hessian is nonsingular, the
squarefree factor reduction, the faithful-radius computation and finally the
sign analysis of f on the tangency curve intersected with a sphere.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, isqrt
from typing import Sequence

from .groebner import Ideal, NonGenericCoordinatesError, eliminant, equidim_split_dim1, hilbert_dimension, is_zero_dimensional
from .realroots import IsolatingInterval, positive_root_intervals, solve_zero_dim_real, as_coefficients
from .ring import MatrixQ, Poly, _content_in, _exact_div, norm_squared, squarefree_decomposition, translate_to_origin
from .tangency import CoordinateChangeError, delta_set, dyadic_below_sqrt, ensure_dim_one, isolation_radius

__all__ = [
    "Verdict",
    "CertificationError",
    "NotCriticalPointError",
    "HessianRecord",
    "PreprocessingRecord",
    "FaithfulRadiusReport",
    "TypeReport",
    "Certificate",
    "normalize_input",
    "hessian_fast_path",
    "factor_reduce",
    "faithful_radius",
    "pick_test_radius",
    "determine_type",
    "classify",
]


class Verdict(str, enum.Enum):
    LOCAL_MINIMIZER = "local_minimizer"
    LOCAL_MAXIMIZER = "local_maximizer"
    SADDLE_POINT = "saddle_point"

    def flipped(self) -> "Verdict":
        if self is Verdict.LOCAL_MINIMIZER:
            return Verdict.LOCAL_MAXIMIZER
        if self is Verdict.LOCAL_MAXIMIZER:
            return Verdict.LOCAL_MINIMIZER
        return self

    def __str__(self) -> str:
        return self.value


class CertificationError(ArithmeticError):
    """The sign analysis could not separate the extrema from zero."""


class NotCriticalPointError(ValueError):
    pass


# ---------------------------------------------------------------------------
# records


@dataclass
class HessianRecord:
    size: int
    rank: int
    positive: int
    negative: int

    @property
    def degenerate(self) -> bool:
        return self.rank < self.size

    @property
    def signature(self) -> tuple[int, int, int]:
        """(positive, negative, zero) eigenvalue counts."""
        return (self.positive, self.negative, self.size - self.rank)


@dataclass
class PreprocessingRecord:
    translation: tuple
    unit: Fraction = Fraction(1)
    squared_factors: list = field(default_factory=list)
    peeled_factors: list = field(default_factory=list)
    core: Poly | None = None
    orientation: int = 1
    shortcut: Verdict | None = None
    shortcut_reason: str | None = None

    @property
    def reduced(self) -> bool:
        return bool(self.squared_factors or self.peeled_factors)


@dataclass
class FaithfulRadiusReport:
    R: Fraction
    R_iso: Fraction
    bound_sq: Fraction | None
    eliminant_roots: list[IsolatingInterval]
    finite: bool
    coordinate_change: MatrixQ | None
    transformed: Poly
    curve_ideal: Ideal
    eliminants: tuple = ()
    seed: int = 0

    @property
    def bound_decimal(self) -> float | None:
        return None if self.bound_sq is None else float(self.bound_sq) ** 0.5


@dataclass
class TypeReport:
    r: Fraction | None
    m: IsolatingInterval
    M: IsolatingInterval
    verdict: Verdict
    values: list[IsolatingInterval]
    r_sq: Fraction | None = None
    zero_dimensional: bool = True


@dataclass
class Certificate:
    polynomial: Poly
    point: tuple
    normalized: Poly
    verdict: Verdict
    path: str
    hessian: HessianRecord | None = None
    preprocessing: PreprocessingRecord | None = None
    isolation_radius: Fraction | None = None
    isolation_method: str | None = None
    faithful: FaithfulRadiusReport | None = None
    type_report: TypeReport | None = None
    seed: int = 0
    refine_bits: int = 40
    timing: float = 0.0

    @property
    def degenerate(self) -> bool:
        return self.hessian is None or self.hessian.degenerate

    @property
    def R(self) -> Fraction | None:
        return None if self.faithful is None else self.faithful.R

    @property
    def r(self) -> Fraction | None:
        return None if self.type_report is None else self.type_report.r

    @property
    def m(self) -> IsolatingInterval | None:
        return None if self.type_report is None else self.type_report.m

    @property
    def M(self) -> IsolatingInterval | None:
        return None if self.type_report is None else self.type_report.M

    @property
    def coordinate_change(self) -> MatrixQ | None:
        return None if self.faithful is None else self.faithful.coordinate_change


# ---------------------------------------------------------------------------
# preprocessing


def normalize_input(f: Poly, c: Sequence | None = None) -> Poly:
    """Translate the critical point c to the origin and drop the constant."""
    if c is None:
        c = [0] * f.nvars
    c = [Fraction(x) for x in c]
    if len(c) != f.nvars:
        raise ValueError("point dimension does not match the variable list")
    grad = [f.diff(i)(*c) for i in range(f.nvars)]
    if any(grad):
        raise NotCriticalPointError(f"gradient at the point is {tuple(str(g) for g in grad)}, not zero")
    return translate_to_origin(f, c)


def _hessian_at_origin(f: Poly) -> list[list[Fraction]]:
    n = f.nvars
    H = [[Fraction(0)] * n for _ in range(n)]
    for m, c in f.terms.items():
        if sum(m) != 2:
            continue
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx
        if i == j:
            H[i][i] += 2 * c
        else:
            H[i][j] += c
            H[j][i] += c
    return H


def _charpoly(H: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients (ascending) of det(tI - H) by Faddeev-LeVerrier."""
    n = len(H)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = H M_{k-1} + c_{n-k+1} I
        M = [
            [sum((H[i][l] * M[l][j] for l in range(n)), Fraction(0)) + (coeffs[n - k + 1] if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        HM = [[sum((H[i][l] * M[l][j] for l in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum((HM[i][i] for i in range(n)), Fraction(0)) / k
    return coeffs


def _sign_variations(seq: Sequence[Fraction]) -> int:
    signs = [1 if c > 0 else -1 for c in seq if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def hessian_record(f: Poly) -> HessianRecord:
    H = _hessian_at_origin(f)
    n = len(H)
    cp = _charpoly(H)
    zeros = next(k for k, c in enumerate(cp) if c != 0)
    pos = _sign_variations(cp)
    neg = _sign_variations([c if k % 2 == 0 else -c for k, c in enumerate(cp)])
    rank = n - zeros
    return HessianRecord(n, rank, pos, neg)


def hessian_fast_path(f: Poly) -> Verdict | None:
    """Classical second-order test when the Hessian at 0 is nonsingular."""
    rec = hessian_record(f)
    if rec.degenerate:
        return None
    if rec.negative == 0:
        return Verdict.LOCAL_MINIMIZER
    if rec.positive == 0:
        return Verdict.LOCAL_MAXIMIZER
    return Verdict.SADDLE_POINT


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _split_contents(p: Poly) -> list[Poly]:
    """Split a squarefree p into content and primitive part in each variable.

    The pieces are coprime because p is squarefree; this separates factors
    such as (1 + X1) in (1 + X1)(X1^2 + X2^4) without full factorization."""
    for i in p.used_variables():
        cont = _content_in(p, i)
        if not cont.is_constant():
            return _split_contents(cont) + _split_contents(_exact_div(p, cont))
    return [p]


def factor_reduce(f: Poly) -> tuple[Poly, PreprocessingRecord]:
    """Strip square factors and factors that do not vanish at the origin.

    With f = unit * g * h^2 (g squarefree): g(0) != 0 decides by the sign of
    unit*g(0); a nonzero gradient of g at 0 means a saddle; otherwise factors
    of g not vanishing at 0 are peeled, their signs at 0 folded into the
    orientation, and the remaining product is the core."""
    rec = PreprocessingRecord(translation=())
    if f.is_zero():
        raise ValueError("cannot reduce the zero polynomial")
    unit, factors = squarefree_decomposition(f, with_unit=True)
    rec.unit = unit
    origin = (0,) * f.nvars
    odd = [piece for fac, m in factors if m % 2 == 1 for piece in _split_contents(fac)]
    rec.squared_factors = [(fac, m) for fac, m in factors if m >= 2]
    g = Poly.constant(f.variables, unit)
    for fac in odd:
        g = g * fac
    if rec.squared_factors:
        g0 = g(*origin)
        if g0 != 0:
            rec.shortcut = Verdict.LOCAL_MINIMIZER if g0 > 0 else Verdict.LOCAL_MAXIMIZER
            rec.shortcut_reason = "nonvanishing squarefree cofactor"
            rec.core = g
            return g, rec
        if any(g.diff(i)(*origin) != 0 for i in range(f.nvars)):
            rec.shortcut = Verdict.SADDLE_POINT
            rec.shortcut_reason = "squarefree cofactor with nonzero gradient"
            rec.core = g
            return g, rec
    orientation = _sign(unit)
    core = Poly.constant(f.variables, 1)
    for fac in odd:
        v = fac(*origin)
        if v != 0:
            rec.peeled_factors.append((fac, _sign(v)))
            orientation *= _sign(v)
        else:
            core = core * fac
    if not rec.reduced:
        rec.core = f
        rec.orientation = 1
        return f, rec
    rec.orientation = orientation
    rec.core = core
    if core.is_constant():
        # every odd factor is nonzero at 0, so f is a unit times squares
        rec.shortcut = Verdict.LOCAL_MINIMIZER if orientation > 0 else Verdict.LOCAL_MAXIMIZER
        rec.shortcut_reason = "no odd factor vanishes at the origin"
    return core, rec


# ---------------------------------------------------------------------------
# faithful radius


def _frobenius_ceiling(A: MatrixQ) -> int:
    s = sum(x * x for row in A.rows for x in row)
    c = isqrt(floor(s))
    while c * c < s:
        c += 1
    return c


def _uni_product(a: Poly, b: Poly) -> list[Fraction]:
    ca, cb = as_coefficients(a), as_coefficients(b)
    out = [Fraction(0)] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            out[i + j] += x * y
    return out


def faithful_radius(
    f: Poly, R_iso, seed: int = 0, refine_bits: int = 40, max_retries: int = 10
) -> FaithfulRadiusReport:
    """Radius R such that every 0 < r < R is faithful for f at the origin."""
    R_iso = Fraction(R_iso)
    if R_iso <= 0:
        raise ValueError("isolation radius must be positive")
    width = Fraction(1, 2**refine_bits)
    last_error: Exception | None = None
    for attempt in range(max_retries):
        try:
            A, fA, I = ensure_dim_one(f, seed + attempt, force_random=attempt > 0)
        except CoordinateChangeError as exc:
            last_error = exc
            continue
        try:
            I0, I1 = equidim_split_dim1(I)
            D = delta_set(I1).ideal()
            nrm = norm_squared(f.variables)
            E0 = eliminant(I0, nrm) if not I0.is_unit() else Poly.constant(("T",), 1)
            E1 = eliminant(D, nrm)
            if E1.is_zero() or E0.is_zero():
                raise NonGenericCoordinatesError("eliminant vanishes identically")
        except (NonGenericCoordinatesError, ValueError) as exc:
            last_error = exc
            continue
        roots = positive_root_intervals(_uni_product(E0, E1), width)
        scaled = R_iso
        change = None
        if not A.is_identity():
            change = A
            scaled = R_iso / _frobenius_ceiling(A)
        if roots:
            a = min(iv.lo for iv in roots)
            R = min(dyadic_below_sqrt(a, refine_bits), scaled)
            return FaithfulRadiusReport(R, scaled, a, roots, True, change, fA, I, (E0, E1), seed + attempt)
        return FaithfulRadiusReport(scaled, scaled, None, [], False, change, fA, I, (E0, E1), seed + attempt)
    raise CoordinateChangeError(f"faithful radius failed after {max_retries} coordinate changes: {last_error}")


def pick_test_radius(R) -> Fraction:
    """Smallest-denominator rational in the open interval (R/2, R)."""
    R = Fraction(R)
    if R <= 0:
        raise ValueError("radius must be positive")
    return _simplest_between(R / 2, R)


def _simplest_between(a: Fraction, b: Fraction | None) -> Fraction:
    """Stern-Brocot simplest rational in the open interval (a, b); b=None means +oo."""
    fl = floor(a)
    if b is None or fl + 1 < b:
        return Fraction(fl + 1)
    frac_a = a - fl
    inner = _simplest_between(1 / (b - fl), None if frac_a == 0 else 1 / frac_a)
    return fl + 1 / inner


# ---------------------------------------------------------------------------
# type determination


def determine_type(
    fA: Poly, I: Ideal, r=None, seed: int = 0, refine_bits: int = 40, max_extra_bits: int = 200, r_sq=None
) -> TypeReport:
    """Signs of f on the tangency curve intersected with the sphere of radius r.

    The ideal I + <|X|^2 - r^2, f - T> is the graph of f over the sphere
    section J = I + <|X|^2 - r^2>, so J is solved and f is boxed at each of
    its real points; the T-coordinates are exactly those boxes.  ``r_sq``
    gives the squared radius directly (for radii with irrational r)."""
    if (r is None) == (r_sq is None):
        raise ValueError("give exactly one of r and r_sq")
    s = Fraction(r_sq) if r_sq is not None else Fraction(r) ** 2
    if s <= 0:
        raise ValueError("test radius must be positive")
    n = fA.nvars
    J = Ideal(list(I.gens_for_sum()) + [norm_squared(fA.variables) - s], fA.variables)
    if not is_zero_dimensional(J):
        raise CertificationError("the sphere section of the tangency curve is not zero-dimensional")
    width = Fraction(1, 2**refine_bits)
    points = solve_zero_dim_real(J, n, width, seed=seed, extra=[fA])
    if not points:
        raise CertificationError("no real point on the tangency curve at this radius")
    values = []
    floor_width = Fraction(1, 2 ** (refine_bits + max_extra_bits))
    for pt in points:
        iv = pt.coordinates[-1]
        w = width
        while not iv.excludes_zero():
            if iv.exact and iv.lo == 0:
                raise CertificationError("f vanishes on the tangency curve at the test radius")
            if w < floor_width:
                raise CertificationError("value interval still contains 0 at maximal refinement")
            w /= 4
            pt = pt.refined(w, n, avoid_zero=True)
            iv = pt.coordinates[-1]
        values.append(iv)
    m = min(values, key=lambda v: v.lo)
    M = max(values, key=lambda v: v.hi)
    if m.lo > 0:
        verdict = Verdict.LOCAL_MINIMIZER
    elif M.hi < 0:
        verdict = Verdict.LOCAL_MAXIMIZER
    else:
        verdict = Verdict.SADDLE_POINT
    r = Fraction(r) if r is not None else None
    return TypeReport(r, m, M, verdict, sorted(values, key=lambda v: v.lo), s)


def classify(
    f: Poly,
    R_iso=None,
    seed: int = 0,
    refine_bits: int = 40,
    point: Sequence | None = None,
    test_radius=None,
    fast_path: bool = True,
    factor_reduction: bool = True,
    test_radius_sq=None,
) -> Certificate:
    """Certified type of the critical point ``point`` (default: origin) of f.

    ``test_radius`` overrides the sphere radius r of the type step, and
    ``test_radius_sq`` overrides r^2 instead; either must satisfy r < R."""
    if test_radius is not None and test_radius_sq is not None:
        raise ValueError("give at most one of test_radius and test_radius_sq")
    start = time.perf_counter()
    pt = tuple(Fraction(x) for x in (point if point is not None else [0] * f.nvars))
    g = normalize_input(f, pt)
    if g.is_zero():
        raise ValueError("f is constant; every point is degenerate")
    hess = hessian_record(g)

    def done(cert: Certificate) -> Certificate:
        cert.timing = time.perf_counter() - start
        return cert

    base = dict(polynomial=f, point=pt, normalized=g, hessian=hess, seed=seed, refine_bits=refine_bits)
    if fast_path:
        v = hessian_fast_path(g)
        if v is not None:
            return done(Certificate(verdict=v, path="hessian", **base))

    core, rec = g, PreprocessingRecord(translation=pt, core=g)
    if factor_reduction:
        core, rec = factor_reduce(g)
        rec.translation = pt
        if rec.shortcut is not None:
            return done(Certificate(verdict=rec.shortcut, path="factor-shortcut", preprocessing=rec, **base))
        if fast_path and core is not g:
            v = hessian_fast_path(core)
            if v is not None:
                if rec.orientation < 0:
                    v = v.flipped()
                return done(Certificate(verdict=v, path="factor-hessian", preprocessing=rec, **base))

    if R_iso is not None and core is g:
        iso, method = Fraction(R_iso), "given"
    else:
        res = isolation_radius(core, seed, refine_bits)
        iso, method = res.radius, res.method
    report = faithful_radius(core, iso, seed, refine_bits)
    R = report.R
    if test_radius_sq is not None:
        s_ = Fraction(test_radius_sq)
        if not 0 < s_ < R * R:
            raise ValueError(f"squared test radius {s_} must lie in (0, R^2) with R = {R}")
        tr = determine_type(report.transformed, report.curve_ideal, None, report.seed, refine_bits, r_sq=s_)
    else:
        r = Fraction(test_radius) if test_radius is not None else pick_test_radius(R)
        if not 0 < r < R:
            raise ValueError(f"test radius {r} must lie in (0, R) with R = {R}")
        tr = determine_type(report.transformed, report.curve_ideal, r, report.seed, refine_bits)
    verdict = tr.verdict.flipped() if rec.orientation < 0 else tr.verdict
    return done(
        Certificate(
            verdict=verdict,
            path="tangency",
            preprocessing=rec,
            isolation_radius=iso,
            isolation_method=method,
            faithful=report,
            type_report=tr,
            **base,
        )
    )
