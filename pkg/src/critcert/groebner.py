"""Gröbner bases, elimination, saturation, dimension and radicals.

Buchberger's algorithm with the normal selection strategy and the
Gebauer–Möller installation of the product and chain criteria.  Coefficients
are carried as ``gmpy2.mpq`` inside the engine and converted back to
:class:`fractions.Fraction` at the boundary.

Zero-dimensional ideals additionally get quotient-algebra tools (normal set,
minimal polynomials of multiplication maps) which back the univariate
eliminants used throughout the pipeline.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, count
from typing import Iterable, Sequence

from gmpy2 import mpq

from .linalg import KrylovLift
from .ring import Poly, fresh_name, squarefree_part, _content_in, _exact_div

__all__ = [
    "OrderSpec",
    "GREVLEX",
    "LEX",
    "block_order",
    "GroebnerBasis",
    "Ideal",
    "GroebnerError",
    "DimensionError",
    "NonGenericCoordinatesError",
    "normal_form",
    "buchberger",
    "hilbert_dimension",
    "elimination_ideal",
    "saturate_by_poly",
    "saturate_by_ideal",
    "ideal_intersection",
    "is_zero_dimensional",
    "independent_sets",
    "radical_zero_dim",
    "equidim_split_dim1",
    "radical_dim1_equidim",
    "ideal_membership",
    "normal_set",
    "minimal_polynomial",
    "eliminant",
    "QuotientAlgebra",
]


class GroebnerError(ArithmeticError):
    pass


class DimensionError(GroebnerError):
    """An ideal does not have the dimension an operation requires."""


class NonGenericCoordinatesError(GroebnerError):
    """The current coordinates are not generic enough; re-randomize and retry."""


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class OrderSpec:
    """Monomial order on the listed variables.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``; a block order
    compares the first ``k`` variables by grevlex first and breaks ties with
    grevlex on the remaining ones, so it eliminates the first ``k``."""

    kind: str = "grevlex"
    k: int = 0

    def key(self, exp: Sequence[int]) -> tuple:
        if self.kind == "grevlex":
            return (sum(exp),) + tuple(-e for e in reversed(exp))
        if self.kind == "lex":
            return tuple(exp)
        if self.kind == "block":
            a, b = exp[: self.k], exp[self.k:]
            return (sum(a),) + tuple(-e for e in reversed(a)) + (sum(b),) + tuple(-e for e in reversed(b))
        raise ValueError(f"unknown order kind {self.kind!r}")


GREVLEX = OrderSpec("grevlex")
LEX = OrderSpec("lex")


def block_order(k: int) -> OrderSpec:
    return OrderSpec("block", k)


class _Keys:
    """Memoized order keys plus their negation (for heapq max-extraction)."""

    __slots__ = ("order", "pos", "neg")

    def __init__(self, order: OrderSpec):
        self.order = order
        self.pos: dict[tuple, tuple] = {}
        self.neg: dict[tuple, tuple] = {}

    def __call__(self, m: tuple) -> tuple:
        k = self.pos.get(m)
        if k is None:
            k = self.pos[m] = self.order.key(m)
        return k

    def negkey(self, m: tuple) -> tuple:
        k = self.neg.get(m)
        if k is None:
            k = self.neg[m] = tuple(-x for x in self(m))
        return k


# ---------------------------------------------------------------------------
# internal polynomial helpers (dict: exponent tuple -> mpq)


def _to_internal(p: Poly) -> dict:
    return {m: mpq(c.numerator, c.denominator) for m, c in p.terms.items()}


def _to_poly(variables: tuple, d: dict) -> Poly:
    return Poly._raw(variables, {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in d.items()})


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _lead(p: dict, keys: _Keys) -> tuple:
    return max(p, key=keys)


def _monic(p: dict, lm: tuple) -> dict:
    c = p[lm]
    if c == 1:
        return p
    inv = 1 / c
    return {m: v * inv for m, v in p.items()}


def _reduce(f: dict, divisors: Sequence[tuple], keys: _Keys) -> dict:
    """Full reduction of f by monic (lm, poly) divisors; returns the remainder."""
    f = dict(f)
    if not f:
        return f
    heap = [(keys.negkey(m), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    negkey = keys.negkey
    while heap:
        m = heapq.heappop(heap)[1]
        c = f.pop(m, None)
        if c is None:
            continue
        for lm, g in divisors:
            if _divides(lm, m):
                break
        else:
            rem[m] = c
            continue
        q = tuple(a - b for a, b in zip(m, lm))
        for mg, cg in g.items():
            if mg == lm:
                continue
            mm = tuple(a + b for a, b in zip(mg, q))
            v = f.get(mm)
            if v is None:
                f[mm] = -c * cg
                heapq.heappush(heap, (negkey(mm), mm))
            else:
                v -= c * cg
                if v:
                    f[mm] = v
                else:
                    del f[mm]
    return rem


def _spoly(f: tuple, g: tuple) -> dict:
    (lf, pf), (lg, pg) = f, g
    L = _lcm(lf, lg)
    qf = tuple(a - b for a, b in zip(L, lf))
    qg = tuple(a - b for a, b in zip(L, lg))
    out: dict = {}
    for m, c in pf.items():
        if m != lf:
            out[tuple(a + b for a, b in zip(m, qf))] = c
    for m, c in pg.items():
        if m != lg:
            mm = tuple(a + b for a, b in zip(m, qg))
            v = out.get(mm, 0) - c
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
    return out


def _groebner(gens: Iterable[dict], keys: _Keys) -> list[tuple]:
    """Reduced Gröbner basis as a list of monic (lm, poly), sorted by lm."""
    polys: list[tuple] = []
    G: list[int] = []
    pairs: set[tuple[int, int]] = set()
    queue: list = []
    ticket = count()

    def push(i: int, j: int) -> None:
        L = _lcm(polys[i][0], polys[j][0])
        pairs.add((i, j))
        heapq.heappush(queue, (keys(L), next(ticket), i, j))

    def install(h: int) -> None:
        nonlocal G
        lh = polys[h][0]
        C = list(G)
        D: list[int] = []
        while C:
            g1 = C.pop()
            lg1 = polys[g1][0]
            if _coprime(lh, lg1):
                D.append(g1)
                continue
            L1 = _lcm(lh, lg1)
            if any(_divides(_lcm(lh, polys[g2][0]), L1) for g2 in C) or any(
                _divides(_lcm(lh, polys[g2][0]), L1) for g2 in D
            ):
                continue
            D.append(g1)
        E = [g for g in D if not _coprime(lh, polys[g][0])]
        for g1, g2 in list(pairs):
            L12 = _lcm(polys[g1][0], polys[g2][0])
            if (
                _divides(lh, L12)
                and _lcm(polys[g1][0], lh) != L12
                and _lcm(polys[g2][0], lh) != L12
            ):
                pairs.discard((g1, g2))
        for g in E:
            push(g, h)
        G = [g for g in G if not _divides(lh, polys[g][0])] + [h]

    def add(p: dict) -> None:
        lm = _lead(p, keys)
        polys.append((lm, _monic(p, lm)))
        install(len(polys) - 1)

    start = [g for g in gens if g]
    start.sort(key=lambda p: keys(_lead(p, keys)))
    for g in start:
        r = _reduce(g, [polys[i] for i in G], keys)
        if r:
            if all(not any(m) for m in r):
                return [((0,) * len(next(iter(r))), {next(iter(r)): mpq(1)})]
            add(r)

    while queue:
        _, _, i, j = heapq.heappop(queue)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        s = _spoly(polys[i], polys[j])
        if not s:
            continue
        r = _reduce(s, [polys[k] for k in G], keys)
        if r:
            if all(not any(m) for m in r):
                m0 = next(iter(r))
                return [(m0, {m0: mpq(1)})]
            add(r)

    basis = [polys[g] for g in G]
    out = []
    for idx, (lm, p) in enumerate(basis):
        others = [b for k, b in enumerate(basis) if k != idx]
        tail = _reduce({m: c for m, c in p.items() if m != lm}, others, keys)
        tail[lm] = mpq(1)
        out.append((lm, tail))
    out.sort(key=lambda t: keys(t[0]))
    return out


# ---------------------------------------------------------------------------
# public objects


@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis of an ideal under ``order``."""

    order: OrderSpec
    variables: tuple
    elements: list[Poly]
    _internal: list[tuple] = field(default_factory=list, repr=False)
    _keys: _Keys | None = field(default=None, repr=False)

    @property
    def keys(self) -> _Keys:
        if self._keys is None:
            self._keys = _Keys(self.order)
        return self._keys

    def leading_monomials(self) -> list[tuple]:
        return [lm for lm, _ in self._internal]

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self.leading_monomials())

    def is_zero(self) -> bool:
        return not self.elements

    def reduce(self, f: Poly) -> Poly:
        if f.variables != self.variables:
            raise ValueError("variable lists differ")
        return _to_poly(self.variables, _reduce(_to_internal(f), self._internal, self.keys))

    def reduce_internal(self, f: dict) -> dict:
        return _reduce(f, self._internal, self.keys)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def buchberger(gens: Sequence[Poly], order: OrderSpec = GREVLEX, variables: Sequence[str] | None = None) -> GroebnerBasis:
    gens = list(gens)
    if variables is None:
        if not gens:
            raise ValueError("cannot infer variables from an empty generator list")
        variables = gens[0].variables
    variables = tuple(variables)
    for g in gens:
        if g.variables != variables:
            raise ValueError("generators live in different rings")
    keys = _Keys(order)
    internal = _groebner([_to_internal(g) for g in gens], keys)
    elements = [_to_poly(variables, p) for _, p in internal]
    return GroebnerBasis(order, variables, elements, internal, keys)


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    return G.reduce(f)


class Ideal:
    """Ideal given by generators, with cached reduced Gröbner bases per order."""

    def __init__(self, generators: Iterable[Poly], variables: Sequence[str] | None = None):
        gens = list(generators)
        if variables is None:
            if not gens:
                raise ValueError("need variables for an ideal without generators")
            variables = gens[0].variables
        self.variables = tuple(variables)
        for g in gens:
            if g.variables != self.variables:
                raise ValueError("generators live in different rings")
        self.generators = [g for g in gens if not g.is_zero()]
        self._gb: dict[OrderSpec, GroebnerBasis] = {}

    @classmethod
    def unit(cls, variables: Sequence[str]) -> "Ideal":
        return cls([Poly.constant(variables, 1)], variables)

    def gb(self, order: OrderSpec = GREVLEX) -> GroebnerBasis:
        G = self._gb.get(order)
        if G is None:
            if order != GREVLEX and GREVLEX in self._gb:
                src = self._gb[GREVLEX].elements
            else:
                src = self.generators
            G = buchberger(src, order, self.variables)
            self._gb[order] = G
        return G

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, f: Poly) -> bool:
        return self.gb().reduce(f).is_zero()

    def dimension(self) -> int:
        return hilbert_dimension(self)

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            other = other.generators
        return Ideal(self.gens_for_sum() + list(other), self.variables)

    def gens_for_sum(self) -> list[Poly]:
        if GREVLEX in self._gb:
            return list(self._gb[GREVLEX].elements)
        return list(self.generators)

    def recast(self, variables: Sequence[str]) -> "Ideal":
        return Ideal([g.recast(variables) for g in self.generators], variables)

    def __repr__(self) -> str:
        return "Ideal<" + ", ".join(str(g) for g in self.generators) + ">"


def ideal_membership(f: Poly, I: Ideal) -> bool:
    return I.contains(f)


# ---------------------------------------------------------------------------
# dimension


def _dimension_from_lms(lms: Sequence[tuple], n: int) -> tuple[int, list[tuple[int, ...]]]:
    """Dimension and all maximal-size independent variable sets."""
    if any(not any(m) for m in lms):
        return -1, []
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(n, -1, -1):
        found = [
            s for s in combinations(range(n), size) if all(not sup <= set(s) for sup in supports)
        ]
        if found:
            return size, found
    return 0, [()]


def hilbert_dimension(I: Ideal) -> int:
    G = I.gb()
    return _dimension_from_lms(G.leading_monomials(), I.nvars)[0]


def independent_sets(I: Ideal) -> list[tuple[int, ...]]:
    G = I.gb()
    return _dimension_from_lms(G.leading_monomials(), I.nvars)[1]


def is_zero_dimensional(I: Ideal) -> bool:
    G = I.gb()
    if G.is_unit():
        return True
    seen = set()
    for lm in G.leading_monomials():
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 1:
            seen.add(nz[0])
    return len(seen) == I.nvars


# ---------------------------------------------------------------------------
# elimination, saturation, intersection


def elimination_ideal(I: Ideal, keep: Sequence) -> Ideal:
    """I intersected with the subring of the kept variables (names or indices).

    The result stays in the ambient variable list of I."""
    names = I.variables
    keep_names = [names[k] if isinstance(k, int) else k for k in keep]
    drop = [v for v in names if v not in keep_names]
    if not drop:
        return Ideal(I.gens_for_sum(), names)
    ordered = tuple(drop) + tuple(v for v in names if v in keep_names)
    G = buchberger([g.recast(ordered) for g in I.gens_for_sum()], block_order(len(drop)), ordered)
    k = len(drop)
    kept = [g.recast(names) for g, (lm, _) in zip(G.elements, G._internal) if not any(lm[:k])]
    return Ideal(kept, names)


def saturate_by_poly(I: Ideal, g: Poly) -> Ideal:
    """I : g^oo through an inverse variable t with t*g - 1, then eliminating t."""
    if g.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if g.is_constant():
        return Ideal(I.gens_for_sum(), I.variables)
    t = fresh_name(I.variables, "t")
    ext = (t,) + I.variables
    gens = [h.recast(ext) for h in I.gens_for_sum()]
    gens.append(Poly.var(ext, 0) * g.recast(ext) - 1)
    G = buchberger(gens, block_order(1), ext)
    kept = [h.recast(I.variables) for h, (lm, _) in zip(G.elements, G._internal) if not lm[0]]
    return Ideal(kept, I.variables)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1-t)*J, eliminating t."""
    if I.variables != J.variables:
        raise ValueError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal([], I.variables)
    t = fresh_name(I.variables, "t")
    ext = (t,) + I.variables
    tv = Poly.var(ext, 0)
    gens = [tv * h.recast(ext) for h in I.gens_for_sum()]
    gens += [(1 - tv) * h.recast(ext) for h in J.gens_for_sum()]
    G = buchberger(gens, block_order(1), ext)
    kept = [h.recast(I.variables) for h, (lm, _) in zip(G.elements, G._internal) if not lm[0]]
    return Ideal(kept, I.variables)


def saturate_by_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J^oo as the intersection of I : g^oo over the generators g of J."""
    gens = [g for g in J.gens_for_sum() if not g.is_zero()]
    if not gens:
        raise ValueError("saturating ideal has no nonzero generator")
    if any(g.is_constant() for g in gens):
        return Ideal(I.gens_for_sum(), I.variables)
    result = None
    for g in gens:
        S = saturate_by_poly(I, g)
        if S.is_unit():
            continue
        result = S if result is None else ideal_intersection(result, S)
    return result if result is not None else Ideal.unit(I.variables)


# ---------------------------------------------------------------------------
# quotient algebra of a zero-dimensional ideal


def normal_set(G: GroebnerBasis) -> list[tuple]:
    """Standard monomials (not divisible by any leading monomial), ascending."""
    lms = G.leading_monomials()
    if any(not any(m) for m in lms):
        return []
    n = len(G.variables)
    start = (0,) * n
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                mm = m[:i] + (m[i] + 1,) + m[i + 1:]
                if mm in seen or any(_divides(lm, mm) for lm in lms):
                    continue
                seen.add(mm)
                nxt.append(mm)
        frontier = nxt
        if len(seen) > 200000:
            raise DimensionError("ideal is not zero-dimensional")
    return sorted(seen, key=G.keys)


def _mul_internal(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m)
            out[m] = c1 * c2 if v is None else v + c1 * c2
    return {m: c for m, c in out.items() if c}


class QuotientAlgebra:
    """Linear-algebra view of Q[X]/I for a zero-dimensional ideal I.

    ``power_basis(h)`` reduces NF(h^k) incrementally to echelon form; the
    first dependency gives the minimal polynomial of multiplication by h."""

    def __init__(self, I: Ideal):
        if not is_zero_dimensional(I):
            raise DimensionError("quotient algebra needs a zero-dimensional ideal")
        self.ideal = I
        self.G = I.gb()
        self.basis = normal_set(self.G)
        self.dim = len(self.basis)

    # quotients up to this size use direct rational elimination
    SMALL = 24

    def nf(self, f: dict) -> dict:
        return self.G.reduce_internal(f)

    def vector(self, f: dict) -> dict:
        """Coordinates of NF(f) in the normal-set basis, as index -> mpq."""
        return {self.index[m]: c for m, c in self.nf(f).items()}

    @property
    def index(self) -> dict:
        idx = getattr(self, "_index", None)
        if idx is None:
            idx = self._index = {m: i for i, m in enumerate(self.basis)}
        return idx

    def multiplication_columns(self, h: Poly) -> list[dict]:
        hi = _to_internal(h)
        return [self.vector(_mul_internal({b: mpq(1)}, hi)) for b in self.basis]

    def power_basis(self, h: Poly) -> "_PowerBasis":
        return _PowerBasis(self, _to_internal(h))

    def minimal_polynomial(self, h: Poly) -> list[Fraction]:
        """Coefficients (ascending, monic) of the minimal polynomial of h."""
        if self.dim <= self.SMALL:
            return self.power_basis(h).minpoly
        return KrylovLift(self.multiplication_columns(h), self.dim).minpoly

    def shape_parametrization(self, u: Poly, targets: Sequence[Poly]):
        """(q, coordinates, denominator) for a separating u, or None when u is
        not separating (its minimal polynomial q has degree < dim).

        Each target equals coordinates_i(u) / denominator(u) in the quotient;
        the denominator is None for the plain power-basis form and q' for the
        rational univariate representation used on large quotients."""
        if self.dim <= self.SMALL:
            pb = self.power_basis(u)
            if pb.degree != self.dim:
                return None
            return pb.minpoly, [pb.express(t) for t in targets], None
        cols = self.multiplication_columns(u)
        if KrylovLift.degree_mod_p(cols, self.dim) != self.dim:
            return None
        lift = KrylovLift(cols, self.dim, [self.vector(_to_internal(t)) for t in targets], rur=True)
        return lift.minpoly, lift.coordinates, lift.denominator


class _PowerBasis:
    def __init__(self, Q: QuotientAlgebra, h: dict):
        self.Q = Q
        keys = Q.G.keys
        rows: list[tuple[tuple, dict, dict]] = []  # (pivot, row, combination over powers)
        n = len(Q.G.variables)
        v = Q.nf({(0,) * n: mpq(1)})
        k = 0
        minpoly = None
        while True:
            if not v:
                comb = {k: mpq(1)}
                red = {}
            else:
                red, comb = self._eliminate(rows, dict(v), {k: mpq(1)})
            if not red:
                lead = comb[k]
                minpoly = [Fraction(0)] * (k + 1)
                for j, c in comb.items():
                    c = c / lead
                    minpoly[j] = Fraction(int(c.numerator), int(c.denominator))
                break
            piv = max(red, key=keys)
            inv = 1 / red[piv]
            rows.append((piv, {m: c * inv for m, c in red.items()}, {j: c * inv for j, c in comb.items()}))
            k += 1
            if k > Q.dim:
                raise GroebnerError("minimal polynomial degree exceeds quotient dimension")
            v = Q.nf(_mul_internal(v, h))
        self.rows = rows
        self.degree = k
        self.minpoly = minpoly

    @staticmethod
    def _eliminate(rows, red: dict, comb: dict) -> tuple[dict, dict]:
        for piv, row, rcomb in rows:
            a = red.get(piv)
            if a is None:
                continue
            for m, c in row.items():
                v = red.get(m, 0) - a * c
                if v:
                    red[m] = v
                else:
                    red.pop(m, None)
            for j, c in rcomb.items():
                v = comb.get(j, 0) - a * c
                if v:
                    comb[j] = v
                else:
                    comb.pop(j, None)
        return red, comb

    def express(self, f: Poly) -> list[Fraction] | None:
        """Coefficients c_j with NF(f) = sum c_j NF(h^j), or None if outside the span."""
        v = self.Q.nf(_to_internal(f))
        red, comb = self._eliminate(self.rows, dict(v), {})
        if red:
            return None
        out = [Fraction(0)] * self.degree
        for j, c in comb.items():
            out[j] = -Fraction(int(c.numerator), int(c.denominator))
        return out


def minimal_polynomial(I: Ideal, h: Poly) -> list[Fraction]:
    """Monic minimal polynomial (ascending coefficients) of h modulo a zero-dimensional I."""
    return QuotientAlgebra(I).minimal_polynomial(h)


def _univariate(coeffs: Sequence[Fraction], name: str) -> Poly:
    return Poly((name,), {(k,): c for k, c in enumerate(coeffs) if c})


def eliminant(I: Ideal, h: Poly, name: str = "T") -> Poly:
    """Generator of (I + <h - T>) ∩ Q[T] as a univariate polynomial in ``name``.

    Zero-dimensional I goes through the quotient algebra; otherwise a block
    order eliminates the original variables.  Returns the zero polynomial
    when the elimination ideal is zero."""
    if I.is_unit():
        return Poly.constant((name,), 1)
    if is_zero_dimensional(I):
        return _univariate(minimal_polynomial(I, h), name)
    t = fresh_name(I.variables, name)
    ext = I.variables + (t,)
    gens = [g.recast(ext) for g in I.gens_for_sum()] + [h.recast(ext) - Poly.var(ext, len(ext) - 1)]
    G = buchberger(gens, block_order(len(I.variables)), ext)
    uni = [g for g, (lm, _) in zip(G.elements, G._internal) if not any(lm[:-1])]
    if not uni:
        return Poly.zero((name,))
    p = uni[0]
    return Poly((name,), {(m[-1],): c for m, c in p.terms.items()})


# ---------------------------------------------------------------------------
# radicals


def radical_zero_dim(I: Ideal) -> Ideal:
    """Radical of a zero-dimensional ideal: adjoin squarefree eliminants per variable."""
    if not is_zero_dimensional(I):
        raise DimensionError("radical_zero_dim needs a zero-dimensional ideal")
    if I.is_unit():
        return Ideal.unit(I.variables)
    Q = QuotientAlgebra(I)
    extra = []
    gens = Poly.gens(I.variables)
    for i, x in enumerate(gens):
        mp = Q.minimal_polynomial(x)
        p = Poly(I.variables, {tuple(k if j == i else 0 for j in range(I.nvars)): c for k, c in enumerate(mp) if c})
        sq = squarefree_part(p)
        if sq.degree() < p.degree():
            extra.append(sq)
    if not extra:
        return Ideal(I.gb().elements, I.variables)
    R = Ideal(I.gb().elements + extra, I.variables)
    R.gb()
    return Ideal(R.gb().elements, I.variables)


def _main_coefficients(G: GroebnerBasis, k_others: int) -> list[Poly]:
    """Leading coefficients, in the trailing variables, w.r.t. the leading block."""
    out = []
    for g, (lm, p) in zip(G.elements, G._internal):
        head = lm[:k_others]
        coeff = {m: c for m, c in g.terms.items() if m[:k_others] == head}
        out.append(Poly._raw(G.variables, {(0,) * k_others + m[k_others:]: c for m, c in coeff.items()}))
    return out


def _contract(I: Ideal, indep: Sequence[int]) -> Ideal:
    """Contraction of the extension of I to Q(indep)[others]: I : h^oo."""
    names = I.variables
    others = [v for i, v in enumerate(names) if i not in indep]
    params = [names[i] for i in indep]
    ordered = tuple(others) + tuple(params)
    G = buchberger([g.recast(ordered) for g in I.gens_for_sum()], block_order(len(others)), ordered)
    h = Poly.constant(ordered, 1)
    for c in _main_coefficients(G, len(others)):
        if not c.is_constant():
            h = h * c
    if h.is_constant():
        return Ideal([g.recast(names) for g in G.elements], names)
    return saturate_by_poly(Ideal([g.recast(names) for g in G.elements], names), squarefree_part(h).recast(names))


def _radical_over_parameters(J: Ideal, indep: Sequence[int]) -> Ideal:
    """Radical of J, assuming J = J^e ∩ Q[X] and J^e zero-dimensional over Q(indep)."""
    names = J.variables
    extra = []
    for j in range(len(names)):
        if j in indep:
            continue
        E = elimination_ideal(J, [names[j]] + [names[i] for i in indep])
        gens = [g for g in E.generators if g.degree_in(j) > 0]
        if not gens:
            raise NonGenericCoordinatesError("no eliminant over the parameter field")
        p = min(gens, key=lambda g: (g.degree_in(j), len(g.terms)))
        p = _exact_div(p, _content_in(p, j))
        sq = squarefree_part(p)
        if sq.degree_in(j) < p.degree_in(j):
            extra.append(sq)
    if not extra:
        return J
    return _contract(J + extra, indep)


def radical_dim1_equidim(I: Ideal) -> Ideal:
    """Radical of an ideal that is equidimensional of dimension one."""
    if hilbert_dimension(I) != 1:
        raise DimensionError("radical_dim1_equidim needs a one-dimensional ideal")
    indep = independent_sets(I)[0]
    J = _contract(I, indep)
    if hilbert_dimension(J) != 1:
        raise NonGenericCoordinatesError("contraction lost the curve")
    R = _radical_over_parameters(J, indep)
    return Ideal(R.gb().elements, I.variables)


def equidim_split_dim1(I: Ideal) -> tuple[Ideal, Ideal]:
    """Split a one-dimensional ideal into radical point part and radical curve part.

    Returns (I0, I1) with V(I) = V(I0) ∪ V(I1), I1 radical and equidimensional
    of dimension one, I0 radical and zero-dimensional (possibly the unit ideal).
    Curve components on which the chosen parameter is constant are picked up
    by further passes with other parameters."""
    if hilbert_dimension(I) != 1:
        raise DimensionError("equidim_split_dim1 needs a one-dimensional ideal")
    n = I.nvars
    curve: Ideal | None = None
    rest = I
    tried: set[int] = set()
    for _ in range(n):
        cands = [s for s in independent_sets(rest) if s[0] not in tried] or independent_sets(rest)
        indep = cands[0]
        tried.add(indep[0])
        J = _contract(rest, indep)
        if hilbert_dimension(J) != 1:
            raise NonGenericCoordinatesError("contraction is not one-dimensional")
        part = _radical_over_parameters(J, indep)
        part = Ideal(part.gb().elements, I.variables)
        curve = part if curve is None else Ideal(ideal_intersection(curve, part).gb().elements, I.variables)
        rest = saturate_by_ideal(I, curve)
        d = hilbert_dimension(rest)
        if d <= 0:
            break
    else:
        raise NonGenericCoordinatesError("could not separate the curve part")
    if rest.is_unit():
        I0 = Ideal.unit(I.variables)
    else:
        I0 = radical_zero_dim(rest)
    return I0, curve
