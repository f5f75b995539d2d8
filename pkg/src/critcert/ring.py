"""Exact rational scalars and sparse multivariate polynomials.

Every polynomial carries its ordered tuple of variable names; arithmetic
between polynomials over different variable tuples is refused rather than
silently coerced.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import reduce
from itertools import permutations
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Monomial = tuple

__all__ = [
    "Rational",
    "Poly",
    "MatrixQ",
    "VariableMismatchError",
    "SingularMatrixError",
    "as_rational",
    "poly_arith",
    "partial_derivative",
    "evaluate",
    "substitute_linear",
    "translate_to_origin",
    "gcd_poly",
    "squarefree_decomposition",
    "squarefree_part",
    "norm_squared",
    "fresh_name",
]


class VariableMismatchError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    # gmpy2.mpq and friends expose numerator/denominator
    num, den = getattr(value, "numerator", None), getattr(value, "denominator", None)
    if num is not None and den is not None and not isinstance(value, float):
        return Fraction(int(num), int(den))
    raise TypeError(f"not an exact rational: {value!r}")


def _grevlex_key(exp: Sequence[int]) -> tuple:
    return (sum(exp), tuple(-e for e in reversed(exp)))


class Poly:
    """Sparse polynomial with rational coefficients over named variables."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[tuple, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError(f"monomial {exp} does not fit {n} variables")
                c = as_rational(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "Poly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Iterable[str], c) -> "Poly":
        variables = tuple(variables)
        c = as_rational(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables: Iterable[str], name_or_index) -> "Poly":
        variables = tuple(variables)
        i = variables.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw(variables, {exp: Fraction(1)})

    @classmethod
    def gens(cls, variables: Iterable[str]) -> list["Poly"]:
        variables = tuple(variables)
        return [cls.var(variables, i) for i in range(len(variables))]

    # -- basic queries -----------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def used_variables(self) -> list[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return sorted(used)

    def leading_term(self) -> tuple[tuple, Fraction]:
        """Leading (monomial, coefficient) under graded reverse lex."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_grevlex_key)
        return m, self.terms[m]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading_term()
        if c == 1:
            return self
        inv = 1 / c
        return Poly._raw(self.variables, {m: v * inv for m, v in self.terms.items()})

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        nums = reduce(igcd, (c.numerator for c in self.terms.values()))
        dens = reduce(lambda a, b: a * b // igcd(a, b), (c.denominator for c in self.terms.values()))
        return Fraction(abs(nums), dens)

    def integer_primitive(self) -> "Poly":
        """Scale to coprime integer coefficients with positive grevlex leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return self.scale(1 / c)

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "Poly") -> None:
        if self.variables != other.variables:
            raise VariableMismatchError(f"{self.variables} vs {other.variables}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.variables, other)

    def __add__(self, other) -> "Poly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = res.get(m)
            if v is None:
                res[m] = c
            else:
                v += c
                if v:
                    res[m] = v
                else:
                    del res[m]
        return Poly._raw(self.variables, res)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        if not c:
            return Poly.zero(self.variables)
        return Poly._raw(self.variables, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        res: dict[tuple, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = res.get(m)
                res[m] = c1 * c2 if v is None else v + c1 * c2
        return Poly._raw(self.variables, {m: c for m, c in res.items() if c})

    def __rmul__(self, other) -> "Poly":
        return self.__mul__(other)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.constant(self.variables, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------
    def diff(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        res = {}
        for m, c in self.terms.items():
            k = m[i]
            if k:
                res[m[:i] + (k - 1,) + m[i + 1:]] = c * k
        return Poly._raw(self.variables, res)

    def __call__(self, *point) -> Fraction:
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return evaluate(self, point)

    def compose(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute ``images[i]`` for the i-th variable (images share one ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target = images[0].variables
        cache: list[dict[int, Poly]] = [{0: Poly.constant(target, 1), 1: img} for img in images]

        def power(i: int, k: int) -> Poly:
            pw = cache[i]
            if k not in pw:
                pw[k] = power(i, k - 1) * images[i]
            return pw[k]

        acc: dict[tuple, Fraction] = {}
        for m, c in self.terms.items():
            t = Poly.constant(target, c)
            for i, k in enumerate(m):
                if k:
                    t = t * power(i, k)
            for mm, cc in t.terms.items():
                acc[mm] = acc.get(mm, 0) + cc
        return Poly._raw(target, {m: c for m, c in acc.items() if c})

    def recast(self, variables: Sequence[str]) -> "Poly":
        """Move into another variable tuple, matching variables by name.

        Variables actually occurring must exist in the target tuple."""
        variables = tuple(variables)
        where = {}
        for i, name in enumerate(self.variables):
            where[i] = variables.index(name) if name in variables else None
        res = {}
        n = len(variables)
        for m, c in self.terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    j = where[i]
                    if j is None:
                        raise VariableMismatchError(f"variable {self.variables[i]} not in {variables}")
                    e[j] = k
            res[tuple(e)] = c
        return Poly._raw(variables, res)

    def extend(self, *names: str) -> "Poly":
        return self.recast(self.variables + tuple(names))

    def coefficients_in(self, i: int) -> dict[int, "Poly"]:
        """Split as sum_k c_k * X_i^k with c_k free of X_i."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            k = m[i]
            out.setdefault(k, {})[m[:i] + (0,) + m[i + 1:]] = c
        return {k: Poly._raw(self.variables, t) for k, t in out.items()}

    # -- printing ------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_grevlex_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.variables, m) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, vars={list(self.variables)})"


# ---------------------------------------------------------------------------
# functional surface


def poly_arith(lhs: Poly, rhs: Poly, op: str) -> Poly:
    lhs._check(rhs)
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(f: Poly, i: int) -> Poly:
    return f.diff(i)


def evaluate(f: Poly, point: Sequence) -> Fraction:
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    pt = [as_rational(x) for x in point]
    powers: list[dict[int, Fraction]] = [{0: Fraction(1), 1: x} for x in pt]
    total = Fraction(0)
    for m, c in f.terms.items():
        t = c
        for i, k in enumerate(m):
            if k:
                pw = powers[i]
                if k not in pw:
                    pw[k] = pt[i] ** k
                t *= pw[k]
        total += t
    return total


def norm_squared(variables: Sequence[str], upto: int | None = None) -> Poly:
    """X_1^2 + ... + X_k^2 for the first ``upto`` variables (default all)."""
    variables = tuple(variables)
    k = len(variables) if upto is None else upto
    g = Poly.gens(variables)
    return sum((g[i] * g[i] for i in range(k)), Poly.zero(variables))


def fresh_name(variables: Sequence[str], base: str = "t") -> str:
    name, k = base, 0
    while name in variables:
        k += 1
        name = f"{base}{k}"
    return name


# ---------------------------------------------------------------------------
# matrices


class MatrixQ:
    """Square matrix of rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = [[as_rational(x) for x in r] for r in rows]
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixQ) and self.rows == other.rows

    def is_identity(self) -> bool:
        return self == MatrixQ.identity(self.n)

    def transpose(self) -> "MatrixQ":
        return MatrixQ([list(c) for c in zip(*self.rows)])

    def __matmul__(self, other):
        if isinstance(other, MatrixQ):
            cols = list(zip(*other.rows))
            return MatrixQ([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])
        vec = [as_rational(x) for x in other]
        return [sum(a * b for a, b in zip(r, vec)) for r in self.rows]

    def det(self) -> Fraction:
        a = [list(r) for r in self.rows]
        n = len(a)
        d = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                d = -d
            p = a[col][col]
            d *= p
            for r in range(col + 1, n):
                if a[r][col]:
                    q = a[r][col] / p
                    a[r] = [x - q * y for x, y in zip(a[r], a[col])]
        return d

    def inverse(self) -> "MatrixQ":
        n = self.n
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    q = a[r][col]
                    a[r] = [x - q * y for x, y in zip(a[r], a[col])]
        return MatrixQ([r[n:] for r in a])

    def __repr__(self) -> str:
        return "MatrixQ([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"


def poly_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a small square matrix of polynomials (Leibniz expansion)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    variables = matrix[0][0].variables
    total = Poly.zero(variables)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Poly.constant(variables, -1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            entry = matrix[i][j]
            if entry.is_zero():
                term = None
                break
            term = term * entry
        if term is not None:
            total = total + term
    return total


def substitute_linear(f: Poly, A: MatrixQ) -> Poly:
    """Return f(A x): variable i is replaced by sum_j A[i][j] X_j."""
    if A.n != f.nvars:
        raise ValueError("matrix size does not match variable count")
    if A.det() == 0:
        raise SingularMatrixError("coordinate change must be invertible")
    g = Poly.gens(f.variables)
    images = [
        sum((g[j].scale(A[i, j]) for j in range(A.n) if A[i, j]), Poly.zero(f.variables))
        for i in range(A.n)
    ]
    return f.compose(images)


def translate_to_origin(f: Poly, c: Sequence) -> Poly:
    """g(X) = f(X + c) - f(c)."""
    c = [as_rational(x) for x in c]
    if len(c) != f.nvars:
        raise ValueError("point dimension does not match variable count")
    g = Poly.gens(f.variables)
    shifted = f.compose([g[i] + c[i] for i in range(f.nvars)])
    return shifted - shifted.constant_term()


# ---------------------------------------------------------------------------
# gcd and squarefree decomposition


def _lex_divide(f: dict, g: dict, integral: bool):
    """Quotient of dict polynomials when g divides f exactly, else None.

    With ``integral`` the coefficients are Python ints and every quotient
    coefficient must be an integer."""
    gm = max(g)
    gc = g[gm]
    gtail = [(m, c) for m, c in g.items() if m != gm]
    rem = dict(f)
    heap = [tuple(-e for e in m) for m in rem]
    heapq.heapify(heap)
    quo = {}
    while heap:
        m = tuple(-e for e in heapq.heappop(heap))
        c = rem.pop(m, None)
        if c is None:
            continue
        q = tuple(a - b for a, b in zip(m, gm))
        if any(e < 0 for e in q):
            return None
        if integral:
            qc, r = divmod(c, gc)
            if r:
                return None
        else:
            qc = c / gc
        quo[q] = qc
        for mg, cg in gtail:
            mm = tuple(a + b for a, b in zip(mg, q))
            v = rem.get(mm)
            if v is None:
                rem[mm] = -qc * cg
                heapq.heappush(heap, tuple(-e for e in mm))
            else:
                v -= qc * cg
                if v:
                    rem[mm] = v
                else:
                    del rem[mm]
    return quo


def _exact_div(f: Poly, g: Poly) -> Poly:
    """Exact quotient f/g; raises ArithmeticError when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return f
    quo = _lex_divide(f.terms, g.terms, False)
    if quo is None:
        raise ArithmeticError("inexact polynomial division")
    return Poly._raw(f.variables, quo)


def _prem(a: Poly, b: Poly, i: int) -> Poly:
    """Pseudo-remainder of a by b as polynomials in X_i."""
    db = b.degree_in(i)
    bc = b.coefficients_in(i)
    lb = bc[db]
    xi = Poly.var(a.variables, i)
    r = a
    while not r.is_zero() and r.degree_in(i) >= db:
        dr = r.degree_in(i)
        lr = r.coefficients_in(i)[dr]
        r = r * lb - lr * b * xi ** (dr - db)
    return r


def _content_in(f: Poly, i: int) -> Poly:
    coeffs = list(f.coefficients_in(i).values())
    return reduce(gcd_poly, coeffs[1:], coeffs[0].monic()) if coeffs else f


def _normalize(f: Poly) -> Poly:
    return f.integer_primitive().monic() if f else f


def _integer_form(f: Poly) -> dict:
    """Primitive integer-coefficient dict proportional to f."""
    den = reduce(lambda a, c: a * c.denominator // igcd(a, c.denominator), f.terms.values(), 1)
    ints = {m: int(c * den) for m, c in f.terms.items()}
    g = reduce(igcd, ints.values(), 0)
    return {m: c // g for m, c in ints.items()}


def _zz_content(f: dict) -> int:
    return reduce(igcd, f.values(), 0)


def _heu_gcd(f: dict, g: dict, depth: int = 0):
    """Heuristic gcd of integer polynomials (evaluation and xi-adic lifting).

    Returns None when the heuristic gives up; the caller then falls back to
    a pseudo-remainder sequence."""
    used = set()
    for p in (f, g):
        for m in p:
            used.update(i for i, e in enumerate(m) if e)
    cf, cg = _zz_content(f), _zz_content(g)
    c = igcd(cf, cg)
    if not used:
        return {next(iter(f)): c}
    f = {m: v // cf for m, v in f.items()}
    g = {m: v // cg for m, v in g.items()}
    i = max(used)
    if not any(m[i] for m in f) or not any(m[i] for m in g):
        return None
    bound = min(max(abs(v) for v in f.values()), max(abs(v) for v in g.values()))
    xi = 2 * bound + 29
    for _ in range(6):
        fe, ge = _eval_var(f, i, xi), _eval_var(g, i, xi)
        if fe and ge:
            he = _heu_gcd(fe, ge, depth + 1)
            if he is not None:
                h = _xi_lift(he, i, xi)
                hc = _zz_content(h)
                h = {m: v // hc for m, v in h.items()}
                if h[max(h)] < 0:
                    h = {m: -v for m, v in h.items()}
                if _lex_divide(f, h, True) is not None and _lex_divide(g, h, True) is not None:
                    return {m: v * c for m, v in h.items()}
        xi = xi * 73794 // 27011
    return None


def _eval_var(f: dict, i: int, x: int) -> dict:
    out: dict = {}
    for m, c in f.items():
        mm = m[:i] + (0,) + m[i + 1:]
        out[mm] = out.get(mm, 0) + c * x ** m[i]
    return {m: c for m, c in out.items() if c}


def _xi_lift(h: dict, i: int, xi: int) -> dict:
    out = {}
    k = 0
    half = xi // 2
    while h:
        nxt = {}
        for m, c in h.items():
            r = c % xi
            if r > half:
                r -= xi
            if r:
                out[m[:i] + (k,) + m[i + 1:]] = r
            q = (c - r) // xi
            if q:
                nxt[m] = q
        h = nxt
        k += 1
    return out


def gcd_poly(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor, normalized to grevlex-leading coefficient 1."""
    f._check(g)
    if f.is_zero():
        return _normalize(g)
    if g.is_zero():
        return _normalize(f)
    if f.is_constant() or g.is_constant():
        return Poly.constant(f.variables, 1)
    h = _heu_gcd(_integer_form(f), _integer_form(g))
    if h is not None:
        return _normalize(Poly._raw(f.variables, {m: Fraction(c) for m, c in h.items()}))
    used = set(f.used_variables()) | set(g.used_variables())
    i = max(used)
    if f.degree_in(i) <= 0:
        return gcd_poly(f, _content_in(g, i))
    if g.degree_in(i) <= 0:
        return gcd_poly(_content_in(f, i), g)
    cf, cg = _content_in(f, i), _content_in(g, i)
    c = gcd_poly(cf, cg)
    a, b = _exact_div(f, cf), _exact_div(g, cg)
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while not b.is_zero() and b.degree_in(i) > 0:
        r = _prem(a, b, i)
        a = b
        if r.is_zero():
            b = r
            break
        b = _exact_div(r, _content_in(r, i)) if r.degree_in(i) > 0 else r
    if b.is_zero():
        core = _exact_div(a, _content_in(a, i))
    else:
        # nonzero remainder free of X_i: primitive parts are coprime
        core = Poly.constant(f.variables, 1)
    return _normalize(c * core)


def _yun(f: Poly, i: int) -> list[tuple[Poly, int]]:
    """Yun's algorithm in X_i for f primitive in X_i (every factor involves X_i)."""
    out = []
    df = f.diff(i)
    a = gcd_poly(f, df)
    b = _exact_div(f, a)
    c = _exact_div(df, a)
    d = c - b.diff(i)
    k = 1
    while b.degree_in(i) > 0:
        a = gcd_poly(b, d)
        if not a.is_constant():
            out.append((a, k))
        b = _exact_div(b, a)
        c = _exact_div(d, a)
        d = c - b.diff(i)
        k += 1
    return out


def squarefree_decomposition(f: Poly, with_unit: bool = False):
    """Squarefree factors (f_i, m_i) with f = unit * prod f_i^m_i.

    Factors are pairwise coprime, squarefree, normalized to grevlex-leading
    coefficient 1, and listed by strictly increasing multiplicity.  With
    ``with_unit`` the pair ``(unit, factors)`` is returned."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    by_mult: dict[int, Poly] = {}

    def rec(p: Poly) -> None:
        if p.is_constant():
            return
        i = max(p.used_variables())
        cont = _content_in(p, i)
        prim = _exact_div(p, cont)
        for fac, m in _yun(prim, i):
            fac = _normalize(fac)
            by_mult[m] = by_mult[m] * fac if m in by_mult else fac
        rec(cont)

    rec(f)
    factors = [(_normalize(by_mult[m]), m) for m in sorted(by_mult)]
    if not with_unit:
        return factors
    prod = Poly.constant(f.variables, 1)
    for fac, m in factors:
        prod = prod * fac**m
    unit = f.leading_term()[1] / prod.leading_term()[1]
    return unit, factors


def squarefree_part(f: Poly) -> Poly:
    if f.is_zero():
        return f
    out = Poly.constant(f.variables, 1)
    for fac, _ in squarefree_decomposition(f):
        out = out * fac
    return out
