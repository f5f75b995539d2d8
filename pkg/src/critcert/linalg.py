"""Multi-modular Krylov solver for multiplication maps of a quotient algebra.

The minimal polynomial of a multiplication matrix M acting on the unit
vector, and coordinates of further vectors in the resulting Krylov basis, are
computed modulo word-size primes, lifted by Chinese remaindering and rational
reconstruction, and then verified exactly in integer arithmetic.  The result
is therefore exact; primes only drive the search.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

import gmpy2
import numpy as np
from gmpy2 import mpq, mpz

__all__ = ["KrylovLift", "ModularFailure"]

_PRIME_START = 1 << 25


class ModularFailure(ArithmeticError):
    pass


def _ratrec(a: mpz, m: mpz):
    """Rational n/d with n = a d mod m and |n|, d <= sqrt(m/2), or None."""
    bound = isqrt(int(m) // 2)
    r0, r1 = m, a % m
    s0, s1 = mpz(0), mpz(1)
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gmpy2.gcd(s1, m) != 1:
        return None
    return mpq(r1, s1)


class _Rational:
    """Sparse rational matrix with an integer multiple for exact checks."""

    def __init__(self, columns: Sequence[dict], dim: int):
        self.dim = dim
        self.columns = columns
        den = mpz(1)
        for col in columns:
            for v in col.values():
                den = gmpy2.lcm(den, v.denominator)
        self.den = den
        rows: list[list[tuple[int, mpz]]] = [[] for _ in range(dim)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows[i].append((j, mpz(v * den)))
        self.int_rows = rows

    def mod(self, p: int) -> np.ndarray:
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                d = int(v.denominator % p)
                if d == 0:
                    raise ModularFailure("prime divides a denominator")
                M[i, j] = int(v.numerator % p) * pow(d, -1, p) % p
        return M

    def int_matvec(self, w: list) -> list:
        return [sum((c * w[j] for j, c in row), mpz(0)) for row in self.int_rows]


def _vec_mod(v: dict, dim: int, p: int) -> np.ndarray:
    out = np.zeros(dim, dtype=np.int64)
    for i, c in v.items():
        d = int(c.denominator % p)
        if d == 0:
            raise ModularFailure("prime divides a denominator")
        out[i] = int(c.numerator % p) * pow(d, -1, p) % p
    return out


def _poly_apply(M: np.ndarray, coeffs: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    """(sum coeffs_j M^j) v mod p by Horner's rule."""
    w = coeffs[-1] * v % p
    for c in coeffs[-2::-1]:
        w = (M @ w + int(c) * v) % p
    return w


def _krylov_mod(M: np.ndarray, p: int, targets: Sequence[np.ndarray], rur: bool = False):
    """Minimal polynomial q of M on e_0 and Krylov coordinates of the targets, mod p.

    With ``rur`` each target t is replaced by q'(M) t first."""
    D = M.shape[0]
    rows: list[np.ndarray] = []
    combs: list[np.ndarray] = []
    pivots: list[int] = []
    cur = np.zeros(D, dtype=np.int64)
    cur[0] = 1
    minpoly = None
    for k in range(D + 1):
        v = cur.copy()
        comb = np.zeros(D + 1, dtype=np.int64)
        comb[k] = 1
        for piv, row, cb in zip(pivots, rows, combs):
            c = int(v[piv])
            if c:
                v = (v - c * row) % p
                comb = (comb - c * cb) % p
        nz = np.flatnonzero(v)
        if nz.size == 0:
            minpoly = comb[: k + 1]
            break
        piv = int(nz[0])
        inv = pow(int(v[piv]), -1, p)
        rows.append(v * inv % p)
        combs.append(comb * inv % p)
        pivots.append(piv)
        cur = (M @ cur) % p
    degree = len(minpoly) - 1
    if rur and degree > 0:
        deriv = minpoly[1:] * np.arange(1, degree + 1, dtype=np.int64) % p
        targets = [_poly_apply(M, deriv, t, p) for t in targets]
    coords = []
    for t in targets:
        v = t.copy()
        acc = np.zeros(D + 1, dtype=np.int64)
        for piv, row, cb in zip(pivots, rows, combs):
            c = int(v[piv])
            if c:
                v = (v - c * row) % p
                acc = (acc + c * cb) % p
        coords.append(None if np.any(v) else acc[:degree])
    return minpoly, coords


class KrylovLift:
    """Exact minimal polynomial q of M on e_0, plus exact Krylov coordinates.

    ``columns`` holds M column-wise as dicts row -> mpq; ``targets`` are
    sparse rational vectors whose coordinates in the basis (M^j e_0) are
    wanted (None when outside the Krylov space).

    With ``rur`` the coordinates g of q'(M) t are lifted instead: a target
    then equals g(M) e_0 / q'(M), a rational univariate representation whose
    coefficients are far smaller than those of the plain power-basis form.
    ``denominator`` holds q' in that case."""

    # entries tried by rational reconstruction before the full lift
    _PROBES = 3

    def __init__(
        self,
        columns: Sequence[dict],
        dim: int,
        targets: Sequence[dict] = (),
        max_primes: int = 20000,
        rur: bool = False,
    ):
        self.M = _Rational(columns, dim)
        self.dim = dim
        self.targets = list(targets)
        self.rur = rur
        self._solve(max_primes)

    @staticmethod
    def degree_mod_p(columns: Sequence[dict], dim: int, tries: int = 2) -> int:
        """Largest minimal-polynomial degree seen modulo a few primes (a lower bound)."""
        M = _Rational(columns, dim)
        p = _PRIME_START - 1000
        best = 0
        done = 0
        while done < tries:
            p = int(gmpy2.next_prime(p))
            try:
                Mp = M.mod(p)
            except ModularFailure:
                continue
            mp, _ = _krylov_mod(Mp, p, [])
            best = max(best, len(mp) - 1)
            done += 1
        return best

    def _solve(self, max_primes: int) -> None:
        dim = self.dim
        p = _PRIME_START
        crt = _CRT()
        best_deg = -1
        probe_prev = None
        batch = 4
        used = 0
        while used < max_primes:
            for _ in range(batch):
                p = int(gmpy2.next_prime(p))
                used += 1
                try:
                    Mp = self.M.mod(p)
                    tp = [_vec_mod(t, dim, p) for t in self.targets]
                except ModularFailure:
                    continue
                mp, coords = _krylov_mod(Mp, p, tp, self.rur)
                deg = len(mp) - 1
                if deg < best_deg:
                    continue
                if deg > best_deg:
                    best_deg = deg
                    crt = _CRT()
                    probe_prev = None
                flat = [int(x) for x in mp]
                for c in coords:
                    flat.extend([0] * deg if c is None else [int(x) for x in c])
                crt.add(flat, p)
            probe = crt.probe(self._PROBES)
            if probe is not None and probe == probe_prev:
                lifted = crt.reconstruct()
                if lifted is not None and self._verify(lifted, best_deg):
                    self._store(lifted, best_deg)
                    return
            probe_prev = probe
            batch = min(2 * batch, 64)
        raise ModularFailure("rational reconstruction did not stabilize")

    def _horner(self, coeffs: Sequence[mpq], start: list | None = None) -> tuple:
        """w = den * d^k * sum c_j M^j v for v = start (default e_0), integer exact.

        Returns (w, d^k, den) where d is the common denominator of M."""
        k = len(coeffs) - 1
        den = mpz(1)
        for c in coeffs:
            den = gmpy2.lcm(den, c.denominator)
        ints = [mpz(c * den) for c in coeffs]
        if start is None:
            start = [mpz(0)] * self.dim
            start[0] = mpz(1)
        d = self.M.den
        w = [ints[k] * x for x in start]
        dp = mpz(1)
        for j in range(k - 1, -1, -1):
            w = self.M.int_matvec(w)
            dp *= d
            if ints[j]:
                c = ints[j] * dp
                w = [a + c * x for a, x in zip(w, start)]
        return w, dp, den

    def _target_int(self, t: dict) -> tuple[list, mpz]:
        den = mpz(1)
        for v in t.values():
            den = gmpy2.lcm(den, mpq(v).denominator)
        vec = [mpz(0)] * self.dim
        for i, v in t.items():
            vec[i] = mpz(mpq(v) * den)
        return vec, den

    def _verify(self, lifted: list, deg: int) -> bool:
        mp = lifted[: deg + 1]
        if mp[-1] != 1:
            return False
        w, _, _ = self._horner(mp)
        if any(w):
            return False
        deriv = [mp[j] * j for j in range(1, deg + 1)] if self.rur else None
        pos = deg + 1
        for t in self.targets:
            c = lifted[pos: pos + deg]
            pos += deg
            w, dp, den = self._horner(c)
            tv, tden = self._target_int(t)
            if self.rur:
                # g(M) e_0 == q'(M) t, both sides scaled to integers
                w2, dp2, den2 = self._horner(deriv, tv)
                lhs = [x * dp2 * den2 * tden for x in w]
                rhs = [x * dp * den for x in w2]
            else:
                # w = den * d^(deg-1) * sum c_j M^j e_0 ; compare with the same multiple of t
                lhs = [x * tden for x in w]
                rhs = [x * dp * den for x in tv]
            if lhs != rhs:
                return False
        return True

    def _store(self, lifted: list, deg: int) -> None:
        conv = lambda q: Fraction(int(q.numerator), int(q.denominator))  # noqa: E731
        self.degree = deg
        self.minpoly = [conv(q) for q in lifted[: deg + 1]]
        self.coordinates = []
        pos = deg + 1
        for _ in self.targets:
            self.coordinates.append([conv(q) for q in lifted[pos: pos + deg]])
            pos += deg
        self.denominator = [self.minpoly[j] * j for j in range(1, deg + 1)] if self.rur else None


class _CRT:
    """Incremental Chinese remaindering of residue vectors."""

    def __init__(self) -> None:
        self.acc: list[mpz] | None = None
        self.m = mpz(1)

    def add(self, residues: Sequence[int], p: int) -> None:
        if self.acc is None:
            self.acc = [mpz(r) for r in residues]
            self.m = mpz(p)
            return
        m = self.m
        inv = int(gmpy2.invert(m % p, p))
        self.acc = [a + m * (((r - int(a % p)) * inv) % p) for a, r in zip(self.acc, residues)]
        self.m = m * p

    def probe(self, count: int):
        """Reconstruction of a few spread-out entries, or None."""
        if self.acc is None:
            return None
        n = len(self.acc)
        idx = sorted({n - 1, n // 2, 0, (n * 2) // 3}) if n else []
        out = []
        for i in idx[: max(count, 1) + 1]:
            q = _ratrec(self.acc[i], self.m)
            if q is None:
                return None
            out.append(q)
        return tuple(out)

    def reconstruct(self):
        out = []
        for a in self.acc or []:
            q = _ratrec(a, self.m)
            if q is None:
                return None
            out.append(q)
        return out
