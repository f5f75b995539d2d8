import random
import zlib
from fractions import Fraction

import pytest
from conftest import V2, V3, quartic
from hypothesis import given, settings
from hypothesis import strategies as st

from critcert.certify import (
    NotCriticalPointError,
    Verdict,
    classify,
    determine_type,
    factor_reduce,
    faithful_radius,
    hessian_fast_path,
    normalize_input,
    pick_test_radius,
)
from critcert.groebner import Ideal, is_zero_dimensional
from critcert.oracle import contradicts, oracle_verdict
from critcert.realroots import solve_zero_dim_real
from critcert.ring import MatrixQ, Poly, evaluate, norm_squared, substitute_linear
from critcert.tangency import random_invertible_matrix

x1, x2 = Poly.gens(V2)
y1, y2, y3 = Poly.gens(V3)
frun = x1**2 + (1 - x1) * x2**4

MIN, MAX, SAD = Verdict.LOCAL_MINIMIZER, Verdict.LOCAL_MAXIMIZER, Verdict.SADDLE_POINT
# slack for published 2^-k rounded values
EPS = Fraction(1, 10**12)

# degenerate corpus with known types, cheap enough for property runs
CORPUS = {
    "running_example": (frun, MIN),
    "x1^2+x2^4": (x1**2 + x2**4, MIN),
    "-x1^2-x2^4": (-(x1**2) - x2**4, MAX),
    "x1^3+x2^2": (x1**3 + x2**2, SAD),
    "x1^2-x2^4": (x1**2 - x2**4, SAD),
    "x1^4+x2^4": (x1**4 + x2**4, MIN),
    "x1^4-x1^2x2^2+x2^4": (x1**4 - x1**2 * x2**2 + x2**4, MIN),
    "monkey": (x1**3 - 3 * x1 * x2**2, SAD),
    "x1^2+x1x2^3+x2^6": (x1**2 + x1 * x2**3 + x2**6, MIN),
}
CORPUS_3 = {
    "quartic": (quartic(), SAD),
    "y1^2+y2^4+y3^4": (y1**2 + y2**4 + y3**4, MIN),
}


class TestNormalizeInput:
    def test_translation(self):
        f = (x1 - 1) ** 2 + x2**4 * x1
        g = normalize_input(f, (1, 0))
        assert evaluate(g, (0, 0)) == 0
        assert all(evaluate(g.diff(i), (0, 0)) == 0 for i in range(2))
        assert evaluate(g, (Fraction(1, 3), 2)) == evaluate(f, (Fraction(4, 3), 2)) - evaluate(f, (1, 0))

    def test_unchanged(self):
        assert normalize_input(x1**2 + x2**2, (0, 0)) == x1**2 + x2**2

    def test_not_critical(self):
        with pytest.raises(NotCriticalPointError):
            normalize_input(x1**2 + x2**2, (1, 0))

    def test_constant_dropped(self):
        assert normalize_input(x1**2 + 5) == x1**2


class TestHessianFastPath:
    def test_examples(self):
        assert hessian_fast_path(x1**2 + x2**2) is MIN
        assert hessian_fast_path(x1**2 - x2**2) is SAD
        assert hessian_fast_path(frun) is None

    def test_maximizer_3d(self):
        assert hessian_fast_path(-(y1**2) - y2**2 - 2 * y3**2 + y1 * y2) is MAX

    def test_sylvester_against_eigen_signs(self):
        # x1^2 + 4 x1 x2 + x2^2 has eigenvalues 3 and -1
        assert hessian_fast_path(x1**2 + 4 * x1 * x2 + x2**2) is SAD


class TestFactorReduce:
    def test_square_cofactor_kept(self):
        core, rec = factor_reduce((x1**2 + x2**2) * (x1 - x2) ** 2)
        assert rec.shortcut is None
        assert core == x1**2 + x2**2
        assert rec.squared_factors == [(x1 - x2, 2)]

    def test_unit_factor_peeled(self):
        core, rec = factor_reduce((1 + x1) * (x1**2 + x2**4))
        assert core == x1**2 + x2**4
        assert rec.orientation == 1
        assert rec.peeled_factors == [(1 + x1, 1)]

    def test_negative_factor_flips(self):
        core, rec = factor_reduce((x1 - 2) * (x1**2 + x2**4))
        assert rec.orientation == -1
        assert classify((x1 - 2) * (x1**2 + x2**4)).verdict is MAX

    def test_noop(self):
        core, rec = factor_reduce(frun)
        assert core == frun and not rec.reduced

    def test_nonvanishing_cofactor_shortcut(self):
        _, rec = factor_reduce((3 - x1) * (x1 - x2**2) ** 2)
        assert rec.shortcut is MIN

    def test_gradient_shortcut(self):
        _, rec = factor_reduce(x1 * x2**2)
        assert rec.shortcut is SAD


class TestFaithfulRadius:
    def test_running_example(self):
        rep = faithful_radius(frun, 1)
        assert Fraction(74, 100) <= rep.R <= Fraction(779, 1000)
        assert rep.finite and rep.coordinate_change is None
        # the exact bound squared, R^2 < 767451466998008631606300139861 / 2^100
        assert rep.R**2 < Fraction(767451466998008631606300139861, 2**100)
        assert rep.R > Fraction(7780, 10000)

    def test_quartic(self):
        rep = faithful_radius(quartic(), 1)
        assert Fraction(1, 2) - Fraction(1, 2**30) < rep.R < Fraction(1, 2)

    def test_infinite_bound(self):
        rep = faithful_radius(x1**2 + 2 * x2**2, 1)
        assert rep.R == 1 and not rep.finite

    def test_never_exceeds_isolation_radius(self):
        assert faithful_radius(frun, Fraction(1, 3)).R == Fraction(1, 3)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            faithful_radius(frun, 0)


class TestPickTestRadius:
    def test_examples(self):
        assert pick_test_radius(Fraction(1, 2)) == Fraction(1, 3)
        assert pick_test_radius(2) == Fraction(3, 2)
        R = faithful_radius(frun, 1).R
        r = pick_test_radius(R)
        assert R / 2 < r < R
        assert Fraction(7, 18) < R  # the alternative choice is admissible too

    @given(st.fractions(min_value=Fraction(1, 1000), max_value=100))
    def test_in_window(self, R):
        r = pick_test_radius(R)
        assert R / 2 < r < R
        # nothing with a smaller denominator fits
        for q in range(1, r.denominator):
            lo = R / 2 * q
            p = int(lo) + 1
            assert Fraction(p, q) >= R


class TestClassify:
    def test_running_example(self):
        c = classify(frun, R_iso=1)
        assert c.verdict is MIN and c.path == "tangency" and c.degenerate
        assert c.m.lo > 0 and c.M.lo > 0

    def test_running_example_alternative_radius(self):
        c = classify(frun, R_iso=1, test_radius_sq=Fraction(7, 18))
        assert Fraction(12, 100) <= c.m.lo and c.m.hi <= Fraction(16, 100)
        assert Fraction(37, 100) <= c.M.lo and c.M.hi <= Fraction(40, 100)

    def test_quartic(self):
        c = classify(quartic())
        assert c.verdict is SAD
        assert c.m.hi < 0 < c.M.lo
        assert c.isolation_radius == 1

    def test_reference_values_running_example(self):
        # published m, M for the squared radius 7/18
        c = classify(frun, R_iso=1, test_radius_sq=Fraction(7, 18))
        m_ref = Fraction(76810939241945, 562949953421312)
        M_ref = Fraction(437849963772149, 1125899906842624)
        assert c.m.lo - EPS <= m_ref <= c.m.hi + EPS
        assert c.M.lo - EPS <= M_ref <= c.M.hi + EPS

    def test_reference_values_quartic(self):
        # published m, M; they are attained on the sphere of radius 2/5
        c = classify(quartic(), R_iso=1, test_radius=Fraction(2, 5))
        m_ref = Fraction(-90700979328567, 9007199254740992)
        M_ref = Fraction(5629499534213, 35184372088832)
        assert c.m.lo - EPS <= m_ref <= c.m.hi + EPS
        assert c.M.lo - EPS <= M_ref <= c.M.hi + EPS

    def test_fast_path(self):
        c = classify(x1**2 + x2**2)
        assert c.path == "hessian" and not c.degenerate

    def test_point_translation(self):
        g = (x1 - 1) ** 2 + (2 - x1) * (x2 + 1) ** 4
        c = classify(g, point=(1, -1))
        assert c.verdict is MIN

    def test_bad_test_radius(self):
        with pytest.raises(ValueError):
            classify(frun, R_iso=1, test_radius=1)
        with pytest.raises(ValueError):
            classify(frun, test_radius=Fraction(1, 2), test_radius_sq=Fraction(1, 4))

    def test_not_critical(self):
        with pytest.raises(NotCriticalPointError):
            classify(x1 + x2**2)

    def test_constant(self):
        with pytest.raises(ValueError):
            classify(Poly.constant(V2, 3))

    def test_determine_type_needs_one_radius(self):
        with pytest.raises(ValueError):
            determine_type(frun, Ideal([x1]), Fraction(1, 2), r_sq=Fraction(1, 4))


@pytest.mark.parametrize("name", list(CORPUS) + list(CORPUS_3))
def test_corpus_verdicts_and_intervals(name):
    f, expected = {**CORPUS, **CORPUS_3}[name]
    c = classify(f, fast_path=False)
    assert c.verdict is expected
    assert c.m.excludes_zero() and c.M.excludes_zero()
    assert c.r < c.R <= c.isolation_radius
    sm, sM = c.m.sign(), c.M.sign()
    assert {(1, 1): MIN, (-1, -1): MAX}.get((sm, sM), SAD) is c.type_report.verdict


# -- properties -------------------------------------------------------------


@pytest.mark.parametrize("name", list(CORPUS))
def test_verdict_invariant_under_coordinate_change(name):
    f, expected = CORPUS[name]
    rng = random.Random(zlib.crc32(name.encode()))
    for _ in range(5):
        A = random_invertible_matrix(2, rng, 3)
        assert classify(substitute_linear(f, A), fast_path=False).verdict is expected


def test_quartic_invariant_under_coordinate_change():
    A = MatrixQ([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    assert classify(substitute_linear(quartic(), A), fast_path=False).verdict is SAD


@pytest.mark.parametrize("name", list(CORPUS))
@pytest.mark.parametrize("seed", [1, 17, 123])
def test_seed_invariance(name, seed):
    f, expected = CORPUS[name]
    assert classify(f, fast_path=False, seed=seed).verdict is expected


def test_seed_invariance_with_coordinate_change():
    verdicts = {classify(x1**2 + x2**2, fast_path=False, seed=s).verdict for s in range(6)}
    assert verdicts == {MIN}


@pytest.mark.parametrize("name", list(CORPUS))
def test_smaller_radius_consistent(name):
    f, expected = CORPUS[name]
    c = classify(f, fast_path=False)
    for k in (2, 5, 11):
        assert classify(f, fast_path=False, test_radius=c.r / k).verdict is expected


@pytest.mark.parametrize("name", list(CORPUS) + ["quartic"])
def test_graph_ideal_zero_dimensional(name):
    # I + <|X|^2 - r^2, f - T> in n+1 variables for several r < R
    f, _ = {**CORPUS, **CORPUS_3}[name]
    c = classify(f, fast_path=False)
    rep = c.faithful
    vars_t = rep.transformed.variables + ("T",)
    T = Poly.var(vars_t, len(vars_t) - 1)
    lift = lambda p: p.extend("T")  # noqa: E731
    for k in (1, 2, 4):
        r = rep.R * Fraction(k, 5)
        I_bar = Ideal(
            [lift(g) for g in rep.curve_ideal.gens_for_sum()]
            + [lift(norm_squared(rep.transformed.variables)) - r * r, lift(rep.transformed) - T],
            vars_t,
        )
        assert is_zero_dimensional(I_bar)


@pytest.mark.parametrize("name", list(CORPUS) + ["quartic"])
def test_no_level_zero_tangency_inside_faithful_ball(name):
    f, _ = {**CORPUS, **CORPUS_3}[name]
    rep = classify(f, fast_path=False).faithful
    fA = rep.transformed
    for k in (1, 3, 7, 9):
        rho = rep.R * Fraction(k, 10)
        J = Ideal(list(rep.curve_ideal.gens_for_sum()) + [fA, norm_squared(fA.variables) - rho * rho])
        assert solve_zero_dim_real(J) == []


@pytest.mark.parametrize("name", list(CORPUS) + list(CORPUS_3))
def test_oracle_never_contradicts(name):
    f, _ = {**CORPUS, **CORPUS_3}[name]
    c = classify(f, fast_path=False)
    ov = oracle_verdict(f, c.r, density=8, seed=0)
    assert not contradicts(c.verdict, ov)


@settings(max_examples=15)
@given(
    st.sampled_from([MIN, MAX, SAD]),
    st.integers(1, 3),
    st.integers(2, 3),
    st.fractions(min_value=Fraction(-2), max_value=2, max_denominator=3),
)
def test_constructed_types(kind, a, k, c):
    # x1^2 completed square plus a higher-order term in x2 with known sign pattern
    lead = (x1 + c * x2**2) ** 2
    tail = x2 ** (2 * k)
    f = {MIN: lead + a * tail, MAX: -(lead + a * tail), SAD: lead - a * tail}[kind]
    cert = classify(f, fast_path=False)
    assert cert.verdict is kind
    assert not contradicts(cert.verdict, oracle_verdict(f, cert.r, density=6))
