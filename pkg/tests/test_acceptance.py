"""End-to-end acceptance criteria.

Each check records one PASS/FAIL line, printed in the terminal summary.
Tolerances are pinned here; a criterion the implementation cannot meet is
reported as FAIL and marked xfail rather than loosened."""

import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest
from conftest import ACCEPTANCE_LINES, running_example, quartic, quintic

from critcert.certify import Verdict, classify, faithful_radius
from critcert.cli import main
from critcert.oracle import sample_extrema
from critcert.ring import Poly
from critcert.tangency import isolation_radius

ROOT = Path(__file__).resolve().parent.parent


def record(tag: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} {tag}: {detail}")
    print(ACCEPTANCE_LINES[-1])


def timed(fn, *args, **kwargs):
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t


def within(x, lo, hi) -> bool:
    return Fraction(lo) <= Fraction(x) <= Fraction(hi)


# -- 1. Example 4.1 -----------------------------------------------------------


@pytest.fixture(scope="module")
def running_example_runs():
    f = running_example()
    default, t1 = timed(classify, f, R_iso=1)
    forced, t2 = timed(classify, f, R_iso=1, test_radius_sq=Fraction(7, 18), refine_bits=40)
    return default, forced, t1 + t2


def test_c1_running_example_minimizer(running_example_runs):
    c, _, _ = running_example_runs
    ok = c.verdict is Verdict.LOCAL_MINIMIZER
    record("C1 verdict", ok, f"{c.verdict} (want local_minimizer)")
    assert ok


def test_c1_running_example_faithful_radius(running_example_runs):
    c, _, _ = running_example_runs
    ok = within(c.R, "0.74", "0.779")
    record("C1 faithful radius", ok, f"R = {float(c.R):.6f} (want [0.74, 0.779])")
    assert ok


def test_c1_running_example_forced_radius(running_example_runs):
    _, c, _ = running_example_runs
    m, M = c.m, c.M
    ok = (
        m.lo > 0 and M.lo > 0
        and within(m.lo, "0.12", "0.16") and within(m.hi, "0.12", "0.16")
        and within(M.lo, "0.37", "0.40") and within(M.hi, "0.37", "0.40")
    )
    record(
        "C1 r^2 = 7/18",
        ok,
        f"m in [{float(m.lo):.6f}, {float(m.hi):.6f}] (want [0.12, 0.16]), "
        f"M in [{float(M.lo):.6f}, {float(M.hi):.6f}] (want [0.37, 0.40])",
    )
    assert ok


def test_c1_running_example_runtime(running_example_runs):
    *_, t = running_example_runs
    ok = t < 30
    record("C1 runtime", ok, f"{t:.2f} s (want < 30 s)")
    assert ok


# -- 2. quintic in three variables ---------------------------------------------


@pytest.fixture(scope="module")
def quintic_runs():
    f = quintic()
    iso, t1 = timed(isolation_radius, f)
    report, t2 = timed(faithful_radius, f, iso.radius)
    cert, t3 = timed(classify, f, R_iso=iso.radius)
    return iso, report, cert, (t1, t2, t3)


@pytest.mark.slow
def test_c2_quintic_isolation_radius(quintic_runs):
    iso, *_ = quintic_runs
    ok = 0 < iso.radius <= Fraction(51, 100)
    record("C2 isolation radius", ok, f"R_iso = {float(iso.radius):.6f} (want (0, 0.51])")
    assert ok


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="exact computation gives R near 0.1926; see README")
def test_c2_quintic_faithful_radius(quintic_runs):
    _, report, *_ = quintic_runs
    ok = within(report.R, "0.095", "0.103")
    record("C2 faithful radius", ok, f"R = {float(report.R):.6f} (want [0.095, 0.103])")
    assert ok


@pytest.mark.slow
def test_c2_quintic_saddle(quintic_runs):
    *_, cert, _ = quintic_runs
    ok = cert.verdict is Verdict.SADDLE_POINT and cert.m.hi < 0 < cert.M.lo
    record(
        "C2 verdict",
        ok,
        f"{cert.verdict}, m ~ {float(cert.m.lo):.4f}, M ~ {float(cert.M.lo):.4f} (want saddle, m < 0 < M)",
    )
    assert ok


@pytest.mark.slow
def test_c2_quintic_runtime(quintic_runs):
    # the standalone faithful-radius run is diagnostic; classify repeats it
    t1, _, t3 = quintic_runs[-1]
    ok = t1 + t3 < 120
    record("C2 runtime", ok, f"{t1 + t3:.1f} s for isolation + classify (want < 120 s)")
    assert ok


# -- 3. quartic -----------------------------------------------------------------


@pytest.fixture(scope="module")
def quartic_runs():
    f = quartic()
    report, t1 = timed(faithful_radius, f, 1)
    cert, t2 = timed(classify, f, R_iso=1)
    return report, cert, t1 + t2


def test_c3_quartic_faithful_radius(quartic_runs):
    report, *_ = quartic_runs
    ok = within(report.R, "0.45", "0.5")
    record("C3 faithful radius", ok, f"R = {float(report.R):.6f} (want [0.45, 0.5])")
    assert ok


def test_c3_quartic_saddle(quartic_runs):
    _, cert, t = quartic_runs
    ok = cert.verdict is Verdict.SADDLE_POINT and cert.m.hi < 0 < cert.M.lo
    record("C3 verdict", ok, f"{cert.verdict} in {t:.1f} s (want saddle_point, < 120 s)")
    assert ok and t < 120


# -- 4. false-saddle guard ----------------------------------------------------------


def test_c4_false_saddle_guard():
    f = running_example()
    rep = sample_extrema(f, Fraction(283, 100))
    cert = classify(f, R_iso=1)
    both = rep.min_seen <= -12 and rep.max_seen >= 52
    ok = both and cert.verdict is Verdict.LOCAL_MINIMIZER
    record(
        "C4 false saddle",
        ok,
        f"oracle at 283/100 sees [{float(rep.min_seen)}, {float(rep.max_seen)}], certificate {cert.verdict}",
    )
    assert ok


# -- 5. property suites --------------------------------------------------------------

PROPERTY_SUITES = [
    "tests/test_groebner.py::test_s_polynomials_reduce_to_zero",
    "tests/test_groebner.py::test_elimination_membership_equivalence",
    "tests/test_realroots.py::test_sturm_count_matches_grid_oracle",
    "tests/test_ring.py::test_squarefree_reassembly",
    "tests/test_groebner.py::test_split_on_constructed_ideals",
    "tests/test_certify.py::test_graph_ideal_zero_dimensional",
    "tests/test_certify.py::test_no_level_zero_tangency_inside_faithful_ball",
    "tests/test_certify.py::test_verdict_invariant_under_coordinate_change",
    "tests/test_certify.py::test_quartic_invariant_under_coordinate_change",
    "tests/test_certify.py::test_oracle_never_contradicts",
]


@pytest.mark.slow
def test_c5_property_suites():
    t = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *PROPERTY_SUITES],
        cwd=ROOT,
        capture_output=True,
        text=True,
    )
    elapsed = time.perf_counter() - t
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    ok = proc.returncode == 0 and elapsed < 600
    record("C5 property suites", ok, f"{summary}; wall {elapsed:.0f} s (want green, < 600 s)")
    assert ok, proc.stdout[-3000:]


# -- 6. nondegenerate controls ----------------------------------------------------------


@pytest.mark.parametrize(
    "poly,verdict",
    [("x1^2+x2^2", Verdict.LOCAL_MINIMIZER), ("-x1^2-x2^4", Verdict.LOCAL_MAXIMIZER)],
)
def test_c6_controls(poly, verdict, capsys):
    seen = []
    for extra in ([], ["--no-fast-path"]):
        code = main(["classify", f"--poly={poly}", *extra])
        out = capsys.readouterr().out
        seen.append(code == 0 and f"verdict: {verdict}" in out)
    x1, x2 = Poly.gens(("x1", "x2"))
    f = x1**2 + x2**2 if verdict is Verdict.LOCAL_MINIMIZER else -(x1**2) - x2**4
    api = [classify(f).verdict, classify(f, fast_path=False).verdict]
    ok = all(seen) and api == [verdict, verdict]
    record(f"C6 control {poly}", ok, f"fast path and full pipeline give {verdict}")
    assert ok
