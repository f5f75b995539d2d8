"""Shared fixtures, strategies and an independent CAS bridge (sympy) for oracles."""

from __future__ import annotations

import os
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from critcert.ring import Poly

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

V2 = ("x1", "x2")
V3 = ("x1", "x2", "x3")


def running_example() -> Poly:
    x1, x2 = Poly.gens(V2)
    return x1**2 + (1 - x1) * x2**4


def quintic() -> Poly:
    x1, x2, x3 = Poly.gens(V3)
    return (
        47 * x1**5 + 5 * x1 * x2**4 + 33 * x3**5 - 95 * x1**4 - 47 * x1 * x3**3
        + 51 * x2**2 * x3**2 - 92 * x1 * x3**2 - 70 * x2**2 * x3 + 21 * x2**2
    )


def quartic() -> Poly:
    x1, x2, x3 = Poly.gens(V3)
    return x1**2 + x2**4 + x3**4 - 4 * x1 * x2 * x3


QUINTIC_RISO = Fraction(70375577207295, 140737488355328)


# -- sympy bridge ---------------------------------------------------------


def to_sympy(p: Poly):
    syms = sympy.symbols(p.variables)
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            t *= s**e
        expr += t
    return expr, syms


def from_sympy(expr, variables) -> Poly:
    syms = sympy.symbols(variables)
    sp = sympy.Poly(sympy.expand(expr), *syms)
    terms = {}
    for mon, c in sp.terms():
        c = sympy.Rational(c)
        terms[tuple(mon)] = Fraction(int(c.p), int(c.q))
    return Poly(variables, terms)


# -- hypothesis strategies -------------------------------------------------

small_rational = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, variables=V2, max_terms=4, max_deg=3, coeffs=small_rational):
    n = len(variables)
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        if sum(exps) > max_deg:
            continue
        terms[exps] = draw(coeffs)
    return Poly(variables, terms)


@st.composite
def nonzero_polys(draw, variables=V2, max_terms=3, max_deg=2):
    p = draw(polys(variables, max_terms, max_deg))
    if p.is_zero():
        p = Poly.constant(variables, draw(st.integers(1, 4)))
    return p


@pytest.fixture
def frun() -> Poly:
    return running_example()


# -- acceptance summary ---------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
