"""Exact classification of degenerate isolated critical points of real polynomials.

Typical use::

    from critcert import Poly, classify
    x1, x2 = Poly.gens(("x1", "x2"))
    cert = classify(x1**2 + (1 - x1) * x2**4, R_iso=1)
    cert.verdict   # Verdict.LOCAL_MINIMIZER
"""

from .certify import (
    Certificate,
    CertificationError,
    NotCriticalPointError,
    Verdict,
    classify,
    determine_type,
    faithful_radius,
    pick_test_radius,
)
from .oracle import OracleVerdict, oracle_verdict, sample_extrema
from .parser import ParseError, parse_polynomial
from .ring import MatrixQ, Poly
from .tangency import isolation_radius

__version__ = "1.0.0"

__all__ = [
    "Certificate",
    "CertificationError",
    "NotCriticalPointError",
    "Verdict",
    "classify",
    "determine_type",
    "faithful_radius",
    "pick_test_radius",
    "OracleVerdict",
    "oracle_verdict",
    "sample_extrema",
    "ParseError",
    "parse_polynomial",
    "MatrixQ",
    "Poly",
    "isolation_radius",
]
