"""JSON certificate documents.

Every rational is written as ``{"exact": "p/q", "decimal": float}`` so the
document can be re-read without loss; the decimal is for human eyes only.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any

from .certify import Certificate, FaithfulRadiusReport
from .realroots import IsolatingInterval
from .ring import MatrixQ

__all__ = [
    "SCHEMA_VERSION",
    "rational_doc",
    "rational_from_doc",
    "interval_doc",
    "certificate_document",
    "load_schema",
    "dumps",
]

SCHEMA_VERSION = "1.0"


def rational_doc(q) -> dict | None:
    if q is None:
        return None
    q = Fraction(q)
    exact = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return {"exact": exact, "decimal": float(q)}


def rational_from_doc(doc: dict) -> Fraction:
    return Fraction(doc["exact"])


def interval_doc(iv: IsolatingInterval | None) -> dict | None:
    if iv is None:
        return None
    return {"lo": rational_doc(iv.lo), "hi": rational_doc(iv.hi), "exact": bool(iv.exact)}


def _matrix_doc(A: MatrixQ) -> list[list[dict]]:
    return [[rational_doc(A[i, j]) for j in range(A.n)] for i in range(A.n)]


def _faithful_doc(rep: FaithfulRadiusReport | None) -> dict | None:
    if rep is None:
        return None
    return {
        "R": rational_doc(rep.R),
        "R_iso_used": rational_doc(rep.R_iso),
        "bound_sq": rational_doc(rep.bound_sq),
        "finite": rep.finite,
        "eliminant_roots": [interval_doc(iv) for iv in rep.eliminant_roots],
    }


def certificate_document(cert: Certificate, variables=None) -> dict[str, Any]:
    """Plain-JSON rendering of a certificate (see certificate.schema.json)."""
    f = cert.polynomial
    pre = cert.preprocessing
    pre_doc = {
        "translation": [rational_doc(x) for x in cert.point],
        "normalized": str(cert.normalized),
        "core": str(pre.core) if pre is not None and pre.core is not None else str(cert.normalized),
        "unit": rational_doc(pre.unit if pre is not None else 1),
        "squared_factors": [
            {"factor": str(p), "multiplicity": m} for p, m in (pre.squared_factors if pre else [])
        ],
        "peeled_factors": [{"factor": str(p), "sign": s} for p, s in (pre.peeled_factors if pre else [])],
        "orientation": pre.orientation if pre is not None else 1,
        "shortcut": str(pre.shortcut) if pre is not None and pre.shortcut is not None else None,
        "shortcut_reason": pre.shortcut_reason if pre is not None else None,
    }
    h = cert.hessian
    hess_doc = None
    if h is not None:
        hess_doc = {
            "size": h.size,
            "rank": h.rank,
            "positive": h.positive,
            "negative": h.negative,
            "degenerate": h.degenerate,
        }
    change = cert.coordinate_change
    change_doc = None
    if change is not None:
        change_doc = {"matrix": _matrix_doc(change), "seed": cert.faithful.seed}
    iso_doc = None
    if cert.isolation_radius is not None:
        iso_doc = {"value": rational_doc(cert.isolation_radius), "method": cert.isolation_method}
    tr = cert.type_report
    test_doc = None
    if tr is not None:
        test_doc = {"r": rational_doc(tr.r), "r_squared": rational_doc(tr.r_sq)}
    return {
        "schema_version": SCHEMA_VERSION,
        "input": {
            "polynomial": str(f),
            "variables": list(variables if variables is not None else f.variables),
            "point": [rational_doc(x) for x in cert.point],
        },
        "preprocessing": pre_doc,
        "hessian": hess_doc,
        "coordinate_change": change_doc,
        "isolation_radius": iso_doc,
        "faithful_radius": _faithful_doc(cert.faithful),
        "test_radius": test_doc,
        "m": interval_doc(tr.m if tr else None),
        "M": interval_doc(tr.M if tr else None),
        "values": [interval_doc(v) for v in (tr.values if tr else [])],
        "verdict": str(cert.verdict),
        "path": cert.path,
        "degenerate": cert.degenerate,
        "seed": cert.seed,
        "refine_bits": cert.refine_bits,
        "timing": {"seconds": cert.timing},
    }


def load_schema() -> dict:
    text = resources.files("critcert").joinpath("certificate.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
