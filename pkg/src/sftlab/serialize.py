"""JSON documents for shifts, codes, points, setups and reports.

Rationals are written as "p/q" strings and intervals as {"lo", "hi"}, so
json output never contains binary floats.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, Optional

from .algebraic import AlgebraicNumber
from .closing import ClosingReport
from .codes import DegreeReport, FactorCheck, OneBlockCode
from .config import max_alphabet
from .conjugacy import (
    ConjugacySetup,
    ExcludedReport,
    GapCertificate,
    MagicData,
    RoundtripReport,
    WindowCertificate,
)
from .errors import ParseError, ResourceLimit
from .ideals import DifferentClass, EqualClass, IdealRep, Unknown, saturated_lattice
from .intervals import RationalInterval, fraction_str
from .polynomials import IntPolynomial
from .shifts import EventuallyPeriodicPoint, Sft, make_sft


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def parse_json_text(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: malformed JSON ({exc.msg})") from None


def _require(doc, key, kind, what):
    if not isinstance(doc, dict):
        raise ParseError(f"{what} must be a JSON object")
    if key not in doc:
        raise ParseError(f"{what} is missing {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise ParseError(f"{what}: {key!r} has the wrong type")
    return value


# -- numbers -------------------------------------------------------------------

def rational_doc(q) -> str:
    return fraction_str(Fraction(q))


def interval_doc(iv: RationalInterval) -> Dict[str, str]:
    return {"lo": rational_doc(iv.lo), "hi": rational_doc(iv.hi)}


def poly_doc(p: IntPolynomial) -> Dict[str, Any]:
    return {"coefficients": list(p.coefficients), "text": str(p)}


def algebraic_doc(a: AlgebraicNumber) -> Dict[str, Any]:
    return {"coefficients": [rational_doc(c) for c in a.coeffs], "enclosure": interval_doc(a.enclosure(Fraction(1, 10**12)))}


# -- shifts, codes, points -----------------------------------------------------

def sft_doc(X: Sft) -> Dict[str, Any]:
    return {"alphabet": list(X.alphabet), "matrix": [list(r) for r in X.matrix]}


def sft_from_doc(doc: Any, what: str = "sft", cap: Optional[int] = None) -> Sft:
    alphabet = _require(doc, "alphabet", list, what)
    matrix = _require(doc, "matrix", list, what)
    if not all(isinstance(s, (str, int)) and not isinstance(s, bool) for s in alphabet):
        raise ParseError(f"{what}: symbols must be strings")
    if not all(isinstance(r, list) for r in matrix):
        raise ParseError(f"{what}: matrix rows must be lists")
    cap = cap or max_alphabet()
    if len(alphabet) > cap:
        raise ResourceLimit(f"{what}: alphabet of size {len(alphabet)} exceeds the cap {cap}", len(alphabet))
    return make_sft(alphabet, matrix)


def code_doc(code: OneBlockCode) -> Dict[str, Any]:
    return {"domain": sft_doc(code.domain), "codomain": sft_doc(code.codomain), "phi": dict(code.phi)}


def code_from_doc(doc: Any, what: str = "code", cap: Optional[int] = None) -> OneBlockCode:
    X = sft_from_doc(_require(doc, "domain", dict, what), f"{what}.domain", cap)
    Y = sft_from_doc(_require(doc, "codomain", dict, what), f"{what}.codomain", cap)
    phi = _require(doc, "phi", dict, what)
    return OneBlockCode(X, Y, {str(k): str(v) for k, v in phi.items()})


def point_doc(x: EventuallyPeriodicPoint) -> Dict[str, Any]:
    return {
        "left_cycle": list(x.left_cycle),
        "center": list(x.center),
        "right_cycle": list(x.right_cycle),
        "phase": x.phase,
    }


def point_from_doc(doc: Any, what: str = "point") -> EventuallyPeriodicPoint:
    left = _require(doc, "left_cycle", list, what)
    right = _require(doc, "right_cycle", list, what)
    center = doc.get("center", [])
    phase = doc.get("phase", 0)
    if not isinstance(center, list) or isinstance(phase, bool) or not isinstance(phase, int):
        raise ParseError(f"{what}: bad center or phase")
    return EventuallyPeriodicPoint(tuple(map(str, left)), tuple(map(str, center)), tuple(map(str, right)), phase)


def setup_from_doc(doc: Any, cap: Optional[int] = None):
    pi1 = code_from_doc(_require(doc, "pi1", dict, "setup"), "pi1", cap)
    pi2 = code_from_doc(_require(doc, "pi2", dict, "setup"), "pi2", cap)
    magic_a = doc.get("magic_a")
    magic_b = doc.get("magic_b")
    for name, value in (("magic_a", magic_a), ("magic_b", magic_b)):
        if value is not None and not isinstance(value, str):
            raise ParseError(f"setup: {name} must be a symbol string")
    return pi1, pi2, magic_a, magic_b


# -- reports -------------------------------------------------------------------

def factor_doc(check: FactorCheck) -> Dict[str, Any]:
    return {"onto": check.onto, "certificate": list(check.certificate) if check.certificate else None}


def degree_doc(rep: DegreeReport) -> Dict[str, Any]:
    return {
        "d_star": rep.d_star,
        "witness_word": list(rep.witness_word),
        "witness_index": rep.witness_index,
        "per_position_counts": list(rep.per_position_counts),
    }


def closing_doc(rep: ClosingReport) -> Dict[str, Any]:
    return {
        "closing": rep.closing,
        "side": rep.side,
        "delay": rep.delay,
        "counterexample": [point_doc(p) for p in rep.counterexample] if rep.counterexample else None,
    }


def ideal_doc(I: IdealRep) -> Dict[str, Any]:
    return {
        "min_poly": poly_doc(I.ring.min_poly),
        "generators": [[rational_doc(c) for c in g.coeffs] for g in I.generators],
        "saturated_lattice": [list(r) for r in saturated_lattice(I)],
    }


def verdict_doc(v) -> Dict[str, Any]:
    if isinstance(v, EqualClass):
        return {
            "kind": "EqualClass",
            "s": [rational_doc(c) for c in v.s.coeffs],
            "t": [rational_doc(c) for c in v.t.coeffs],
            "method": v.method,
        }
    if isinstance(v, DifferentClass):
        return {"kind": "DifferentClass", "invariant": v.invariant}
    if isinstance(v, Unknown):
        return {"kind": "Unknown", "search_bound": v.search_bound}
    raise TypeError(v)


def magic_doc(m: MagicData) -> Dict[str, Any]:
    return {
        "word": list(m.word),
        "index": m.index,
        "z_symbol": m.z_symbol,
        "symbol": m.symbol,
        "z_symbol_recoded": m.z_symbol_recoded,
        "recoded": len(m.word) > 1,
    }


def setup_doc(s: ConjugacySetup) -> Dict[str, Any]:
    return {
        "Z": sft_doc(s.Z),
        "X": sft_doc(s.X),
        "Y": sft_doc(s.Y),
        "K1": s.K1,
        "K2": s.K2,
        "magic_a": magic_doc(s.magic_a),
        "magic_b": magic_doc(s.magic_b),
    }


def gap_doc(g: GapCertificate) -> Dict[str, Any]:
    return {
        "h_Z": interval_doc(g.h_Z),
        "h_Za": interval_doc(g.h_Za),
        "h_Zb": interval_doc(g.h_Zb),
        "gap": interval_doc(g.gap),
    }


def window_doc(c: WindowCertificate, reverified: Optional[bool] = None) -> Dict[str, Any]:
    return {
        "point": point_doc(c.point),
        "N": c.N,
        "magic_positions": list(c.magic_positions),
        "window": list(c.window),
        "value": c.value,
        "reverified": reverified,
    }


def excluded_doc(r: ExcludedReport) -> Dict[str, Any]:
    return {
        "symbol": r.symbol,
        "n0": r.n0,
        "growth_constant": rational_doc(r.growth_constant),
        "beta_hi": rational_doc(r.beta_hi),
        "lambda_hi": rational_doc(r.lam_hi),
        "passed": r.passed,
        "rows": [{"n": row.n, "count": row.count, "bound": rational_doc(row.bound)} for row in r.rows],
    }


def roundtrip_doc(r: RoundtripReport, seed: int) -> Dict[str, Any]:
    return {
        "samples": r.samples,
        "passed": r.passed,
        "seed": seed,
        "failures": [point_doc(p) for p in r.failures],
    }
