"""Command-line interface: ``sftlab <command> ...`` with json or text output.

Exit codes: 0 success, 1 internal error, 2 invalid input, 3 domain refusal.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Dict, List, Optional

from . import serialize as ser
from .closing import is_left_closing, is_right_closing
from .codes import degree_star, find_magic_symbol, is_factor_onto
from .config import RunConfig
from .conjugacy import (
    conjugacy_map,
    excluded_wordcount_check,
    gap_certificate,
    invert_pi1,
    roundtrip_check,
    validate_setup,
    verify_window,
    window_determination,
)
from .errors import (
    InvalidInput,
    NotFactor,
    NotInXPrime,
    NotLeftClosing,
    SftlabError,
)
from .ideals import class_equivalent, left_ideal
from .shifts import is_irreducible, is_mixing, period, word_count
from .spectral import entropy_enclosure, perron_data, wordcount_entropy_sequence


def cmd_sft_check(args) -> Dict[str, Any]:
    X = ser.sft_from_doc(ser.load_json(args.path), cap=args.config.max_alphabet)
    report = is_mixing(X)
    irreducible = is_irreducible(X)
    return {
        "command": "sft-check",
        "alphabet": list(X.alphabet),
        "size": len(X),
        "irreducible": irreducible,
        "period": period(X) if irreducible else None,
        "mixing": report.mixing,
        "primitivity_index": report.primitivity_index,
    }


def cmd_entropy(args) -> Dict[str, Any]:
    X = ser.sft_from_doc(ser.load_json(args.path), cap=args.config.max_alphabet)
    doc: Dict[str, Any] = {"command": "entropy", "alphabet": list(X.alphabet)}
    exact = args.exact or args.words is None
    if exact:
        mixing = bool(is_mixing(X))
        block: Dict[str, Any] = {"mixing": mixing, "entropy": ser.interval_doc(entropy_enclosure(X))}
        if mixing:
            pd = perron_data(X)
            block.update(
                char_poly=ser.poly_doc(pd.char_poly),
                min_poly=ser.poly_doc(pd.min_poly),
                perron_root=ser.interval_doc(pd.lam.enclosure()),
                left_eigenvector=[[ser.rational_doc(c) for c in v.coeffs] for v in pd.left_eigenvector],
            )
        doc["exact"] = block
    if args.words is not None:
        if args.words < 1:
            raise InvalidInput("--words must be positive")
        seq = wordcount_entropy_sequence(lambda n: word_count(X, n), args.words)
        doc["words"] = [{"n": e.n, "count": e.count, "rate": ser.interval_doc(e.rate)} for e in seq]
    return doc


def cmd_code(args) -> Dict[str, Any]:
    code = ser.code_from_doc(ser.load_json(args.path), cap=args.config.max_alphabet)
    doc: Dict[str, Any] = {"command": "code", "factor": ser.factor_doc(is_factor_onto(code))}
    doc["left_closing"] = ser.closing_doc(is_left_closing(code))
    doc["right_closing"] = ser.closing_doc(is_right_closing(code))
    if doc["factor"]["onto"] and is_mixing(code.domain) and is_mixing(code.codomain):
        rep = degree_star(code)
        doc["degree"] = ser.degree_doc(rep)
        doc["magic_symbol"] = find_magic_symbol(code, rep)
        doc["almost_invertible"] = rep.d_star == 1
    else:
        doc["degree"] = None
        doc["magic_symbol"] = None
        doc["almost_invertible"] = None
        doc["note"] = "not a factor onto its codomain" if not doc["factor"]["onto"] else "domain or codomain not mixing"
    return doc


def cmd_ideal(args) -> Dict[str, Any]:
    A = ser.sft_from_doc(ser.load_json(args.path_a), "sft A", args.config.max_alphabet)
    B = ser.sft_from_doc(ser.load_json(args.path_b), "sft B", args.config.max_alphabet)
    pa, pb = perron_data(A), perron_data(B)
    Ia, Ib = left_ideal(A), left_ideal(B)
    doc: Dict[str, Any] = {
        "command": "ideal",
        "ideal_a": ser.ideal_doc(Ia),
        "ideal_b": ser.ideal_doc(Ib),
        "entropy_a": ser.interval_doc(entropy_enclosure(A)),
        "entropy_b": ser.interval_doc(entropy_enclosure(B)),
    }
    same = pa.min_poly == pb.min_poly and pa.field.root.overlaps(pb.field.root)
    doc["entropy_equal"] = same
    if same:
        doc["verdict"] = ser.verdict_doc(class_equivalent(Ia, Ib))
        doc["note"] = None
    else:
        doc["verdict"] = None
        doc["note"] = "entropy mismatch"
    return doc


def _point_arg(text: Optional[str]):
    if text is None:
        raise InvalidInput("--point is required")
    if text.lstrip().startswith("{"):
        return ser.point_from_doc(ser.parse_json_text(text, "--point"))
    return ser.point_from_doc(ser.load_json(text))


def cmd_conj(args) -> Dict[str, Any]:
    pi1, pi2, magic_a, magic_b = ser.setup_from_doc(ser.load_json(args.setup), args.config.max_alphabet)
    setup = validate_setup(pi1, pi2, magic_a, magic_b)
    doc: Dict[str, Any] = {"command": f"conj {args.action}"}
    if args.action == "validate":
        doc["setup"] = ser.setup_doc(setup)
        doc["valid"] = True
    elif args.action == "gap":
        doc["gap"] = ser.gap_doc(gap_certificate(setup))
    elif args.action == "eval":
        x = _point_arg(args.point)
        z = invert_pi1(setup, x)
        doc["point"] = ser.point_doc(x)
        doc["lift"] = ser.point_doc(z.canonical())
        doc["image"] = ser.point_doc(conjugacy_map(setup, x))
    elif args.action == "window":
        x = _point_arg(args.point)
        cert = window_determination(setup, x)
        again = verify_window(setup, cert.window, cert.N) == cert.value
        doc["certificate"] = ser.window_doc(cert, again)
    elif args.action == "roundtrip":
        back = validate_setup(pi2, pi1, magic_b, magic_a)
        doc["roundtrip"] = ser.roundtrip_doc(roundtrip_check(setup, back, args.samples, args.seed), args.seed)
    elif args.action == "excluded":
        doc["excluded"] = ser.excluded_doc(
            excluded_wordcount_check(setup, args.n0, args.n_max, side=args.side)
        )
    return doc


def error_doc(exc: SftlabError) -> Dict[str, Any]:
    body: Dict[str, Any] = {"type": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
    if isinstance(exc, NotFactor) and exc.certificate:
        body["certificate"] = list(exc.certificate)
    if isinstance(exc, NotLeftClosing) and exc.counterexample:
        body["counterexample"] = [ser.point_doc(p) for p in exc.counterexample]
    if isinstance(exc, NotInXPrime) and exc.explanation:
        body["explanation"] = str(exc.explanation)
    if hasattr(exc, "d_star"):
        body["d_star"] = exc.d_star
    return {"error": body}


def _text(doc: Any, prefix: str = "") -> List[str]:
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            lines += _text(doc[key], f"{prefix}{key}." if isinstance(doc[key], (dict, list)) else f"{prefix}{key}")
    elif isinstance(doc, list) and doc and all(not isinstance(v, (dict, list)) for v in doc):
        lines.append(f"{prefix.rstrip('.')}: {' '.join(map(str, doc))}")
    elif isinstance(doc, list):
        for i, v in enumerate(doc):
            lines += _text(v, f"{prefix}{i}." if isinstance(v, (dict, list)) else f"{prefix}{i}")
    else:
        lines.append(f"{prefix}: {doc}")
    return lines


def render(doc: Any, fmt: str) -> str:
    if fmt == "json":
        return ser.dumps(doc)
    return "\n".join(_text(doc)) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sftlab", description="Shifts of finite type: entropy, codes, ideal classes, entropy-conjugacies.")
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--max-alphabet", type=int, default=None, help="cap on input alphabet sizes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sft-check", help="validate an SFT document and report mixing")
    p.add_argument("path")
    p.set_defaults(func=cmd_sft_check)

    p = sub.add_parser("entropy", help="certified entropy and word-count rates")
    p.add_argument("path")
    p.add_argument("--words", type=int, default=None, metavar="N")
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("code", help="analyze a one-block code")
    p.add_argument("path")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("ideal", help="compare the left ideal classes of two SFTs")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("conj", help="entropy-conjugacy operations on a setup document")
    p.add_argument("setup")
    p.add_argument("action", choices=["validate", "gap", "eval", "window", "roundtrip", "excluded"])
    p.add_argument("--point", default=None, help="point document path or inline JSON")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n0", type=int, default=0)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--side", choices=["a", "b"], default="a")
    p.set_defaults(func=cmd_conj)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_alphabet is not None and args.max_alphabet <= 0:
        parser.error("--max-alphabet must be positive")
    config = RunConfig.from_env(output_format=args.format, max_alphabet=args.max_alphabet)
    args.config = config
    try:
        doc = args.func(args)
        code = 0
    except SftlabError as exc:
        doc = error_doc(exc)
        code = exc.exit_code
        print(f"sftlab: {type(exc).__name__}: {exc}", file=sys.stderr)
    except Exception as exc:  # noqa: BLE001 - any other failure is an internal error
        doc = {"error": {"type": "InternalError", "message": f"{type(exc).__name__}: {exc}", "exit_code": 1}}
        code = 1
        print(f"sftlab: internal error: {exc}", file=sys.stderr)
    sys.stdout.write(render(doc, config.output_format))
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
