import json
import subprocess
import sys
from fractions import Fraction

import jsonschema
import pytest

from sftlab import serialize as ser
from sftlab.cli import main
from sftlab.core_sft import higher_block
from sftlab.corpus import (
    code_corpus,
    full2_identity_codes,
    full_shift,
    golden_conjugacy_codes,
    golden_mean,
)
from sftlab.schema_files import load_schema, schema_names


@pytest.fixture(scope="module")
def docs(tmp_path_factory):
    d = tmp_path_factory.mktemp("docs")

    def put(name, doc):
        path = d / name
        path.write_text(json.dumps(doc))
        return str(path)

    pi1, pi2 = golden_conjugacy_codes()
    id1, id2 = full2_identity_codes()
    return {
        "golden": put("golden.json", ser.sft_doc(golden_mean())),
        "full2": put("full2.json", ser.sft_doc(full_shift(2))),
        "full2_block": put("full2b.json", ser.sft_doc(higher_block(full_shift(2), 2)[0])),
        "one": put("one.json", {"alphabet": ["a"], "matrix": [[1]]}),
        "zero_row": put("zero.json", {"alphabet": ["0", "1"], "matrix": [[0, 0], [1, 1]]}),
        "malformed": _raw(d / "bad.json", "{not json"),
        "decode": put("decode.json", ser.code_doc(code_corpus()["decode2_golden"])),
        "identity": put("identity.json", ser.code_doc(code_corpus()["identity_golden"])),
        "embedding": put(
            "embed.json",
            {"domain": {"alphabet": ["0"], "matrix": [[1]]}, "codomain": ser.sft_doc(full_shift(2)), "phi": {"0": "0"}},
        ),
        "setup": put("setup.json", {"pi1": ser.code_doc(pi1), "pi2": ser.code_doc(pi2)}),
        "setup_full2": put(
            "setup2.json", {"pi1": ser.code_doc(id1), "pi2": ser.code_doc(id2), "magic_a": "1", "magic_b": "1"}
        ),
        "point": put("point.json", {"left_cycle": ["0", "1"], "center": ["0", "0", "1"], "right_cycle": ["0", "1", "0"], "phase": 1}),
    }


def _raw(path, text):
    path.write_text(text)
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


COMMANDS = [
    ("sft-check", ["sft-check", "{golden}"]),
    ("entropy", ["entropy", "{golden}", "--exact"]),
    ("entropy", ["entropy", "{full2}", "--words", "10"]),
    ("entropy", ["entropy", "{one}", "--exact", "--words", "3"]),
    ("code", ["code", "{decode}"]),
    ("code", ["code", "{identity}"]),
    ("code", ["code", "{embedding}"]),
    ("ideal", ["ideal", "{full2}", "{full2_block}"]),
    ("ideal", ["ideal", "{golden}", "{golden}"]),
    ("ideal", ["ideal", "{golden}", "{full2}"]),
    ("conj validate", ["conj", "{setup}", "validate"]),
    ("conj gap", ["conj", "{setup_full2}", "gap"]),
    ("conj eval", ["conj", "{setup}", "eval", "--point", "{point}"]),
    ("conj window", ["conj", "{setup}", "window", "--point", "{point}"]),
    ("conj roundtrip", ["conj", "{setup}", "roundtrip", "--samples", "10", "--seed", "7"]),
    ("conj excluded", ["conj", "{setup_full2}", "excluded", "--n0", "3", "--n-max", "8"]),
]


@pytest.mark.parametrize("schema, argv", COMMANDS, ids=[" ".join(a[:3]) for _, a in COMMANDS])
def test_json_output_validates_and_is_deterministic(schema, argv, docs, capsys):
    argv = [a.format(**docs) for a in argv]
    code1, out1 = run(argv, capsys)
    code2, out2 = run(argv, capsys)
    assert code1 == code2 == 0
    assert out1 == out2
    jsonschema.validate(json.loads(out1), load_schema(schema))


def test_golden_sft_check_report(docs, capsys):
    _, out = run(["sft-check", docs["golden"]], capsys)
    doc = json.loads(out)
    assert doc["mixing"] is True and doc["period"] == 1 and doc["primitivity_index"] == 2


def test_full_shift_word_rates(docs, capsys):
    _, out = run(["entropy", docs["full2"], "--words", "10"], capsys)
    last = json.loads(out)["words"][-1]
    assert last["n"] == 10 and last["count"] == 1024
    lo, hi = (float(Fraction(last["rate"][k])) for k in ("lo", "hi"))
    assert lo <= 0.6931471805599453 <= hi


def test_one_symbol_entropy_is_zero(docs, capsys):
    _, out = run(["entropy", docs["one"], "--exact"], capsys)
    assert json.loads(out)["exact"]["entropy"] == {"lo": "0/1", "hi": "0/1"}


def test_code_reports(docs, capsys):
    _, out = run(["code", docs["identity"]], capsys)
    doc = json.loads(out)
    assert doc["degree"]["d_star"] == 1 and doc["almost_invertible"] is True
    assert doc["left_closing"]["delay"] == 0 and doc["right_closing"]["delay"] == 0
    _, out = run(["code", docs["decode"]], capsys)
    doc = json.loads(out)
    assert doc["left_closing"]["closing"] and doc["right_closing"]["closing"]
    _, out = run(["code", docs["embedding"]], capsys)
    doc = json.loads(out)
    assert doc["factor"] == {"onto": False, "certificate": ["1"]}


def test_ideal_reports(docs, capsys):
    _, out = run(["ideal", docs["full2"], docs["full2_block"]], capsys)
    doc = json.loads(out)
    assert doc["entropy_equal"] and doc["verdict"]["kind"] == "EqualClass"
    _, out = run(["ideal", docs["golden"], docs["full2"]], capsys)
    doc = json.loads(out)
    assert doc["entropy_equal"] is False and doc["verdict"] is None and doc["note"] == "entropy mismatch"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["sft-check", "{zero_row}"], 2),
        (["sft-check", "{malformed}"], 2),
        (["sft-check", "/nonexistent/file.json"], 2),
        (["conj", "{setup_full2}", "eval", "--point", '{{"left_cycle": ["1"], "center": ["1"], "right_cycle": ["0"]}}'], 3),
        (["conj", "{setup}", "eval"], 2),
        (["--max-alphabet", "1", "sft-check", "{golden}"], 3),
    ],
)
def test_error_exit_codes(argv, code, docs, capsys):
    argv = [a.format(**docs) for a in argv]
    got, out = run(argv, capsys)
    assert got == code
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("error"))
    assert doc["error"]["exit_code"] == code


def test_not_in_x_prime_explains_the_lift(docs, capsys):
    point = '{"left_cycle": ["1"], "center": ["1"], "right_cycle": ["0"]}'
    _, out = run(["conj", docs["setup_full2"], "eval", "--point", point], capsys)
    err = json.loads(out)["error"]
    assert err["type"] == "NotInXPrime" and "lift" in err["explanation"]


def test_alphabet_cap_from_environment(docs, capsys, monkeypatch):
    monkeypatch.setenv("SFTLAB_MAX_ALPHABET", "1")
    code, _ = run(["sft-check", docs["golden"]], capsys)
    assert code == 3
    monkeypatch.setenv("SFTLAB_MAX_ALPHABET", "4")
    code, _ = run(["sft-check", docs["golden"]], capsys)
    assert code == 0


def test_text_format(docs, capsys):
    code, out = run(["--format", "text", "sft-check", docs["golden"]], capsys)
    assert code == 0 and "mixing: True" in out.splitlines()


def test_console_entry_point_exit_code(docs):
    proc = subprocess.run(
        [sys.executable, "-m", "sftlab.cli", "sft-check", docs["zero_row"]], capture_output=True, text=True
    )
    assert proc.returncode == 2
    assert "ZeroRowOrColumn" in proc.stderr


def test_input_documents_validate(docs):
    for key, schema in [("golden", "sft.input"), ("decode", "code.input"), ("setup", "setup.input"), ("point", "point.input")]:
        with open(docs[key]) as fh:
            jsonschema.validate(json.load(fh), load_schema(schema))


def test_all_schemas_are_well_formed():
    for name in schema_names():
        jsonschema.Draft202012Validator.check_schema(load_schema(name))
