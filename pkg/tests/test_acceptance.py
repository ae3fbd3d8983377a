"""The ten acceptance criteria, each at its stated tolerance, one test per criterion."""

import json
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import oracles as O
from acceptance_report import criterion
from sftlab import serialize as ser
from sftlab.block_codes import degree_star, is_left_closing
from sftlab.cli import main
from sftlab.core_sft import comparison_radius, higher_block, make_point, power_shift, word_count
from sftlab.corpus import (
    code_corpus,
    full2_identity_codes,
    full_shift,
    golden_conjugacy_codes,
    golden_mean,
    golden_swap_target,
    log2_three_state,
    sft_corpus,
)
from sftlab.entropy_conjugacy import (
    conjugacy_map,
    excluded_wordcount_check,
    invert_pi1,
    roundtrip_check,
    symbol_gap,
    validate_setup,
    verify_window,
    window_determination,
)
from sftlab.ideal_class import EqualClass, class_equivalent, left_ideal, verify_equal_class
from sftlab.spectral import entropy, entropy_enclosure, perron_data

CORPUS = sft_corpus()


def test_criterion_01_word_counts_versus_perron():
    with criterion(1, "word counts equal A^(n-1) sums for n <= 12; (1/40) log|W_40| within 0.01 above h"):
        start = time.perf_counter()
        for X in CORPUS.values():
            for n in range(1, 13):
                enumerated = sum(1 for _ in O.enumerate_words(X, n))
                assert enumerated == O.matrix_entry_sum(X.matrix, n - 1)
            h = entropy_enclosure(X)
            rate = math.log(word_count(X, 40)) / 40
            assert float(h.lo) <= rate <= float(h.hi) + 0.01
        assert time.perf_counter() - start < 5.0


def test_criterion_02_exact_eigen_identity():
    with criterion(2, "v A = lambda v exactly in Q[x]/(min_poly), entries positive, golden v = (lambda, 1)"):
        for X in CORPUS.values():
            pd = perron_data(X)
            v, n = pd.left_eigenvector, len(X)
            for j in range(n):
                assert sum((v[i] for i in range(n) if X.matrix[i][j]), pd.lam * 0) == pd.lam * v[j]
            assert all(c.sign() > 0 for c in v)
        pd = perron_data(golden_mean())
        assert pd.left_eigenvector == (pd.lam, pd.lam * 0 + 1)


def test_criterion_03_strict_entropy_drop():
    with criterion(3, "every corpus shift and symbol has a certified gap with lo > 1e-6"):
        for X in CORPUS.values():
            for a in X.alphabet:
                assert symbol_gap(X, a).gap.lo > Fraction(1, 10**6)


def test_criterion_04_power_shift_entropy():
    with criterion(4, "h(X^m) = m h(X) within 1e-8 for m = 2, 3, 4"):
        for X in CORPUS.values():
            h = entropy(X)
            for m in (2, 3, 4):
                hm = entropy(power_shift(X, m))
                assert hm.width < Fraction(1, 10**9) and h.width < Fraction(1, 10**9)
                assert abs(hm.mid - m * h.mid) < Fraction(1, 10**8)


def test_criterion_05_degree_oracle():
    with criterion(5, "degree_star equals brute-force d* over words of length <= 8 on the code corpus"):
        codes = code_corpus()
        assert len(codes) >= 10
        kinds = {"identity", "decode2", "swap", "flip", "xor"}
        assert all(any(name.startswith(k) for name in codes) for k in kinds)
        assert any(degree_star(c).d_star == 2 for c in codes.values())
        for code in codes.values():
            assert degree_star(code).d_star == O.brute_dstar(code, 8)


def test_criterion_06_closing_oracle():
    with criterion(6, "left-closing verdicts match exhaustive pair search; delay windows verified exhaustively"):
        for code in code_corpus().values():
            rep = is_left_closing(code)
            assert rep.closing == (O.left_closing_violation(code, 6, 6) is None)
            if rep.closing:
                assert O.left_window_property(code, rep.delay)
                # the reported delay is the least one with the window property
                if rep.delay >= 2:
                    assert not O.left_window_property(code, rep.delay - 1)
                if rep.delay >= 1:
                    assert not O.left_window_property(code, 0)


def _independent_points(X, count, seed):
    """Eventually periodic points of the golden mean whose right cycle contains 1, from a seeded walk."""
    rng = random.Random(seed)
    succ = O.adjacency(X)
    out = []
    while len(out) < count:
        def cycle():
            while True:
                w = [rng.choice(X.alphabet)]
                for _ in range(rng.randint(0, 5)):
                    w.append(rng.choice(succ[w[-1]]))
                if w[0] in succ[w[-1]]:
                    return w
        left = cycle()
        center = []
        for _ in range(rng.randint(0, 5)):
            center.append(rng.choice(succ[(center or left)[-1]]))
        right = cycle()
        if right[0] not in succ[(center or left)[-1]] or "1" not in right:
            continue
        out.append(make_point(left, center, right, rng.randint(-5, 5)))
    return out


def test_criterion_07_conjugacy_map():
    with criterion(7, "conjugacy map equals the sliding-block composition on 100 points; roundtrip 100/100; windows re-verify"):
        pi1, pi2 = golden_conjugacy_codes()
        setup = validate_setup(pi1, pi2)
        back = validate_setup(pi2, pi1)
        _, relabel = golden_swap_target()
        phi2 = dict(pi2.phi)
        for x in _independent_points(golden_mean(), 100, seed=2024):
            y = conjugacy_map(setup, x)
            # pi1^-1 reads the 2-block x_n x_(n+1); pi2 then maps that block to a Y symbol
            R = comparison_radius(x, y) + 2
            for n in range(-R, R + 1):
                assert y[n] == phi2[x[n] + x[n + 1]] == relabel[x[n]]
            cert = window_determination(setup, x)
            assert verify_window(setup, cert.window, cert.N) == cert.value == invert_pi1(setup, x)[0]
        report = roundtrip_check(setup, back, samples=100, seed=0)
        assert report.samples == 100 and report.passed == 100 and not report.failures


def test_criterion_08_excluded_set_estimate():
    with criterion(8, "excluded word counts pass for n0 in {-2, 0, 3}, n <= 20, on the full 2-shift with a = 1"):
        setup = validate_setup(*full2_identity_codes(), "1", "1")
        for n0 in (-2, 0, 3):
            report = excluded_wordcount_check(setup, n0, 20)
            assert report.passed and [row.n for row in report.rows] == list(range(1, 21))
            for row in report.rows:
                # the beta-shift is the fixed point 0^inf; only the first max(0, n0) symbols are free
                assert row.count == 2 ** min(row.n, max(0, n0))
                assert row.count <= row.bound
            for n in range(1, 9):
                assert report.rows[n - 1].count == O.excluded_words_brute(full_shift(2), "1", n0, n)


def test_criterion_09_ideal_classes(tmp_path, capsys):
    with criterion(9, "log-2 presentations share a certified class; 20 scalings per corpus ideal; 2-block invariance"):
        presentations = [full_shift(2), higher_block(full_shift(2), 2)[0], log2_three_state()]
        paths = []
        for k, X in enumerate(presentations):
            p = tmp_path / f"log2_{k}.json"
            p.write_text(json.dumps(ser.sft_doc(X)))
            paths.append(str(p))
        for i in range(len(paths)):
            for j in range(i + 1, len(paths)):
                assert main(["ideal", paths[i], paths[j]]) == 0
                doc = json.loads(capsys.readouterr().out)
                assert doc["entropy_equal"] and doc["verdict"]["kind"] == "EqualClass"
                I, J = left_ideal(presentations[i]), left_ideal(presentations[j])
                field = I.ring.field
                s = field.element(tuple(Fraction(c) for c in doc["verdict"]["s"]))
                t = field.element(tuple(Fraction(c) for c in doc["verdict"]["t"]))
                assert verify_equal_class(I, J, s, t)
        for name, X in CORPUS.items():
            I = left_ideal(X)
            field = I.ring.field
            rng = random.Random(sum(map(ord, name)))
            done = 0
            while done < 20:
                s = field.element(tuple(rng.randint(-5, 5) for _ in range(field.degree)))
                if s.is_zero():
                    continue
                v = class_equivalent(I, I.scale(s))
                assert isinstance(v, EqualClass) and verify_equal_class(I, I.scale(s), v.s, v.t)
                done += 1
            J = left_ideal(higher_block(X, 2)[0])
            v = class_equivalent(I, J)
            assert isinstance(v, EqualClass) and verify_equal_class(I, J, v.s, v.t)


def test_criterion_10_determinism(tmp_path):
    with criterion(10, "every CLI command produces byte-identical JSON on re-run"):
        pi1, pi2 = golden_conjugacy_codes()
        id1, id2 = full2_identity_codes()
        files = {
            "golden": ser.sft_doc(golden_mean()),
            "full2": ser.sft_doc(full_shift(2)),
            "full2b": ser.sft_doc(higher_block(full_shift(2), 2)[0]),
            "code": ser.code_doc(code_corpus()["decode2_golden"]),
            "setup": {"pi1": ser.code_doc(pi1), "pi2": ser.code_doc(pi2)},
            "setup2": {"pi1": ser.code_doc(id1), "pi2": ser.code_doc(id2), "magic_a": "1", "magic_b": "1"},
            "point": {"left_cycle": ["0", "1"], "center": ["0", "0", "1"], "right_cycle": ["0", "1", "0"], "phase": 1},
        }
        path = {}
        for name, doc in files.items():
            path[name] = str(tmp_path / f"{name}.json")
            with open(path[name], "w") as fh:
                json.dump(doc, fh)
        commands = [
            ["sft-check", path["golden"]],
            ["entropy", path["golden"], "--exact", "--words", "12"],
            ["code", path["code"]],
            ["ideal", path["full2"], path["full2b"]],
            ["conj", path["setup"], "validate"],
            ["conj", path["setup"], "gap"],
            ["conj", path["setup"], "eval", "--point", path["point"]],
            ["conj", path["setup"], "window", "--point", path["point"]],
            ["conj", path["setup"], "roundtrip", "--samples", "25", "--seed", "11"],
            ["conj", path["setup2"], "excluded", "--n0", "3", "--n-max", "12"],
        ]
        for argv in commands:
            outputs = []
            for hash_seed in ("0", "12345"):
                env = dict(os.environ, PYTHONHASHSEED=hash_seed)
                proc = subprocess.run(
                    [sys.executable, "-m", "sftlab.cli", *argv], capture_output=True, env=env, check=False
                )
                assert proc.returncode == 0, proc.stderr
                outputs.append(proc.stdout)
            assert outputs[0] == outputs[1], argv
            json.loads(outputs[0])
