"""Small fixed shifts and codes used by the test suite and the command-line examples."""

from __future__ import annotations

import random
from typing import Dict, Tuple

from .codes import OneBlockCode, compose, identity_code
from .shifts import Sft, higher_block, is_mixing, make_sft

RANDOM_SPECS: Tuple[Tuple[int, int, float], ...] = ((3, 11, 0.5), (4, 33, 0.5), (4, 68, 0.5))


def golden_mean() -> Sft:
    return make_sft(["0", "1"], [[1, 1], [1, 0]])


def full_shift(n: int = 2) -> Sft:
    return make_sft([str(i) for i in range(n)], [[1] * n for _ in range(n)])


def random_primitive(size: int, seed: int, density: float = 0.5) -> Sft:
    """First primitive 0/1 matrix drawn from ``random.Random(seed)``."""
    rng = random.Random(seed)
    while True:
        rows = [[int(rng.random() < density) for _ in range(size)] for _ in range(size)]
        if not all(any(r) for r in rows) or not all(any(c) for c in zip(*rows)):
            continue
        X = make_sft([chr(ord("a") + i) for i in range(size)], rows)
        if is_mixing(X).mixing:
            return X


def sft_corpus() -> Dict[str, Sft]:
    out = {"golden": golden_mean(), "full2": full_shift(2)}
    for size, seed, density in RANDOM_SPECS:
        out[f"random{size}_{seed}"] = random_primitive(size, seed, density)
    return out


def two_block_decoding(X: Sft) -> OneBlockCode:
    return higher_block(X, 2)[1]


def golden_swap_target() -> Tuple[Sft, Dict[str, str]]:
    """Relabeled copy of the golden mean (0 -> b, 1 -> a) and the relabeling."""
    return make_sft(["a", "b"], [[0, 1], [1, 1]]), {"0": "b", "1": "a"}


def golden_swap_code() -> OneBlockCode:
    Y, relabel = golden_swap_target()
    return OneBlockCode(golden_mean(), Y, relabel)


def xor_code() -> OneBlockCode:
    """2-block full 2-shift onto the full 2-shift by adding the two bits: d* = 2."""
    Z, _ = higher_block(full_shift(2), 2)
    phi = {s: str((int(s[0]) + int(s[1])) % 2) for s in Z.alphabet}
    return OneBlockCode(Z, full_shift(2), phi)


def three_state_collapse() -> OneBlockCode:
    """Onto the full 2-shift with two loops collapsed to 0: neither left nor right closing."""
    X = make_sft(["1", "2", "3"], [[1, 0, 1], [0, 1, 1], [1, 1, 1]])
    return OneBlockCode(X, full_shift(2), {"1": "0", "2": "0", "3": "1"})


def left_resolving_example() -> OneBlockCode:
    """Right-resolving labeling read backwards: left-closing but not right-closing."""
    X = make_sft(["1", "2", "3", "4"], [[1, 0, 1, 0], [0, 1, 0, 1], [1, 1, 0, 0], [0, 0, 1, 0]])
    Y = make_sft(["a", "b", "c"], [[1, 1, 1], [1, 0, 0], [0, 1, 0]])
    return OneBlockCode(X, Y, {"1": "a", "2": "a", "3": "b", "4": "c"})


def code_corpus() -> Dict[str, OneBlockCode]:
    """Codes between mixing shifts; every entry is a factor map."""
    shifts = sft_corpus()
    out: Dict[str, OneBlockCode] = {}
    for name in ("golden", "full2", "random3_11"):
        out[f"identity_{name}"] = identity_code(shifts[name])
        out[f"decode2_{name}"] = two_block_decoding(shifts[name])
    out["swap_golden"] = golden_swap_code()
    out["flip_full2"] = OneBlockCode(shifts["full2"], shifts["full2"], {"0": "1", "1": "0"})
    out["decode2_then_swap_golden"] = compose(two_block_decoding(shifts["golden"]), golden_swap_code())
    out["xor_full2"] = xor_code()
    out["collapse3"] = three_state_collapse()
    out["left_resolving4"] = left_resolving_example()
    return out


def golden_conjugacy_codes() -> Tuple[OneBlockCode, OneBlockCode]:
    """Z = 2-block golden mean; pi1 decodes, pi2 decodes then relabels into a copy."""
    decode = two_block_decoding(golden_mean())
    return decode, compose(decode, golden_swap_code())


def full2_identity_codes() -> Tuple[OneBlockCode, OneBlockCode]:
    ident = identity_code(full_shift(2))
    return ident, ident


def full2_decoding_codes() -> Tuple[OneBlockCode, OneBlockCode]:
    """Both codes are the 2-block decoding of the full 2-shift, which has no magic symbol."""
    decode = two_block_decoding(full_shift(2))
    return decode, decode


def log2_three_state() -> Sft:
    """A three-state shift with entropy log 2 that is not a higher block presentation."""
    return make_sft(["a", "b", "c"], [[0, 0, 1], [0, 0, 1], [1, 1, 1]])
