"""Resource caps and run configuration."""

import os
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_MAX_WORDS = 10**6
DEFAULT_MAX_ALPHABET = 12
DEFAULT_PRECISION = Fraction(1, 10**9)


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default


@dataclass(frozen=True)
class RunConfig:
    max_alphabet: int = DEFAULT_MAX_ALPHABET
    max_words: int = DEFAULT_MAX_WORDS
    precision: Fraction = DEFAULT_PRECISION
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.max_alphabet <= 0 or self.max_words <= 0:
            raise ValueError("resource caps must be positive")
        if not 0 < self.precision < 1:
            raise ValueError("precision target must lie in (0, 1)")
        if self.output_format not in ("json", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    @classmethod
    def from_env(cls, **overrides):
        values = {"max_alphabet": _env_int("SFTLAB_MAX_ALPHABET", DEFAULT_MAX_ALPHABET)}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def max_alphabet():
    return _env_int("SFTLAB_MAX_ALPHABET", DEFAULT_MAX_ALPHABET)
