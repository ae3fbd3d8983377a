"""Exact computations for shifts of finite type, one-block codes, ideal classes and entropy-conjugacies."""

__version__ = "0.1.0"
