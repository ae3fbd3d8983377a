"""Entropy-conjugacies through a common almost invertible extension (re-exported)."""

from .conjugacy import (  # noqa: F401
    ConjugacySetup,
    ExcludedReport,
    GapCertificate,
    MagicData,
    Membership,
    RoundtripReport,
    WindowCertificate,
    conjugacy_map,
    excluded_word_count,
    excluded_wordcount_check,
    gap_certificate,
    in_X_prime,
    invert_pi1,
    magic_positions,
    random_point,
    reconstruct_lift,
    roundtrip_check,
    sample_X_prime,
    symbol_gap,
    validate_setup,
    verify_window,
    window_determination,
)
