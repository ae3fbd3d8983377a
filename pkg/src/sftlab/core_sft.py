"""Shifts of finite type and eventually periodic points (re-exported from ``sftlab.shifts``)."""

from .shifts import (  # noqa: F401
    EventuallyPeriodicPoint,
    MixingReport,
    Sft,
    agree_on_window,
    block_encode,
    check_point,
    comparison_radius,
    contains,
    forbid_symbol,
    higher_block,
    is_irreducible,
    is_mixing,
    make_point,
    make_sft,
    matrix_power,
    period,
    periodic_point,
    point_shift,
    power_shift,
    reverse,
    reverse_point,
    tabulate_point,
    word_count,
    words,
)
