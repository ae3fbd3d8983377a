"""Left ideal classes of mixing shifts of finite type (re-exported from ``sftlab.ideals``)."""

from .ideals import (  # noqa: F401
    DifferentClass,
    EqualClass,
    IdealRep,
    RingSpec,
    Unknown,
    class_equivalent,
    left_ideal,
    make_ideal,
    module_equal,
    saturated_lattice,
    unit_ideal,
    verify_equal_class,
)
