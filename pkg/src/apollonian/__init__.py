"""Integral Apollonian packings: Descartes quadruples of any level, their
reduction to root or exceptional form, class-number counts of roots,
congruence obstructions and curvature censuses."""

from .core_forms import (
    Quadruple,
    ParityError,
    descartes_form,
    lorentz_form,
    to_lorentz,
    from_lorentz,
    height_sq,
    l1_norm,
)
from .group import apply_generator, apply_word, rooted_orbit_stream
from .reduction import (
    Kind,
    InfiniteFamily,
    ReducedQuadruple,
    reduce,
    find_exceptional,
    count_root_quadruples,
    root_quadruples_with_min,
)
from .binary_forms import BinaryForm, class_counts, n_root_via_class_number
from .counting import count_descartes, count_lorentz
from .census import curvature_census, missing_report

__version__ = "0.1.0"
