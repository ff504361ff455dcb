"""Normalized cyclic covers of toric varieties, computed exactly."""

from .covers import IndexOneCover, SemistableReport, index_one_cover, semistable_analyze
from .errors import ToricRootsError
from .kummer import CycloNum, CycloPoly, KummerDecomp, capelli_irreducible, kummer_decompose
from .qdiv import QDivisor, floor_div, frac_div, is_cartier, is_principal, torsion_index
from .roots import (
    Codim1Model,
    DecompRow,
    Mode,
    RootData,
    codim1_decompose,
    codim1_model,
    differential_decomposition,
    epsilon,
    normalized_char_root,
)
from .toric import Fan, class_group, div_char, validate_fan

__version__ = "0.1.0"
