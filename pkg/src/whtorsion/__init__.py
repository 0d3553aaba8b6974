"""Exact Whitehead torsion over group rings of C_m, C_inf and C_inf x C_m."""
from .group_ring import GroupSpec, RingElement, parse_element, format_element
from .whitehead import WhElement, wh_is_trivial, wh_involute
from .chains import BasedComplex, ChainMap, cone, torsion_map, torsion_acyclic, dual_complex, dual_map
from .verdict import Trivial, Nontrivial, Unknown

__all__ = [
    "GroupSpec", "RingElement", "parse_element", "format_element",
    "WhElement", "wh_is_trivial", "wh_involute",
    "BasedComplex", "ChainMap", "cone", "torsion_map", "torsion_acyclic", "dual_complex", "dual_map",
    "Trivial", "Nontrivial", "Unknown",
]
__version__ = "0.1.0"
