"""Right-angled Artin groups, their extension graphs, and certified short loxodromics."""
from __future__ import annotations

from .errors import BallOverflow, InputError, InvariantViolation, PreconditionError
from .graphs import Graph, complement, induced, is_biconnected, star
from .words import GroupElement, cyclic_reduce, equals, reduce
from .certificates import (
    BoundCertificate,
    best_upper_bound,
    build_len2,
    build_minlox,
    find_star_edge_constructive,
    find_star_edge_scan,
    is_loxodromic,
    verify_certificate,
    verify_path_certificate,
)

__version__ = "0.1.0"
