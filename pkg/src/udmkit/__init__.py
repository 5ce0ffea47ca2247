"""Universally decodable matrices over finite fields.

Construction, exhaustive verification, family transformations and
erasure decoding for the parallel prefix-erasure channel.
"""
from .gf import GF, FieldElement, field_new
from .linalg import MatrixGF
from .poly import INFINITY, Poly
from .udm import (
    UdmFamily,
    check_mds_zeroth_rows,
    construct_monomial_variant,
    construct_pascal,
    construct_q_plus_2,
    enumerate_patterns,
    max_L_bound,
    verify,
)

__version__ = "0.1.0"
