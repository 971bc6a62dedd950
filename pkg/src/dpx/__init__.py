"""Exact syzygy computations for Cox rings of del Pezzo surfaces S_r."""
from .cohomology import h0, h0_with_trace, is_effective, is_nef
from .curves import conics, cox_generators, inventory, minus_one_curves, roots, twisted_cubics
from .enumeration import (
    b_alternating,
    degree_and_genus,
    effective_slice,
    expected_reg_pd,
    hilbert_data,
    hilbert_polynomial,
    hilbert_value,
    k_polynomial,
)
from .errors import CapacityError, ConsistencyError, DimensionError, DpxError, GenericityError
from .lattice import DivisorClass, Surface, anticanonical_class, canonical_class, parse_class, perm_canonical
from .sections import PointConfig, random_general_points, section_space
from .syzygy import (
    KoszulComplex,
    betti_diagram,
    green_lazarsfeld_index,
    ideal_generator_count,
    koszul_betti,
    pfaffian_structure_check,
)
from .weyl import describe, nef_orbit_types, orbit, reflect

__version__ = "0.1.0"
