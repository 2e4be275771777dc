"""Frobenius splitting invariants of hypersurfaces over F_p."""

from .errors import FrobError
from .frobenius import (HypersurfaceContext, SplittingPrime, SplittingReport, bracket_power,
                        compatible_closure, fedder_fpure, find_splitting_prime, frobenius_root,
                        glassbrenner_witness, in_splitting_ideal, jacobian_ideal, splitting_dimension,
                        splitting_ideal, splitting_number, splitting_prime, splitting_ratio_estimate,
                        splitting_report, theoremC_battery)
from .ideal import (Ideal, groebner_basis, ideal_colon, ideal_intersect, ideal_member,
                    krull_dimension, normal_form, quotient_mult_kernel, radical_member,
                    zero_dim_length)
from .parser import parse_poly, parse_ring_file, parse_ring_spec
from .poly import Polynomial, pe_decompose, poly_pow_charp
from .ring import RingSpec

__version__ = "0.1.0"
