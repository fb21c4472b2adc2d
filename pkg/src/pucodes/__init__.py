"""Complementary sequence sets and complete complementary codes from
paraunitary generating matrices.

Exact arithmetic over Gaussian, Eisenstein and cyclotomic integers (plus
complex floats), Laurent polynomial matrices, set generation by polynomial
product or radix-M closed form, correlation checks, and a streaming
matched-filter correlator whose per-sample cost does not grow with the
sequence length.
"""
__version__ = "0.1.0"

from ._backend import BACKEND
from .constellations import (UnitaryCatalogEntry, catalog_lookup, dft_matrix,
                             equivalence_transform, hadamard_sylvester, is_unit_phase,
                             paper_eisenstein_matrix, paper_qam_matrix)
from .correlation import (CorrelationProfile, VerificationReport, auto_correlation,
                          brute_force_profile, ccc_check, complementarity_check,
                          cross_correlation)
from .correlator import (MatchedFilterSpec, OpCount, StreamState, build_matched_filter,
                         correlate_stream, op_count)
from .errors import (AnticausalInput, InvalidPermutation, InvalidSpec, KindMismatch,
                     NonConstantDiagonal, NonUnitPhase, NotStandard, OutOfRange,
                     PucodesError, ShapeMismatch, SizeMismatch)
from .generator import (GeneratorSpec, SequenceSet, build_generating_matrix, digits,
                        extract_set, generate_set, recursive_generate, rmg_element,
                        rmg_generating_matrix, rmg_matrix, standard_delays,
                        transpose_generator)
from .rings import (COMPLEX, EISENSTEIN, GAUSS, Ring, Scalar, cyclotomic, embed_complex,
                    ring_from_name)
from .zpoly import (PolyMatrix, ZPoly, delay_matrix, is_paraunitary, matrix_mul, poly_mul,
                    regular_delays, tilde)

__all__ = [name for name in dir() if not name.startswith("_")]
