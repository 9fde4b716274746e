"""Normalized adjacency (Randic) spectra of connected threshold graphs."""

from .analysis import (
    classify,
    closed_form_spectrum,
    energy,
    energy_bounds,
    k2_multiplicity_check,
    lambda1_bounds,
    randic_index,
)
from .catalog import cospectral_search, enumerate_strings, verify_theorems
from .exact import (
    CharPoly,
    Inertia,
    char_poly,
    det_A_formula,
    det_Bpi_formula,
    det_calBpi_formula,
    distinct_count,
    full_char_poly,
    inertia_formula,
    spectra_equal,
)
from .quotient import QuotientSystem, build_quotient, characteristic_matrix, symmetrized_quotient
from .spectral import (
    Spectrum,
    SpectrumEntry,
    direct_eigenvalues,
    direct_eigenvectors,
    full_spectrum,
    jacobi_eigenvalues,
    oracle_spectrum,
    quotient_spectrum,
    to_normalized_laplacian,
)
from .threshold_model import BlockForm, Graph, ThresholdString, block_form, build_graph, degree_sequence, parse_string

__version__ = "0.1.0"
