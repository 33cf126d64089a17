"""Path homology of digraphs, discrete Morse functions and M-collapses."""

from .chains import Chain, HomologyReport, PathComplex, boundary, homology, induced_inclusion, omega_basis
from .collapse import (
    CollapseTrace,
    NotApplicable,
    full_collapse,
    homotopy_check,
    matching_inclusion_check,
    one_step_collapse,
    retraction_map,
    verify_theorem_2,
    zero_degree_check,
)
from .digraph import (
    Digraph,
    box_product,
    build_digraph,
    check_digraph_map,
    decompose_path,
    enumerate_allowed_paths,
    find_intermediate,
    is_transitive,
)
from .errors import DigraphError, DocumentError, MatchingError, MorseError, PreconditionError, ResourceLimitError
from .generate import gen_instance
from .io import parse_digraph, parse_morse, serialize_digraph, serialize_morse
from .morse import (
    Matching,
    MorseFunction,
    build_matching,
    check_acyclic,
    critical_paths,
    generate_morse,
    grad,
    validate_morse,
)
from .morse_complex import (
    MorseComplex,
    build_morse_complex,
    check_path_basis,
    morse_homology,
    partition_basis,
    path_basis,
    verify_theorem_1,
)

__version__ = "0.1.0"
