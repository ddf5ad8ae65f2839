"""Section spaces of height functions on finite simplicial sets.

The package computes, for a finite simplicial set with a monotone height
function on its vertices: the spaces of sections over height words, the
Reeb complexes and Reeb graph, a barcode-style diagram, and the first-
quadrant spectral sequence of the section double complex, together with
cross-checks against the homology of the base space.
"""

from .errors import (
    GlueError,
    HeightError,
    InputFormatError,
    LinAlgError,
    NotSubdividedError,
    ResourceLimitError,
    SecplexError,
    ValidationError,
    WindowError,
)
from .gridmaps import GridEndo, LemmaReport, lemma_check, phi, psi
from .heights import (
    HeightFunction,
    as_fraction,
    fiber,
    is_subdivided,
    subdivision_number,
    subdivision_witness,
    validate_height,
)
from .linalg import (
    ChainComplex,
    PrimeField,
    Subquotient,
    balanced_lift,
    induced_map,
    normalized_chains,
)
from .reeb import (
    Barcode,
    ReebComplex,
    ReebGraph,
    barcode_diagram,
    reeb_complex,
    reeb_graph,
    vertical_complex,
)
from .sections import (
    DEFAULT_CAP,
    Section,
    SectionTruncation,
    build_truncation,
    diagonal_chain_complex,
    enumerate_sections,
    evaluate_chain,
    is_degenerate,
    section_degeneracy,
    section_face,
    shuffle_chains,
)
from .simplicial import (
    SimplexRef,
    SimplicialSet,
    boundary_simplex,
    disjoint_union,
    glue,
    normalize_word,
    relabel,
    standard_simplex,
)
from .spectral import (
    ConvergenceReport,
    DoubleComplex,
    Page,
    SpectralSequence,
    convergence_check,
    double_complex,
    reeb_consistency,
    total_complex,
)

__version__ = "0.1.0"

__all__ = [
    "Barcode",
    "ChainComplex",
    "ConvergenceReport",
    "DEFAULT_CAP",
    "DoubleComplex",
    "GlueError",
    "GridEndo",
    "HeightError",
    "HeightFunction",
    "InputFormatError",
    "LemmaReport",
    "LinAlgError",
    "NotSubdividedError",
    "Page",
    "PrimeField",
    "ReebComplex",
    "ReebGraph",
    "ResourceLimitError",
    "Section",
    "SectionTruncation",
    "SecplexError",
    "SimplexRef",
    "SimplicialSet",
    "SpectralSequence",
    "Subquotient",
    "ValidationError",
    "WindowError",
    "as_fraction",
    "balanced_lift",
    "barcode_diagram",
    "boundary_simplex",
    "build_truncation",
    "convergence_check",
    "diagonal_chain_complex",
    "disjoint_union",
    "double_complex",
    "enumerate_sections",
    "evaluate_chain",
    "fiber",
    "glue",
    "induced_map",
    "is_degenerate",
    "is_subdivided",
    "lemma_check",
    "normalize_word",
    "normalized_chains",
    "phi",
    "psi",
    "reeb_complex",
    "reeb_consistency",
    "reeb_graph",
    "relabel",
    "section_degeneracy",
    "section_face",
    "shuffle_chains",
    "standard_simplex",
    "subdivision_number",
    "subdivision_witness",
    "total_complex",
    "validate_height",
    "vertical_complex",
]
