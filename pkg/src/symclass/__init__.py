"""Classification of symplectic matrices of the form ``[[A, B], [C, A^T]]``."""

from .base_plane import (
    BasePoint,
    PencilLine,
    Stratum,
    StratumLabel,
    base_from_triple,
    classify_base,
    classify_triple,
    eigen_lift,
    involution,
    pencil_line,
    planar_model,
    product_map,
    resonance_lines,
)
from .components import (
    ComponentId,
    Quotient,
    SheetLabel,
    build_component_graph,
    component_id,
    cylinder_obstruction,
    fiber_size,
    quotient_label,
)
from .errors import *  # noqa: F401,F403
from .matcore import DEFAULT_TOL, char_poly, eigs, mat_exp, symplectic_check
from .normal_forms import NormalForm, normal_form
from .paths import PathReport, analyze_path
from .sampling import random_triple
from .signatures import (
    PeriodicHamiltonian,
    Sign,
    Stability,
    StabilityVerdict,
    b_signature,
    floquet_monodromy,
    krein_from_btype,
    krein_signature,
    stability_check,
)
from .wonenburger import (
    WonenburgerTriple,
    assemble,
    char_poly_triple,
    from_matrix,
    gl_action,
    reduced_monodromy,
    validate_triple,
)

__version__ = "0.1.0"
