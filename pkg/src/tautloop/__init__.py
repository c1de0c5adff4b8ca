"""Exact and budgeted computation around taut loop length spectra.

Subpackages cover flag complexes and their homology, group presentations,
a layered certificate-producing word-problem engine, right-angled normal
forms, Cayley balls, taut loop spectra with k-relatedness, exact constant
schedules, and semidirect-product kernel experiments.
"""

from .complexes import (
    ComplexError,
    EdgeLoop,
    FlagComplex,
    HomologyGroup,
    OmegaSet,
    SimpleGraph,
    flag_completion,
    is_acyclic,
    normally_generates,
    pi1_presentation,
    reduced_homology,
)
from .presentations import (
    GroupPresentation,
    Homomorphism,
    PresentationError,
    build_P,
    build_RAAG,
    build_RACG,
    truncated_presentation,
)
from .word_engine import (
    Budget,
    BudgetExceeded,
    CosetTable,
    KernelSearchResult,
    QuotientWitness,
    TriState,
    finite_quotient_search,
    group_is_trivial,
    is_trivial,
    kernel_shortest_element,
    todd_coxeter,
    verify_certificate,
)
from .normal_forms import bb_image, raag_normal_form, retract, tits_reduce
from .cayley import (
    BBOracle,
    CayleyBall,
    CosetTableOracle,
    FreeGroupOracle,
    OracleInsufficient,
    RaagOracle,
    RacgOracle,
    ZModOracle,
    build_ball,
    closed_loops,
    graph_distance,
)
from .spectrum import LengthSet, Spectrum, k_related, spectrum, spectrum_of_graph, taut_status
from .schedule import (
    Constants,
    IntervalSchedule,
    SqrtRational,
    alpha_of,
    beta_of,
    choose_C,
    height_distance,
    kernel_length_lower_bound,
    m_of,
    predicted_intervals,
    qi_obstruction,
    S_of_F,
)
from .davis import (
    GroupAction,
    OrbitData,
    build_J,
    check_action,
    choose_orbits,
    compute_N1,
    semiker_experiment,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
