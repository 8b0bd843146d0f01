"""promlex: promotion operators on linear extensions of finite posets,
their Markov chains, exact spectra, transition monoids and mixing bounds."""

__version__ = "0.1.0"

from .chains import (
    TransitionMatrix,
    evaluate,
    partition_function,
    stationary_solve,
    stationary_vector,
    stationary_weight,
    transition_matrix,
    verify_master_equation,
)
from .errors import PromlexError
from .families import all_posets, all_rooted_forests, all_chain_unions
from .forms import LinearForm, WeightVector, random_weight_vector
from .linalg import BACKEND, RationalMatrix, charpoly_exact
from .mixing import (
    convergence_bound,
    convergence_bound_upper,
    mixing_time_upper,
    power_distribution,
    simulate_walk,
    total_variation,
)
from .monoid import (
    MonoidElement,
    eggbox,
    generate_monoid,
    generators,
    green_classes,
    is_aperiodic,
    is_r_trivial,
    promotion_monoid,
    rfactor_stats,
)
from .posets import (
    Poset,
    UpperSetLattice,
    antichain_poset,
    chain_poset,
    classify,
    linear_extensions,
    parse_poset,
    poset_derangement_count,
    relabel_naturally,
    union_of_chains,
    upper_set_lattice,
)
from .promotion import (
    PromotionGraph,
    build_promotion_graph,
    extended_promotion,
    extended_promotion_jdt,
    hat_promotion,
    is_strongly_connected,
    tau,
)
from .spectral import (
    SpectrumPrediction,
    char_poly,
    check_conjecture,
    derangement_number,
    predicted_spectrum,
    predicted_spectrum_chains,
    probe_linear_spectrum,
    verify_spectrum,
)
from .subsets import (
    PermSubset,
    perm_subset,
    sigma,
    sorting_network_union,
    subset_promotion,
    subset_stationary,
    subset_transition_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
