"""Push-sum under synchronous gossip: simulation and spectral convergence-rate bounds."""

__version__ = "0.1.0"

from .bounds import (
    RateBound,
    bound_complete,
    bound_eta,
    bound_general,
    bound_symmetric,
    bound_transitive,
)
from .graphgen import (
    Graph,
    RowStochastic,
    gamma_diag,
    gen_barabasi_albert,
    gen_cayley_sym,
    gen_complete,
    gen_cycle,
    gen_directed_ring,
    gen_random_regular,
    read_graph,
    uniform_transition,
    write_graph,
)
from .operator import (
    expected_contraction_trace,
    expected_kron_update,
    mu_recursion,
    phi_apply,
    phi_star_apply,
)
from .rng import make_rng
from .simulate import (
    PushSumState,
    consensus_error,
    empirical_rate_full,
    empirical_rate_reduced,
    sample_update,
    step,
)
from .spectral import Spectrum, center, kron, spectral_radius, sym_eigenvalues
