"""Exact tools for binary distributions with distributive-lattice support and
their factorization according to undirected graphical models."""

from .ci import (
    Binomial,
    CIStatement,
    Distribution,
    ci_binomials,
    eval_binomial,
    global_binomials,
    pairwise_binomials,
    pairwise_statements,
    satisfies_all,
    saturated_global_statements,
)
from .combinat import (
    DistributiveLattice,
    Graph,
    Poset,
    boolean_lattice,
    cliques,
    comparability_graph,
    ideal_closure,
    is_natural,
    join_irreducibles,
    lattice_close,
    minimal_graph,
    order_ideals,
    separates,
    underlying_poset,
)
from .factorization import (
    CliqueClosureSet,
    FactorizationCertificate,
    clique_closures,
    dimension_counts,
    factorize,
    to_standard_params,
    verify_certificate,
)
from .hibi import (
    check_hibi_equality,
    hibi_generators,
    hibi_matrix,
    lattice_model_matrix,
    substitution_witness,
)
from .toric import (
    ParamMatrix,
    apply_param,
    facial_limit_witness,
    in_toric_kernel,
    is_facial,
    is_feasible,
    matrix_AG,
    matrix_BG,
    realize_support,
    same_row_space,
)

__version__ = "0.1.0"
