"""Exact combinatorics of the structures between words and plane trees:
bi-leveled trees, their posets, and their module/comodule algebra."""

from .trees import (
    BiLeveledTree,
    ForestDecomposition,
    PlanarTree,
    Splitting,
    avoids_pinned,
    bileveled_of_composition,
    bileveled_of_perm,
    compose_decomposition,
    enumerate_family,
    fiber_min_word,
    fiber_of_tree,
    forest_decomposition,
    graft,
    graft_onto_bileveled,
    graft_onto_tree,
    is_coinvariant_shape,
    max_word,
    min_word,
    parse_perm,
    parse_tree,
    qsym_composition,
    render,
    render_perm,
    right_cuts,
    right_graft,
    section_word,
    split_at,
    splittings,
    strip_circles,
    to_left_comb,
    to_right_comb,
    tree_of_perm,
)
from .posets import (
    FinitePoset,
    PosetMapPair,
    bileveled_order,
    bileveled_section_pair,
    check_galois,
    check_interval_retract,
    fiber_interval,
    poset_for,
    tamari,
    tree_section_pair,
    weak_order,
)
from .algebra import (
    LinearCombo,
    TensorCombo,
    action_ssym,
    action_ysym,
    apply_linear_map,
    coaction,
    coaction_monomial,
    coaction_monomial_transported,
    coinvariant_basis,
    check_fiber_monomial_sum,
    check_hopf_module,
    coproduct_fund,
    from_monomial,
    product_fund,
    product_msym,
    to_monomial,
)
from .series import TruncatedSeries, check_dimension_identities, counts, series_quotient

__version__ = "0.1.0"
