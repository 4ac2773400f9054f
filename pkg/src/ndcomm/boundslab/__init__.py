"""Lower-bound machinery: rectangle covers, the extremal pairwise condition,
polynomial-rank certificates, and the arbitrary-precision counting bounds."""

from .cliques import (  # noqa: F401
    ConditionGraph,
    build_condition_graph,
    condition_set_ok,
    enumerate_condition_sets,
    max_condition_set,
    max_condition_set_exhaustive,
)
from .counting import (  # noqa: F401
    bound_table,
    check_counting_inequalities,
    condition_set_bound,
    relaxed_monomial_sum,
)
from .covers import (  # noqa: F401
    RectCover,
    cover_to_csv,
    diagonal_cover_lower_bound,
    min_one_cover,
    verify_rect_cover,
)
from .polys import (  # noqa: F401
    MultiPoly,
    build_membership_product,
    certify_independence,
    epsilon_poly,
    monomial_count_bound,
    reduce_poly,
)
