"""Structure decomposition, bigraded weight tables, and finite-field
verification for the varieties x_j y_j = prod_i z_i^{a_ij} + 1."""

from .cluster import (
    Classification,
    ExchangeEquation,
    ExtendedExchangeMatrix,
    Quiver,
    acyclic_presentation,
    classify,
    freeze,
    is_acyclic,
    is_separating_edge,
    isolated_seed,
    mutate,
    quiver_mutate,
    reduced,
    to_quiver,
)
from .count import (
    InterpolationReport,
    PointCountSample,
    VerifyReport,
    choose_primes,
    count_bruteforce,
    count_formula,
    interpolate,
    verify_match,
)
from .hodge import (
    BigradedTable,
    CheckReport,
    TableEntry,
    WeightPolynomial,
    check_chl,
    check_pw,
    deck_invariants,
    epoly,
    kunneth,
    pw_table,
    surface_block,
    torus_block,
    weight_poly,
)
from .intlat import (
    CoverDecomposition,
    FiniteAbelianGroup,
    FiniteAbelianSubgroup,
    IntMatrix,
    NotFullColumnRank,
    RowReduction,
    SmithForm,
    annihilator,
    cokernel,
    count_affine_solutions,
    cover_decompose,
    deck_subgroup,
    hnf_row,
    snf,
)
from .variety import (
    CoverDescriptor,
    FibrationPoint,
    StructureDecomposition,
    VarietyDescriptor,
    build_descriptor,
    cover_descriptor,
    fibration_eval,
    random_point,
    structure_decomposition,
    to_cluster_form,
)

__version__ = "0.1.0"
