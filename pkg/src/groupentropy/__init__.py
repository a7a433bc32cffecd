"""Entropy functions induced by finite groups, exact inequality checks, and
extension-projection outer bounds on entropy regions."""

from .cone import (
    Cone,
    ConeError,
    EliminationCapExceeded,
    ProjectionSpec,
    contains,
    eliminate,
    entropy_labels,
    equivalent,
    full_space,
    gamma,
    implies,
    intersect,
    is_member,
    project,
    remove_redundant,
)
from .entropy import (
    CommonInformation,
    EntropyVector,
    GroupCharacterization,
    JointDistribution,
    RealEntropyVector,
    characterize,
    check_functional_dependency,
    check_independence,
    common_information,
    condition,
    condition_characterization,
    conditionally_independent,
    delta_reduction,
    entropy_from_characterization,
    functionally_dependent,
    independent,
    induced_joint_distribution,
    is_pseudo_abelian,
    join_characterization,
    mutual_information_ratio,
    oracle_vector,
    shannon_entropy_oracle,
    sum_characterizations,
    trivial_characterization,
    unit_vector,
)
from .extension import (
    AdhesiveWitness,
    ExtensionSpec,
    adhesive_constraints,
    adhesive_group_extension,
    bound_by_extension,
    join_extension_constraints,
    markov_double_extension_constraints,
    sw_extension_constraints,
)
from .group import (
    FiniteGroup,
    GroupError,
    Subgroup,
    abelian,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    enumerate_subgroups,
    is_normal,
    make_group,
    parse_group,
    symmetric,
)
from .inequality import (
    LinearFunctional,
    check_vector,
    elemental_shannon_inequalities,
    evaluate_exact,
    ingleton_functional,
    zhang_yeung_functional,
)
from .linear import (
    LinearCharacterization,
    Subspace,
    dual_rank_entropy,
    entropy_from_linear,
    orthogonal_complement,
    subspace_intersection,
    sw_extension_linear,
)

__all__ = [
    "AdhesiveWitness",
    "CommonInformation",
    "Cone",
    "ConeError",
    "EliminationCapExceeded",
    "EntropyVector",
    "ExtensionSpec",
    "FiniteGroup",
    "GroupCharacterization",
    "GroupError",
    "JointDistribution",
    "LinearCharacterization",
    "LinearFunctional",
    "ProjectionSpec",
    "RealEntropyVector",
    "Subgroup",
    "Subspace",
    "abelian",
    "adhesive_constraints",
    "adhesive_group_extension",
    "bound_by_extension",
    "characterize",
    "check_functional_dependency",
    "check_independence",
    "check_vector",
    "common_information",
    "condition",
    "condition_characterization",
    "conditionally_independent",
    "contains",
    "cyclic",
    "delta_reduction",
    "dicyclic",
    "dihedral",
    "direct_product",
    "dual_rank_entropy",
    "elemental_shannon_inequalities",
    "elementary_abelian",
    "eliminate",
    "entropy_from_characterization",
    "entropy_from_linear",
    "entropy_labels",
    "enumerate_subgroups",
    "equivalent",
    "evaluate_exact",
    "full_space",
    "functionally_dependent",
    "gamma",
    "implies",
    "independent",
    "induced_joint_distribution",
    "ingleton_functional",
    "intersect",
    "is_member",
    "is_normal",
    "is_pseudo_abelian",
    "join_characterization",
    "join_extension_constraints",
    "make_group",
    "markov_double_extension_constraints",
    "mutual_information_ratio",
    "oracle_vector",
    "orthogonal_complement",
    "parse_group",
    "project",
    "remove_redundant",
    "shannon_entropy_oracle",
    "subspace_intersection",
    "sum_characterizations",
    "sw_extension_constraints",
    "sw_extension_linear",
    "symmetric",
    "trivial_characterization",
    "unit_vector",
    "zhang_yeung_functional",
]

__version__ = "0.1.0"
