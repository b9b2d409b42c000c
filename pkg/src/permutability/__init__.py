"""Finite-group computations for subgroup permutability predicates.

Builds small finite groups as explicit multiplication tables, enumerates
their subgroup lattices, decides embedding predicates (permutable,
S-permutable, semipermutable, SS-permutable, ...) and group classes
(T/PT/PST/BT/SBT/SST/NSST, SC, supersolvable, complemented), and machine
checks the characterization theorems relating them over a curated catalog.
"""

__version__ = "0.1.0"

from .errors import (
    BadAction,
    GroupError,
    InvalidAction,
    NotNormal,
    NotPGroup,
    NotPrime,
    NotSolvable,
    OrderCapExceeded,
    ParseError,
    RelationViolated,
    SystemNotFound,
    UnknownKind,
    UnknownLabel,
    UnknownRelation,
)
from .words import ElementWord
from .tables import (
    DEFAULT_ORDER_CAP,
    GroupTable,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    direct_product_many,
    element_order,
    permutation_group,
    quotient,
    semidirect_product,
    subgroup_table,
    symmetric,
    verify_relations,
)
from .specs import GroupSpec, build_from_spec, resolve_subgroup_words
from .lattice import (
    SubgroupLattice,
    SubgroupSet,
    all_subgroups,
    centralizer,
    commutator_subgroup,
    complements,
    core,
    generated_subgroup,
    hall_subgroups,
    is_normal,
    is_subnormal,
    maximal_subgroups,
    normal_closure,
    normalizer,
    permutes,
    product_set,
    relative_normal_closure,
    supplements,
    sylow_subgroups,
)
from .series import (
    SeriesRecord,
    chief_series,
    derived_series,
    derived_subgroup,
    fitting,
    frattini,
    generalized_fitting,
    hypercenter,
    is_sc_group,
    lower_central_series,
    nilpotent_residual,
    o_p,
    o_p_residual,
    order_p_part,
    pi,
    system_normalizer,
    upper_central_series,
)
from .predicates import (
    PREDICATES,
    PredicateVerdict,
    evaluate_predicate,
    is_abnormal,
    is_nss_permutable,
    is_permutable,
    is_s_permutable,
    is_s_semipermutable,
    is_semipermutable,
    is_ss_permutable,
    is_tau_quasinormal,
    ss_permutable_in_normalizer_pairs,
)
from .classes import (
    CLASS_IDS,
    ClassVerdict,
    acts_by_power_automorphisms,
    chief_factors_below_cyclic_and_G_isomorphic,
    classify,
    is_bt_characterization,
    is_complemented,
    is_nilpotent,
    is_pst_characterization,
    is_solvable,
    is_sst_characterization,
    is_supersolvable,
    is_transitive_class,
)
from .theorems import (
    THEOREM_IDS,
    TheoremReport,
    check_lemmas,
    check_theorem_1_1,
    check_theorem_A,
    check_theorem_B,
    check_theorem_C,
    check_theorem_D,
    check_theorem_E,
    check_theorem_F,
    check_theorem_G,
    check_theorem_H,
    check_theorem_I,
    run_check,
    validate_ss_witnesses,
)
from .catalog import (
    CatalogEntry,
    CatalogManifest,
    parse_group_spec,
    parse_manifest,
    run_catalog,
    serialize_group_spec,
    standard_catalog,
)
