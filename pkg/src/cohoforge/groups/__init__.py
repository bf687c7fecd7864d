from .core import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    GroupError,
    GroupHom,
    OrderCapExceeded,
    SubgroupHandle,
    cyclic,
    direct_product,
    element_order,
    from_permutations,
    hom,
    identity_hom,
    quotient_group,
    semidirect_product,
    subgroup_group,
)
from .spec import RealizationError, SpecSyntaxError, UnknownBuiltin, format_spec, parse_group_spec, realize
from .structure import (
    ClassifierVerdict,
    degree_one_classifier,
    has_normal_complement,
    is_isomorphic,
    normal_subgroups,
    o_p_prime,
    sylow,
)
from .todd_coxeter import CosetBoundExceeded, enumerate_presentation
