"""Mod-p cohomology of finite groups from free resolutions."""

from .cache import ResolutionCache
from .cohomology import (
    ChainMapLift,
    DecLadder,
    RingFingerprint,
    cup,
    dec_ladder,
    fingerprint,
    inflation,
    is_fully_decomposable,
    lift_cocycle,
    restriction,
)
from .groups import FiniteGroup, GroupHom, degree_one_classifier, hom, parse_group_spec, realize
from .kernels import BACKEND
from .resolution import (
    CohClass,
    Resolution,
    build_resolution,
    cocycle_basis,
    cohomology_dims,
    h1_as_homs,
    hom_class,
    verify_exactness,
)
from .rings import kunneth_dims, presented_ring_dims

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ChainMapLift",
    "CohClass",
    "DecLadder",
    "FiniteGroup",
    "GroupHom",
    "Resolution",
    "ResolutionCache",
    "RingFingerprint",
    "build_resolution",
    "cocycle_basis",
    "cohomology_dims",
    "cup",
    "dec_ladder",
    "degree_one_classifier",
    "fingerprint",
    "h1_as_homs",
    "hom",
    "hom_class",
    "inflation",
    "is_fully_decomposable",
    "kunneth_dims",
    "lift_cocycle",
    "parse_group_spec",
    "presented_ring_dims",
    "realize",
    "restriction",
    "verify_exactness",
]
