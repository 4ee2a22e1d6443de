"""Finite planes and constructive cycle embeddings."""

from .affine import AffineEmbedder, embed_affine_cycle
from .errors import (
    AxiomViolation,
    ConstructionFailed,
    OutOfRange,
    ParseError,
    PlaneError,
)
from .gf import GF, field_for_order, make_field
from .levi import GraphStats, LeviGraph
from .plane import (
    EmbeddedCycle,
    Plane,
    affine_from_projective,
    build_affine_classical,
    build_projective_classical,
    projective_from_affine,
)
from .planefile import load_plane, loads_plane, save_plane
from .projective import ProjectiveEmbedder, embed_projective_cycle
from .verify import (
    SearchResult,
    VerificationReport,
    brute_force_cycle,
    certify_plane,
    check_axioms,
    count_cycles_exhaustive,
    oracle_embed,
    verify_embedding,
)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "make_field",
    "field_for_order",
    "Plane",
    "EmbeddedCycle",
    "build_affine_classical",
    "build_projective_classical",
    "projective_from_affine",
    "affine_from_projective",
    "load_plane",
    "loads_plane",
    "save_plane",
    "LeviGraph",
    "GraphStats",
    "check_axioms",
    "certify_plane",
    "verify_embedding",
    "VerificationReport",
    "brute_force_cycle",
    "SearchResult",
    "count_cycles_exhaustive",
    "oracle_embed",
    "AffineEmbedder",
    "embed_affine_cycle",
    "ProjectiveEmbedder",
    "embed_projective_cycle",
    "PlaneError",
    "AxiomViolation",
    "ParseError",
    "ConstructionFailed",
    "OutOfRange",
]
