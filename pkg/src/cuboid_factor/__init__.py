"""Exact tools for the cuboid equations and their S3 factor equations."""

from .core import CuboidTuple, Permutation3, ResidualVector, act, eval_factor, eval_p, residuals
from .equivalence import (
    EquivalenceReport,
    SystemKind,
    satisfies_cuboid,
    satisfies_factor,
    verify_case_theorems,
    verify_equivalence_box,
)
from .exact_arith import DomainError, integer_sqrt, is_perfect_square
from .rank_analysis import CaseWitness, ExactMatrix, RankProfile, apply_matrix_equation, build_N, classify, rank
from .search import Brick, SearchReport, check_perfect_absence, search_bricks
from .sympoly import CofactorCertificate, MultiPoly, apply_sigma, eval_poly, is_multisymmetric, template, verify_certificate

__all__ = [
    "Brick", "CaseWitness", "CofactorCertificate", "CuboidTuple", "DomainError",
    "EquivalenceReport", "ExactMatrix", "MultiPoly", "Permutation3", "RankProfile",
    "ResidualVector", "SearchReport", "SystemKind", "act", "apply_matrix_equation",
    "apply_sigma", "build_N", "check_perfect_absence", "classify", "eval_factor",
    "eval_p", "eval_poly", "integer_sqrt", "is_multisymmetric", "is_perfect_square",
    "rank", "residuals", "satisfies_cuboid", "satisfies_factor", "search_bricks",
    "template", "verify_case_theorems", "verify_certificate", "verify_equivalence_box",
]
