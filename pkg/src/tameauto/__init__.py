"""Exact computations with automorphisms of F_p[t][x,y] and F_p(t)[x,y]."""

__version__ = "0.1.0"

from .coefficients import NEG_INFINITY, RatFunc, TPoly, is_unit, ratfunc_arith, reduce_mod
from .bipoly import BiPoly
from .automorphism import Auto, ClassFlags, JacobianMatrix, classify, compose, invert, jacobian
from .amalgam import AFF_BA, GroupOracles, Letter, Word, equivalent, is_reduced, star, word_eval
from .vdk import NotAutomorphism, decompose, decompose_additive, decompose_diff_affine, length_of, reduce_step
from .pstable import PStableSet, ai_order, binom_mod_p, expand_binomial_support, is_p_stable, triangular_in_AI
from .nagata import SigmaParams, make_sigma, nonnormality_witness, sigma_in_HT, sigma_is_diff_affine, sigma_is_tame

__all__ = [
    "NEG_INFINITY", "RatFunc", "TPoly", "is_unit", "ratfunc_arith", "reduce_mod",
    "BiPoly",
    "Auto", "ClassFlags", "JacobianMatrix", "classify", "compose", "invert", "jacobian",
    "AFF_BA", "GroupOracles", "Letter", "Word", "equivalent", "is_reduced", "star", "word_eval",
    "NotAutomorphism", "decompose", "decompose_additive", "decompose_diff_affine", "length_of", "reduce_step",
    "PStableSet", "ai_order", "binom_mod_p", "expand_binomial_support", "is_p_stable", "triangular_in_AI",
    "SigmaParams", "make_sigma", "nonnormality_witness", "sigma_in_HT", "sigma_is_diff_affine", "sigma_is_tame",
]
