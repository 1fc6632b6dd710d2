"""Exact Bott-Samelson classes of full flag varieties in Chow, connective K and infinitesimal theories."""

from .coeff_fgl import ADDITIVE, I2, MULTIPLICATIVE, CoeffElem, Theory, infinitesimal, make_fgl, parse_theory
from .ddops import BSClass, bs_class, ddiff, ddiff_word, point_class, product_with_divisor, restriction_check
from .perm_words import Permutation, decompose_ucv, dominant_reading, is_reduced, word_to_perm
from .polyring import QPoly, elem_sym, equal_mod, normal_form, set_top_var_zero
from .stable import StableFamily, dominant_closed_form, stable_bs_family, stable_point_truncation

__version__ = "0.1.0"

__all__ = [
    "ADDITIVE", "I2", "MULTIPLICATIVE", "CoeffElem", "Theory", "infinitesimal", "make_fgl", "parse_theory",
    "BSClass", "bs_class", "ddiff", "ddiff_word", "point_class", "product_with_divisor", "restriction_check",
    "Permutation", "decompose_ucv", "dominant_reading", "is_reduced", "word_to_perm",
    "QPoly", "elem_sym", "equal_mod", "normal_form", "set_top_var_zero",
    "StableFamily", "dominant_closed_form", "stable_bs_family", "stable_point_truncation",
]
