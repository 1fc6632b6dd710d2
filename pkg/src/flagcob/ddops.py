"""Divided-difference operators, Bott-Samelson classes and the divisor product formulas."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .coeff_fgl import ADDITIVE, I2, MULTIPLICATIVE, Theory, make_fgl
from .errors import InvalidIndex, NoPointClass, NotAboveCoxeter, NotReduced
from .perm_words import (
    Word, check_word, coxeter_word, decompose_ucv, decompose_ucv_mirrored, is_reduced, shift_letters,
)
from .polyring import QPoly, equal_mod, normal_form, set_top_var_zero

__all__ = [
    "ddiff", "ddiff_word", "point_class", "BSClass", "bs_class", "restriction_check",
    "DivisorProduct", "divisor_class", "product_with_divisor", "qinv_at",
]

POINT_CLASS_THEORIES = (ADDITIVE, MULTIPLICATIVE, I2)


@lru_cache(maxsize=None)
def _fgl(theory: Theory):
    return make_fgl(theory)


@lru_cache(maxsize=None)
def qinv_at(theory: Theory, n: int, i: int) -> QPoly:
    """The unit ``qinv(x_i, x_{i+1})`` in rank ``n``."""
    return _fgl(theory).qinv.substitute_pair(n, i, i + 1)


def ddiff(i: int, f: QPoly, normalize: bool = True) -> QPoly:
    """``∂_i f = (g - s_i g) / (x_i - x_{i+1})`` with ``g = f * qinv(x_i, x_{i+1})``."""
    if not 1 <= i < f.n:
        raise InvalidIndex(f"∂_{i} is not defined at rank {f.n}")
    q = qinv_at(f.theory, f.n, i)
    g = f if q == 1 else f * q
    out = (g - g.swap(i)).divide_by_difference(i)
    return normal_form(out) if normalize else out


def ddiff_word(v: Word, f: QPoly, normalize: bool = True) -> QPoly:
    """Apply ``∂_{i_1}`` first, then ``∂_{i_2}``, and so on."""
    for i in v:
        f = ddiff(i, f, normalize)
    return f


def point_class(n: int, theory: Theory, top_class: Optional[QPoly] = None) -> QPoly:
    """``x_1^(n-1) x_2^(n-2) ... x_{n-1}``, or the supplied override."""
    if top_class is not None:
        return normal_form(top_class)
    if theory not in POINT_CLASS_THEORIES:
        raise NoPointClass("point class unavailable for this theory; supply --top-class")
    return QPoly.monomial(n, theory, tuple(n - i for i in range(1, n + 1)))


@dataclass(frozen=True)
class BSClass:
    word: Word
    theory: Theory
    poly: QPoly

    @property
    def n(self) -> int:
        return self.poly.n


@lru_cache(maxsize=None)
def _bs_poly(word: Word, n: int, theory: Theory) -> QPoly:
    # memoized along prefixes, so families of words sharing prefixes are cheap
    if not word:
        return point_class(n, theory)
    return ddiff(word[-1], _bs_poly(word[:-1], n, theory))


def bs_class(v, n: int, theory: Theory, top_class: Optional[QPoly] = None) -> BSClass:
    v = tuple(v)
    check_word(v, n)
    if not is_reduced(v, n):
        raise NotReduced(f"{v} is not reduced")
    if top_class is not None:
        poly = ddiff_word(v, point_class(n, theory, top_class))
    else:
        poly = _bs_poly(v, n, theory)
    return BSClass(v, theory, poly)


def restriction_check(v, n: int, theory: Theory) -> bool:
    """Pulling back the class of ``c^(n) v`` from rank ``n+1`` gives the class of ``v``."""
    upstairs = bs_class(coxeter_word(n) + tuple(v), n + 1, theory).poly
    return equal_mod(set_top_var_zero(upstairs), bs_class(v, n, theory).poly)


def divisor_class(rank: int, theory: Theory, mirrored: bool = False) -> QPoly:
    """``x_1 ... x_n`` (or ``x_1^n`` when mirrored) at ``rank = n + 1``."""
    n = rank - 1
    exps = (n,) + (0,) * n if mirrored else (1,) * n + (0,)
    return QPoly.monomial(rank, theory, exps)


@dataclass(frozen=True)
class DivisorProduct:
    word: Word
    lhs: QPoly
    rhs: QPoly
    reduced_word: Optional[Word]  # None when w is not above the Coxeter element

    @property
    def holds(self) -> bool:
        return equal_mod(self.lhs, self.rhs)


def product_with_divisor(w, rank: int, theory: Theory, mirrored: bool = False) -> DivisorProduct:
    """Compare ``[X_w] * D`` with the class of the shortened word (or zero)."""
    w = tuple(w)
    lhs = normal_form(bs_class(w, rank, theory).poly * divisor_class(rank, theory, mirrored))
    try:
        ucv = decompose_ucv_mirrored(w, rank) if mirrored else decompose_ucv(w, rank)
    except NotAboveCoxeter:
        return DivisorProduct(w, lhs, QPoly.zero(rank, theory), None)
    short = shift_letters(ucv.u, +1 if mirrored else -1) + ucv.v
    return DivisorProduct(w, lhs, bs_class(short, rank, theory).poly, short)
