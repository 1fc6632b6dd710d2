"""Stable families of Bott-Samelson classes and closed formulas in the ``I_2`` theory."""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeff_fgl import I2, CoeffElem, Theory
from .ddops import bs_class
from .errors import NotReduced, StabilityViolation, UnsupportedTheory
from .perm_words import Word, check_word, dominant_reading, is_reduced, stable_prefix
from .polyring import QPoly, elem_sym, normal_form, set_top_var_zero

__all__ = [
    "StableFamily", "stable_bs_family", "stable_member", "stable_point_truncation", "point_correction_truncation",
    "dominant_closed_form", "e2_partial_sum", "weighted_e1_sum",
]


@dataclass(frozen=True)
class StableFamily:
    """Truncations ``members[N - n]`` at ranks ``N = n .. n + len(members) - 1``."""

    n: int
    word: Word
    theory: Theory
    members: tuple = field(repr=False)
    verified: bool = False

    @property
    def n_max(self) -> int:
        return self.n + len(self.members) - 1

    def member(self, N: int) -> QPoly:
        if not self.n <= N <= self.n_max:
            raise IndexError(f"rank {N} outside [{self.n}, {self.n_max}]")
        return self.members[N - self.n]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "word": list(self.word),
            "theory": self.theory.name,
            "verified": self.verified,
            "members": [{"N": self.n + k, "class": m.to_json()} for k, m in enumerate(self.members)],
        }


def stable_member(v, n: int, N: int, theory: Theory) -> QPoly:
    """Class of ``c^(N-1) ... c^(n) v`` at rank ``N``."""
    return bs_class(stable_prefix(n, N) + tuple(v), N, theory).poly


def stable_bs_family(v, n: int, theory: Theory, n_max: int) -> StableFamily:
    v = check_word(v, n)
    if not is_reduced(v, n):
        raise NotReduced(f"{v} is not reduced")
    if n_max < n:
        raise ValueError(f"n_max = {n_max} is below the base rank {n}")
    members = tuple(stable_member(v, n, N, theory) for N in range(n, n_max + 1))
    for N in range(n, n_max):
        if set_top_var_zero(members[N + 1 - n]) != members[N - n]:
            raise StabilityViolation(f"pullback from rank {N + 1} to {N} changes the class of {v}")
    return StableFamily(n, v, theory, members, True)


def _require_i2(theory: Theory) -> None:
    if theory != I2:
        raise UnsupportedTheory(f"closed formula only available for i2, not {theory.name}")


def _x_lin(N: int, i: int) -> QPoly:
    return QPoly.var(N, I2, i)


def weighted_e1_sum(n: int, N: int) -> QPoly:
    """``sum_{i=n+1}^{N-1} (i - n) x_{i+1} e_1(x_1..x_i)`` at rank ``N`` (not normalized)."""
    out = QPoly.zero(N, I2)
    for i in range(n + 1, N):
        out = out + _x_lin(N, i + 1) * elem_sym(1, 1, i, N, I2) * (i - n)
    return out


def e2_partial_sum(n: int, N: int) -> QPoly:
    """``sum_{k=n+1}^{N-1} e_2(x_1..x_k)`` at rank ``N`` (not normalized)."""
    out = QPoly.zero(N, I2)
    for k in range(n + 1, N):
        out = out + elem_sym(2, 1, k, N, I2)
    return out


def point_correction_truncation(n: int, N: int, theory: Theory = I2) -> QPoly:
    """``1 - gamma * sum_{i=n+1}^{N-1} (i - n) x_{i+1} e_1(x_1..x_i)`` modulo ``S_N``."""
    _require_i2(theory)
    gamma = CoeffElem.gen(I2)
    return normal_form(QPoly.one(N, I2) - weighted_e1_sum(n, N) * gamma)


def stable_point_truncation(n: int, N: int, theory: Theory = I2) -> QPoly:
    """Stable point class truncated at rank ``N``: ``x_1^(n-1)...x_{n-1}`` times the correction factor."""
    _require_i2(theory)
    if N < n:
        raise ValueError(f"N = {N} is below n = {n}")
    staircase = QPoly.monomial(N, I2, tuple(max(n - i, 0) for i in range(1, N + 1)))
    return normal_form(staircase * point_correction_truncation(n, N))


def dominant_closed_form(lam, n: int, N: int, theory: Theory = I2) -> QPoly:
    """Closed formula for the stable class of a dominant permutation, truncated at rank ``N``."""
    _require_i2(theory)
    if N < n:
        raise ValueError(f"N = {N} is below n = {n}")
    reading = dominant_reading(lam, n)
    lam = tuple(lam)
    orbit_sum = QPoly.zero(N, I2)
    for intervals in reading.orbits:
        for a, b in intervals:
            orbit_sum = orbit_sum + elem_sym(2, a, b, N, I2)
    factor = QPoly.one(N, I2) + orbit_sum * CoeffElem.gen(I2)
    mono = QPoly.monomial(N, I2, lam + (0,) * (N - len(lam)))
    return normal_form(mono * factor * point_correction_truncation(n, N))
