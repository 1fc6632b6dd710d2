"""Coefficient rings and their formal group laws.

Every supported coefficient ring is a quotient of ``Z[t]`` for a single
deformation generator ``t``:

* additive (Chow ring): ``t = 0``, law ``u + v``;
* multiplicative (connective K-theory): ``t = beta`` of degree -1, law ``u + v - beta*u*v``;
* infinitesimal ``I_n``: ``t = y_n`` of degree ``-n`` with ``y_n**2 = 0``.

A :class:`CoeffElem` stores the integer coefficients of ``1, t, t**2, ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import TYPE_CHECKING, Optional

from .errors import InternalError, Mismatch, UnsupportedTheory

if TYPE_CHECKING:
    from .polyring import QPoly

__all__ = [
    "Theory", "ADDITIVE", "MULTIPLICATIVE", "I2", "infinitesimal", "parse_theory", "parse_theories",
    "dn", "CoeffElem", "BivariateFGL", "make_fgl",
]

ADDITIVE_KIND = "additive"
MULTIPLICATIVE_KIND = "multiplicative"
INFINITESIMAL_KIND = "infinitesimal"


def dn(n: int) -> int:
    """``p`` if ``n + 1`` is a power of the prime ``p``, else 1."""
    if n < 1:
        raise ValueError("dn needs n >= 1")
    m = n + 1
    p = next(d for d in range(2, m + 1) if m % d == 0)
    while m % p == 0:
        m //= p
    return p if m == 1 else 1


@dataclass(frozen=True)
class Theory:
    kind: str
    level: int = 0  # n of I_n; unused otherwise

    def __post_init__(self):
        if self.kind not in (ADDITIVE_KIND, MULTIPLICATIVE_KIND, INFINITESIMAL_KIND):
            raise UnsupportedTheory(self.kind)
        if self.kind == INFINITESIMAL_KIND and self.level < 1:
            raise UnsupportedTheory("I_n needs n >= 1")

    @property
    def name(self) -> str:
        if self.kind == ADDITIVE_KIND:
            return "ch"
        if self.kind == MULTIPLICATIVE_KIND:
            return "k"
        return f"i{self.level}"

    @property
    def nil(self) -> Optional[int]:
        """Smallest power of the generator that vanishes (None: never)."""
        return {ADDITIVE_KIND: 1, MULTIPLICATIVE_KIND: None, INFINITESIMAL_KIND: 2}[self.kind]

    @property
    def gen_degree(self) -> int:
        return {ADDITIVE_KIND: 0, MULTIPLICATIVE_KIND: -1, INFINITESIMAL_KIND: -self.level}[self.kind]

    @property
    def gen_name(self) -> str:
        if self.kind == MULTIPLICATIVE_KIND:
            return "beta"
        if self.kind == INFINITESIMAL_KIND:
            return "gamma" if self.level == 2 else f"y_{self.level}"
        return "0"

    @property
    def dn(self) -> int:
        if self.kind != INFINITESIMAL_KIND:
            raise UnsupportedTheory("d_n only exists for infinitesimal theories")
        return dn(self.level)

    def __str__(self) -> str:
        return self.name


ADDITIVE = Theory(ADDITIVE_KIND)
MULTIPLICATIVE = Theory(MULTIPLICATIVE_KIND)


def infinitesimal(n: int) -> Theory:
    return Theory(INFINITESIMAL_KIND, n)


I2 = infinitesimal(2)


def parse_theory(name: str) -> Theory:
    name = name.strip().lower()
    if name in ("ch", "additive"):
        return ADDITIVE
    if name in ("k", "multiplicative"):
        return MULTIPLICATIVE
    m = re.fullmatch(r"i(\d+)", name)
    if m:
        return infinitesimal(int(m.group(1)))
    raise UnsupportedTheory(f"unknown theory {name!r}")


def parse_theories(text: str) -> list[Theory]:
    """Comma separated names; ``all`` means ch, k and i2."""
    if text.strip().lower() == "all":
        return [ADDITIVE, MULTIPLICATIVE, I2]
    return [parse_theory(tok) for tok in text.split(",") if tok.strip()]


def _trim(theory: Theory, coeffs) -> tuple:
    coeffs = list(coeffs)
    if theory.nil is not None:
        del coeffs[theory.nil:]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class CoeffElem:
    """``sum(coeffs[j] * t**j)`` in the coefficient ring of ``theory``."""

    theory: Theory
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.theory, self.coeffs))

    @classmethod
    def const(cls, theory: Theory, a: int) -> CoeffElem:
        return cls(theory, (a,))

    @classmethod
    def gen(cls, theory: Theory) -> CoeffElem:
        return cls(theory, (0, 1))

    def _coerce(self, other) -> CoeffElem:
        if isinstance(other, int):
            return CoeffElem(self.theory, (other,))
        if not isinstance(other, CoeffElem):
            return NotImplemented
        if other.theory != self.theory:
            raise Mismatch(f"{self.theory} vs {other.theory}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return CoeffElem(self.theory, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return CoeffElem(self.theory, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = [0] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return CoeffElem(self.theory, out)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coeffs == _trim(self.theory, (other,))
        if isinstance(other, CoeffElem):
            return self.theory == other.theory and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.theory, self.coeffs))

    def degrees(self) -> set:
        """Graded degrees of the nonzero homogeneous parts."""
        return {j * self.theory.gen_degree for j, a in enumerate(self.coeffs) if a}

    def to_json(self) -> dict:
        c = self.coeffs
        if self.theory.kind == ADDITIVE_KIND:
            return {"int": c[0] if c else 0}
        if self.theory.kind == MULTIPLICATIVE_KIND:
            return {"beta": list(c) or [0]}
        return {"const": c[0] if c else 0, "gamma": c[1] if len(c) > 1 else 0}

    @classmethod
    def from_json(cls, theory: Theory, data: dict) -> CoeffElem:
        if "int" in data:
            return cls(theory, (data["int"],))
        if "beta" in data:
            return cls(theory, tuple(data["beta"]))
        return cls(theory, (data.get("const", 0), data.get("gamma", 0)))

    def __str__(self) -> str:
        parts = []
        for j, a in enumerate(self.coeffs):
            if not a:
                continue
            if j == 0:
                parts.append(str(a))
            else:
                g = self.theory.gen_name + (f"^{j}" if j > 1 else "")
                parts.append(g if a == 1 else f"-{g}" if a == -1 else f"{a}*{g}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def __repr__(self) -> str:
        return f"CoeffElem({self.theory.name}: {self})"


@dataclass(frozen=True)
class BivariateFGL:
    """``F(u, v)``, the formal inverse ``chi`` (when polynomial) and ``qinv``.

    ``qinv(u, v)`` is the polynomial unit with ``F(u, chi(v)) * qinv(u, v) == u - v``.
    Polynomials are :class:`~flagcob.polyring.QPoly` values in the variables
    ``u = x_1`` and ``v = x_2`` (``chi`` in ``u = x_1`` alone), never normalized.
    """

    theory: Theory
    F: QPoly
    chi: Optional[QPoly]
    qinv: QPoly


def make_fgl(theory: Theory) -> BivariateFGL:
    from .polyring import QPoly

    def mono(a, b, coeff):
        return QPoly.monomial(2, theory, (a, b), coeff)

    u, v = mono(1, 0, 1), mono(0, 1, 1)
    t = CoeffElem.gen(theory)
    if theory.kind == ADDITIVE_KIND:
        return BivariateFGL(theory, u + v, QPoly.monomial(1, theory, (1,), -1), QPoly.one(2, theory))
    if theory.kind == MULTIPLICATIVE_KIND:
        # chi(v) = -v / (1 - beta v) is a genuine series; only qinv enters the operators
        return BivariateFGL(theory, u + v - mono(1, 1, t), None, QPoly.one(2, theory) - mono(0, 1, t))

    n, d = theory.level, theory.dn
    F = u + v
    for j in range(1, n + 1):
        c, rem = divmod(comb(n + 1, j), d)
        if rem:
            raise InternalError(f"binom({n + 1},{j}) not divisible by d_{n} = {d}")
        F = F + mono(j, n + 1 - j, t * c)
    # F(u, -u + t*c(u)) = t*(c(u) + (1/d) sum binom(n+1,j) u^j (-u)^(n+1-j)) modulo t^2
    total = sum(comb(n + 1, j) * (-1) ** (n + 1 - j) for j in range(1, n + 1))
    if total % d:
        raise InternalError("formal inverse has a non-integral coefficient")
    chi_coeff = -(total // d)
    chi = QPoly.monomial(1, theory, (1,), -1) + QPoly.monomial(1, theory, (n + 1,), t * chi_coeff)
    # F(u, chi(v)) = (u - v) + t * P(u, v) with P(v, v) = 0; then qinv = 1 - t * P / (u - v)
    P = mono(0, n + 1, chi_coeff)
    for j in range(1, n + 1):
        P = P + mono(j, n + 1 - j, (comb(n + 1, j) // d) * (-1) ** (n + 1 - j))
    q = P.divide_by_difference(1)
    qinv = QPoly.one(2, theory) - q * t
    return BivariateFGL(theory, F, chi, qinv)
