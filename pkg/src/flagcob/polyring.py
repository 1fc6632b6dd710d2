"""Sparse polynomials in ``x_1..x_n`` over a coefficient ring, modulo symmetric functions.

A :class:`QPoly` stores its terms in one flat ``dict`` keyed by
``(t, e_1, ..., e_n)`` where ``t`` is the power of the coefficient ring's
deformation generator, so all arithmetic is plain integer arithmetic.

The normal form modulo the ideal ``S_n`` generated by positive-degree symmetric
polynomials uses the relations ``h_{n-i+1}(x_1, ..., x_i) = 0`` for
``i = 1..n``.  Under the lexicographic order with ``x_n`` most significant,
their leading terms are ``x_i^(n-i+1)``, so the reduced representatives are
spanned by the ``n!`` staircase monomials ``x^a`` with ``a_i <= n - i``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .coeff_fgl import CoeffElem, Theory
from .errors import InternalError, InvalidIndex, InvalidInterval, Mismatch

__all__ = [
    "QPoly", "normal_form", "elem_sym", "complete_sym", "set_top_var_zero", "staircase_monomials",
    "equal_mod", "monomial_product",
]

Scalar = Union[int, CoeffElem]


def _add_into(acc: dict, key, value: int) -> None:
    total = acc.get(key, 0) + value
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


@dataclass(frozen=True, eq=False)
class QPoly:
    """A polynomial in ``x_1..x_n``; ``normalized`` marks staircase representatives.

    Instances are immutable: never mutate ``data`` after construction.
    """

    n: int
    theory: Theory
    data: Mapping = field(default_factory=dict)
    normalized: bool = False

    # construction

    @classmethod
    def zero(cls, n: int, theory: Theory) -> QPoly:
        return cls(n, theory, {}, True)

    @classmethod
    def one(cls, n: int, theory: Theory) -> QPoly:
        return cls.monomial(n, theory, (0,) * n, 1)

    @classmethod
    def monomial(cls, n: int, theory: Theory, exps: Iterable[int], coeff: Scalar = 1) -> QPoly:
        exps = tuple(exps)
        if len(exps) > n:
            if any(exps[n:]):
                raise Mismatch(f"monomial {exps} has more than {n} variables")
            exps = exps[:n]
        exps = exps + (0,) * (n - len(exps))
        return cls.from_terms(n, theory, {exps: coeff})

    @classmethod
    def var(cls, n: int, theory: Theory, i: int) -> QPoly:
        if not 1 <= i <= n:
            raise InvalidIndex(f"x_{i} is not a variable of rank {n}")
        return cls.monomial(n, theory, tuple(int(j == i) for j in range(1, n + 1)))

    @classmethod
    def const(cls, n: int, theory: Theory, c: Scalar) -> QPoly:
        return cls.monomial(n, theory, (0,) * n, c)

    @classmethod
    def from_terms(cls, n: int, theory: Theory, terms: Mapping) -> QPoly:
        data: dict = {}
        for exps, c in terms.items():
            exps = tuple(exps) + (0,) * (n - len(exps))
            for t, a in enumerate(_coeff_tuple(theory, c)):
                if a:
                    _add_into(data, (t,) + exps, a)
        return cls(n, theory, data)

    # views

    @property
    def terms(self) -> dict:
        """``{exponent tuple: CoeffElem}``."""
        grouped: dict = defaultdict(dict)
        for key, a in self.data.items():
            grouped[key[1:]][key[0]] = a
        out = {}
        for exps, parts in grouped.items():
            out[exps] = CoeffElem(self.theory, [parts.get(t, 0) for t in range(max(parts) + 1)])
        return out

    def is_zero(self) -> bool:
        return not self.data

    def __bool__(self) -> bool:
        return bool(self.data)

    def __len__(self) -> int:
        return len(self.data)

    def degrees(self) -> set:
        """Graded degrees of the terms (``|exps| + t * deg(generator)``)."""
        g = self.theory.gen_degree
        return {sum(key[1:]) + key[0] * g for key in self.data}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def max_exponents(self) -> tuple:
        return tuple(max((key[i] for key in self.data), default=0) for i in range(1, self.n + 1))

    # arithmetic

    def _check(self, other: QPoly) -> None:
        if self.n != other.n or self.theory != other.theory:
            raise Mismatch(f"rank/theory mismatch: ({self.n}, {self.theory}) vs ({other.n}, {other.theory})")

    def _lift(self, other) -> QPoly:
        if isinstance(other, QPoly):
            self._check(other)
            return other
        if isinstance(other, (int, CoeffElem)):
            return QPoly.const(self.n, self.theory, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        data = dict(self.data)
        for key, a in other.data.items():
            _add_into(data, key, a)
        return QPoly(self.n, self.theory, data)

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly(self.n, self.theory, {k: -a for k, a in self.data.items()}, self.normalized)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        data = dict(self.data)
        for key, a in other.data.items():
            _add_into(data, key, -a)
        return QPoly(self.n, self.theory, data)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        nil = self.theory.nil
        data: dict = {}
        for k1, a in self.data.items():
            for k2, b in other.data.items():
                t = k1[0] + k2[0]
                if nil is not None and t >= nil:
                    continue
                key = (t,) + tuple(x + y for x, y in zip(k1[1:], k2[1:]))
                _add_into(data, key, a * b)
        return QPoly(self.n, self.theory, data)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QPoly:
        out = QPoly.one(self.n, self.theory)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        """Exact equality of representatives (use :func:`equal_mod` for classes)."""
        if isinstance(other, int):
            other = QPoly.const(self.n, self.theory, other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.n == other.n and self.theory == other.theory and dict(self.data) == dict(other.data)

    __hash__ = None

    # operations on variables

    def swap(self, i: int) -> QPoly:
        """Apply ``s_i``: exchange ``x_i`` and ``x_{i+1}``."""
        if not 1 <= i < self.n:
            raise InvalidIndex(f"s_{i} does not act on rank {self.n}")
        data = {}
        for key, a in self.data.items():
            k = list(key)
            k[i], k[i + 1] = k[i + 1], k[i]
            data[tuple(k)] = a
        return QPoly(self.n, self.theory, data)

    def divide_by_difference(self, i: int) -> QPoly:
        """Exact quotient by ``x_i - x_{i+1}``; raises when there is a remainder."""
        if not 1 <= i < self.n:
            raise InvalidIndex(f"x_{i} - x_{i + 1} is not defined at rank {self.n}")
        # along each line x_i^p x_{i+1}^(d-p) * rest, the quotient coefficient of
        # x_i^(p-1) x_{i+1}^(d-p) is the sum of the numerator coefficients at exponents >= p
        lines: dict = defaultdict(dict)
        for key, a in self.data.items():
            p, q = key[i], key[i + 1]
            rest = key[:i] + (None, None) + key[i + 2:]
            lines[(rest, p + q)][p] = a
        data: dict = {}
        for (rest, d), line in lines.items():
            carry = 0
            for p in range(d, 0, -1):
                carry += line.get(p, 0)
                if carry:
                    key = list(rest)
                    key[i], key[i + 1] = p - 1, d - p
                    data[tuple(key)] = carry
            if carry + line.get(0, 0):
                raise InternalError(f"x_{i} - x_{i + 1} does not divide the polynomial")
        return QPoly(self.n, self.theory, data)

    def embed(self, m: int) -> QPoly:
        """The same polynomial viewed in ``m >= n`` variables (not normalized)."""
        if m < self.n:
            raise Mismatch(f"cannot embed rank {self.n} into rank {m}")
        pad = (0,) * (m - self.n)
        return QPoly(m, self.theory, {key + pad: a for key, a in self.data.items()})

    def substitute_pair(self, m: int, i: int, j: int) -> QPoly:
        """For a bivariate ``P(u, v)``, return ``P(x_i, x_j)`` in rank ``m``."""
        if self.n != 2:
            raise Mismatch("substitute_pair needs a bivariate polynomial")
        data: dict = {}
        for key, a in self.data.items():
            k = [key[0]] + [0] * m
            k[i] += key[1]
            k[j] += key[2]
            _add_into(data, tuple(k), a)
        return QPoly(m, self.theory, data)

    def normal_form(self) -> QPoly:
        return normal_form(self)

    # output

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda item: _trimmed(item[0]))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "theory": self.theory.name,
            "terms": [{"exps": list(_trimmed(e)), "coeff": c.to_json()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping, theory: Theory) -> QPoly:
        terms = {tuple(t["exps"]): CoeffElem.from_json(theory, t["coeff"]) for t in data["terms"]}
        return cls.from_terms(data["n"], theory, terms)

    def latex(self) -> str:
        if not self.data:
            return "0"
        g = {"beta": r"\beta ", "gamma": r"\gamma "}.get(self.theory.gen_name, self.theory.gen_name + " ")
        pieces = []
        for key in sorted(self.data, key=lambda k: (k[0], tuple(-e for e in k[1:]))):
            a = self.data[key]
            mono = "".join(
                f"x_{{{i}}}" + (f"^{{{e}}}" if e > 1 else "") for i, e in enumerate(key[1:], start=1) if e
            )
            if key[0]:
                mono = g + (f"^{{{key[0]}}}" if key[0] > 1 else "") + mono
            if not mono:
                body = str(abs(a))
            else:
                body = ("" if abs(a) == 1 else str(abs(a))) + mono
            pieces.append((a < 0, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self) -> str:
        if not self.data:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms()[::-1]:
            mono = "*".join(f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps, start=1) if e)
            cs = str(c)
            if not mono:
                pieces.append(cs)
            elif cs == "1":
                pieces.append(mono)
            else:
                pieces.append(f"({cs})*{mono}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"QPoly(n={self.n}, {self.theory.name}: {self})"


def _trimmed(exps: tuple) -> tuple:
    end = len(exps)
    while end and exps[end - 1] == 0:
        end -= 1
    return exps[:end]


def _coeff_tuple(theory: Theory, c: Scalar) -> tuple:
    if isinstance(c, int):
        return (c,)
    if c.theory != theory:
        raise Mismatch(f"{c.theory} coefficient in a {theory} polynomial")
    return c.coeffs


def monomial_product(exps: Iterable[int], n: int, theory: Theory) -> QPoly:
    return QPoly.monomial(n, theory, tuple(exps))


@lru_cache(maxsize=None)
def _complete_monomials(d: int, nvars: int) -> tuple:
    """Exponent vectors of all degree-``d`` monomials in ``nvars`` variables."""
    return tuple(
        tuple(combo.count(v) for v in range(nvars))
        for combo in itertools.combinations_with_replacement(range(nvars), d)
    )


@lru_cache(maxsize=None)
def _monomial_nf(n: int, exps: tuple) -> tuple:
    """Normal form of ``x^exps`` as a tuple of ``(exps, int)`` pairs."""
    bad = next((i for i in range(n - 1, -1, -1) if exps[i] > n - 1 - i), None)
    if bad is None:
        return ((exps, 1),)
    d = n - bad  # relation h_d(x_1, ..., x_{bad+1}) with leading term x_{bad+1}^d
    base = list(exps)
    base[bad] -= d
    acc: dict = {}
    for m in _complete_monomials(d, bad + 1):
        if m[bad] == d:
            continue
        new = tuple(base[j] + m[j] if j <= bad else base[j] for j in range(n))
        for e, a in _monomial_nf(n, new):
            _add_into(acc, e, -a)
    return tuple(acc.items())


def normal_form(f: QPoly) -> QPoly:
    """Staircase representative of ``f`` modulo the symmetric ideal ``S_n``."""
    if f.normalized:
        return f
    n = f.n
    data: dict = {}
    for key, a in f.data.items():
        t = key[0]
        for e, b in _monomial_nf(n, key[1:]):
            _add_into(data, (t,) + e, a * b)
    return QPoly(n, f.theory, data, True)


def equal_mod(f: QPoly, g: QPoly) -> bool:
    f._check(g)
    return (normal_form(f) - normal_form(g)).is_zero() or normal_form(f - g).is_zero()


def elem_sym(k: int, a: int, b: int, n: int, theory: Theory) -> QPoly:
    """``e_k(x_a, ..., x_b)`` in rank ``n``, not normalized."""
    if not 1 <= a <= b <= n:
        raise InvalidInterval(f"[{a}, {b}] is not an interval inside [1, {n}]")
    if k < 0:
        raise InvalidInterval(f"negative degree {k}")
    terms = {}
    for idx in itertools.combinations(range(a - 1, b), k):
        exps = [0] * n
        for j in idx:
            exps[j] = 1
        terms[tuple(exps)] = 1
    return QPoly.from_terms(n, theory, terms)


def complete_sym(k: int, a: int, b: int, n: int, theory: Theory) -> QPoly:
    """``h_k(x_a, ..., x_b)`` in rank ``n``, not normalized."""
    if not 1 <= a <= b <= n:
        raise InvalidInterval(f"[{a}, {b}] is not an interval inside [1, {n}]")
    terms = {}
    for m in _complete_monomials(k, b - a + 1):
        terms[(0,) * (a - 1) + m + (0,) * (n - b)] = 1
    return QPoly.from_terms(n, theory, terms)


def set_top_var_zero(f: QPoly) -> QPoly:
    """Pull back along ``Fl_{n-1} -> Fl_n``: drop ``x_n`` (set it to zero), then normalize."""
    if f.n < 1:
        raise Mismatch("no variable to drop")
    data = {key[:-1]: a for key, a in f.data.items() if key[-1] == 0}
    return normal_form(QPoly(f.n - 1, f.theory, data))


def staircase_monomials(n: int) -> list:
    return list(itertools.product(*(range(n - i + 1) for i in range(1, n + 1))))
