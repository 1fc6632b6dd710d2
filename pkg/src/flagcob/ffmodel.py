"""Bott-Samelson configuration spaces over a finite field ``F_q``.

A configuration for a word ``i_1 ... i_r`` in ``S_{n+1}`` is a tuple of
subspaces ``V_k`` of ``F_q^(n+1)`` with ``dim V_k = i_k`` squeezed between the
spaces at its left and right predecessors.  Subspaces are kept in reduced
row echelon form, so equal subspaces compare and hash equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import InternalError, InvalidMove, NotAboveCoxeter, TooLarge
from .perm_words import (
    NEG_INF, Permutation, Word, bruhat_leq, check_word, commuting_path, coxeter_word, decompose_ucv,
    predecessor_table, shift_letters, word_to_perm,
)

__all__ = [
    "Subspace", "ConfigPoint", "FlagPoint", "enumerate_config", "project_flag", "commuting_iso",
    "fiber", "forward_map", "backward_map", "FiberReport", "fiber_bijection", "flag_position",
    "standard_space", "hyperplane", "cycle_shift", "MAX_LENGTH",
]

MAX_LENGTH = 8


def _rref(rows, q: int) -> tuple:
    """Row-reduce over ``F_q`` and drop zero rows."""
    m = [list(r) for r in rows]
    out = []
    width = len(m[0]) if m else 0
    pivot_row = 0
    for col in range(width):
        piv = next((i for i in range(pivot_row, len(m)) if m[i][col] % q), None)
        if piv is None:
            continue
        m[pivot_row], m[piv] = m[piv], m[pivot_row]
        inv = pow(m[pivot_row][col], q - 2, q)
        m[pivot_row] = [(x * inv) % q for x in m[pivot_row]]
        for i in range(len(m)):
            if i != pivot_row and m[i][col] % q:
                f = m[i][col]
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    for r in m[:pivot_row]:
        out.append(tuple(x % q for x in r))
    return tuple(out)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``F_q^dim`` given by its canonical RREF basis."""

    q: int
    ambient: int
    basis: tuple

    @classmethod
    def span(cls, q: int, ambient: int, vectors) -> Subspace:
        vectors = [tuple(v) for v in vectors]
        return cls(q, ambient, _rref(vectors, q) if vectors else ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return _join(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return _meet(self, other)

    def __le__(self, other: Subspace) -> bool:
        return (self + other).dim == other.dim

    def map_basis(self, images: Sequence[int]) -> Subspace:
        """Image under ``e_i -> e_{images[i-1]}`` (1-indexed permutation of coordinates)."""
        vectors = []
        for v in self.basis:
            w = [0] * self.ambient
            for i, x in enumerate(v):
                w[images[i] - 1] = x
            vectors.append(w)
        return Subspace.span(self.q, self.ambient, vectors)

    def __str__(self) -> str:
        return "<" + "; ".join("".join(map(str, v)) for v in self.basis) + ">"


@lru_cache(maxsize=None)
def _join(a: Subspace, b: Subspace) -> Subspace:
    return Subspace.span(a.q, a.ambient, a.basis + b.basis)


@lru_cache(maxsize=None)
def _meet(a: Subspace, b: Subspace) -> Subspace:
    # Zassenhaus: reduce [[a, a], [b, 0]]; rows whose left half vanishes span the intersection
    m = a.ambient
    rows = [v + v for v in a.basis] + [v + (0,) * m for v in b.basis]
    if not rows:
        return Subspace(a.q, m, ())
    reduced = _rref(rows, a.q)
    return Subspace.span(a.q, m, [r[m:] for r in reduced if not any(r[:m])])


@lru_cache(maxsize=None)
def standard_space(q: int, ambient: int, i: int) -> Subspace:
    """``E_i = <e_1, ..., e_i>``."""
    return Subspace.span(q, ambient, [[int(j == k) for j in range(ambient)] for k in range(i)])


@lru_cache(maxsize=None)
def hyperplane(q: int, ambient: int) -> Subspace:
    """``<e_2, ..., e_{n+1}>``."""
    return Subspace.span(q, ambient, [[int(j == k) for j in range(ambient)] for k in range(1, ambient)])


def cycle_shift(s: Subspace, inverse: bool = False) -> Subspace:
    """Apply ``c: e_i -> e_{i+1}``, ``e_{n+1} -> e_1`` (or its inverse)."""
    m = s.ambient
    images = [(i - 2) % m + 1 if inverse else i % m + 1 for i in range(1, m + 1)]
    return s.map_basis(images)


@dataclass(frozen=True)
class ConfigPoint:
    spaces: tuple  # of Subspace, indexed by word position

    def __len__(self) -> int:
        return len(self.spaces)

    def at(self, k: int) -> Subspace:
        """``V_k`` for a 1-indexed position."""
        return self.spaces[k - 1]

    def shifted(self, inverse: bool = False) -> ConfigPoint:
        return ConfigPoint(tuple(cycle_shift(s, inverse) for s in self.spaces))

    def key(self) -> tuple:
        return tuple(s.basis for s in self.spaces)


@dataclass(frozen=True)
class FlagPoint:
    spaces: tuple  # U_1 ⊂ ... ⊂ U_n

    def shifted(self, inverse: bool = False) -> FlagPoint:
        return FlagPoint(tuple(cycle_shift(s, inverse) for s in self.spaces))


def _bounds(spaces: Sequence[Subspace], table, k: int, letter: int, q: int, ambient: int) -> tuple:
    lp, rp = table.lp(k), table.rp(k)
    low = standard_space(q, ambient, letter - 1) if lp == NEG_INF else spaces[int(lp) - 1]
    high = standard_space(q, ambient, letter + 1) if rp == NEG_INF else spaces[int(rp) - 1]
    return low, high


def _between(low: Subspace, high: Subspace) -> list:
    """All subspaces of dimension ``dim low + 1`` between ``low`` and ``high`` (codim 2)."""
    if not low <= high or high.dim - low.dim != 2:
        raise InternalError(f"predecessor spaces {low} and {high} are not nested in codimension 2")
    q, m = low.q, low.ambient
    extra = []
    current = low
    for v in high.basis:
        bigger = current + Subspace.span(q, m, [v])
        if bigger.dim > current.dim:
            extra.append(v)
            current = bigger
    a, b = extra
    lines = [a] + [tuple((x + t * y) % q for x, y in zip(b, a)) for t in range(q)]
    return [low + Subspace.span(q, m, [v]) for v in lines]


def enumerate_config(w, rank: int, q: int, fixed: Optional[dict] = None) -> Iterator[ConfigPoint]:
    """Every configuration point of ``w`` over ``F_q``; ``fixed`` pins ``V_k`` for chosen positions."""
    w = check_word(w, rank)
    if len(w) > MAX_LENGTH:
        raise TooLarge(f"words longer than {MAX_LENGTH} letters are not enumerated")
    table = predecessor_table(w)
    fixed = fixed or {}

    def rec(spaces: list):
        k = len(spaces) + 1
        if k > len(w):
            yield ConfigPoint(tuple(spaces))
            return
        low, high = _bounds(spaces, table, k, w[k - 1], q, rank)
        for choice in _between(low, high):
            if k in fixed and fixed[k] != choice:
                continue
            spaces.append(choice)
            yield from rec(spaces)
            spaces.pop()

    yield from rec([])


def is_config(p: ConfigPoint, w, rank: int, q: int) -> bool:
    """Check the dimension and incidence conditions directly."""
    w = tuple(w)
    if len(p) != len(w):
        return False
    table = predecessor_table(w)
    for k, letter in enumerate(w, start=1):
        low, high = _bounds(p.spaces, table, k, letter, q, rank)
        v = p.at(k)
        if v.dim != letter or not low <= v or not v <= high:
            return False
    return True


def project_flag(p: ConfigPoint, w, rank: int, q: int) -> FlagPoint:
    """``U_a = V_{lo(a)}``, or ``E_a`` when ``a`` does not occur."""
    table = predecessor_table(tuple(w))
    out = []
    for a in range(1, rank):
        k = table.lo(a)
        out.append(standard_space(q, rank, a) if k == NEG_INF else p.at(int(k)))
    for small, big in zip(out, out[1:]):
        if not small <= big:
            raise InternalError("projected spaces are not nested")
    return FlagPoint(tuple(out))


def flag_position(flag: FlagPoint, rank: int) -> Permutation:
    """The permutation ``s`` with ``dim(U_p ∩ E_r) = #{i <= p : s(i) <= r}``."""
    q = flag.spaces[0].q if flag.spaces else 2
    full = standard_space(q, rank, rank)
    spaces = list(flag.spaces) + [full]
    oneline = []
    prev = Subspace(q, rank, ())
    for U in spaces:
        # the new value is the first r where U ∩ E_r grows faster than prev ∩ E_r
        r = next(
            r for r in range(1, rank + 1)
            if (U & standard_space(q, rank, r)).dim > (prev & standard_space(q, rank, r)).dim
        )
        oneline.append(r)
        prev = U
    return Permutation(tuple(oneline))


def commuting_iso(p: ConfigPoint, w1, w2, position: Optional[int] = None) -> ConfigPoint:
    """Transport along one commuting move: swap the spaces at the two moved positions."""
    w1, w2 = tuple(w1), tuple(w2)
    diffs = [j for j in range(len(w1)) if j >= len(w2) or w1[j] != w2[j]]
    if (
        len(w1) != len(w2) or len(diffs) != 2 or diffs[1] != diffs[0] + 1
        or w1[diffs[0]] != w2[diffs[1]] or w1[diffs[1]] != w2[diffs[0]]
        or abs(w1[diffs[0]] - w1[diffs[1]]) < 2
    ):
        raise InvalidMove(f"{w1} and {w2} do not differ by one commuting move")
    j = diffs[0]
    if position is not None and position != j + 1:
        raise InvalidMove(f"move is at position {j + 1}, not {position}")
    s = list(p.spaces)
    s[j], s[j + 1] = s[j + 1], s[j]
    return ConfigPoint(tuple(s))


def transport(p: ConfigPoint, w1, w2) -> ConfigPoint:
    """Compose single-move maps along a shortest commuting path from ``w1`` to ``w2``."""
    cur = tuple(w1)
    for pos in commuting_path(w1, w2):
        nxt = cur[:pos - 1] + (cur[pos], cur[pos - 1]) + cur[pos + 1:]
        p = commuting_iso(p, cur, nxt, pos)
        cur = nxt
    return p


def fiber(w, rank: int, q: int) -> list:
    """Configuration points of ``w`` whose projected ``U_n`` is ``<e_2, ..., e_{n+1}>``."""
    w = tuple(w)
    n = rank - 1
    H = hyperplane(q, rank)
    k = predecessor_table(w).lo(n)
    if k == NEG_INF:
        return [] if standard_space(q, rank, n) != H else list(enumerate_config(w, rank, q))
    return list(enumerate_config(w, rank, q, fixed={int(k): H}))


def forward_map(p: ConfigPoint, r1: int, n: int, q: int, rank: int) -> ConfigPoint:
    """The map ``f``: fiber point of ``u c v`` to a point of ``c(X_{c^{-1}(u) v})``."""
    H = hyperplane(q, rank)
    out = [p.at(a) & H for a in range(1, r1 + 1)]
    out += [p.at(a + n) for a in range(r1 + 1, len(p) - n + 1)]
    return ConfigPoint(tuple(out))


def backward_map(h: ConfigPoint, w, r1: int, n: int, q: int, rank: int) -> ConfigPoint:
    """The map ``g``, inverse to :func:`forward_map`."""
    w = tuple(w)
    table = predecessor_table(w)
    H = hyperplane(q, rank)
    e1 = standard_space(q, rank, 1)
    spaces: list = []
    for k in range(1, len(w) + 1):
        if k <= r1:
            spaces.append(h.at(k) + e1)
        elif k <= r1 + n:
            rp = table.rp(k)
            top = standard_space(q, rank, w[k - 1] + 1) if rp == NEG_INF else spaces[int(rp) - 1]
            spaces.append(top & H)
        else:
            spaces.append(h.at(k - n))
    return ConfigPoint(tuple(spaces))


@dataclass
class FiberReport:
    word: Word
    rank: int
    q: int
    above_coxeter: bool
    ucv_word: Optional[Word] = None
    short_word: Optional[Word] = None
    r1: int = 0
    r2: int = 0
    fiber_count: int = 0
    expected_count: int = 0
    f_g_identity: bool = True
    g_f_identity: bool = True
    images_ok: bool = True
    projection_ok: bool = True
    transport_ok: bool = True
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.fiber_count == self.expected_count and self.f_g_identity and self.g_f_identity
            and self.images_ok and self.projection_ok and self.transport_ok
        )

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "rank": self.rank,
            "q": self.q,
            "above_coxeter": self.above_coxeter,
            "ucv_word": None if self.ucv_word is None else list(self.ucv_word),
            "r1": self.r1,
            "r2": self.r2,
            "fiber_count": self.fiber_count,
            "expected_count": self.expected_count,
            "f_g_identity": self.f_g_identity and self.g_f_identity,
            "projection_ok": self.projection_ok,
            "transport_ok": self.transport_ok,
            "ok": self.ok,
        }


def fiber_bijection(w, rank: int, q: int) -> FiberReport:
    """Check the fiber of ``w`` over the subflag against ``c(X_{c^{-1}(u) v})`` point by point."""
    w = check_word(w, rank)
    n = rank - 1
    above = bruhat_leq(word_to_perm(coxeter_word(n), rank), word_to_perm(w, rank))
    report = FiberReport(w, rank, q, above)
    try:
        ucv = decompose_ucv(w, rank)
    except NotAboveCoxeter:
        report.fiber_count = len(fiber(w, rank, q))
        report.expected_count = 0
        return report
    if not above:
        raise InternalError("decomposition succeeded below the Coxeter element")
    word = ucv.word
    short = shift_letters(ucv.u, -1) + ucv.v
    r1, r2 = len(ucv.u), len(ucv.v)
    report.ucv_word, report.short_word, report.r1, report.r2 = word, short, r1, r2
    report.expected_count = (q + 1) ** (r1 + r2)

    points = fiber(word, rank, q)
    report.fiber_count = len(points)
    targets = {c.key(): c for c in (p.shifted() for p in enumerate_config(short, rank, q))}
    images = set()
    for p in points:
        h = forward_map(p, r1, n, q, rank)
        images.add(h.key())
        if h.key() not in targets:
            report.images_ok = False
            report.failures.append(("image", p.key()))
            continue
        if backward_map(h, word, r1, n, q, rank) != p:
            report.g_f_identity = False
            report.failures.append(("g_f", p.key()))
        flag = project_flag(p, word, rank, q)
        other = project_flag(h.shifted(inverse=True), short, rank, q).shifted()
        if flag != other:
            report.projection_ok = False
            report.failures.append(("projection", p.key()))
    for key, h in targets.items():
        p = backward_map(h, word, r1, n, q, rank)
        if not is_config(p, word, rank, q) or project_flag(p, word, rank, q).spaces[-1] != hyperplane(q, rank):
            report.images_ok = False
            report.failures.append(("g_image", key))
        elif forward_map(p, r1, n, q, rank) != h:
            report.f_g_identity = False
            report.failures.append(("f_g", key))
    if images != set(targets):
        report.images_ok = False
    if word != w:
        # the fiber of the original word corresponds to the fiber of u c v under commuting moves
        moved = {transport(p, w, word).key() for p in fiber(w, rank, q)}
        report.transport_ok = moved == {p.key() for p in points}
    return report
