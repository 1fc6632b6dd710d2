"""Type A combinatorics: permutations, words in simple reflections, Bruhat order,
commutation classes, predecessor tables and dominant permutations.

Words are tuples of letters ``i >= 1`` (letter ``i`` stands for ``s_i``).  A word
acts on one-line notation from the left to the right: starting from the
identity ``[1, ..., n]``, each letter ``s_i`` swaps the entries in positions
``i`` and ``i + 1``.  Positions inside a word are 1-indexed throughout, and a
missing position is the sentinel :data:`NEG_INF`.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import InvalidLetter, InvalidMove, InvalidPartition, NotAboveCoxeter, NotReduced, RankMismatch

__all__ = [
    "NEG_INF", "Word", "Partition", "Permutation", "PredecessorTable", "UCV", "DominantReading",
    "parse_word", "format_word", "check_word", "word_to_perm", "is_reduced", "coxeter_word",
    "reverse_coxeter_word", "stable_prefix", "bruhat_leq", "reduced_words", "all_reduced_words",
    "commutation_normal_form", "commuting_equivalent", "commuting_neighbours", "commuting_path",
    "decompose_ucv", "decompose_ucv_mirrored", "shift_letters", "predecessor_table",
    "dominant_permutation", "rothe_diagram", "partitions_in_staircase", "dominant_reading",
]

# -infinity: an index that never exists; never used to index anything
NEG_INF = -math.inf

Word = tuple  # tuple[int, ...]
Partition = tuple  # tuple[int, ...], weakly decreasing positive parts


def parse_word(text: str) -> Word:
    """Parse ``"2,3,4,3"`` (or an empty string) into a word."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise InvalidLetter(f"cannot parse word {text!r}") from None


def format_word(w: Sequence[int]) -> str:
    return ",".join(str(a) for a in w)


def check_word(w: Sequence[int], rank: int) -> Word:
    w = tuple(w)
    for a in w:
        if not 1 <= a <= rank - 1:
            raise InvalidLetter(f"letter {a} is outside [1, {rank - 1}]")
    return w


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``1..n`` in one-line notation."""

    oneline: tuple

    def __post_init__(self):
        object.__setattr__(self, "oneline", tuple(self.oneline))
        if sorted(self.oneline) != list(range(1, len(self.oneline) + 1)):
            raise ValueError(f"{self.oneline} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> Permutation:
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def all(cls, n: int) -> list[Permutation]:
        return [cls(p) for p in itertools.permutations(range(1, n + 1))]

    @property
    def n(self) -> int:
        return len(self.oneline)

    def __call__(self, i: int) -> int:
        return self.oneline[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        # (u * v)(i) = u(v(i))
        if self.n != other.n:
            raise RankMismatch(f"cannot compose S_{self.n} with S_{other.n}")
        return Permutation(tuple(self.oneline[j - 1] for j in other.oneline))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, a in enumerate(self.oneline, start=1):
            inv[a - 1] = i
        return Permutation(tuple(inv))

    def length(self) -> int:
        w = self.oneline
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def lehmer_code(self) -> tuple:
        w = self.oneline
        return tuple(sum(1 for j in range(i + 1, len(w)) if w[j] < w[i]) for i in range(len(w)))

    def reduced_word(self) -> Word:
        """The reduced word obtained by sorting with adjacent swaps (rightmost descents last)."""
        w = list(self.oneline)
        letters = []
        while True:
            for i in range(len(w) - 1):
                if w[i] > w[i + 1]:
                    w[i], w[i + 1] = w[i + 1], w[i]
                    letters.append(i + 1)
                    break
            else:
                break
        # w * s_{a_1} * ... * s_{a_k} = id, so w = s_{a_k} ... s_{a_1}
        return tuple(reversed(letters))

    def __str__(self) -> str:
        return ",".join(map(str, self.oneline))


def word_to_perm(w: Sequence[int], rank: int) -> Permutation:
    w = check_word(w, rank)
    line = list(range(1, rank + 1))
    for a in w:
        line[a - 1], line[a] = line[a], line[a - 1]
    return Permutation(tuple(line))


def _min_rank(w: Sequence[int]) -> int:
    return max(w, default=0) + 1


def is_reduced(w: Sequence[int], rank: int | None = None) -> bool:
    if rank is None:
        rank = _min_rank(w)
    return word_to_perm(w, rank).length() == len(w)


def coxeter_word(n: int) -> Word:
    """``s_1 s_2 ... s_n``, the Coxeter element of ``S_{n+1}``."""
    return tuple(range(1, n + 1))


def reverse_coxeter_word(n: int) -> Word:
    """``s_n ... s_1``."""
    return tuple(range(n, 0, -1))


def stable_prefix(n: int, N: int) -> Word:
    """The word ``c^(N-1) c^(N-2) ... c^(n)`` (empty when ``N == n``)."""
    return tuple(a for k in range(N - 1, n - 1, -1) for a in coxeter_word(k))


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Bruhat order via the sorted-prefix (tableau) criterion."""
    if u.n != w.n:
        raise RankMismatch(f"S_{u.n} vs S_{w.n}")
    for k in range(1, u.n):
        a = sorted(u.oneline[:k])
        b = sorted(w.oneline[:k])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


@lru_cache(maxsize=None)
def _reduced_words(oneline: tuple) -> tuple:
    perm = Permutation(oneline)
    if perm.length() == 0:
        return ((),)
    out = []
    line = list(oneline)
    for i in range(len(line) - 1):
        if line[i] > line[i + 1]:
            # right descent: w = (w s_i) s_i
            line[i], line[i + 1] = line[i + 1], line[i]
            out.extend(word + (i + 1,) for word in _reduced_words(tuple(line)))
            line[i], line[i + 1] = line[i + 1], line[i]
    return tuple(sorted(out))


def reduced_words(perm: Permutation) -> list[Word]:
    return list(_reduced_words(perm.oneline))


def all_reduced_words(rank: int, max_len: int | None = None) -> list[Word]:
    """Every reduced word of every element of ``S_rank``, sorted by (length, word)."""
    words = [w for p in Permutation.all(rank) for w in reduced_words(p)]
    if max_len is not None:
        words = [w for w in words if len(w) <= max_len]
    return sorted(words, key=lambda w: (len(w), w))


def commutation_normal_form(w: Sequence[int]) -> Word:
    """Lexicographically least word in the commutation class of ``w``.

    Greedily emits the smallest letter that can be commuted to the front.
    """
    rest = list(w)
    out = []
    while rest:
        best = None
        for j, a in enumerate(rest):
            if all(abs(a - b) >= 2 for b in rest[:j]) and (best is None or a < rest[best]):
                best = j
        out.append(rest.pop(best))
    return tuple(out)


def commuting_equivalent(w1: Sequence[int], w2: Sequence[int]) -> bool:
    return commutation_normal_form(w1) == commutation_normal_form(w2)


def commuting_neighbours(w: Sequence[int]) -> Iterator[tuple[int, Word]]:
    """Yield ``(position, word)`` for every single commuting move of ``w``.

    ``position`` is the 1-indexed position of the first swapped letter.
    """
    w = tuple(w)
    for j in range(len(w) - 1):
        if abs(w[j] - w[j + 1]) >= 2:
            yield j + 1, w[:j] + (w[j + 1], w[j]) + w[j + 2:]


def commuting_path(w1: Sequence[int], w2: Sequence[int]) -> list[int]:
    """Positions of a shortest sequence of commuting moves taking ``w1`` to ``w2``."""
    w1, w2 = tuple(w1), tuple(w2)
    prev: dict = {w1: None}
    queue = deque([w1])
    while queue:
        cur = queue.popleft()
        if cur == w2:
            path = []
            while prev[cur] is not None:
                cur, pos = prev[cur]
                path.append(pos)
            return path[::-1]
        for pos, nxt in commuting_neighbours(cur):
            if nxt not in prev:
                prev[nxt] = (cur, pos)
                queue.append(nxt)
    raise InvalidMove(f"{w1} and {w2} are not commutation equivalent")


@dataclass(frozen=True)
class UCV:
    """A decomposition ``w = u c v`` modulo commuting relations, in ``S_{n+1}``."""

    u: Word
    c: Word
    v: Word

    @property
    def word(self) -> Word:
        return self.u + self.c + self.v

    @property
    def n(self) -> int:
        return len(self.c)


def _require_reduced(w: Word, rank: int) -> None:
    if not is_reduced(w, rank):
        raise NotReduced(f"{format_word(w)} is not reduced")


def decompose_ucv(w: Sequence[int], rank: int) -> UCV:
    """Split a reduced word of ``S_{n+1}`` as ``u c v`` with ``c = s_1...s_n``.

    ``u`` avoids ``s_1`` and ``v`` avoids ``s_n``.  The copy of ``c`` is the
    earliest subsequence ``s_1, s_2, ..., s_n``.  Raises :class:`NotAboveCoxeter`
    when ``w`` has no such subsequence, i.e. when ``c`` is not below ``w``.
    """
    w = check_word(w, rank)
    _require_reduced(w, rank)
    n = rank - 1
    marks = []
    want = 1
    for pos, a in enumerate(w):
        if want <= n and a == want:
            marks.append(pos)
            want += 1
    if want <= n:
        raise NotAboveCoxeter(f"{format_word(w)} is not above s_1...s_{n}")
    u: list = []
    v: list = []
    # chunk i (1-indexed) sits just before the chosen s_i; its letters > i commute left past
    # the chosen s_1..s_{i-1}, its letters < i commute right past s_i..s_n
    start = 0
    for i, pos in enumerate(marks, start=1):
        chunk = w[start:pos]
        u.extend(a for a in chunk if a > i)
        v.extend(a for a in chunk if a < i)
        start = pos + 1
    v.extend(w[start:])
    out = UCV(tuple(u), coxeter_word(n), tuple(v))
    if 1 in out.u or n in out.v or not commuting_equivalent(out.word, w):
        raise AssertionError(f"bad decomposition of {w}: {out}")
    return out


def _mirror(w: Sequence[int], n: int) -> Word:
    return tuple(n + 1 - a for a in w)


def decompose_ucv_mirrored(w: Sequence[int], rank: int) -> UCV:
    """Split ``w = u c' v`` with ``c' = s_n ... s_1``, ``u`` avoiding ``s_n`` and ``v`` avoiding ``s_1``."""
    n = rank - 1
    d = decompose_ucv(_mirror(check_word(w, rank), n), rank)
    return UCV(_mirror(d.u, n), _mirror(d.c, n), _mirror(d.v, n))


def shift_letters(w: Sequence[int], by: int) -> Word:
    """``c^{-1}(u)`` is ``shift_letters(u, -1)``; the mirrored variant shifts by ``+1``."""
    return tuple(a + by for a in w)


@dataclass(frozen=True)
class PredecessorTable:
    """Last occurrences and left/right predecessors of a word.

    ``lp[k-1]`` and ``rp[k-1]`` hold the predecessors of position ``k``.
    """

    word: Word
    last: tuple  # last[a] for a in 0..max letter + 1
    lp_: tuple
    rp_: tuple

    def lo(self, a: int) -> float:
        if 0 <= a < len(self.last):
            return self.last[a]
        return NEG_INF

    def lp(self, k: float) -> float:
        return NEG_INF if k == NEG_INF else self.lp_[int(k) - 1]

    def rp(self, k: float) -> float:
        return NEG_INF if k == NEG_INF else self.rp_[int(k) - 1]


def predecessor_table(w: Sequence[int]) -> PredecessorTable:
    w = tuple(w)
    top = max(w, default=0) + 2
    last = [NEG_INF] * (top + 1)
    lp, rp = [], []
    for k, a in enumerate(w, start=1):
        last[a] = k
        lp.append(last[a - 1])
        rp.append(last[a + 1])
    return PredecessorTable(w, tuple(last), tuple(lp), tuple(rp))


def rothe_diagram(perm: Permutation) -> set:
    """Boxes ``(i, j)`` left over after deleting the hooks east and south of each dot ``(i, w(i))``."""
    inv = perm.inverse()
    return {
        (i, j)
        for i in range(1, perm.n + 1)
        for j in range(1, perm.n + 1)
        if j < perm(i) and inv(j) > i
    }


def _check_partition(lam: Sequence[int], n: int) -> Partition:
    lam = tuple(p for p in lam if p != 0)
    if any(a < b for a, b in zip(lam, lam[1:])) or any(p < 0 for p in lam):
        raise InvalidPartition(f"{lam} is not a partition")
    if len(lam) > n - 1 or any(p > n - i for i, p in enumerate(lam, start=1)):
        raise InvalidPartition(f"{lam} does not fit in the staircase of S_{n}")
    return lam


def dominant_permutation(lam: Sequence[int], n: int) -> Permutation:
    """The unique permutation of ``S_n`` whose diagram is the Young diagram of ``lam``."""
    lam = _check_partition(lam, n)
    code = list(lam) + [0] * (n - len(lam))
    free = list(range(1, n + 1))
    return Permutation(tuple(free.pop(c) for c in code))


def partitions_in_staircase(n: int) -> list[Partition]:
    """All partitions contained in ``(n-1, n-2, ..., 1)``."""
    out = []

    def rec(prefix: list, i: int, cap: int):
        out.append(tuple(prefix))
        if i > n - 1:
            return
        for p in range(1, min(cap, n - i) + 1):
            rec(prefix + [p], i + 1, p)

    rec([], 1, n - 1)
    return sorted(out)


@dataclass(frozen=True)
class DominantReading:
    segments: tuple  # tuple of words
    orbits: tuple  # per segment, tuple of (a, b) intervals of size >= 2

    @property
    def word(self) -> Word:
        return tuple(a for seg in self.segments for a in seg)


def _orbit_intervals(segment: Word, n: int) -> tuple:
    perm = word_to_perm(segment, n)
    seen: set = set()
    out = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        orbit = {start}
        x = perm(start)
        while x != start:
            orbit.add(x)
            x = perm(x)
        seen |= orbit
        if len(orbit) >= 2:
            a, b = min(orbit), max(orbit)
            if orbit != set(range(a, b + 1)):
                raise AssertionError(f"orbit {sorted(orbit)} of {segment} is not an interval")
            out.append((a, b))
    return tuple(out)


def dominant_reading(lam: Sequence[int], n: int) -> DominantReading:
    """Read the unshaded boxes of the staircase filled with row indices.

    Anti-diagonals ``a + b = n, n-1, ...`` are read innermost first; inside an
    anti-diagonal boxes are read by increasing row.  The concatenated word is
    reduced for ``w0 * w_lam``.
    """
    lam = _check_partition(lam, n)
    shaded = {(a, b) for a, part in enumerate(lam, start=1) for b in range(1, part + 1)}
    segments = []
    for s in range(n, 1, -1):
        seg = tuple(a for a in range(1, s) if (a, s - a) not in shaded)
        # an all-shaded anti-diagonal forces every inner one to be shaded too
        if not seg:
            break
        segments.append(seg)
    return DominantReading(tuple(segments), tuple(_orbit_intervals(seg, n) for seg in segments))
