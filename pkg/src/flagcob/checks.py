"""Exhaustive and seeded verification suites.

Every suite is split into a list of picklable case keys and a top-level
``run_case`` function, so the CLI can fan cases out to worker processes and
still aggregate results deterministically by key.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from math import gcd
from typing import Iterable

from .coeff_fgl import CoeffElem, Theory, parse_theory
from .ddops import ddiff, ddiff_word, product_with_divisor, restriction_check
from .ffmodel import fiber_bijection
from .perm_words import all_reduced_words, commutation_normal_form
from .polyring import QPoly, elem_sym, normal_form, set_top_var_zero, staircase_monomials
from .stable import e2_partial_sum, weighted_e1_sum

__all__ = [
    "SUITES", "suite_cases", "run_case", "random_poly", "in_symmetric_ideal", "summarize",
]

SUITES = ("restriction", "product", "fiber", "operators", "normalform")


def random_poly(
    rng: random.Random, n: int, theory: Theory, terms: int = 4, max_exp: int = 3, max_degree: int | None = None
) -> QPoly:
    out = QPoly.zero(n, theory)
    nil = theory.nil if theory.nil is not None else 3
    for _ in range(terms):
        exps = [rng.randint(0, max_exp) for _ in range(n)]
        while max_degree is not None and sum(exps) > max_degree:
            exps[rng.randrange(n)] = 0
        exps = tuple(exps)
        coeff = CoeffElem(theory, [rng.randint(-3, 3) for _ in range(max(nil, 1))])
        out = out + QPoly.monomial(n, theory, exps, coeff)
    return out


def _monomials(n: int, d: int) -> list:
    return [tuple(c.count(i) for i in range(n)) for c in itertools.combinations_with_replacement(range(n), d)]


def _primitive(row: list) -> list:
    g = 0
    for x in row:
        g = gcd(g, x)
    return [x // g for x in row] if g > 1 else row


def _reduce(row: list, echelon: dict) -> list:
    """Clear every pivot column of ``row`` using integer row operations."""
    for c, piv in echelon.items():
        if row[c]:
            a, b = piv[c], row[c]
            row = _primitive([a * x - b * y for x, y in zip(row, piv)])
    return row


@lru_cache(maxsize=None)
def _ideal_echelon(n: int, d: int) -> tuple:
    """Monomial index and an echelon basis (pivot column -> row) of the degree ``d`` part of the ideal."""
    from .coeff_fgl import ADDITIVE

    basis = _monomials(n, d)
    index = {m: j for j, m in enumerate(basis)}
    echelon: dict = {}
    for k in range(1, min(n, d) + 1):
        e = elem_sym(k, 1, n, n, ADDITIVE)
        for m in _monomials(n, d - k):
            row = [0] * len(basis)
            for exps, c in (e * QPoly.monomial(n, ADDITIVE, m)).terms.items():
                row[index[exps]] += c.coeffs[0]
            row = _reduce(row, echelon)
            lead = next((j for j, x in enumerate(row) if x), None)
            if lead is not None:
                echelon = {**echelon, lead: row}
                echelon = dict(sorted(echelon.items()))
    return index, echelon


def in_symmetric_ideal(f: QPoly) -> bool:
    """Whether an integer polynomial lies in the ideal generated by ``e_1..e_n``.

    Works degree by degree with spanning sets ``e_k * m``.  Elimination over Q
    is enough because the quotient by this ideal is a free abelian group.
    """
    n = f.n
    by_degree: dict = {}
    for exps, c in f.terms.items():
        if len(c.coeffs) > 1:
            raise ValueError("only integer polynomials are supported")
        by_degree.setdefault(sum(exps), {})[exps] = c.coeffs[0] if c.coeffs else 0
    for d, part in by_degree.items():
        index, echelon = _ideal_echelon(n, d)
        target = [0] * len(index)
        for exps, c in part.items():
            target[index[exps]] = c
        if any(_reduce(target, echelon)):
            return False
    return True


def _theories(names: Iterable[str]) -> list:
    return [parse_theory(t) for t in names]


def suite_cases(suite: str, **opts) -> list:
    """Case keys for a suite; keys are plain tuples of strings and ints."""
    theories = [t.name for t in opts.get("theories", [])]
    if suite == "restriction":
        return [
            ("restriction", t, n, v)
            for t in theories for n in range(1, opts["max_n"] + 1) for v in all_reduced_words(n)
        ]
    if suite == "product":
        rank = opts["n"]
        return [("product", t, rank, w, bool(opts.get("mirrored"))) for t in theories for w in all_reduced_words(rank)]
    if suite == "fiber":
        top = opts["n"] + 1
        return [
            ("fiber", rank, opts["q"], w)
            for rank in range(2, top + 1) for w in all_reduced_words(rank, opts["max_len"])
        ]
    if suite == "operators":
        return [
            ("operators", t, n, opts["seed"], s)
            for t in theories for n in range(2, opts["max_n"] + 1) for s in range(opts.get("samples", 20))
        ]
    if suite == "normalform":
        return [("normalform", n, opts["seed"], s) for n in range(1, opts["max_n"] + 1) for s in range(opts.get("samples", 20))]
    raise ValueError(f"unknown suite {suite!r}")


def run_case(case: tuple) -> dict:
    kind = case[0]
    return {"restriction": _restriction, "product": _product, "fiber": _fiber,
            "operators": _operators, "normalform": _normalform}[kind](*case[1:])


def _key(*parts) -> str:
    return "/".join(",".join(map(str, p)) if isinstance(p, tuple) else str(p) for p in parts)


def _restriction(theory_name: str, n: int, v: tuple) -> dict:
    ok = restriction_check(v, n, parse_theory(theory_name))
    return {"case": _key("restriction", theory_name, n, v), "ok": ok}


def _product(theory_name: str, rank: int, w: tuple, mirrored: bool) -> dict:
    res = product_with_divisor(w, rank, parse_theory(theory_name), mirrored)
    out = {"case": _key("product", theory_name, rank, w, "mirrored" if mirrored else "plain"), "ok": res.holds,
           "zero_branch": res.reduced_word is None}
    if not res.holds:
        out["lhs"], out["rhs"] = res.lhs.to_json(), res.rhs.to_json()
    return out


def _fiber(rank: int, q: int, w: tuple) -> dict:
    rep = fiber_bijection(w, rank, q)
    return {"case": _key("fiber", rank, q, w), "ok": rep.ok, **rep.to_json()}


def _operators(theory_name: str, n: int, seed: int, sample: int) -> dict:
    theory = parse_theory(theory_name)
    rng = random.Random(f"{seed}/{theory_name}/{n}/{sample}")
    f = random_poly(rng, n, theory)
    g = random_poly(rng, n, theory)
    failures = []
    one = QPoly.one(n, theory)
    for i in range(1, n):
        for j in range(i + 2, n):
            if ddiff(i, ddiff(j, f)) != ddiff(j, ddiff(i, f)):
                failures.append(f"commute {i},{j}")
        d = ddiff(i, f, normalize=False)
        if d.swap(i) != d:
            failures.append(f"symmetric output {i}")
        sym = g + g.swap(i)
        if ddiff(i, sym * f) != normal_form(sym * ddiff(i, f, normalize=False)):
            failures.append(f"symmetric factor {i}")
        if ddiff(i, ddiff(i, f)) != normal_form(ddiff(i, one, normalize=False) * ddiff(i, f)):
            failures.append(f"square {i}")
    big = random_poly(rng, n + 1, theory)
    for i in range(1, n):
        if set_top_var_zero(ddiff(i, big, normalize=False)) != ddiff(i, set_top_var_zero(big)):
            failures.append(f"pullback {i}")
    # commuting-equivalent words give the same composite
    word = tuple(rng.randint(1, n - 1) for _ in range(rng.randint(0, 4))) if n > 1 else ()
    shuffled = commutation_normal_form(word)
    if ddiff_word(word, f) != ddiff_word(shuffled, f):
        failures.append("commuting words")
    return {"case": _key("operators", theory_name, n, seed, sample), "ok": not failures, "failures": failures}


def _normalform(n: int, seed: int, sample: int) -> dict:
    from .coeff_fgl import ADDITIVE, I2

    rng = random.Random(f"{seed}/nf/{n}/{sample}")
    failures = []
    f = random_poly(rng, n, ADDITIVE, max_exp=n, max_degree=7)
    g = random_poly(rng, n, ADDITIVE, max_exp=n, max_degree=7)
    nf = normal_form(f)
    if normal_form(QPoly(n, ADDITIVE, dict(nf.data))) != nf:
        failures.append("idempotent")
    if any(e > n - i for exps in nf.terms for i, e in enumerate(exps, start=1)):
        failures.append("staircase")
    if normal_form(f * g) != normal_form(nf * normal_form(g)):
        failures.append("multiplicative")
    if n <= 4 and not in_symmetric_ideal(f - nf):
        failures.append("ideal membership")
    if len(staircase_monomials(n)) != _factorial(n):
        failures.append("basis size")
    for k in range(1, n + 1):
        if not normal_form(elem_sym(k, 1, n, n, ADDITIVE)).is_zero():
            failures.append(f"e_{k}")
    if n >= 2 and sample == 0:
        for N in range(n, 8):
            if normal_form(e2_partial_sum(n, N) + weighted_e1_sum(n, N)) != QPoly.zero(N, I2):
                failures.append(f"e2 congruence {n},{N}")
    return {"case": _key("normalform", n, seed, sample), "ok": not failures, "failures": failures}


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def summarize(results: list) -> dict:
    results = sorted(results, key=lambda r: r["case"])
    failed = [r for r in results if not r["ok"]]
    return {"cases": len(results), "failed": len(failed), "ok": not failed, "failures": failed}
