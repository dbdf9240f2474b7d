"""Hilbert numerators and Krull dimension of monomial ideals.

A monomial ideal is given by exponent tuples of its generators.  The
numerator of ``HS(S/J) = N(λ)/(1-λ)^n`` is computed with the pivot recursion
``N(J) = N(J + x_i) + λ N(J : x_i)`` which terminates in products of
``(1 - λ^k)`` once every generator is a pure power.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence, Tuple

from .invariants import HilbertNumerator

Exps = Tuple[int, ...]


def minimalize(gens: Iterable[Exps]) -> Tuple[Exps, ...]:
    """Minimal generators of a monomial ideal, sorted."""
    gs = sorted(set(tuple(g) for g in gens), key=lambda g: (sum(g), g))
    keep = []
    for g in gs:
        if not any(all(a <= b for a, b in zip(h, g)) for h in keep):
            keep.append(g)
    return tuple(sorted(keep))


def _pure_power_index(g: Exps):
    nz = [i for i, e in enumerate(g) if e]
    return nz[0] if len(nz) == 1 else None


@lru_cache(maxsize=65536)
def _numer(gens: Tuple[Exps, ...]) -> Tuple[Tuple[int, int], ...]:
    if not gens:
        return ((0, 1),)
    if any(sum(g) == 0 for g in gens):
        return ()
    mixed = [g for g in gens if _pure_power_index(g) is None]
    if not mixed:
        acc = HilbertNumerator.one()
        for g in gens:
            acc = acc * HilbertNumerator({0: 1, sum(g): -1})
        return tuple(sorted(acc.coeffs.items()))
    n = len(gens[0])
    counts = [0] * n
    for g in mixed:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    piv = max(range(n), key=lambda i: (counts[i], -i))
    unit = tuple(1 if i == piv else 0 for i in range(n))
    plus = minimalize(gens + (unit,))
    colon = minimalize(tuple(max(e - 1, 0) if i == piv else e for i, e in enumerate(g)) for g in gens)
    out = HilbertNumerator(dict(_numer(plus))) + HilbertNumerator(dict(_numer(colon))).shift(1)
    return tuple(sorted(out.coeffs.items()))


def monomial_ideal_numerator(gens: Iterable[Exps], n: int) -> HilbertNumerator:
    """Numerator of ``HS(S/J)`` over ``(1-λ)^n`` for the monomial ideal ``J``."""
    gs = minimalize(gens)
    if gs and any(len(g) != n for g in gs):
        raise ValueError("exponent length does not match n")
    return HilbertNumerator(dict(_numer(gs)))


def standard_monomial_count(gens: Iterable[Exps], n: int, d: int) -> int:
    """Brute-force ``dim (S/J)_d`` by listing monomials (test oracle)."""
    gs = minimalize(gens)
    count = 0
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        if not any(all(a <= b for a, b in zip(g, e)) for g in gs):
            count += 1
    return count


def monomial_krull_dimension(gens: Iterable[Exps], n: int) -> int:
    """``dim S/J`` as the largest independent variable set; ``-1`` for ``J = S``."""
    gs = minimalize(gens)
    if any(sum(g) == 0 for g in gs):
        return -1
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gs]
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            u = set(U)
            if not any(s <= u for s in supports):
                return size
    return 0


def module_numerator(lead: Sequence[Tuple[Exps, int]], twists: Sequence[int], n: int) -> HilbertNumerator:
    """Numerator of ``HS(F/N)`` from the leading terms ``(exps, component)`` of a GB of ``N``."""
    per = {c: [] for c in range(len(twists))}
    for e, c in lead:
        per[c].append(e)
    acc = HilbertNumerator()
    for c, a in enumerate(twists):
        acc = acc + monomial_ideal_numerator(per[c], n).shift(a)
    return acc
