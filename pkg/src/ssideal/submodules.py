"""Submodules of graded free modules and the operations derived from Gröbner bases.

Kernels, intersections and lifts all use one elimination mechanism: a GB
in a two-block module order whose higher block is eliminated.
"""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .groebner import GBResult, TermEncoder, buchberger
from .hilbert import module_numerator, monomial_krull_dimension
from .invariants import HilbertNumerator
from .modules import (GradedFreeModule, HomogeneityError, ModuleElement, ModuleHom,
                      direct_sum, embed, free_module, hom_from_columns)
from .poly import ANY_DEGREE, GREVLEX, TOP, MonomialOrder, Polynomial, PolynomialRing

DEFAULT_MODULE_ORDER = MonomialOrder(GREVLEX, TOP)


def to_internal(v: ModuleElement, enc: TermEncoder, offset: int = 0) -> dict:
    out = {}
    for c, poly in enumerate(v.components):
        for m, coeff in poly.terms.items():
            out[enc.encode(m, c + offset)] = coeff
    return out


def from_internal(d: dict, F: GradedFreeModule, enc: TermEncoder, offset: int = 0) -> ModuleElement:
    comps: List[dict] = [dict() for _ in range(F.rank)]
    for key, coeff in d.items():
        m, c = enc.decode(key)
        comps[c - offset][m] = coeff
    return ModuleElement(F, tuple(Polynomial(F.ring, t) for t in comps))


class Submodule:
    """Finitely generated homogeneous submodule of ``ambient`` with a cached GB."""

    def __init__(self, ambient: GradedFreeModule, generators: Sequence[ModuleElement],
                 order: MonomialOrder = DEFAULT_MODULE_ORDER):
        self.ambient = ambient
        self.order = order
        gens = []
        for g in generators:
            if g.parent != ambient:
                raise ValueError("generator does not lie in the ambient module")
            if g.degree() is None:
                raise HomogeneityError(f"generator {g} is not homogeneous")
            gens.append(g)
        self.generators: Tuple[ModuleElement, ...] = tuple(gens)
        self.enc = TermEncoder(ambient.ring.n, ambient.twists, order)
        self._gb: Optional[GBResult] = None
        self._minimal: Optional[Tuple[ModuleElement, ...]] = None

    @property
    def ring(self) -> PolynomialRing:
        return self.ambient.ring

    @property
    def p(self) -> int:
        return self.ambient.ring.characteristic

    def __repr__(self):
        return f"Submodule(<{len(self.generators)} gens> in {self.ambient.describe()})"

    # -- Gröbner data
    def gb(self) -> GBResult:
        if self._gb is None:
            self._gb = buchberger([to_internal(g, self.enc) for g in self.generators], self.enc, self.p)
            self._minimal = tuple(self.generators[i] for i in self._gb.minimal_inputs)
        return self._gb

    def groebner_basis(self) -> List[ModuleElement]:
        return [from_internal(g, self.ambient, self.enc) for g in self.gb().basis]

    def normal_form(self, v: ModuleElement) -> ModuleElement:
        if v.parent != self.ambient:
            raise ValueError("ambient mismatch")
        return from_internal(self.gb().normal_form(to_internal(v, self.enc)), self.ambient, self.enc)

    def contains(self, v: ModuleElement) -> bool:
        if v.parent != self.ambient:
            raise ValueError("ambient mismatch")
        return not self.gb().normal_form(to_internal(v, self.enc))

    def is_zero(self) -> bool:
        return not self.gb().basis

    def minimal_generators(self) -> Tuple[ModuleElement, ...]:
        """A minimal homogeneous generating subset (greedy by degree, then index)."""
        if self._minimal is None:
            res = buchberger([to_internal(g, self.enc) for g in self.generators], self.enc, self.p)
            if self._gb is None:
                self._gb = res
            self._minimal = tuple(self.generators[i] for i in res.minimal_inputs)
        return self._minimal

    def leading_terms(self) -> List[Tuple[Tuple[int, ...], int]]:
        return self.gb().leading_terms()

    # -- invariants
    def quotient_numerator(self) -> HilbertNumerator:
        """Numerator of ``HS(ambient / self)`` over ``(1-λ)^n``."""
        return module_numerator(self.leading_terms(), self.ambient.twists, self.ring.n)

    def hilbert_numerator(self) -> HilbertNumerator:
        """Numerator of ``HS(self)`` over ``(1-λ)^n``."""
        free = HilbertNumerator({})
        for a in self.ambient.twists:
            free = free + HilbertNumerator.monomial(a)
        return free - self.quotient_numerator()

    def hilbert_rank(self) -> int:
        return self.hilbert_numerator().derivative_at_one(0)

    def piece_dimension(self, d: int) -> int:
        """``dim_K N_d`` from the GB."""
        q = self.quotient_numerator().series(self.ring.n, d, d)[d]
        return free_piece_dimension(self.ambient, d) - q


# -- constructors ------------------------------------------------------------

def ideal(ring: PolynomialRing, polys: Sequence[Polynomial]) -> Submodule:
    F = free_module(ring, [0])
    return Submodule(F, [F.element([f]) for f in polys])


def image(f: ModuleHom) -> Submodule:
    return Submodule(f.target, [c for c in f.columns if c])


def sum_submodules(*mods: Submodule) -> Submodule:
    amb = mods[0].ambient
    if any(m.ambient != amb for m in mods):
        raise ValueError("ambient mismatch")
    return Submodule(amb, [g for m in mods for g in m.generators])


def groebner_basis(N: Submodule, order: Optional[MonomialOrder] = None) -> Submodule:
    """``N`` with its reduced GB computed and cached (under ``order`` if given)."""
    if order is not None and order != N.order:
        N = Submodule(N.ambient, N.generators, order)
    N.gb()
    return N


def membership(v: ModuleElement, N: Submodule) -> Tuple[bool, ModuleElement]:
    nf = N.normal_form(v)
    return nf.is_zero(), nf


def submodule_equal(A: Submodule, B: Submodule) -> bool:
    if A.ambient != B.ambient:
        raise ValueError("ambient mismatch")
    return all(B.contains(g) for g in A.generators) and all(A.contains(g) for g in B.generators)


def contains_submodule(A: Submodule, B: Submodule) -> bool:
    """``B ⊆ A``."""
    return all(A.contains(g) for g in B.generators)


# -- elimination -------------------------------------------------------------

def _graph_inputs(f: ModuleHom, enc: TermEncoder) -> List[dict]:
    rt = f.target.rank
    out = []
    for j, col in enumerate(f.columns):
        d = to_internal(col, enc)
        d.update(to_internal(f.source.basis_element(j), enc, rt))
        out.append(d)
    return out


@lru_cache(maxsize=256)
def _graph(f: ModuleHom):
    twists = f.target.twists + f.source.twists
    blocks = [0] * f.target.rank + [1] * f.source.rank
    enc = TermEncoder(f.ring.n, twists, DEFAULT_MODULE_ORDER, blocks)
    return enc, buchberger(_graph_inputs(f, enc), enc, f.ring.characteristic)


def _lower_block(res: GBResult, enc: TermEncoder, F: GradedFreeModule, offset: int) -> Submodule:
    """GB elements living in the eliminated-free block, re-encoded as a seeded submodule of ``F``."""
    gens = [from_internal(g, F, enc, offset) for g in res.basis if -max(g)[-1] >= offset]
    N = Submodule(F, gens)
    basis = sorted((to_internal(v, N.enc) for v in gens), key=max)
    N._gb = GBResult(N.enc, N.p, basis, list(range(len(basis))), 0)
    return N


def kernel(f: ModuleHom) -> Submodule:
    """``ker f`` as a submodule of ``f.source`` (generators form a reduced GB)."""
    enc, res = _graph(f)
    return _lower_block(res, enc, f.source, f.target.rank)


def intersect(A: Submodule, B: Submodule) -> Submodule:
    if A.ambient != B.ambient:
        raise ValueError("ambient mismatch")
    F = A.ambient
    r = F.rank
    twists = F.twists + F.twists
    blocks = [0] * r + [1] * r
    enc = TermEncoder(F.ring.n, twists, DEFAULT_MODULE_ORDER, blocks)
    inputs = []
    for a in A.generators:
        d = to_internal(a, enc)
        d.update(to_internal(a, enc, r))
        inputs.append(d)
    for b in B.generators:
        inputs.append(to_internal(b, enc))
    res = buchberger(inputs, enc, F.ring.characteristic)
    return _lower_block(res, enc, F, r)


def lift(f: ModuleHom, v: ModuleElement) -> Optional[ModuleElement]:
    """Some ``u`` with ``f(u) = v``, or ``None`` if ``v`` is not in the image."""
    if v.parent != f.target:
        raise ValueError("element is not in the target")
    if v.is_zero():
        return f.source.zero()
    enc, res = _graph(f)
    r = res.normal_form(to_internal(v, enc))
    rt = f.target.rank
    if any(-k[-1] < rt for k in r):
        return None
    u = from_internal(r, f.source, enc, rt)
    return -u


def minimal_generators(N: Submodule) -> Submodule:
    return Submodule(N.ambient, N.minimal_generators(), N.order)


def minimal_presentation_hom(N: Submodule) -> ModuleHom:
    """Free module on minimal generators of ``N`` mapping onto ``N``."""
    gens = N.minimal_generators()
    src = free_module(N.ring, [g.degree() for g in gens])
    return hom_from_columns(src, N.ambient, list(gens))


# -- rank and dimension ------------------------------------------------------

def _specialize(f: Polynomial, point: Sequence[int]) -> int:
    total = 0
    for m, c in f.terms.items():
        v = int(c)
        for x, e in zip(point, m):
            if e:
                v *= x ** e
        total += v
    return total


def specialized_rank(N: Submodule, seed: int = 0, points: int = 2) -> int:
    """Max over deterministic integer points of the Bareiss rank of the generator matrix.

    Each value is a lower bound for the rank over the fraction field and is
    attained at generic points.
    """
    gens = [g for g in N.generators if g]
    if not gens:
        return 0
    scaled = []
    for g in gens:
        den = 1
        for c in g.components:
            for coeff in c.terms.values():
                q = getattr(coeff, "denominator", 1)
                den = den * int(q) // _gcd(den, int(q))
        scaled.append([c * den for c in g.components])
    rng = random.Random(seed)
    best = 0
    limit = min(len(gens), N.ambient.rank)
    for _ in range(points):
        pt = [rng.randint(2, 10 ** 6) for _ in range(N.ring.n)]
        rows = [[_specialize(c, pt) for c in row] for row in scaled]
        r = linalg.rank(rows, N.p) if N.p else linalg.bareiss_rank(rows)
        best = max(best, r)
        if best == limit:
            break
    return best


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def rank_of_submodule(N: Submodule) -> int:
    """Rank over the fraction field.

    Fraction-free elimination at specialized points gives a lower bound; the
    Hilbert-series rank ``Q_N(1)`` is exact.  The two must agree.
    """
    sampled = specialized_rank(N)
    exact = N.hilbert_rank()
    if sampled != exact:
        sampled = max(sampled, specialized_rank(N, seed=1, points=6))
    if sampled != exact:
        raise ArithmeticError(f"rank mismatch: elimination {sampled}, Hilbert series {exact}")
    return exact


def krull_dimension(I: Submodule) -> int:
    """``dim F/N`` from leading terms; ``-1`` when the quotient is zero."""
    n = I.ring.n
    per: Dict[int, list] = {c: [] for c in range(I.ambient.rank)}
    for e, c in I.leading_terms():
        per[c].append(e)
    return max((monomial_krull_dimension(g, n) for g in per.values()), default=-1)


def codim(I: Submodule) -> int:
    d = krull_dimension(I)
    return I.ring.n - d if d >= 0 else I.ring.n + 1


# -- graded pieces -----------------------------------------------------------

def monomials_of_degree(n: int, d: int) -> List[Tuple[int, ...]]:
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def free_piece_basis(F: GradedFreeModule, d: int) -> List[Tuple[Tuple[int, ...], int]]:
    return [(m, c) for c, a in enumerate(F.twists) for m in monomials_of_degree(F.ring.n, d - a)]


def free_piece_dimension(F: GradedFreeModule, d: int) -> int:
    from math import comb
    n = F.ring.n
    return sum(comb(d - a + n - 1, n - 1) for a in F.twists if d >= a)


def _coords(v: ModuleElement, index: Dict[Tuple[Tuple[int, ...], int], int], size: int) -> list:
    row = [0] * size
    for c, poly in enumerate(v.components):
        for m, coeff in poly.terms.items():
            row[index[(m, c)]] = coeff
    return row


def hom_piece_matrix(f: ModuleHom, d: int) -> List[list]:
    """Rows = images of the degree-``d`` monomial basis of ``f.source``."""
    tgt = free_piece_basis(f.target, d)
    index = {b: i for i, b in enumerate(tgt)}
    rows = []
    for m, c in free_piece_basis(f.source, d):
        img = f.columns[c] * f.ring.monomial(m)
        rows.append(_coords(img, index, len(tgt)))
    return rows


def kernel_piece_dimension(f: ModuleHom, d: int) -> int:
    rows = hom_piece_matrix(f, d)
    return len(rows) - linalg.rank(rows, f.ring.characteristic)


def image_piece_dimension(f: ModuleHom, d: int) -> int:
    return linalg.rank(hom_piece_matrix(f, d), f.ring.characteristic)


def span_piece_dimension(N: Submodule, d: int) -> int:
    """``dim N_d`` by spanning generators times monomials (GB-free oracle)."""
    basis = free_piece_basis(N.ambient, d)
    index = {b: i for i, b in enumerate(basis)}
    rows = []
    for g in N.generators:
        deg = g.degree()
        if deg is ANY_DEGREE or deg is None or deg > d:
            continue
        for m in monomials_of_degree(N.ring.n, d - deg):
            rows.append(_coords(g * N.ring.monomial(m), index, len(basis)))
    return linalg.rank(rows, N.p) if rows else 0


def embed_all(vs: Sequence[ModuleElement], target: GradedFreeModule, offset: int) -> List[ModuleElement]:
    return [embed(v, target, offset) for v in vs]


__all__ = [
    "Submodule", "ideal", "image", "sum_submodules", "groebner_basis", "membership", "kernel",
    "intersect", "submodule_equal", "contains_submodule", "lift", "minimal_generators",
    "minimal_presentation_hom", "rank_of_submodule", "specialized_rank", "krull_dimension", "codim",
    "hom_piece_matrix", "kernel_piece_dimension", "image_piece_dimension", "span_piece_dimension",
    "free_piece_dimension", "direct_sum",
]
