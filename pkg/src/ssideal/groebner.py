"""Buchberger's algorithm for submodules of graded free modules.

Internal representation: a module element is a ``dict`` from *term keys* to
nonzero coefficients.  A term key is the monomial order's sort key of the
term ``x^e * g_c`` flattened into an int tuple, so ``max(d)`` is the leading
term and multiplying by a monomial is elementwise addition of a fixed vector.

Key layout: ``(block, [degree], s*e_perm..., -component)`` where the degree
slot (grevlex only) is ``|e| + twist[c]`` and ``block`` is ``-block_id[c]``.
Term-over-position puts every component in block 0, position-over-term gives
each component its own block, and elimination orders (kernels, intersections)
use two blocks.
"""
from __future__ import annotations

import heapq
from operator import add, sub
from typing import Dict, List, Optional, Sequence, Tuple

from .config import EngineConfig
from .poly import GREVLEX, POT, MonomialOrder



class DegreeCapExceeded(RuntimeError):
    """Raised when an S-pair degree exceeds the configured cap."""


def degree_cap() -> int:
    return EngineConfig.from_env().degree_cap


class TermEncoder:
    """Encodes ``(exponents, component)`` as order keys for one ambient module."""

    def __init__(self, n: int, twists: Sequence[int], order: MonomialOrder,
                 blocks: Optional[Sequence[int]] = None):
        self.n = n
        self.twists = tuple(twists)
        self.order = order
        rank = len(self.twists)
        if order.module_extension == POT:
            blocks = list(range(rank))
        elif blocks is None:
            blocks = [0] * rank
        self.blocks = tuple(blocks)
        self.grevlex = order.kind == GREVLEX
        self.off = 2 if self.grevlex else 1

    def encode(self, exps: Sequence[int], comp: int) -> tuple:
        if self.grevlex:
            return (-self.blocks[comp], sum(exps) + self.twists[comp],
                    *(-e for e in reversed(exps)), -comp)
        return (-self.blocks[comp], *exps, -comp)

    def decode(self, key: tuple) -> Tuple[Tuple[int, ...], int]:
        comp = -key[-1]
        body = key[self.off:-1]
        if self.grevlex:
            return tuple(-e for e in reversed(body)), comp
        return tuple(body), comp

    def mono_vector(self, u: Sequence[int]) -> tuple:
        if self.grevlex:
            return (0, sum(u), *(-e for e in reversed(u)), 0)
        return (0, *u, 0)

    def degree(self, key: tuple) -> int:
        if self.grevlex:
            return key[1]
        exps, comp = self.decode(key)
        return sum(exps) + self.twists[comp]


class GBElement:
    __slots__ = ("poly", "lt", "exps", "comp", "degree")

    def __init__(self, poly: dict, lt: tuple, exps: tuple, comp: int, degree: int):
        self.poly = poly
        self.lt = lt
        self.exps = exps
        self.comp = comp
        self.degree = degree


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class Reducer:
    """A growing list of monic basis elements indexed by leading component."""

    def __init__(self, enc: TermEncoder, p: int):
        self.enc = enc
        self.p = p
        self.elems: List[GBElement] = []
        self.by_comp: Dict[int, List[GBElement]] = {}

    def add(self, poly: dict) -> GBElement:
        lt = max(poly)
        exps, comp = self.enc.decode(lt)
        e = GBElement(poly, lt, exps, comp, self.enc.degree(lt))
        self.elems.append(e)
        self.by_comp.setdefault(comp, []).append(e)
        return e

    def find(self, key: tuple) -> Optional[GBElement]:
        exps, comp = self.enc.decode(key)
        for g in self.by_comp.get(comp, ()):
            if _divides(g.exps, exps):
                return g
        return None

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of ``f`` (consumed).  ``full=False`` stops at a non-reducible leading term."""
        p = self.p
        rem = {}
        while f:
            lt = max(f)
            c = f[lt]
            g = self.find(lt)
            if g is None:
                if not full:
                    f.update(rem)
                    return f
                rem[lt] = c
                del f[lt]
                continue
            u = tuple(map(sub, lt, g.lt))
            for k, v in g.poly.items():
                nk = tuple(map(add, k, u))
                nv = f.get(nk, 0) - c * v
                if p:
                    nv %= p
                if nv:
                    f[nk] = nv
                else:
                    f.pop(nk, None)
        return rem


def make_monic(f: dict, p: int) -> dict:
    lt = max(f)
    c = f[lt]
    if c == 1:
        return f
    if p:
        inv = pow(int(c), -1, p)
        return {k: v * inv % p for k, v in f.items()}
    inv = 1 / c
    return {k: v * inv for k, v in f.items()}


def _lcm_key(enc: TermEncoder, a: GBElement, b: GBElement) -> tuple:
    exps = tuple(x if x > y else y for x, y in zip(a.exps, b.exps))
    return enc.encode(exps, a.comp)


def _spoly(a: GBElement, b: GBElement, lcm: tuple, p: int) -> dict:
    ua = tuple(map(sub, lcm, a.lt))
    ub = tuple(map(sub, lcm, b.lt))
    out = {}
    for k, v in a.poly.items():
        out[tuple(map(add, k, ua))] = v
    for k, v in b.poly.items():
        nk = tuple(map(add, k, ub))
        nv = out.get(nk, 0) - v
        if p:
            nv %= p
        if nv:
            out[nk] = nv
        else:
            out.pop(nk, None)
    return out


class GBResult:
    """Reduced Gröbner basis plus bookkeeping from one Buchberger run."""

    def __init__(self, enc: TermEncoder, p: int, basis: List[dict], minimal_inputs: List[int],
                 pairs_reduced: int):
        self.enc = enc
        self.p = p
        self.basis = basis
        self.minimal_inputs = minimal_inputs
        self.pairs_reduced = pairs_reduced
        self._reducer = None

    @property
    def reducer(self) -> Reducer:
        if self._reducer is None:
            r = Reducer(self.enc, self.p)
            for g in self.basis:
                r.add(g)
            self._reducer = r
        return self._reducer

    def normal_form(self, f: dict) -> dict:
        return self.reducer.reduce(dict(f))

    def leading_terms(self) -> List[Tuple[Tuple[int, ...], int]]:
        return [self.enc.decode(max(g)) for g in self.basis]


def buchberger(inputs: Sequence[dict], enc: TermEncoder, p: int,
               cap: Optional[int] = None, reduced: bool = True) -> GBResult:
    """Homogeneous Buchberger with Gebauer-Möller pair pruning.

    Work proceeds degree by degree; within a degree the S-pairs are reduced
    first (sorted by lcm term, then indices) and then the inputs of that
    degree in index order.  An input that does not reduce to zero at that
    point is a minimal generator; their indices are reported.
    """
    cap = degree_cap() if cap is None else cap
    rank1 = len(enc.twists) == 1
    pending = []
    for idx, f in enumerate(inputs):
        if f:
            pending.append((enc.degree(max(f)), idx, f))
    pending.sort(key=lambda t: (t[0], t[1]))
    red = Reducer(enc, p)
    G = red.elems
    pairs: List[tuple] = []  # heap of (degree, lcm key, i, j)
    minimal: List[int] = []
    n_reduced = 0

    def update(h: GBElement):
        nonlocal pairs
        k = len(G) - 1
        # criterion B on existing pairs
        kept = []
        for pr in pairs:
            _, lcm, i, j = pr
            gi, gj = G[i], G[j]
            if gi.comp == h.comp:
                le, _ = enc.decode(lcm)
                if _divides(h.exps, le):
                    lih = _lcm_key(enc, gi, h)
                    ljh = _lcm_key(enc, gj, h)
                    if lih != lcm and ljh != lcm:
                        continue
            kept.append(pr)
        if len(kept) != len(pairs):
            heapq.heapify(kept)
            pairs = kept
        # new pairs with criteria M and F
        cands = []
        for i, g in enumerate(G[:-1]):
            if g.comp != h.comp:
                continue
            lcm = _lcm_key(enc, g, h)
            le, _ = enc.decode(lcm)
            coprime = rank1 and all(a == 0 or b == 0 for a, b in zip(g.exps, h.exps))
            cands.append((le, lcm, i, coprime))
        survivors = []
        for le, lcm, i, coprime in cands:
            dominated = False
            for le2, lcm2, i2, _ in cands:
                if lcm2 != lcm and _divides(le2, le):
                    dominated = True
                    break
            if not dominated:
                survivors.append((le, lcm, i, coprime))
        by_lcm: Dict[tuple, list] = {}
        for le, lcm, i, coprime in survivors:
            by_lcm.setdefault(lcm, []).append((i, coprime))
        for lcm, lst in by_lcm.items():
            if any(c for _, c in lst):
                continue
            i = min(i for i, _ in lst)
            heapq.heappush(pairs, (enc.degree(lcm), lcm, i, k))

    pi = 0
    while pairs or pi < len(pending):
        next_pair = pairs[0][0] if pairs else None
        next_in = pending[pi][0] if pi < len(pending) else None
        deg = min(d for d in (next_pair, next_in) if d is not None)
        if deg > cap:
            raise DegreeCapExceeded(
                f"Gröbner computation reached degree {deg} > cap {cap} "
                f"(basis size {len(G)}, {len(pairs)} pairs pending); set SSIDEAL_DEGREE_CAP to raise it")
        while pairs and pairs[0][0] == deg:
            _, lcm, i, j = heapq.heappop(pairs)
            s = _spoly(G[i], G[j], lcm, p)
            n_reduced += 1
            r = red.reduce(s)
            if r:
                h = red.add(make_monic(r, p))
                update(h)
        while pi < len(pending) and pending[pi][0] == deg:
            _, idx, f = pending[pi]
            pi += 1
            r = red.reduce(dict(f))
            if r:
                minimal.append(idx)
                h = red.add(make_monic(r, p))
                update(h)
    basis = [g.poly for g in G]
    if reduced:
        basis = interreduce(basis, enc, p)
    return GBResult(enc, p, basis, minimal, n_reduced)


def interreduce(basis: List[dict], enc: TermEncoder, p: int) -> List[dict]:
    """Minimal + tail-reduced basis, sorted by leading term."""
    items = sorted(basis, key=max)
    keep = []
    for f in items:
        lt = max(f)
        e, c = enc.decode(lt)
        if any(enc.decode(max(g))[1] == c and _divides(enc.decode(max(g))[0], e) for g in keep):
            continue
        keep.append(f)
    out = []
    for i, f in enumerate(keep):
        r = Reducer(enc, p)
        for j, g in enumerate(keep):
            if j != i:
                r.add(g)
        lt = max(f)
        tail = dict(f)
        c = tail.pop(lt)
        nf = r.reduce(tail)
        nf[lt] = c
        out.append(make_monic(nf, p))
    out.sort(key=max)
    return out


def spair_check(basis: Sequence[dict], enc: TermEncoder, p: int) -> bool:
    """Independent Buchberger criterion: every S-pair reduces to zero."""
    red = Reducer(enc, p)
    elems = [red.add(make_monic(dict(g), p)) for g in basis if g]
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            a, b = elems[i], elems[j]
            if a.comp != b.comp:
                continue
            lcm = _lcm_key(enc, a, b)
            if red.reduce(_spoly(a, b, lcm, p)):
                return False
    return True
