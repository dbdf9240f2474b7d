"""Graded free resolutions, minimalization and graded Betti tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .invariants import HilbertNumerator
from .modules import GradedFreeModule, ModuleElement, ModuleHom, compose, free_module
from .poly import Polynomial
from .submodules import (Submodule, image, image_piece_dimension,
                         kernel, kernel_piece_dimension)


@dataclass
class GradedBettiTable:
    """``β_{i,j}``: number of summands ``S(-j)`` in ``F_i``."""

    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def from_modules(cls, mods: Sequence[GradedFreeModule]) -> "GradedBettiTable":
        out: Dict[Tuple[int, int], int] = {}
        for i, F in enumerate(mods):
            for a in F.twists:
                out[(i, a)] = out.get((i, a), 0) + 1
        return cls(out)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.entries.items() if k == i)

    def totals(self) -> List[int]:
        if not self.entries:
            return []
        return [self.total(i) for i in range(max(k for k, _ in self.entries) + 1)]

    @property
    def length(self) -> int:
        return max((k for k, _ in self.entries), default=0)

    def as_dict(self) -> dict:
        return {f"{i},{j}": v for (i, j), v in sorted(self.entries.items())}

    def __str__(self):
        """Macaulay2-style table: row ``j - i``, column ``i``."""
        if not self.entries:
            return "0"
        L = self.length
        rows = sorted({j - i for i, j in self.entries})
        width = max(len(str(v)) for v in self.entries.values()) + 1
        lines = ["     " + "".join(f"{i:>{width}}" for i in range(L + 1))]
        for r in rows:
            cells = []
            for i in range(L + 1):
                v = self.entries.get((i, i + r), 0)
                cells.append(f"{v if v else '.':>{width}}")
            lines.append(f"{r:>4}:" + "".join(cells))
        return "\n".join(lines)


def hilbert_numerator(B: GradedBettiTable, n: Optional[int] = None) -> HilbertNumerator:
    """``Q(λ) = Σ (-1)^i β_{i,j} λ^j``."""
    out: Dict[int, int] = {}
    for (i, j), v in B.entries.items():
        out[j] = out.get(j, 0) + (-1) ** i * v
    return HilbertNumerator(out)


@dataclass
class FreeResolution:
    """``F_L -> ... -> F_1 -> F_0``; ``maps[i]`` is ``d_{i+1} : F_{i+1} -> F_i``."""

    maps: List[ModuleHom]
    base: GradedFreeModule
    augmentation: str = ""

    @property
    def modules(self) -> List[GradedFreeModule]:
        return [self.base] + [d.source for d in self.maps]

    @property
    def length(self) -> int:
        return sum(1 for d in self.maps if d.source.rank)

    def betti_table(self) -> GradedBettiTable:
        return GradedBettiTable.from_modules([F for F in self.modules if F.rank])

    def hilbert_numerator(self) -> HilbertNumerator:
        return hilbert_numerator(self.betti_table())

    def is_minimal(self) -> bool:
        for d in self.maps:
            for col in d.columns:
                for c in col.components:
                    if c and c.constant_coefficient() != 0:
                        return False
        return True

    def compositions_vanish(self) -> bool:
        return all(compose(self.maps[i], self.maps[i + 1]).is_zero() for i in range(len(self.maps) - 1))

    def certify(self) -> "ExactnessCertificate":
        """Composition zero and ``HS(ker d_i) = HS(im d_{i+1})`` at every interior spot."""
        cert = ExactnessCertificate(compositions_zero=self.compositions_vanish())
        for i, d in enumerate(self.maps):
            if not d.source.rank:
                continue
            K = kernel(d)
            nxt = self.maps[i + 1] if i + 1 < len(self.maps) else None
            if nxt is None or not nxt.source.rank:
                ok = K.is_zero()
            else:
                ok = K.hilbert_numerator() == image(nxt).hilbert_numerator()
            cert.spots.append((i + 1, ok))
        return cert

    def certify_pieces(self, max_degree: int) -> bool:
        """Degree-wise ``dim ker = dim im`` by linear algebra up to ``max_degree``."""
        for i, d in enumerate(self.maps):
            nxt = self.maps[i + 1] if i + 1 < len(self.maps) else None
            for deg in range(max_degree + 1):
                k = kernel_piece_dimension(d, deg) if d.source.rank else 0
                im = image_piece_dimension(nxt, deg) if nxt is not None and nxt.source.rank else 0
                if k != im:
                    return False
        return True


@dataclass
class ExactnessCertificate:
    compositions_zero: bool
    spots: List[Tuple[int, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.compositions_zero and all(ok for _, ok in self.spots)


def _hom_from_rows(source: GradedFreeModule, target: GradedFreeModule, A: List[List[Polynomial]]) -> ModuleHom:
    cols = [ModuleElement(target, tuple(A[i][j] for i in range(target.rank))) for j in range(source.rank)]
    return ModuleHom(source, target, cols, check=False)


def _find_unit(d: ModuleHom) -> Optional[Tuple[int, int]]:
    for j, col in enumerate(d.columns):
        for i, c in enumerate(col.components):
            if c and c.is_constant():
                return i, j
    return None


def prune(maps: List[ModuleHom], base: GradedFreeModule) -> Tuple[List[ModuleHom], GradedFreeModule]:
    """Split off unit entries until every entry lies in the maximal ideal.

    For a unit ``u = A[r][c]`` in ``d_i``: ``A <- A - A[:,c] A[r,:] / u`` then
    drop row ``r`` and column ``c``; row ``c`` of ``d_{i+1}`` and column ``r``
    of ``d_{i-1}`` are dropped as well (a change of basis that is valid because
    consecutive maps compose to zero).
    """
    maps = list(maps)
    mods = [base] + [d.source for d in maps]
    mats = [d.matrix() for d in maps]
    ring = base.ring
    changed = True
    while changed:
        changed = False
        for k in range(len(mats)):
            dk = _hom_from_rows(mods[k + 1], mods[k], mats[k])
            pos = _find_unit(dk)
            if pos is None:
                continue
            r, c = pos
            A = mats[k]
            u = A[r][c].constant_coefficient()
            inv = ring.inverse(u)
            colc = [A[i][c] for i in range(len(A))]
            rowr = A[r]
            newA = []
            for i in range(len(A)):
                if i == r:
                    continue
                row = []
                for j in range(len(rowr)):
                    if j == c:
                        continue
                    v = A[i][j]
                    if colc[i] and rowr[j]:
                        v = v - (colc[i] * rowr[j]).scale(inv)
                    row.append(v)
                newA.append(row)
            mats[k] = newA
            if k + 1 < len(mats):
                mats[k + 1] = [row for i, row in enumerate(mats[k + 1]) if i != c]
            if k > 0:
                mats[k - 1] = [[v for j, v in enumerate(row) if j != r] for row in mats[k - 1]]
            mods[k + 1] = free_module(ring, [a for j, a in enumerate(mods[k + 1].twists) if j != c])
            mods[k] = free_module(ring, [a for i, a in enumerate(mods[k].twists) if i != r])
            changed = True
            break
    out = [_hom_from_rows(mods[k + 1], mods[k], mats[k]) for k in range(len(mats))]
    return out, mods[0]


def minimal_free_resolution(presentation: ModuleHom, max_length: Optional[int] = None) -> FreeResolution:
    """Minimal free resolution of ``coker(presentation)``.

    Iterates kernel + minimal generators, then prunes unit entries.
    """
    n = presentation.ring.n
    max_length = n + 1 if max_length is None else max_length
    first = _minimal_columns(presentation)
    maps = [first]
    while len(maps) < max_length:
        K = kernel(maps[-1])
        if K.is_zero():
            break
        gens = K.minimal_generators()
        src = free_module(presentation.ring, [g.degree() for g in gens])
        maps.append(ModuleHom(src, maps[-1].source, list(gens), check=False))
    maps, base = prune(maps, presentation.target)
    while maps and not maps[-1].source.rank:
        maps.pop()
    return FreeResolution(maps, base, augmentation=f"coker of a map into {presentation.target.describe()}")


def _minimal_columns(f: ModuleHom) -> ModuleHom:
    N = Submodule(f.target, [c for c in f.columns if c])
    gens = N.minimal_generators()
    src = free_module(f.ring, [g.degree() for g in gens])
    return ModuleHom(src, f.target, list(gens), check=False)


def resolve_submodule(N: Submodule, max_length: Optional[int] = None) -> FreeResolution:
    """Minimal resolution of the submodule ``N`` itself: ``F_0`` maps onto ``N``."""
    gens = N.minimal_generators()
    F0 = free_module(N.ring, [g.degree() for g in gens])
    onto = ModuleHom(F0, N.ambient, list(gens), check=False)
    K = kernel(onto)
    if K.is_zero():
        return FreeResolution([], F0, augmentation="free")
    pres = ModuleHom(free_module(N.ring, [g.degree() for g in K.minimal_generators()]), F0,
                     list(K.minimal_generators()), check=False)
    return minimal_free_resolution(pres, max_length)


def quotient_presentation(I: Submodule) -> ModuleHom:
    """``F_1 -> F`` with cokernel ``F / I``."""
    gens = [g for g in I.generators if g]
    src = free_module(I.ring, [g.degree() for g in gens])
    return ModuleHom(src, I.ambient, gens, check=False)

