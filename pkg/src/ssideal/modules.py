"""Graded free modules ``F = (+)_i S(-a_i)``, their elements, and degree-0 homs.

A hom is stored column-major as the images of the source basis; entry
``(i, j)`` is component ``i`` of the image of basis element ``j``.  Maps of
nonzero degree are represented as degree-0 maps by twisting the target.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .poly import ANY_DEGREE, Polynomial, PolynomialRing


class HomogeneityError(ValueError):
    pass


@dataclass(frozen=True)
class GradedFreeModule:
    """``(+)_i S(-a_i)``; basis element ``g_i`` has degree ``twists[i]``."""

    ring: PolynomialRing
    twists: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(a) for a in self.twists))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def zero(self) -> "ModuleElement":
        z = self.ring.zero()
        return ModuleElement(self, (z,) * self.rank)

    def basis(self) -> List["ModuleElement"]:
        return [self.basis_element(i) for i in range(self.rank)]

    def basis_element(self, i: int, coeff: Optional[Polynomial] = None) -> "ModuleElement":
        z = self.ring.zero()
        comps = [z] * self.rank
        comps[i] = self.ring.one() if coeff is None else coeff
        return ModuleElement(self, tuple(comps))

    def element(self, components: Sequence) -> "ModuleElement":
        if len(components) != self.rank:
            raise ValueError(f"expected {self.rank} components, got {len(components)}")
        comps = tuple(c if isinstance(c, Polynomial) else self.ring.constant(c) for c in components)
        return ModuleElement(self, comps)

    def __add__(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return direct_sum(self, other)

    def __repr__(self):
        return f"GradedFreeModule(n={self.ring.n}, twists={list(self.twists)})"

    def describe(self) -> str:
        """E.g. ``S(-2)^6 + S(-5)``."""
        if not self.twists:
            return "0"
        parts = []
        prev, count = None, 0
        for a in list(self.twists) + [None]:
            if a == prev:
                count += 1
                continue
            if prev is not None:
                base = "S" if prev == 0 else f"S({-prev})"
                parts.append(base + (f"^{count}" if count > 1 else ""))
            prev, count = a, 1
        return " + ".join(parts)


def free_module(ring: PolynomialRing, twists: Iterable[int]) -> GradedFreeModule:
    return GradedFreeModule(ring, tuple(twists))


def direct_sum(*mods: GradedFreeModule) -> GradedFreeModule:
    if not mods:
        raise ValueError("empty direct sum")
    ring = mods[0].ring
    if any(m.ring != ring for m in mods):
        raise ValueError("modules over different rings")
    return GradedFreeModule(ring, tuple(a for m in mods for a in m.twists))


def twist_module(M: GradedFreeModule, d: int) -> GradedFreeModule:
    """``M(d)``: basis degrees drop by ``d`` (since ``M(d)_i = M_{d+i}``)."""
    return GradedFreeModule(M.ring, tuple(a - d for a in M.twists))


class ModuleElement:
    __slots__ = ("parent", "components", "_hash")

    def __init__(self, parent: GradedFreeModule, components: Tuple[Polynomial, ...]):
        self.parent = parent
        self.components = tuple(components)
        self._hash = None

    @property
    def ring(self) -> PolynomialRing:
        return self.parent.ring

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def __len__(self):
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __bool__(self):
        return not self.is_zero()

    def support(self) -> List[int]:
        return [i for i, c in enumerate(self.components) if c]

    def degree(self):
        """Common degree ``deg(c_i) + a_i``; ``None`` if inhomogeneous, ``ANY_DEGREE`` if zero."""
        deg = ANY_DEGREE
        for c, a in zip(self.components, self.parent.twists):
            d = c.homogeneous_degree()
            if d is ANY_DEGREE:
                continue
            if d is None:
                return None
            if deg is ANY_DEGREE:
                deg = d + a
            elif deg != d + a:
                return None
        return deg

    def is_homogeneous(self) -> bool:
        return self.degree() is not None

    def _same(self, other: "ModuleElement"):
        if not isinstance(other, ModuleElement) or other.parent != self.parent:
            raise ValueError("elements of different modules")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._same(other)
        return ModuleElement(self.parent, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        self._same(other)
        return ModuleElement(self.parent, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return ModuleElement(self.parent, tuple(-a for a in self.components))

    def __mul__(self, r) -> "ModuleElement":
        if isinstance(r, Polynomial):
            return ModuleElement(self.parent, tuple(r * a for a in self.components))
        return ModuleElement(self.parent, tuple(a.scale(r) for a in self.components))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.parent == other.parent and self.components == other.components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.parent, self.components))
        return self._hash

    def __repr__(self):
        return f"ModuleElement({format_element(self)})"

    def __str__(self):
        return format_element(self)


def format_element(v: ModuleElement, names: Optional[Sequence[str]] = None) -> str:
    parts = []
    for i, c in enumerate(v.components):
        if not c:
            continue
        name = names[i] if names else f"g{i + 1}"
        s = str(c)
        if len(c) > 1:
            s = f"({s})"
        elif s == "1":
            s = ""
        elif s == "-1":
            s = "-"
        parts.append(f"{s}*{name}" if s not in ("", "-") else f"{s}{name}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


class ModuleHom:
    """Degree-0 homomorphism ``source -> target`` given by column images."""

    __slots__ = ("source", "target", "columns")

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule,
                 columns: Sequence[ModuleElement], check: bool = True):
        self.source = source
        self.target = target
        self.columns = tuple(columns)
        if check:
            _check_hom(self)

    @property
    def ring(self) -> PolynomialRing:
        return self.source.ring

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j].components[i]

    def matrix(self) -> List[List[Polynomial]]:
        return [[col.components[i] for col in self.columns] for i in range(self.target.rank)]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.target.rank, self.source.rank)

    def __call__(self, v: ModuleElement) -> ModuleElement:
        if v.parent != self.source:
            raise ValueError("element is not in the source module")
        out = self.target.zero()
        for c, col in zip(v.components, self.columns):
            if c:
                out = out + col * c
        return out

    def is_zero(self) -> bool:
        return all(col.is_zero() for col in self.columns)

    def __eq__(self, other):
        if not isinstance(other, ModuleHom):
            return NotImplemented
        return (self.source, self.target, self.columns) == (other.source, other.target, other.columns)

    def __hash__(self):
        return hash((self.source, self.target, self.columns))

    def __repr__(self):
        return f"ModuleHom({self.source.describe()} -> {self.target.describe()})"


def _check_hom(f: ModuleHom):
    if len(f.columns) != f.source.rank:
        raise ValueError(f"rank mismatch: {len(f.columns)} images for a source of rank {f.source.rank}")
    for j, col in enumerate(f.columns):
        if col.parent != f.target:
            raise ValueError(f"image {j} does not lie in the target module")
        for i, c in enumerate(col.components):
            d = c.homogeneous_degree()
            if d is ANY_DEGREE:
                continue
            expected = f.source.twists[j] - f.target.twists[i]
            if d != expected:
                actual = "inhomogeneous" if d is None else d
                raise HomogeneityError(
                    f"entry ({i},{j}) = {c} has degree {actual}, expected {expected}")


def hom_from_columns(source: GradedFreeModule, target: GradedFreeModule,
                     images: Sequence[ModuleElement]) -> ModuleHom:
    """Build the hom sending the i-th basis element of ``source`` to ``images[i]``."""
    return ModuleHom(source, target, images)


def hom_from_matrix(source: GradedFreeModule, target: GradedFreeModule,
                    matrix: Sequence[Sequence[Polynomial]]) -> ModuleHom:
    if len(matrix) != target.rank or any(len(r) != source.rank for r in matrix):
        raise ValueError("matrix shape does not match modules")
    cols = [target.element([matrix[i][j] for i in range(target.rank)]) for j in range(source.rank)]
    return ModuleHom(source, target, cols)


def identity_hom(M: GradedFreeModule) -> ModuleHom:
    return ModuleHom(M, M, M.basis(), check=False)


def zero_hom(source: GradedFreeModule, target: GradedFreeModule) -> ModuleHom:
    return ModuleHom(source, target, [target.zero()] * source.rank, check=False)


def compose(g: ModuleHom, f: ModuleHom) -> ModuleHom:
    """``g . f``."""
    if f.target != g.source:
        raise ValueError(f"shape mismatch: {f!r} then {g!r}")
    return ModuleHom(f.source, g.target, [g(col) for col in f.columns], check=False)


def twist_hom(f: ModuleHom, d: int) -> ModuleHom:
    src, tgt = twist_module(f.source, d), twist_module(f.target, d)
    cols = [ModuleElement(tgt, col.components) for col in f.columns]
    return ModuleHom(src, tgt, cols, check=False)


def dual_module(M: GradedFreeModule, n: Optional[int] = None) -> GradedFreeModule:
    """``Hom(M, S(-n))``: ``S(-a)^* = S(-(n-a))``."""
    n = M.ring.n if n is None else n
    return GradedFreeModule(M.ring, tuple(n - a for a in M.twists))


def dual_hom(f: ModuleHom, n: Optional[int] = None) -> ModuleHom:
    """``f^* : target^* -> source^*`` with the transposed matrix."""
    src, tgt = dual_module(f.target, n), dual_module(f.source, n)
    cols = []
    for i in range(f.target.rank):
        cols.append(ModuleElement(tgt, tuple(col.components[i] for col in f.columns)))
    return ModuleHom(src, tgt, cols, check=False)


def direct_sum_homs(*homs: ModuleHom) -> ModuleHom:
    """Block-diagonal sum."""
    src = direct_sum(*(h.source for h in homs))
    tgt = direct_sum(*(h.target for h in homs))
    z = src.ring.zero()
    cols = []
    offset = 0
    for h in homs:
        for col in h.columns:
            comps = [z] * tgt.rank
            comps[offset:offset + h.target.rank] = col.components
            cols.append(ModuleElement(tgt, tuple(comps)))
        offset += h.target.rank
    return ModuleHom(src, tgt, cols, check=False)


def hstack(*homs: ModuleHom) -> ModuleHom:
    """``[f | g]`` on the direct sum of the sources, common target."""
    tgt = homs[0].target
    if any(h.target != tgt for h in homs):
        raise ValueError("hstack needs a common target")
    src = direct_sum(*(h.source for h in homs))
    return ModuleHom(src, tgt, [c for h in homs for c in h.columns], check=False)


def vstack(*homs: ModuleHom) -> ModuleHom:
    """``(f; g)`` into the direct sum of the targets, common source."""
    src = homs[0].source
    if any(h.source != src for h in homs):
        raise ValueError("vstack needs a common source")
    tgt = direct_sum(*(h.target for h in homs))
    cols = []
    for j in range(src.rank):
        comps = []
        for h in homs:
            comps.extend(h.columns[j].components)
        cols.append(ModuleElement(tgt, tuple(comps)))
    return ModuleHom(src, tgt, cols, check=False)


def scale_hom(f: ModuleHom, c) -> ModuleHom:
    return ModuleHom(f.source, f.target, [col * c for col in f.columns], check=False)


def add_homs(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    if (f.source, f.target) != (g.source, g.target):
        raise ValueError("homs with different source/target")
    return ModuleHom(f.source, f.target, [a + b for a, b in zip(f.columns, g.columns)], check=False)


def embed(v: ModuleElement, target: GradedFreeModule, offset: int) -> ModuleElement:
    """Place ``v`` into ``target`` starting at component ``offset``."""
    z = target.ring.zero()
    comps = [z] * target.rank
    comps[offset:offset + v.parent.rank] = v.components
    return ModuleElement(target, tuple(comps))


def restrict(v: ModuleElement, module: GradedFreeModule, offset: int) -> ModuleElement:
    """Components ``offset .. offset+rank`` of ``v`` as an element of ``module``."""
    return ModuleElement(module, v.components[offset:offset + module.rank])
