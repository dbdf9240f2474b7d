"""The Koszul complex of ``x_1, ..., x_n`` and the dual-form families 𝒜 and ℬ.

``K_k`` has basis ``e_J`` for ``J ⊆ [n]``, ``|J| = k``, in lexicographic order
of ``J``, every basis element of degree ``k``.  The differential is

    ∂_k(e_{i_1..i_k}) = Σ_j (-1)^{j+1} x_{i_j} e_{i_1..î_j..i_k}

and ``E_t = Im ∂_t ⊆ K_{t-1}``.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .modules import (GradedFreeModule, HomogeneityError, ModuleElement, ModuleHom, direct_sum,
                      embed, free_module, twist_module)
from .poly import ANY_DEGREE, ParseError, Polynomial, PolynomialRing, parse_terms
from .submodules import Submodule, rank_of_submodule

Index = Tuple[int, ...]


def sigma(J: Iterable[int], K: Iterable[int]) -> int:
    """Sign with ``x_J ∧ x_K = σ(J,K) x_{J∪K}``: ``(-1)^{#{(j,k): j > k}}``."""
    J, K = tuple(J), tuple(K)
    if set(J) & set(K):
        raise ValueError(f"index sets {set(J)} and {set(K)} overlap")
    inv = sum(1 for j in J for k in K if j > k)
    return -1 if inv % 2 else 1


def subsets(n: int, k: int) -> List[Index]:
    return list(combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def _index_map(n: int, k: int) -> Dict[Index, int]:
    return {J: i for i, J in enumerate(subsets(n, k))}


def subset_index(n: int, J: Iterable[int]) -> int:
    J = tuple(sorted(J))
    if len(set(J)) != len(J) or any(not 1 <= j <= n for j in J):
        raise ValueError(f"bad Koszul index {J} for n={n}")
    return _index_map(n, len(J))[J]


def koszul_module(ring: PolynomialRing, k: int, d: int = 0) -> GradedFreeModule:
    """``K_k(d)``: rank ``C(n,k)``, all twists ``k - d``."""
    return free_module(ring, [k - d] * math.comb(ring.n, k))


_lock = threading.Lock()
_diff_cache: Dict[Tuple[PolynomialRing, int, int], ModuleHom] = {}


def koszul_differential(ring, k: int, d: int = 0) -> ModuleHom:
    """``∂_k : K_k(d) -> K_{k-1}(d)``; ``ring`` may be an ``int`` (rationals)."""
    if isinstance(ring, int):
        ring = PolynomialRing(ring)
    n = ring.n
    if not 1 <= k <= n:
        raise ValueError(f"differential index k={k} out of range [1, {n}]")
    key = (ring, k, d)
    with _lock:
        hit = _diff_cache.get(key)
    if hit is not None:
        return hit
    src, tgt = koszul_module(ring, k, d), koszul_module(ring, k - 1, d)
    idx = _index_map(n, k - 1)
    zero = ring.zero()
    cols = []
    for J in subsets(n, k):
        comps = [zero] * tgt.rank
        for j, i in enumerate(J):
            sub = J[:j] + J[j + 1:]
            comps[idx[sub]] = ring.var(i) if j % 2 == 0 else -ring.var(i)
        cols.append(ModuleElement(tgt, tuple(comps)))
    hom = ModuleHom(src, tgt, cols, check=False)
    with _lock:
        _diff_cache.setdefault(key, hom)
    return hom


@dataclass(frozen=True)
class KoszulComplex:
    ring: PolynomialRing

    @property
    def n(self) -> int:
        return self.ring.n

    def module(self, k: int, d: int = 0) -> GradedFreeModule:
        return koszul_module(self.ring, k, d)

    def differential(self, k: int, d: int = 0) -> ModuleHom:
        return koszul_differential(self.ring, k, d)

    def basis(self, k: int) -> List[Index]:
        return subsets(self.n, k)

    def e(self, J: Iterable[int], d: int = 0, coeff: Optional[Polynomial] = None) -> ModuleElement:
        """``e_J`` with the exterior sign of the sorting permutation; zero if ``J`` repeats."""
        J = tuple(J)
        M = self.module(len(J), d)
        if len(set(J)) != len(J):
            return M.zero()
        c = self.ring.one() if coeff is None else coeff
        if _perm_sign(J) < 0:
            c = -c
        return M.basis_element(subset_index(self.n, sorted(J)), c)


@dataclass
class SyzygyModule:
    """``E_t(d) = Im ∂_t`` inside ``K_{t-1}(d)`` with its Koszul presentation."""

    ring: PolynomialRing
    t: int
    d: int = 0

    def __post_init__(self):
        if not 1 <= self.t <= self.ring.n:
            raise ValueError(f"t={self.t} out of range [1, {self.ring.n}]")

    @property
    def ambient(self) -> GradedFreeModule:
        return koszul_module(self.ring, self.t - 1, self.d)

    @property
    def generators(self) -> List[ModuleElement]:
        return list(koszul_differential(self.ring, self.t, self.d).columns)

    def as_submodule(self) -> Submodule:
        return Submodule(self.ambient, self.generators)

    def presentation(self) -> Optional[ModuleHom]:
        """``∂_{t+1} : K_{t+1} -> K_t`` whose cokernel is ``E_t``; ``None`` at ``t = n``."""
        if self.t == self.ring.n:
            return None
        return koszul_differential(self.ring, self.t + 1, self.d)

    def expected_rank(self) -> int:
        return math.comb(self.ring.n - 1, self.t - 1)


def syzygy_module(ring, t: int, d: int = 0, check_rank: bool = True) -> SyzygyModule:
    if isinstance(ring, int):
        ring = PolynomialRing(ring)
    E = SyzygyModule(ring, t, d)
    if check_rank:
        r = rank_of_submodule(E.as_submodule())
        if r != E.expected_rank():
            raise ArithmeticError(f"rank E_{t} = {r}, expected {E.expected_rank()}")
    return E


# -- dual forms --------------------------------------------------------------

@dataclass(frozen=True)
class DualForm:
    """``Σ c_J e_J^*`` on ``K_k``, a form with values in ``S(-n)``."""

    ring: PolynomialRing
    k: int
    coeffs: Mapping[Index, Polynomial] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for J, c in self.coeffs.items():
            J = tuple(sorted(J))
            if len(J) != self.k:
                raise ValueError(f"e*{list(J)} is not in K_{self.k}")
            subset_index(self.ring.n, J)
            if c:
                clean[J] = clean.get(J, self.ring.zero()) + c
        object.__setattr__(self, "coeffs", {J: c for J, c in sorted(clean.items()) if c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient_degree(self):
        """Common degree of the coefficients (``ANY_DEGREE`` for zero, ``None`` if mixed)."""
        deg = ANY_DEGREE
        for J, c in self.coeffs.items():
            dc = c.homogeneous_degree()
            if dc is None:
                return None
            if deg is ANY_DEGREE:
                deg = dc
            elif deg != dc:
                return None
        return deg

    def __add__(self, other: "DualForm") -> "DualForm":
        if other.k != self.k:
            raise ValueError("forms on different Koszul modules")
        out = dict(self.coeffs)
        for J, c in other.coeffs.items():
            out[J] = out.get(J, self.ring.zero()) + c
        return DualForm(self.ring, self.k, out)

    def __neg__(self):
        return DualForm(self.ring, self.k, {J: -c for J, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, r):
        if not isinstance(r, Polynomial):
            r = self.ring.constant(r)
        return DualForm(self.ring, self.k, {J: r * c for J, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, DualForm) and (self.k, dict(self.coeffs)) == (other.k, dict(other.coeffs))

    def __hash__(self):
        return hash((self.k, tuple(self.coeffs.items())))

    def row(self) -> List[Polynomial]:
        z = self.ring.zero()
        out = [z] * math.comb(self.ring.n, self.k)
        for J, c in self.coeffs.items():
            out[subset_index(self.ring.n, J)] = c
        return out

    def __call__(self, v: ModuleElement) -> Polynomial:
        """Pairing with ``⟨e_J^*, e_K⟩ = δ_{JK}``."""
        if v.parent.rank != math.comb(self.ring.n, self.k):
            raise ValueError("element is not in the matching Koszul module")
        acc = self.ring.zero()
        for c, x in zip(self.row(), v.components):
            if c and x:
                acc = acc + c * x
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for J, c in self.coeffs.items():
            name = "e*[" + ",".join(map(str, J)) + "]"
            s = str(c)
            if len(c) > 1:
                parts.append(f"({s})*{name}")
            elif s == "1":
                parts.append(name)
            elif s == "-1":
                parts.append("-" + name)
            else:
                parts.append(f"{s}*{name}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def family_A_generator(ring: PolynomialRing, t: int, L: Iterable[int]) -> DualForm:
    """``Σ_j (-1)^{j+1} σ(L∖{i_j}, ([n]∖L)∪{i_j}) x_{i_j} e^*_{([n]∖L)∪{i_j}}`` on ``K_{t+1}``."""
    n = ring.n
    L = tuple(sorted(L))
    if len(L) != n - t or len(set(L)) != len(L) or any(not 1 <= i <= n for i in L):
        raise ValueError(f"L must be a subset of [{n}] of size n-t = {n - t}, got {L}")
    comp = tuple(i for i in range(1, n + 1) if i not in L)
    coeffs = {}
    for j, i in enumerate(L, start=1):
        rest = tuple(x for x in L if x != i)
        J = tuple(sorted(comp + (i,)))
        s = (-1) ** (j + 1) * sigma(rest, J)
        coeffs[J] = ring.var(i) if s > 0 else -ring.var(i)
    return DualForm(ring, t + 1, coeffs)


def family_A(ring: PolynomialRing, t: int) -> Dict[Index, DualForm]:
    return {L: family_A_generator(ring, t, L) for L in subsets(ring.n, ring.n - t)}


def family_B_generator(ring: PolynomialRing, i: int, j: int) -> DualForm:
    """``(-1)^i x_j e^*_{[n]∖{i}} - (-1)^j x_i e^*_{[n]∖{j}}`` on ``K_{n-1}``."""
    n = ring.n
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= {n}, got ({i}, {j})")
    full = tuple(range(1, n + 1))
    Ji = tuple(x for x in full if x != i)
    Jj = tuple(x for x in full if x != j)
    xi, xj = ring.var(i), ring.var(j)
    return DualForm(ring, n - 1, {Ji: xj if i % 2 == 0 else -xj, Jj: -xi if j % 2 == 0 else xi})


def family_B(ring: PolynomialRing) -> Dict[Tuple[int, int], DualForm]:
    n = ring.n
    return {(i, j): family_B_generator(ring, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}


def _form_submodule(forms: Sequence[DualForm], ring: PolynomialRing, k: int) -> Submodule:
    F = free_module(ring, [0] * math.comb(ring.n, k))
    return Submodule(F, [F.element(f.row()) for f in forms])


def form_in_span(form: DualForm, generators: Sequence[DualForm]) -> bool:
    """Decide ``form ∈ S·generators`` exactly (GB membership in the dual module)."""
    N = _form_submodule(generators, form.ring, form.k)
    return N.contains(N.ambient.element(form.row()))


def in_family_A(form: DualForm, t: int) -> bool:
    return form_in_span(form, list(family_A(form.ring, t).values()))


def in_family_B(form: DualForm) -> bool:
    return form_in_span(form, list(family_B(form.ring).values()))


def combine(ring: PolynomialRing, k: int, coeffs: Mapping, gens: Mapping) -> DualForm:
    acc = DualForm(ring, k, {})
    for key, c in coeffs.items():
        if key not in gens:
            raise KeyError(f"unknown family generator {key}")
        acc = acc + gens[key] * c
    return acc


class PhiAssemblyError(ValueError):
    pass


@dataclass(frozen=True)
class Phi:
    """``φ = (a, b) : K_{t+1} ⊕ K_{n-1}(d) -> S(-n)`` of degree ``n + c`` (``b`` optional)."""

    ring: PolynomialRing
    t: int
    c: int
    d: int
    a: DualForm
    b: Optional[DualForm] = None

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def with_top(self) -> bool:
        return self.b is not None

    @property
    def degree(self) -> int:
        return self.n + self.c

    def source(self) -> GradedFreeModule:
        A = koszul_module(self.ring, self.t + 1)
        if self.b is None:
            return A
        return direct_sum(A, koszul_module(self.ring, self.n - 1, self.d))

    def target(self) -> GradedFreeModule:
        return free_module(self.ring, [-self.c])

    def as_hom(self) -> ModuleHom:
        row = self.a.row() + (self.b.row() if self.b is not None else [])
        T = self.target()
        return ModuleHom(self.source(), T, [T.element([x]) for x in row])

    def tail_generators(self, kernel_tail: str = "Et2") -> List[ModuleElement]:
        """Generators of ``E_{t+2} ⊕ E_n(d)`` (or ``E_{t+1}`` literally) inside the source."""
        src = self.source()
        if kernel_tail == "Et1":
            # literal reading: E_{t+1} lives in K_t, not in the source
            raise ValueError("E_{t+1} sits in K_t, not in the source K_{t+1} of φ")
        gens = [embed(g, src, 0) for g in koszul_differential(self.ring, self.t + 2).columns]
        if self.b is not None:
            off = math.comb(self.n, self.t + 1)
            top = koszul_differential(self.ring, self.n, self.d).columns[0]
            gens.append(embed(top, src, off))
        return gens


def assemble_phi(ring: PolynomialRing, t: int, a_coeffs: Mapping, b_coeffs: Optional[Mapping] = None,
                 d: int = 0, a_form: Optional[DualForm] = None, b_form: Optional[DualForm] = None) -> Phi:
    """Build ``φ = (a, b)`` from 𝒜/ℬ coefficient maps (or explicit forms) and read off ``c``.

    ``a_coeffs`` maps ``L`` (size ``n-t``) to a polynomial, ``b_coeffs`` maps
    ``(i, j)`` to a polynomial.  ``b_coeffs = None`` and ``b_form = None``
    assemble the ``E_{t+1}``-only case.
    """
    n = ring.n
    a = a_form if a_form is not None else combine(ring, t + 1, a_coeffs or {}, family_A(ring, t))
    with_top = b_coeffs is not None or b_form is not None
    b = None
    if with_top:
        b = b_form if b_form is not None else combine(ring, n - 1, b_coeffs or {}, family_B(ring))
    if a.is_zero() and (b is None or b.is_zero()):
        raise PhiAssemblyError("φ must be nonzero")
    cs = set()
    for form, base, name in ((a, t + 1, "a"), (b, n - 1 - d, "b")):
        if form is None or form.is_zero():
            continue
        deg = form.coefficient_degree()
        if deg is None:
            bad = next(J for J, c in form.coeffs.items() if not c.is_homogeneous()) \
                if any(not c.is_homogeneous() for c in form.coeffs.values()) else next(iter(form.coeffs))
            raise PhiAssemblyError(f"inhomogeneous combination in {name}: offending term at e*{list(bad)}")
        cs.add(deg - base)
    if len(cs) != 1:
        raise PhiAssemblyError(f"a and b give different degrees n+c: c ∈ {sorted(cs)}")
    c = cs.pop()
    return Phi(ring, t, c, d, a, b)


# -- text syntax -------------------------------------------------------------

def parse_koszul_element(text: str, ring: PolynomialRing, blocks: Sequence[Tuple[int, int]]) -> ModuleElement:
    """Parse ``poly*e[..] + ...`` into ``K_{k_1}(d_1) ⊕ K_{k_2}(d_2) ⊕ ...``.

    ``blocks`` lists ``(k, d)`` per summand; each ``e[J]`` goes to the summand
    with ``k = |J|`` (summands must have distinct ``k``).
    """
    mods = [koszul_module(ring, k, d) for k, d in blocks]
    target = direct_sum(*mods)
    offsets, off = {}, 0
    for (k, _), M in zip(blocks, mods):
        if k in offsets:
            raise ValueError("summands must have distinct Koszul degrees")
        offsets[k] = off
        off += M.rank
    comps: List[Dict] = [dict() for _ in range(target.rank)]
    for coeff, exps, basis in parse_terms(text, ring.n, allow_basis=True):
        if basis is None and coeff == 0:
            continue
        if basis is None or basis[0] != "e":
            raise ParseError("every term needs a Koszul basis symbol e[..]", text, 0)
        J = basis[1]
        if len(J) not in offsets:
            raise ParseError(f"e{list(J)} does not belong to any summand", text, 0)
        if len(set(J)) != len(J) or any(not 1 <= j <= ring.n for j in J):
            raise ParseError(f"bad Koszul index e{list(J)}", text, 0)
        s = 1
        if list(J) != sorted(J):
            s = _perm_sign(J)
        pos = offsets[len(J)] + subset_index(ring.n, J)
        comps[pos][exps] = comps[pos].get(exps, 0) + s * coeff
    polys = tuple(Polynomial.from_terms(ring, c) for c in comps)
    return ModuleElement(target, polys)


def parse_dual_form(text: str, ring: PolynomialRing, k: Optional[int] = None) -> DualForm:
    """Parse ``poly*e*[..] + ...`` into a :class:`DualForm`."""
    coeffs: Dict[Index, Dict] = {}
    for coeff, exps, basis in parse_terms(text, ring.n, allow_basis=True):
        if basis is None or basis[0] != "e*":
            raise ParseError("every term needs a dual basis symbol e*[..]", text, 0)
        J = basis[1]
        if k is None:
            k = len(J)
        if len(J) != k:
            raise ParseError(f"mixed Koszul degrees in a dual form: e*{list(J)}", text, 0)
        if len(set(J)) != len(J) or any(not 1 <= j <= ring.n for j in J):
            raise ParseError(f"bad Koszul index e*{list(J)}", text, 0)
        s = _perm_sign(J)
        key = tuple(sorted(J))
        coeffs.setdefault(key, {})
        coeffs[key][exps] = coeffs[key].get(exps, 0) + s * coeff
    if k is None:
        raise ParseError("empty dual form", text, 0)
    return DualForm(ring, k, {J: Polynomial.from_terms(ring, c) for J, c in coeffs.items()})


def _perm_sign(J: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(J)) for b in range(a + 1, len(J)) if J[a] > J[b])
    return -1 if inv % 2 else 1


def format_koszul_element(v: ModuleElement, blocks: Sequence[Tuple[int, int]]) -> str:
    n = v.ring.n
    names = []
    for k, _ in blocks:
        names.extend("e[" + ",".join(map(str, J)) + "]" for J in subsets(n, k))
    from .modules import format_element
    return format_element(v, names)


def differential_table(ring: PolynomialRing, k: int) -> List[str]:
    """Human-readable ``∂_k(e_J) = ...`` lines."""
    dk = koszul_differential(ring, k)
    out = []
    for J, col in zip(subsets(ring.n, k), dk.columns):
        lhs = "d_%d(e[%s])" % (k, ",".join(map(str, J)))
        out.append(f"{lhs} = {format_koszul_element(col, [(k - 1, 0)]) if k > 1 else _k0(col)}")
    return out


def _k0(col: ModuleElement) -> str:
    return str(col.components[0])


__all__ = [
    "sigma", "subsets", "subset_index", "koszul_module", "koszul_differential", "KoszulComplex",
    "SyzygyModule", "syzygy_module", "DualForm", "family_A_generator", "family_A", "family_B_generator",
    "family_B", "form_in_span", "in_family_A", "in_family_B", "Phi", "assemble_phi", "PhiAssemblyError",
    "parse_koszul_element", "parse_dual_form", "format_koszul_element", "differential_table",
    "HomogeneityError", "twist_module",
]
