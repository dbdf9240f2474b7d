"""Ext via dualized minimal resolutions and local cohomology by local duality.

``H^i_m(M)^∨ ≅ Ext^{n-i}(M, S(-n))``; for a finite-length module the Matlis
dual reverses the Hilbert function, so ``h_{H^i}(k) = h_{Ext^{n-i}}(-k)``.
Ext modules are measured by Hilbert series: at spot ``j`` of the dual complex
``HS(Ext^j) = HS(ker) - HS(im)`` and finite length means the numerator is
divisible by ``(1-λ)^n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .bourbaki import CheckResult, IdealData
from .invariants import HilbertNumerator
from .koszul import koszul_differential, koszul_module
from .modules import ModuleHom, direct_sum_homs, dual_hom, dual_module
from .poly import PolynomialRing
from .resolution import FreeResolution, minimal_free_resolution, quotient_presentation
from .submodules import (Submodule, image, image_piece_dimension, kernel, kernel_piece_dimension,
                         krull_dimension)


@dataclass(frozen=True)
class GradedHilbertFunction:
    """Hilbert function of a graded module.

    Finite-length modules carry ``support`` (degree -> dimension); others
    carry the numerator over ``(1-λ)^n`` and their Krull dimension.
    """

    support: Optional[Dict[int, int]] = None
    numerator: Optional[HilbertNumerator] = None
    n: int = 0
    dim: int = -1

    @classmethod
    def finite(cls, support: Dict[int, int]) -> "GradedHilbertFunction":
        clean = {int(k): int(v) for k, v in sorted(support.items()) if v}
        return cls(support=clean, dim=0 if clean else -1)

    @classmethod
    def zero(cls) -> "GradedHilbertFunction":
        return cls.finite({})

    @classmethod
    def field(cls, degree: int = 0) -> "GradedHilbertFunction":
        return cls.finite({degree: 1})

    @classmethod
    def from_numerator(cls, Q: HilbertNumerator, n: int) -> "GradedHilbertFunction":
        h = Q.finite_hilbert_function(n)
        if h is not None:
            return cls.finite(h)
        return cls(support=None, numerator=Q, n=n, dim=Q.krull_dimension(n))

    @property
    def is_finite_length(self) -> bool:
        return self.support is not None

    @property
    def is_zero(self) -> bool:
        return self.support is not None and not self.support

    def total_dimension(self) -> Optional[int]:
        return sum(self.support.values()) if self.support is not None else None

    def matlis_dual(self) -> "GradedHilbertFunction":
        if self.support is None:
            raise ValueError("Matlis reversal needs a finite-length module")
        return GradedHilbertFunction.finite({-k: v for k, v in self.support.items()})

    def shift(self, s: int) -> "GradedHilbertFunction":
        """``M(s)``: degree ``k`` moves to ``k - s``."""
        if self.support is None:
            return GradedHilbertFunction(None, self.numerator.shift(-s), self.n, self.dim)
        return GradedHilbertFunction.finite({k - s: v for k, v in self.support.items()})

    def equal_up_to_shift(self, other: "GradedHilbertFunction") -> bool:
        if self.support is None or other.support is None:
            return False
        if not self.support or not other.support:
            return self.support == other.support
        s = min(self.support) - min(other.support)
        return other.shift(-s).support == self.support

    def as_dict(self):
        if self.support is not None:
            return {"finite_length": True, "hilbert_function": {str(k): v for k, v in self.support.items()},
                    "total": self.total_dimension()}
        return {"finite_length": False, "dim": self.dim, "numerator": str(self.numerator)}

    def __str__(self):
        if self.support is None:
            return f"infinite length, dim {self.dim}"
        if not self.support:
            return "0"
        return " + ".join(f"K({-k})" + (f"^{v}" if v > 1 else "") for k, v in self.support.items())


@dataclass
class ExtProfile:
    n: int
    resolution: FreeResolution
    ext: Dict[int, GradedHilbertFunction]

    @property
    def projective_dimension(self) -> int:
        return self.resolution.length

    def max_nonzero(self) -> int:
        return max((j for j, h in self.ext.items() if not h.is_zero), default=-1)


def ext_profile(presentation: ModuleHom, n: Optional[int] = None,
                resolution: Optional[FreeResolution] = None) -> ExtProfile:
    """``Ext^j(coker presentation, S(-n))`` for all ``j`` as Hilbert functions."""
    n = presentation.ring.n if n is None else n
    res = resolution if resolution is not None else minimal_free_resolution(presentation)
    mods = [F for F in res.modules]
    L = len(res.maps)
    duals = [dual_hom(d, n) for d in res.maps]  # duals[j]: F_j^* -> F_{j+1}^*
    out: Dict[int, GradedHilbertFunction] = {}
    for j in range(L + 1):
        Fj = dual_module(mods[j], n)
        if j < L:
            ker = kernel(duals[j]).hilbert_numerator()
        else:
            ker = _free_numerator(Fj.twists)
        im = image(duals[j - 1]).hilbert_numerator() if j > 0 else HilbertNumerator()
        out[j] = GradedHilbertFunction.from_numerator(ker - im, n)
    return ExtProfile(n, res, out)


def ext_piece_dimension(profile: ExtProfile, j: int, degree: int) -> int:
    """``dim Ext^j_degree`` by graded-piece linear algebra (independent of the HS route)."""
    res, n = profile.resolution, profile.n
    L = len(res.maps)
    duals = [dual_hom(d, n) for d in res.maps]
    from .submodules import free_piece_dimension
    Fj = dual_module(res.modules[j], n)
    k = kernel_piece_dimension(duals[j], degree) if j < L else free_piece_dimension(Fj, degree)
    im = image_piece_dimension(duals[j - 1], degree) if j > 0 else 0
    return k - im


def _free_numerator(twists) -> HilbertNumerator:
    acc = HilbertNumerator()
    for a in twists:
        acc = acc + HilbertNumerator.monomial(a)
    return acc


@dataclass
class LocalCohomologyProfile:
    per_index: Dict[int, GradedHilbertFunction]
    dim: int
    depth: int
    depth_from_resolution: int
    n: int

    @property
    def consistent(self) -> bool:
        return self.depth == self.depth_from_resolution

    def describe(self, i: int) -> str:
        h = self.per_index.get(i)
        if h is None or h.is_zero:
            return "zero"
        return "finite_length" if h.is_finite_length else "infinite"

    def as_dict(self) -> dict:
        return {"dim": self.dim, "depth": self.depth,
                "H": {str(i): h.as_dict() for i, h in sorted(self.per_index.items())}}


def cohomology_from_ext(profile: ExtProfile, dim: int) -> LocalCohomologyProfile:
    n = profile.n
    per: Dict[int, GradedHilbertFunction] = {}
    for i in range(0, dim + 1):
        e = profile.ext.get(n - i, GradedHilbertFunction.zero())
        per[i] = e.matlis_dual() if e.is_finite_length else e
    depth = min((i for i, h in per.items() if not h.is_zero), default=dim)
    return LocalCohomologyProfile(per, dim, depth, n - profile.projective_dimension, n)


def local_cohomology_profile(I) -> LocalCohomologyProfile:
    """``H^i_m(S/I)`` for ``i <= dim S/I`` via ``Ext^{n-i}(S/I, S(-n))^∨``."""
    J = I.submodule() if isinstance(I, IdealData) else I
    n = J.ring.n
    prof = ext_profile(quotient_presentation(J), n)
    return cohomology_from_ext(prof, krull_dimension(J))


def module_cohomology_profile(presentation: ModuleHom, dim: Optional[int] = None) -> LocalCohomologyProfile:
    n = presentation.ring.n
    prof = ext_profile(presentation, n)
    if dim is None:
        dim = n
    return cohomology_from_ext(prof, dim)


@dataclass
class SpotVerdict:
    single_spot: bool
    t: Optional[int] = None
    N: Optional[GradedHilbertFunction] = None
    reason: str = ""

    def as_dict(self) -> dict:
        out = {"single_spot": self.single_spot, "reason": self.reason}
        if self.single_spot:
            out["t"] = self.t
            out["N"] = self.N.as_dict()
        return out


def single_spot_check(I) -> SpotVerdict:
    """Exactly one ``i < dim`` with ``H^i ≠ 0``, finite length, at ``i = depth``."""
    prof = I if isinstance(I, LocalCohomologyProfile) else local_cohomology_profile(I)
    below = {i: h for i, h in prof.per_index.items() if i < prof.dim}
    nonzero = [i for i, h in below.items() if not h.is_zero]
    infinite = [i for i in nonzero if not below[i].is_finite_length]
    if infinite:
        return SpotVerdict(False, reason=f"H^{infinite[0]} is not of finite length (not generalized CM)")
    if not nonzero:
        return SpotVerdict(False, reason="no non-trivial spot (Cohen-Macaulay)")
    if len(nonzero) > 1:
        return SpotVerdict(False, reason=f"several non-trivial spots {nonzero}")
    i = nonzero[0]
    if i != prof.depth:
        return SpotVerdict(False, reason=f"spot {i} differs from depth {prof.depth}")
    return SpotVerdict(True, i, below[i], reason="single spot")


# -- approximation modules ---------------------------------------------------

def approximation_presentation(ring: PolynomialRing, t: int, d: int = 0, with_top: bool = True) -> ModuleHom:
    """``∂_{t+2} ⊕ ∂_n(d)``; its cokernel is ``E_{t+1} ⊕ E_{n-1}(d)`` (or ``E_{t+1}``)."""
    parts = [koszul_differential(ring, t + 2)]
    if with_top:
        parts.append(koszul_differential(ring, ring.n, d))
    return direct_sum_homs(*parts)


@dataclass
class MainTheoremReport:
    clauses: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses)


def theorem_main1_check(presentation: ModuleHom, expected_t: int,
                        expected_N: Optional[GradedHilbertFunction] = None) -> MainTheoremReport:
    """Clauses (i), (ii)(a), (ii)(b) at the level of Hilbert functions and Betti numbers.

    (i): ``Ext^{n-t-1} ≅ K``, ``Ext^1 ≅ N^∨`` (up to shift), other ``Ext^{j≥2}`` zero.
    (ii)(a): ``F_i`` has the Betti numbers of ``K_{t+1+i}`` for ``i >= 2`` and
    ``ker φ_1`` has the Hilbert series of ``E_{t+3}`` up to shift.
    (ii)(b): ``0 -> M^* -> F_0^* -> Ω_1(M)^* -> N^∨ -> 0`` has vanishing alternating Hilbert series.
    """
    ring = presentation.ring
    n, t = ring.n, expected_t
    prof = ext_profile(presentation, n)
    res = prof.resolution
    rep = MainTheoremReport()
    N = expected_N if expected_N is not None else GradedHilbertFunction.zero()

    # (i)
    top = prof.ext.get(n - t - 1, GradedHilbertFunction.zero())
    ok_top = top.is_finite_length and top.total_dimension() == 1
    e1 = prof.ext.get(1, GradedHilbertFunction.zero())
    ok_e1 = e1.is_finite_length and (e1.matlis_dual().equal_up_to_shift(N) if not N.is_zero else e1.is_zero)
    others = {j: h for j, h in prof.ext.items() if j >= 2 and j != n - t - 1 and not h.is_zero}
    rep.clauses.append(CheckResult(
        "main1_i", ok_top and ok_e1 and not others,
        {"Ext^%d" % (n - t - 1): str(top), "Ext^1": str(e1)},
        {"Ext^%d" % (n - t - 1): "K", "Ext^1": str(N.matlis_dual()) if not N.is_zero else "0"},
        None if not others else f"nonzero Ext^{min(others)}",
        notes={"projective_dimension": prof.projective_dimension}))

    # (ii)(a)
    mods = res.modules
    bad = []
    for i in range(2, len(mods)):
        k = t + 1 + i
        tw = set(mods[i].twists)
        want = koszul_module(ring, k).rank if k <= n else 0
        if mods[i].rank != want or len(tw) > 1:
            bad.append(i)
    if len(mods) - 1 != n - t - 1:
        bad.append("length")
    ker1 = kernel(res.maps[0]) if res.maps else Submodule(mods[0], [])
    E = Submodule(koszul_module(ring, t + 2), koszul_differential(ring, t + 3).columns) \
        if t + 3 <= n else None
    hs_ker1 = ker1.hilbert_numerator()
    hs_E = E.hilbert_numerator() if E is not None else HilbertNumerator()
    ok_E = _equal_up_to_shift(hs_ker1, hs_E)
    cert = res.certify()
    rep.clauses.append(CheckResult(
        "main1_ii_a", not bad and ok_E and cert.ok,
        {"betti": res.betti_table().totals(), "HS(ker φ_1)": str(hs_ker1)},
        {"F_i": "K_(t+1+i) for i >= 2", "HS(E_t+3)": str(hs_E)},
        None if not bad else f"F_{bad[0]} does not match the Koszul tail",
        notes={"exact": cert.ok}))

    # (ii)(b)
    F0s = _free_numerator(dual_module(mods[0], n).twists)
    Mstar = kernel(dual_hom(res.maps[0], n)).hilbert_numerator() if res.maps else F0s
    if len(res.maps) > 1:
        omega_star = kernel(dual_hom(res.maps[1], n)).hilbert_numerator()
    elif res.maps:
        omega_star = _free_numerator(dual_module(mods[1], n).twists)
    else:
        omega_star = HilbertNumerator()
    Nv = prof.ext.get(1, GradedHilbertFunction.zero())
    Nv_num = _finite_to_numerator(Nv, n)
    alt = Mstar - F0s + omega_star - Nv_num
    rep.clauses.append(CheckResult(
        "main1_ii_b", alt.is_zero() and ok_e1, str(alt), 0,
        notes={"HS(M*)": str(Mstar), "HS(Omega_1(M)*)": str(omega_star), "N_dual": str(Nv)}))
    return rep


def _finite_to_numerator(h: GradedHilbertFunction, n: int) -> HilbertNumerator:
    if h.support is None:
        return h.numerator
    base = HilbertNumerator(h.support)
    for _ in range(n):
        base = base * HilbertNumerator({0: 1, 1: -1})
    return base


def _equal_up_to_shift(a: HilbertNumerator, b: HilbertNumerator) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a == b.shift(a.min_exp() - b.min_exp())
