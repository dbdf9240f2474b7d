"""Long Bourbaki sequences ``0 -> F -> G -> M -> I(c) -> 0``.

``M`` is ``E_{t+1}`` or ``E_{t+1} ⊕ E_{n-1}(d)``, carried inside
``K_t ⊕ K_{n-2}(d)``.  A witness is a list of ``β_i`` in
``P_0 = K_{t+1} ⊕ K_{n-1}(d)`` together with ``φ = (a, b)`` on ``P_0``; the
sequence uses ``G = ⊕ S(-deg β_i)``, ``g = ∂̄ ∘ β`` and ``F`` free with
``im f = ker g``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .invariants import BourbakiParameters, HilbertNumerator, q_polynomial
from .koszul import (Phi, assemble_phi, family_A_generator, format_koszul_element,
                     koszul_differential, koszul_module)
from .modules import (GradedFreeModule, ModuleElement, ModuleHom, compose, direct_sum,
                      direct_sum_homs, embed, free_module, twist_module)
from .poly import Polynomial, PolynomialRing
from .resolution import FreeResolution, GradedBettiTable, prune
from .submodules import (Submodule, codim, ideal, image, kernel, lift, rank_of_submodule,
                         submodule_equal)

E_ONLY = "E_only"
E_PLUS_E = "E_plus_E"


class InadmissibleWitness(ValueError):
    """A ``β_i`` lies in ``E_{t+2} ⊕ E_n(d)`` (or ``φ`` is unusable)."""


class SequenceError(ValueError):
    pass


@dataclass
class CheckResult:
    check: str
    ok: bool
    lhs: object = None
    rhs: object = None
    witness: Optional[str] = None
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def as_dict(self) -> dict:
        out = {"check": self.check, "status": self.status, "lhs": _jsonable(self.lhs),
               "rhs": _jsonable(self.rhs)}
        if self.witness is not None:
            out["witness"] = self.witness
        out["notes"] = {k: _jsonable(v) for k, v in self.notes.items()}
        return out


def _jsonable(v):
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


# -- witnesses ---------------------------------------------------------------

@dataclass
class BourbakiWitness:
    phi: Phi
    betas: List[ModuleElement]

    def __post_init__(self):
        src = self.phi.source()
        for i, b in enumerate(self.betas, 1):
            if b.parent != src:
                raise SequenceError(f"β_{i} does not lie in {src.describe()}")
            if b.degree() is None:
                raise SequenceError(f"β_{i} is not homogeneous")
            if b.is_zero():
                raise InadmissibleWitness(f"β_{i} is zero")

    @property
    def ring(self) -> PolynomialRing:
        return self.phi.ring

    @property
    def kind(self) -> str:
        return E_PLUS_E if self.phi.with_top else E_ONLY

    def source(self) -> GradedFreeModule:
        return self.phi.source()

    def blocks(self):
        n, t, d = self.ring.n, self.phi.t, self.phi.d
        return [(t + 1, 0), (n - 1, d)] if self.phi.with_top else [(t + 1, 0)]

    def beta_hom(self) -> ModuleHom:
        G = free_module(self.ring, [b.degree() for b in self.betas])
        return ModuleHom(G, self.source(), list(self.betas))

    def describe_beta(self, i: int) -> str:
        return format_koszul_element(self.betas[i], self.blocks())


def dbar(phi: Phi) -> ModuleHom:
    """``∂̄ = ∂_{t+1} ⊕ ∂_{n-1}(d) : P_0 -> K_t ⊕ K_{n-2}(d)``."""
    ring, t, n = phi.ring, phi.t, phi.n
    parts = [koszul_differential(ring, t + 1)]
    if phi.with_top:
        parts.append(koszul_differential(ring, n - 1, phi.d))
    return direct_sum_homs(*parts)


def rho1(phi: Phi) -> ModuleHom:
    """``∂_{t+2} ⊕ ∂_n(d) : P_1 -> P_0``."""
    ring, t, n = phi.ring, phi.t, phi.n
    parts = [koszul_differential(ring, t + 2)]
    if phi.with_top:
        parts.append(koszul_differential(ring, n, phi.d))
    return direct_sum_homs(*parts)


def tail_submodule(phi: Phi) -> Submodule:
    return Submodule(phi.source(), phi.tail_generators("Et2"))


def kernel_condition_check(w: BourbakiWitness, kernel_tail: str = "Et2",
                           expected_c: Optional[int] = None) -> CheckResult:
    """``Ker φ = ⟨β⟩ + E_{t+2} ⊕ E_n(d)`` and ``deg φ = n + c``.

    Raises :class:`InadmissibleWitness` if some ``β_i`` lies in the tail.
    """
    phi = w.phi
    notes: Dict[str, object] = {"c": phi.c, "degree_of_phi": phi.degree, "kernel_tail": kernel_tail}
    if kernel_tail not in ("Et1", "Et2"):
        raise ValueError(f"unknown kernel tail {kernel_tail!r}")
    if kernel_tail == "Et1":
        t = phi.t
        return CheckResult("kernel_condition", False, f"Ker φ ⊆ K_{t + 1}", f"<β> + E_{t + 1} ⊆ K_{t}",
                           notes={**notes, "reason": f"E_{t + 1} = Im ∂_{t + 1} lies in K_{t}, so the "
                                  f"literal tail is not a submodule of the source of φ"})
    tail = tail_submodule(phi)
    for i, b in enumerate(w.betas):
        if tail.contains(b):
            raise InadmissibleWitness(
                f"β_{i + 1} = {w.describe_beta(i)} lies in E_{phi.t + 2}"
                + (f" ⊕ E_{phi.n}({phi.d})" if phi.with_top else "")
                + "; an admissible witness needs β_i outside the Koszul tail")
    K = kernel(phi.as_hom())
    rhs = Submodule(phi.source(), list(w.betas) + list(tail.generators))
    witness = None
    for g in K.generators:
        if not rhs.contains(g):
            witness = "in Ker φ but not in <β> + tail: " + format_koszul_element(g, w.blocks())
            break
    if witness is None:
        for g in rhs.generators:
            if not K.contains(g):
                witness = "in <β> + tail but not in Ker φ: " + format_koszul_element(g, w.blocks())
                break
    ok = witness is None
    if expected_c is not None and expected_c != phi.c:
        ok = False
        notes["expected_c"] = expected_c
    return CheckResult("kernel_condition", ok, "Ker φ", "<β> + tail", witness, notes)


# -- sequences ---------------------------------------------------------------

@dataclass
class IdealData:
    generators: List[Polynomial]
    codim: int
    spot_type: Optional[dict] = None

    @property
    def ring(self) -> PolynomialRing:
        return self.generators[0].ring

    def submodule(self) -> Submodule:
        return ideal(self.ring, self.generators)

    def as_dict(self) -> dict:
        out = {"generators": [str(g) for g in self.generators], "codim": self.codim}
        if self.spot_type is not None:
            out["spot_type"] = self.spot_type
        return out


@dataclass
class BourbakiSequence:
    witness: BourbakiWitness
    f: ModuleHom
    g_given: Optional[ModuleHom] = None

    @property
    def phi(self) -> Phi:
        return self.witness.phi

    @property
    def ring(self) -> PolynomialRing:
        return self.phi.ring

    @property
    def kind(self) -> str:
        return self.witness.kind

    @property
    def F(self) -> GradedFreeModule:
        return self.f.source

    @property
    def G(self) -> GradedFreeModule:
        return self.f.target

    @property
    def beta(self) -> ModuleHom:
        return self.witness.beta_hom()

    @property
    def g(self) -> ModuleHom:
        return compose(dbar(self.phi), self.beta)

    @property
    def params(self) -> BourbakiParameters:
        phi = self.phi
        return BourbakiParameters(n=phi.n, t=phi.t, c=phi.c, d=phi.d, a=tuple(self.F.twists),
                                  b=tuple(self.G.twists), with_top=phi.with_top)

    def m_carrier(self) -> GradedFreeModule:
        return dbar(self.phi).target


def build_sequence(w: BourbakiWitness, f_images: Optional[Sequence[ModuleElement]] = None,
                   g_images: Optional[Sequence[ModuleElement]] = None) -> BourbakiSequence:
    """Assemble ``(F, G, f, g)``; ``F`` comes from ``ker g`` unless ``f_images`` is given."""
    beta = w.beta_hom()
    G = beta.source
    g = compose(dbar(w.phi), beta)
    if f_images is None:
        K = kernel(g)
        gens = list(K.minimal_generators())
    else:
        gens = []
        for v in f_images:
            if v.parent != G:
                v = ModuleElement(G, v.components)
            gens.append(v)
    F = free_module(w.ring, [v.degree() for v in gens])
    f = ModuleHom(F, G, gens)
    g_given = None
    if g_images is not None:
        g_given = ModuleHom(G, g.target, list(g_images))
    return BourbakiSequence(w, f, g_given)


@dataclass
class SequenceReport:
    checks: List[CheckResult]
    ideal: Optional[IdealData] = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> List[str]:
        return [c.check for c in self.checks if not c.ok]


def expected_image_rank(phi: Phi) -> int:
    """``rank Ker(φ̄ on M)``: ``n - 2 + C(n-1,t)`` or ``C(n-1,t) - 1``."""
    n, t = phi.n, phi.t
    if phi.with_top:
        return n - 2 + math.comb(n - 1, t)
    return math.comb(n - 1, t) - 1


def verify_long_bourbaki(seq: BourbakiSequence) -> SequenceReport:
    """Checks (1)-(7): ``g = ∂̄β``, ``φ g = 0``, ``f`` injective, exactness at ``G`` and ``M``,
    rank bookkeeping and ideal extraction."""
    phi = seq.phi
    checks: List[CheckResult] = []
    g = seq.g

    # (1)
    if seq.g_given is None:
        checks.append(CheckResult("g_equals_dbar_beta", True, "g", "∂̄∘β", notes={"source": "derived"}))
    else:
        bad = next((j for j, (a, b) in enumerate(zip(seq.g_given.columns, g.columns)) if a != b), None)
        checks.append(CheckResult("g_equals_dbar_beta", bad is None, "g", "∂̄∘β",
                                  None if bad is None else f"column m_{bad + 1}: {seq.g_given.columns[bad]} vs {g.columns[bad]}"))
    # (2)
    phb = compose(phi.as_hom(), seq.beta)
    bad = next((j for j, col in enumerate(phb.columns) if col), None)
    checks.append(CheckResult("phi_after_g_zero", bad is None, "φ̄∘g", 0,
                              None if bad is None else f"φ(β_{bad + 1}) = {phb.columns[bad][0]}"))
    # (3)
    Kf = kernel(seq.f)
    wit = None if Kf.is_zero() else f"nonzero kernel element {Kf.generators[0]}"
    checks.append(CheckResult("f_injective", Kf.is_zero(), "Ker f", 0, wit))
    # (4)
    comp = compose(g, seq.f)
    Kg = kernel(g)
    imf = image(seq.f)
    wit = None
    if not comp.is_zero():
        wit = "g∘f ≠ 0"
    else:
        miss = next((v for v in Kg.generators if not imf.contains(v)), None)
        if miss is not None:
            wit = f"in Ker g but not in Im f: {miss}"
    checks.append(CheckResult("exact_at_G", wit is None, "Ker g", "Im f", wit))
    # (5)  Ker φ̄ = ∂̄(Ker φ)
    Kphi = kernel(phi.as_hom())
    db = dbar(phi)
    kbar = Submodule(db.target, [db(v) for v in Kphi.generators if db(v)])
    img = image(g)
    wit = None
    miss = next((v for v in kbar.generators if not img.contains(v)), None)
    if miss is not None:
        wit = f"in Ker φ̄ but not in Im g: {miss}"
    else:
        miss = next((v for v in img.generators if not kbar.contains(v)), None)
        if miss is not None:
            wit = f"in Im g but not in Ker φ̄: {miss}"
    checks.append(CheckResult("exact_at_M", wit is None, "Ker φ̄", "Im g", wit))
    # (6)
    params = seq.params
    r = rank_of_submodule(img) if not img.is_zero() else 0
    exp_r = expected_image_rank(phi)
    ok6 = params.p == params.expected_p() and r == exp_r
    checks.append(CheckResult("rank_bookkeeping", ok6, [params.p, r], [params.expected_p(), exp_r],
                              notes={"p": params.p, "q": params.q,
                                     "p_formula": "q - n + 2 - C(n-1,t)" if phi.with_top else "q + 1 - C(n-1,t)",
                                     "rank_Ker_phi_bar": r}))
    # (7)
    try:
        I = extract_ideal(seq)
        checks.append(CheckResult("ideal_extracted", True, "I", [str(x) for x in I.generators],
                                  notes={"codim": I.codim}))
    except SequenceError as exc:
        I = None
        checks.append(CheckResult("ideal_extracted", False, "I", None, str(exc)))
    return SequenceReport(checks, I)


def extract_ideal(seq_or_phi) -> IdealData:
    """``I = φ(P_0)(-c)``: the nonzero entries of φ's row, as polynomials."""
    phi = seq_or_phi.phi if isinstance(seq_or_phi, BourbakiSequence) else seq_or_phi
    row = phi.a.row() + (phi.b.row() if phi.b is not None else [])
    gens = [x for x in row if x]
    if not gens:
        raise SequenceError("φ is zero; there is no ideal to extract")
    seen, uniq = set(), []
    for x in gens:
        if x not in seen:
            seen.add(x)
            uniq.append(x)
    I = ideal(phi.ring, uniq)
    return IdealData(uniq, codim(I))


# -- non-triviality ----------------------------------------------------------

@dataclass
class NontrivialityReport:
    verdict: str
    witness: Optional[str] = None

    def as_check(self, expect_nontrivial: Optional[bool] = None) -> CheckResult:
        ok = True if expect_nontrivial is None else (self.verdict == "non_trivial") == expect_nontrivial
        return CheckResult("nontriviality", ok, self.verdict,
                           None if expect_nontrivial is None else ("non_trivial" if expect_nontrivial else "trivial"),
                           self.witness)


def nontriviality_check(w: BourbakiWitness) -> NontrivialityReport:
    """``⟨β⟩`` decomposes across ``K_{t+1} ⊕ K_{n-1}(d)`` iff both projections of every β are members."""
    if not w.phi.with_top:
        raise SequenceError("non-triviality is defined for M = E_{t+1} ⊕ E_{n-1}(d)")
    src = w.source()
    r1 = koszul_module(w.ring, w.phi.t + 1).rank
    N = Submodule(src, list(w.betas))
    z = w.ring.zero()
    for i, b in enumerate(w.betas):
        p1 = ModuleElement(src, b.components[:r1] + (z,) * (src.rank - r1))
        p2 = ModuleElement(src, (z,) * r1 + b.components[r1:])
        for name, proj in (("p1", p1), ("p2", p2)):
            if proj and not N.contains(proj):
                return NontrivialityReport("non_trivial",
                                           f"{name}(β_{i + 1}) = {format_koszul_element(proj, w.blocks())} ∉ <β>")
    return NontrivialityReport("trivial")


def build_trivial_sequence(base: BourbakiSequence, d: int = 0, verify: bool = True) -> BourbakiSequence:
    """Direct-sum the Koszul tail ``K_n(d) -> K_{n-1}(d)`` onto an ``E_{t+1}``-only sequence."""
    if base.phi.with_top:
        raise SequenceError("the base sequence must have M = E_{t+1}")
    if verify and not verify_long_bourbaki(base).ok:
        raise SequenceError("the base sequence does not verify")
    ring, phi0 = base.ring, base.phi
    n = ring.n
    from .koszul import DualForm
    phi = Phi(ring, phi0.t, phi0.c, d, phi0.a, DualForm(ring, n - 1, {}))
    src = phi.source()
    r1 = koszul_module(ring, phi0.t + 1).rank
    betas = [embed(b, src, 0) for b in base.witness.betas]
    top = koszul_module(ring, n - 1, d)
    betas += [embed(e, src, r1) for e in top.basis()]
    w = BourbakiWitness(phi, betas)
    G = free_module(ring, [b.degree() for b in betas])
    q0 = base.G.rank
    f_imgs = [ModuleElement(G, col.components + (ring.zero(),) * top.rank) for col in base.f.columns]
    dn = koszul_differential(ring, n, d)
    f_imgs += [ModuleElement(G, (ring.zero(),) * q0 + col.components) for col in dn.columns]
    return build_sequence(w, f_imgs)


# -- mapping cone ------------------------------------------------------------

@dataclass
class ConeResult:
    cone: FreeResolution
    minimal: FreeResolution
    cone_is_minimal: bool
    alpha: ModuleHom

    def betti_table(self) -> GradedBettiTable:
        return self.minimal.betti_table()

    def hilbert_numerator(self) -> HilbertNumerator:
        return self.minimal.hilbert_numerator()


def _block_hom(src_parts: Sequence[GradedFreeModule], tgt_parts: Sequence[GradedFreeModule],
               blocks: Dict) -> ModuleHom:
    """Block matrix; ``blocks[(i, j)]`` maps ``src_parts[j] -> tgt_parts[i]``."""
    ring = src_parts[0].ring if src_parts else tgt_parts[0].ring
    src = direct_sum(*src_parts) if src_parts else free_module(ring, [])
    tgt = direct_sum(*tgt_parts) if tgt_parts else free_module(ring, [])
    z = ring.zero()
    cols = []
    for j, S in enumerate(src_parts):
        for k in range(S.rank):
            comps = []
            for i, T in enumerate(tgt_parts):
                h = blocks.get((i, j))
                comps.extend(h.columns[k].components if h is not None else (z,) * T.rank)
            cols.append(ModuleElement(tgt, tuple(comps)))
    return ModuleHom(src, tgt, cols, check=False)


def mapping_cone_resolution(seq: BourbakiSequence) -> ConeResult:
    """Resolution of ``S/I`` from the cone of ``(β, α)`` into the Koszul resolution of ``M``.

    ``F_0 = S``, ``F_1 = P_0(-c)``, ``F_2 = (P_1 ⊕ G)(-c)``, ``F_3 = (P_2 ⊕ F)(-c)``,
    ``F_i = P_{i-1}(-c)`` after that, where ``P_j = K_{t+1+j}`` for ``j >= 2``.
    Differentials: ``[ρ_1 | β]`` and ``[[ρ_2, α], [0, -f]]`` with ``ρ_1 α = β f``.
    """
    phi = seq.phi
    ring, n, t, c = phi.ring, phi.n, phi.t, phi.c
    beta, f = seq.beta, seq.f
    r1 = rho1(phi)
    bf = compose(beta, f)
    cols = []
    for j, v in enumerate(bf.columns):
        u = lift(r1, v)
        if u is None:
            raise SequenceError(f"β∘f(n_{j + 1}) is not in the Koszul tail: (β, α) is not a chain map")
        cols.append(u)
    alpha = ModuleHom(f.source, r1.source, cols)

    P = [phi.source(), r1.source] + [koszul_module(ring, t + 1 + j) for j in range(2, n - t)]
    rho = [None, r1] + [None] * (len(P) - 2)
    for j in range(2, len(P)):
        dk = koszul_differential(ring, t + 1 + j)
        if j == 2:
            r1_top = koszul_module(ring, n, phi.d) if phi.with_top else None
            parts = [koszul_module(ring, t + 2)] + ([r1_top] if r1_top is not None else [])
            rho[j] = _block_hom([dk.source], parts, {(0, 0): dk})
        else:
            rho[j] = dk
    tw = lambda M: twist_module(M, -c)
    phi_h = phi.as_hom()
    S0 = free_module(ring, [0])
    d1 = ModuleHom(tw(P[0]), S0, [ModuleElement(S0, col.components) for col in phi_h.columns], check=False)
    d2 = _block_hom([tw(P[1]), tw(seq.G)], [tw(P[0])], {(0, 0): _retwist(r1, c), (0, 1): _retwist(beta, c)})
    maps = [d1, d2]
    if len(P) > 2:
        neg_f = ModuleHom(f.source, f.target, [-col for col in f.columns], check=False)
        d3 = _block_hom([tw(P[2]), tw(seq.F)], [tw(P[1]), tw(seq.G)],
                        {(0, 0): _retwist(rho[2], c), (0, 1): _retwist(alpha, c), (1, 1): _retwist(neg_f, c)})
        maps.append(d3)
        if len(P) > 3:
            maps.append(_block_hom([tw(P[3])], [tw(P[2]), tw(seq.F)], {(0, 0): _retwist(rho[3], c)}))
        for j in range(4, len(P)):
            maps.append(_retwist(rho[j], c))
    else:
        raise SequenceError("need t <= n - 3 for the cone")
    cone = FreeResolution(maps, S0, augmentation="S/I")
    minimal_maps, base = prune(maps, S0)
    while minimal_maps and not minimal_maps[-1].source.rank:
        minimal_maps.pop()
    minimal = FreeResolution(minimal_maps, base, augmentation="S/I")
    return ConeResult(cone, minimal, cone.is_minimal(), alpha)


def _retwist(h: ModuleHom, c: int) -> ModuleHom:
    src, tgt = twist_module(h.source, -c), twist_module(h.target, -c)
    return ModuleHom(src, tgt, [ModuleElement(tgt, col.components) for col in h.columns], check=False)


def cone_numerator_matches_formula(seq: BourbakiSequence, cone: ConeResult) -> bool:
    return cone.cone.hilbert_numerator() == q_polynomial(seq.params)


# -- depth zero --------------------------------------------------------------

@dataclass
class DepthZeroReport:
    n: int
    kernel_equals_E2: bool
    refused: bool
    message: str


def depth_zero_check(n: int) -> DepthZeroReport:
    """At ``t = 0`` the kernel of the (unique up to scalar) ``φ ∈ 𝒜`` on ``K_1`` is ``E_2``.

    Every candidate ``β`` from that kernel therefore lies in ``E_2`` and the
    witness is refused.
    """
    ring = PolynomialRing(n)
    a = family_A_generator(ring, 0, range(1, n + 1))
    phi = assemble_phi(ring, 0, {}, a_form=a)
    K = kernel(phi.as_hom())
    E2 = Submodule(phi.source(), koszul_differential(ring, 2).columns)
    equal = submodule_equal(K, E2)
    try:
        kernel_condition_check(BourbakiWitness(phi, list(K.generators)))
        refused, msg = False, "witness accepted"
    except InadmissibleWitness as exc:
        refused, msg = True, str(exc)
    return DepthZeroReport(n, equal, refused, msg)
