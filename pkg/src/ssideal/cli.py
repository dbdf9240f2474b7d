"""Command-line front end: TOML fixtures in, JSON verification reports out.

Exit codes: 0 all checks pass, 1 a check fails, 2 parse error, 3 engine abort.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .bourbaki import (BourbakiWitness, CheckResult, InadmissibleWitness, SequenceError,
                       build_sequence, extract_ideal, kernel_condition_check,
                       mapping_cone_resolution, nontriviality_check, verify_long_bourbaki)
from .groebner import DegreeCapExceeded
from .invariants import BourbakiParameters, identity_suite, numerical_conditions, q_polynomial
from .koszul import (PhiAssemblyError, assemble_phi, differential_table, koszul_module,
                     parse_dual_form, parse_koszul_element)
from .modules import ModuleElement
from .poly import ParseError, Polynomial, PolynomialRing, parse_polynomial, parse_terms

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_ABORT = 0, 1, 2, 3


class FixtureError(ValueError):
    """Malformed fixture (unknown key, bad type, unparsable expression)."""


# -- fixture schema ------------------------------------------------------------

_SCHEMA = {
    "name": str, "description": str,
    "ring": {"n": int, "field": str},
    "parameters": {"t": int, "c": int, "d": int, "with_top": bool},
    "phi": {"a": dict, "b": dict, "a_form": str, "b_form": str},
    "witness": {"betas": list, "variants": list},
    "sequence": {"F": list, "G": list, "f": list, "f_variants": list, "g": list},
    "expected": {"ideal": list, "codim": int, "spot_t": int, "spot_N_total": int,
                 "nontrivial": bool, "F": list, "G": list},
}
_VARIANT_KEYS = {"name", "index", "beta", "note"}
_F_VARIANT_KEYS = {"name", "f", "note"}


def _check_keys(table: dict, schema: dict, where: str) -> None:
    for key, value in table.items():
        if key not in schema:
            raise FixtureError(f"unknown key {where}{key!r}")
        want = schema[key]
        if isinstance(want, dict):
            if not isinstance(value, dict):
                raise FixtureError(f"{where}{key} must be a table")
            _check_keys(value, want, f"{where}{key}.")
        elif not isinstance(value, want) or (want is int and isinstance(value, bool)):
            raise FixtureError(f"{where}{key} must be of type {want.__name__}")


@dataclass
class BetaVariant:
    name: str
    index: int
    beta: str
    note: str = ""


@dataclass
class FVariant:
    name: str
    f: List[str]
    note: str = ""


@dataclass
class FixtureFile:
    """Parsed fixture; everything except ring and parameters is optional."""

    name: str
    n: int
    field: str
    t: int
    c: Optional[int]
    d: int
    with_top: Optional[bool]
    a: Dict[Tuple[int, ...], str] = field(default_factory=dict)
    b: Optional[Dict[Tuple[int, ...], str]] = None
    a_form: Optional[str] = None
    b_form: Optional[str] = None
    betas: List[str] = field(default_factory=list)
    variants: List[BetaVariant] = field(default_factory=list)
    F: Optional[List[int]] = None
    G: Optional[List[int]] = None
    f: Optional[List[str]] = None
    f_variants: List[FVariant] = field(default_factory=list)
    g: Optional[List[str]] = None
    expected: dict = field(default_factory=dict)

    @property
    def characteristic(self) -> int:
        f = self.field.replace(" ", "").upper()
        if f in ("QQ", "Q"):
            return 0
        if f.startswith("GF(") and f.endswith(")"):
            return int(f[3:-1])
        raise FixtureError(f"unknown field {self.field!r}")

    def ring(self) -> PolynomialRing:
        return PolynomialRing(self.n, self.characteristic)

    def has_top(self) -> bool:
        if self.with_top is not None:
            return self.with_top
        return self.b is not None or self.b_form is not None

    def blocks(self) -> List[Tuple[int, int]]:
        out = [(self.t + 1, 0)]
        if self.has_top():
            out.append((self.n - 1, self.d))
        return out


def _index_key(key: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in key.replace(" ", "").split(",") if x)
    except ValueError:
        raise FixtureError(f"bad index set {key!r}; expected e.g. \"1,2,3\"") from None


def parse_fixture_text(text: str, name: str = "<fixture>") -> FixtureFile:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise FixtureError(f"TOML syntax: {exc}") from None
    _check_keys(data, _SCHEMA, "")
    for req in ("ring", "parameters"):
        if req not in data:
            raise FixtureError(f"missing table [{req}]")
    ring, par = data["ring"], data["parameters"]
    if "n" not in ring or "t" not in par:
        raise FixtureError("ring.n and parameters.t are required")
    phi = data.get("phi", {})
    wit = data.get("witness", {})
    seq = data.get("sequence", {})
    variants = []
    for v in wit.get("variants", []):
        if not isinstance(v, dict) or set(v) - _VARIANT_KEYS or not {"name", "index", "beta"} <= set(v):
            raise FixtureError("witness.variants entries need exactly name, index, beta (and optional note)")
        variants.append(BetaVariant(str(v["name"]), int(v["index"]), str(v["beta"]), str(v.get("note", ""))))
    f_variants = []
    for v in seq.get("f_variants", []):
        if not isinstance(v, dict) or set(v) - _F_VARIANT_KEYS or not {"name", "f"} <= set(v):
            raise FixtureError("sequence.f_variants entries need name and f (and optional note)")
        f_variants.append(FVariant(str(v["name"]), [str(x) for x in v["f"]], str(v.get("note", ""))))
    return FixtureFile(
        name=data.get("name", name), n=ring["n"], field=ring.get("field", "QQ"),
        t=par["t"], c=par.get("c"), d=par.get("d", 0), with_top=par.get("with_top"),
        a={_index_key(k): str(v) for k, v in phi.get("a", {}).items()},
        b=None if "b" not in phi else {_index_key(k): str(v) for k, v in phi["b"].items()},
        a_form=phi.get("a_form"), b_form=phi.get("b_form"),
        betas=[str(b) for b in wit.get("betas", [])], variants=variants,
        F=seq.get("F"), G=seq.get("G"), f=seq.get("f"), f_variants=f_variants, g=seq.get("g"),
        expected=data.get("expected", {}))


def load_fixture(path) -> FixtureFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FixtureError(f"cannot read {path}: {exc.strerror}") from None
    return parse_fixture_text(text, p.stem)


# -- building domain values ------------------------------------------------------

def build_phi(fx: FixtureFile, ring: PolynomialRing):
    a_coeffs = {L: parse_polynomial(s, ring) for L, s in fx.a.items()}
    b_coeffs = None
    if fx.b is not None:
        b_coeffs = {}
        for key, s in fx.b.items():
            if len(key) != 2:
                raise FixtureError(f"phi.b keys are pairs i,j; got {key}")
            b_coeffs[key] = parse_polynomial(s, ring)
    elif fx.has_top() and fx.b_form is None:
        b_coeffs = {}
    a_form = parse_dual_form(fx.a_form, ring, fx.t + 1) if fx.a_form else None
    b_form = parse_dual_form(fx.b_form, ring, fx.n - 1) if fx.b_form else None
    return assemble_phi(ring, fx.t, a_coeffs, b_coeffs, d=fx.d, a_form=a_form, b_form=b_form)


def parse_free_element(text: str, module, symbol: str = "m") -> ModuleElement:
    """``poly*m[i] + ...`` with 1-based indices into ``module``."""
    ring = module.ring
    comps: List[list] = [[] for _ in range(module.rank)]
    for coeff, exps, basis in parse_terms(text, ring.n, allow_basis=True):
        if basis is None or basis[0] != symbol or len(basis[1]) != 1:
            raise ParseError(f"every term needs a basis symbol {symbol}[i]", text, 0)
        i = basis[1][0]
        if not 1 <= i <= module.rank:
            raise ParseError(f"{symbol}[{i}] out of range 1..{module.rank}", text, 0)
        comps[i - 1].append((exps, coeff))
    return ModuleElement(module, tuple(Polynomial.from_terms(ring, terms) for terms in comps))


# -- verify ----------------------------------------------------------------------

@dataclass
class Report:
    fixture: str
    checks: List[dict] = field(default_factory=list)
    info: Dict[str, object] = field(default_factory=dict)
    error: Optional[dict] = None

    def add(self, res: CheckResult) -> None:
        self.checks.append(res.as_dict())

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_PARSE if self.error["kind"] == "parse" else EXIT_ABORT
        return EXIT_OK if all(c["status"] == "pass" for c in self.checks) else EXIT_FAIL

    def as_dict(self) -> dict:
        out = {"fixture": self.fixture, "checks": self.checks, "info": self.info}
        if self.error is not None:
            out["error"] = self.error
        out["exit_code"] = self.exit_code
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"


def _candidate_betas(fx: FixtureFile) -> List[Tuple[str, List[str]]]:
    """Listed betas first, then each variant substituted at its index."""
    out = [("as_listed", list(fx.betas))]
    for v in fx.variants:
        if not 1 <= v.index <= len(fx.betas):
            raise FixtureError(f"variant {v.name!r} index {v.index} out of range")
        betas = list(fx.betas)
        betas[v.index - 1] = v.beta
        out.append((v.name, betas))
    return out


def select_witness(fx: FixtureFile, phi, kernel_tail: str, report: Report):
    """Try every β reading; keep the first that is homogeneous and satisfies the kernel condition."""
    ring = phi.ring
    chosen, chosen_check, tried = None, None, []
    for name, texts in _candidate_betas(fx):
        betas = [parse_koszul_element(s, ring, fx.blocks()) for s in texts]
        inhom = [i + 1 for i, b in enumerate(betas) if b.degree() is None]
        entry = {"variant": name, "homogeneous": not inhom}
        if inhom:
            entry["inhomogeneous_betas"] = inhom
            tried.append(entry)
            continue
        w = BourbakiWitness(phi, betas)
        res = kernel_condition_check(w, kernel_tail=kernel_tail, expected_c=fx.c)
        entry["kernel_condition"] = res.status
        tried.append(entry)
        if chosen is None and res.ok:
            chosen, chosen_check = w, res
        if chosen_check is None:
            chosen_check = res
        if chosen is not None and not fx.variants:
            break
    if len(tried) > 1:
        report.info["witness_variants"] = tried
        if chosen is not None:
            report.info["witness_variant_selected"] = next(
                e["variant"] for e in tried if e.get("kernel_condition") == "pass")
    if chosen_check is None:
        chosen_check = CheckResult("kernel_condition", False, "Ker φ", "<β> + tail",
                                   "no homogeneous reading of the witness")
    return chosen, chosen_check


def select_sequence(fx: FixtureFile, w: BourbakiWitness, report: Optional[Report] = None):
    """Assemble the sequence, trying each shipped reading of ``f``; ``F`` from ``ker g`` if none."""
    from .modules import free_module
    f_options: List[Tuple[str, Optional[List[str]]]] = []
    if fx.f is not None:
        f_options.append(("as_listed", fx.f))
    f_options += [(v.name, v.f) for v in fx.f_variants]
    if not f_options:
        f_options.append(("kernel_generators", None))
    G = free_module(w.ring, [b.degree() for b in w.betas])
    seq = rep = None
    tried = []
    for name, texts in f_options:
        imgs = None if texts is None else [parse_free_element(s, G, "m") for s in texts]
        if imgs is not None and any(v.degree() is None for v in imgs):
            tried.append({"variant": name, "homogeneous": False})
            continue
        cand = build_sequence(w, imgs)
        r = verify_long_bourbaki(cand)
        tried.append({"variant": name, "homogeneous": True, "sequence": "pass" if r.ok else "fail"})
        if seq is None or (r.ok and not rep.ok):
            seq, rep = cand, r
    if report is not None and len(tried) > 1:
        report.info["f_variants"] = tried
        ok_names = [e["variant"] for e in tried if e.get("sequence") == "pass"]
        if ok_names:
            report.info["f_variant_selected"] = ok_names[0]
    return seq, rep


def sequence_from_fixture(path, kernel_tail: str = "Et2"):
    """``(fixture, witness, sequence, report)`` for a fixture file, variants resolved."""
    fx = load_fixture(path)
    report = Report(fx.name)
    phi = build_phi(fx, fx.ring())
    w, _ = select_witness(fx, phi, kernel_tail, report)
    if w is None:
        raise SequenceError(f"no admissible witness in {path}")
    seq, _ = select_sequence(fx, w, report)
    return fx, w, seq, report


def _twists_check(name: str, got: Sequence[int], want: Optional[Sequence[int]]) -> Optional[CheckResult]:
    if want is None:
        return None
    return CheckResult(name, sorted(got) == sorted(want), sorted(got), sorted(want))


def run_verify(fx: FixtureFile, kernel_tail: str = "Et2", expect_nontrivial: bool = False) -> Report:
    from .cohomology import local_cohomology_profile, single_spot_check
    from .hilbert import monomial_ideal_numerator
    from .submodules import ideal, submodule_equal

    report = Report(fx.name)
    ring = fx.ring()
    phi = build_phi(fx, ring)
    report.info["phi"] = {"t": phi.t, "c": phi.c, "d": phi.d, "kind": "E_plus_E" if phi.with_top else "E_only"}

    w, kc = select_witness(fx, phi, kernel_tail, report)
    report.add(kc)
    if w is None:
        return report

    seq, rep = select_sequence(fx, w, report)
    if seq is None:
        report.add(CheckResult("sequence", False, None, None, "no homogeneous reading of f"))
        return report
    for c in rep.checks:
        report.add(c)
    report.info["F"] = seq.F.describe()
    report.info["G"] = seq.G.describe()
    report.info["f"] = [str(v) for v in seq.f.columns]
    for chk in (_twists_check("F_twists", seq.F.twists, fx.F), _twists_check("G_twists", seq.G.twists, fx.G),
                _twists_check("F_twists_expected", seq.F.twists, fx.expected.get("F")),
                _twists_check("G_twists_expected", seq.G.twists, fx.expected.get("G"))):
        if chk is not None:
            report.add(chk)
    if not rep.ok:
        return report

    if phi.with_top:
        want = True if expect_nontrivial else fx.expected.get("nontrivial")
        report.add(nontriviality_check(w).as_check(want))
        for cond in numerical_conditions(seq.params):
            report.add(CheckResult(f"numerical_{cond.name}", cond.holds, cond.lhs, cond.rhs,
                                   notes={"delta": cond.delta}))
    elif expect_nontrivial:
        report.add(CheckResult("nontriviality", False, "E_only", "non_trivial",
                               notes={"reason": "non-triviality needs M = E_{t+1} ⊕ E_{n-1}(d)"}))

    I = extract_ideal(seq)
    if "ideal" in fx.expected:
        want = ideal(ring, [parse_polynomial(s, ring) for s in fx.expected["ideal"]])
        report.add(CheckResult("ideal_equals_expected", submodule_equal(I.submodule(), want),
                               len(I.generators), len(fx.expected["ideal"])))
    if "codim" in fx.expected:
        report.add(CheckResult("codim", I.codim == fx.expected["codim"], I.codim, fx.expected["codim"]))

    cone = mapping_cone_resolution(seq)
    Q = cone.hilbert_numerator()
    lead = [m for m in I.submodule().leading_terms()]
    Qmono = monomial_ideal_numerator([e for e, _ in lead], ring.n)
    report.add(CheckResult("cone_exact", cone.cone.certify().ok and cone.minimal.certify().ok,
                           cone.cone.betti_table().totals(), None,
                           notes={"minimal_betti": cone.minimal.betti_table().totals(),
                                  "cone_is_minimal": cone.cone_is_minimal}))
    report.add(CheckResult("hilbert_numerator_formula", cone.cone.hilbert_numerator() == q_polynomial(seq.params),
                           str(cone.cone.hilbert_numerator()), str(q_polynomial(seq.params))))
    report.add(CheckResult("hilbert_two_oracles", Q == Qmono, str(Q), str(Qmono)))

    prof = local_cohomology_profile(I)
    spot = single_spot_check(prof)
    report.add(CheckResult("depth_consistency", prof.consistent, prof.depth, prof.depth_from_resolution))
    spot_ok = spot.single_spot
    if spot_ok and "spot_t" in fx.expected:
        spot_ok = spot.t == fx.expected["spot_t"]
    if spot_ok and "spot_N_total" in fx.expected:
        spot_ok = spot.N.total_dimension() == fx.expected["spot_N_total"]
    report.add(CheckResult("single_spot", spot_ok, spot.as_dict(),
                           {k: fx.expected[k] for k in ("spot_t", "spot_N_total") if k in fx.expected} or None))
    I.spot_type = spot.as_dict()
    report.info["ideal"] = I.as_dict()
    report.info["local_cohomology"] = prof.as_dict()
    report.info["betti_table"] = str(cone.minimal.betti_table()).split("\n")
    report.info["hilbert_numerator"] = str(Q)
    return report


def verify_path(path, kernel_tail: str = "Et2", expect_nontrivial: bool = False) -> Report:
    try:
        fx = load_fixture(path)
    except (FixtureError, ParseError) as exc:
        rep = Report(Path(path).stem)
        rep.error = {"kind": "parse", "message": str(exc)}
        return rep
    try:
        return run_verify(fx, kernel_tail, expect_nontrivial)
    except (FixtureError, ParseError, PhiAssemblyError, SequenceError) as exc:
        rep = Report(fx.name)
        rep.error = {"kind": "parse", "message": str(exc)}
        return rep
    except InadmissibleWitness as exc:
        rep = Report(fx.name)
        rep.add(CheckResult("kernel_condition", False, None, None, str(exc),
                            notes={"reason": "inadmissible witness"}))
        return rep
    except (DegreeCapExceeded, ArithmeticError, RecursionError) as exc:
        rep = Report(fx.name)
        rep.error = {"kind": "abort", "message": f"{type(exc).__name__}: {exc}"}
        return rep


# -- commands ---------------------------------------------------------------------

def _summary(rep: Report) -> str:
    lines = [f"fixture {rep.fixture}"]
    if rep.error:
        lines.append(f"  error ({rep.error['kind']}): {rep.error['message']}")
    for c in rep.checks:
        extra = f"  [{c['witness']}]" if c.get("witness") else ""
        if c["status"] == "fail" and c["notes"].get("reason"):
            extra += f"  ({c['notes']['reason']})"
        lines.append(f"  {c['status']:4}  {c['check']}{extra}")
    ideal_info = rep.info.get("ideal")
    if ideal_info:
        lines.append(f"  I = ({', '.join(ideal_info['generators'])})")
        lines.append(f"  codim {ideal_info['codim']}")
        spot = ideal_info.get("spot_type", {})
        if spot.get("single_spot"):
            total = spot["N"]["total"]
            lines.append(f"  single spot type ({spot['t']}, {'K' if total == 1 else f'N of length {total}'})")
    for key in ("witness_variant_selected", "f_variant_selected"):
        if key in rep.info:
            lines.append(f"  {key.replace('_', ' ')}: {rep.info[key]}")
    lines.append(f"exit {rep.exit_code}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    rep = verify_path(args.file, args.kernel_tail, args.expect_nontrivial)
    if args.report:
        Path(args.report).write_text(rep.to_json(), encoding="utf-8")
    print(rep.to_json() if args.json else _summary(rep))
    return rep.exit_code


def _int_list(text: str) -> Tuple[int, ...]:
    text = (text or "").strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise FixtureError(f"malformed integer list {text!r}") from None


def cmd_numerical(args) -> int:
    try:
        a, b = _int_list(args.a), _int_list(args.b)
    except FixtureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    params = BourbakiParameters(args.n, args.t, args.c, args.d, a, b)
    rows = [c.as_dict() for c in numerical_conditions(params)]
    for c, row in zip(numerical_conditions(params), rows):
        row["delta"] = c.delta
        extra = "" if c.holds else f"  (delta {c.delta})"
        print(f"{c.name}: {c.lhs} = {c.rhs}  {'pass' if c.holds else 'fail'}{extra}")
    q1 = numerical_conditions(params)[0]
    print(f"  q = {params.q}, p + C(n-1,t) + n-2 = {params.p} + {q1.rhs - params.p - args.n + 2} + {args.n - 2}")
    if args.report:
        Path(args.report).write_text(json.dumps({"checks": rows}, indent=2) + "\n", encoding="utf-8")
    return EXIT_OK if all(r["status"] == "pass" for r in rows) else EXIT_FAIL


def cmd_identities(args) -> int:
    if args.max_n > 60:
        print("error: --max-n must be at most 60", file=sys.stderr)
        return EXIT_PARSE
    rep = identity_suite(args.max_n, args.min_n)
    for name, count in sorted(rep.checks.items()):
        bad = sum(1 for m in rep.mismatches if m["identity"] == name)
        print(f"{name}: {count - bad}/{count}")
    for m in rep.mismatches[:10]:
        print(f"  mismatch {m}")
    print("all pass" if rep.ok else f"{len(rep.mismatches)} mismatches")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_koszul(args) -> int:
    if not 1 <= args.n <= 12 or not 0 <= args.k <= args.n:
        print("error: need 1 <= n <= 12 and 0 <= k <= n", file=sys.stderr)
        return EXIT_PARSE
    ring = PolynomialRing(args.n)
    K = koszul_module(ring, args.k, args.d)
    twists = sorted(set(K.twists))
    print(f"K_{args.k} on n={args.n}: rank {K.rank}, twists all {twists[0] if len(twists) == 1 else twists}")
    if args.show_differential:
        if args.k == 0:
            print("d_0 = 0")
        for line in differential_table(ring, args.k) if args.k else []:
            print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ssideal", description="Long Bourbaki sequences of codimension-3 single spot ideals")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify a fixture file")
    v.add_argument("file")
    v.add_argument("--kernel-tail", choices=["Et1", "Et2"], default="Et2")
    v.add_argument("--expect-nontrivial", action="store_true")
    v.add_argument("--report", help="write the JSON report here")
    v.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    v.set_defaults(func=cmd_verify)

    nm = sub.add_parser("numerical", help="check the three numerical conditions")
    for name in ("n", "t"):
        nm.add_argument(f"--{name}", type=int, required=True)
    nm.add_argument("--c", type=int, default=0)
    nm.add_argument("--d", type=int, default=0)
    nm.add_argument("--a", default="", help="comma-separated twists of F")
    nm.add_argument("--b", default="", help="comma-separated twists of G")
    nm.add_argument("--report")
    nm.set_defaults(func=cmd_numerical)

    it = sub.add_parser("identities", help="closed forms against brute-force alternating sums")
    it.add_argument("--max-n", type=int, default=20)
    it.add_argument("--min-n", type=int, default=4)
    it.set_defaults(func=cmd_identities)

    kz = sub.add_parser("koszul", help="inspect a Koszul module")
    kz.add_argument("--n", type=int, required=True)
    kz.add_argument("--k", type=int, required=True)
    kz.add_argument("--d", type=int, default=0)
    kz.add_argument("--show-differential", action="store_true")
    kz.set_defaults(func=cmd_koszul)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
