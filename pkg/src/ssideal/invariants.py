"""Hilbert numerators and the closed-form numerical conditions.

``Hilb(S/I, λ) = Q(λ) / (1 - λ)^n`` with ``Q(λ) = Σ (-1)^i β_{i,j} λ^j``.  For
the mapping-cone resolution of a long Bourbaki sequence
``0 → F → G → E_{t+1} ⊕ E_{n-1}(d) → I(c) → 0`` the numerator has the closed
form implemented by :func:`q_polynomial`, and ``codim I = 3`` is equivalent to
``Q(1) = Q'(1) = Q''(1) = 0`` which :func:`numerical_conditions` evaluates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple


def binom_safe(n: int, k: int) -> int:
    """Binomial coefficient that is 0 whenever ``k < 0`` or ``k > n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


class HilbertNumerator:
    """Integer Laurent polynomial in λ (negative exponents allowed)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        self.coeffs: Dict[int, int] = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "HilbertNumerator":
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> "HilbertNumerator":
        return cls({0: 1})

    @classmethod
    def from_list(cls, coeffs: Sequence[int], start: int = 0) -> "HilbertNumerator":
        return cls({start + i: c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "HilbertNumerator") -> "HilbertNumerator":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return HilbertNumerator(out)

    def __neg__(self):
        return HilbertNumerator({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return HilbertNumerator({k: v * other for k, v in self.coeffs.items()})
        out: Dict[int, int] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return HilbertNumerator(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "HilbertNumerator":
        """Multiply by λ^k."""
        return HilbertNumerator({e + k: v for e, v in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, HilbertNumerator):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def min_exp(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def max_exp(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def __call__(self, x):
        return sum(v * Fraction(x) ** k for k, v in self.coeffs.items())

    def derivative(self) -> "HilbertNumerator":
        return HilbertNumerator({k - 1: k * v for k, v in self.coeffs.items() if k})

    def derivative_at_one(self, order: int = 0) -> int:
        """Exact ``Q^{(order)}(1)`` (falling-factorial sum, no floats)."""
        total = 0
        for k, v in self.coeffs.items():
            ff = 1
            for i in range(order):
                ff *= k - i
            total += v * ff
        return total

    def divide_one_minus(self) -> Tuple["HilbertNumerator", "HilbertNumerator"]:
        """Return ``(q, r)`` with ``self = (1-λ) q + r`` and ``r = self(1) λ^min``."""
        if not self.coeffs:
            return HilbertNumerator(), HilbertNumerator()
        lo, hi = self.min_exp(), self.max_exp()
        # synthetic division by (λ - 1), top coefficient first
        acc = 0
        quot = {}
        for k in range(hi, lo, -1):
            acc += self.coeffs.get(k, 0)
            quot[k - 1] = -acc
        rem = acc + self.coeffs.get(lo, 0)
        return HilbertNumerator(quot), HilbertNumerator({lo: rem})

    def pole_order_reduction(self, limit: int) -> int:
        """Largest ``k <= limit`` with ``(1-λ)^k`` dividing ``self``."""
        k = 0
        cur = self
        while k < limit and not cur.is_zero():
            q, r = cur.divide_one_minus()
            if not r.is_zero():
                break
            cur, k = q, k + 1
        return k if not cur.is_zero() else limit

    def series(self, n: int, lo: int, hi: int) -> Dict[int, int]:
        """Coefficients of ``self / (1-λ)^n`` in degrees ``lo..hi``."""
        out = {}
        for d in range(lo, hi + 1):
            total = 0
            for k, v in self.coeffs.items():
                m = d - k
                if m >= 0:
                    total += v * (math.comb(m + n - 1, n - 1) if n > 0 else (1 if m == 0 else 0))
            out[d] = total
        return out

    def finite_hilbert_function(self, n: int) -> Optional[Dict[int, int]]:
        """If ``self/(1-λ)^n`` is a Laurent polynomial return its coefficients."""
        cur = self
        for _ in range(n):
            if cur.is_zero():
                break
            q, r = cur.divide_one_minus()
            if not r.is_zero():
                return None
            cur = q
        return dict(sorted(cur.coeffs.items()))

    def krull_dimension(self, n: int) -> int:
        """Dimension of a module with Hilbert series ``self/(1-λ)^n``; -1 for zero."""
        if self.is_zero():
            return -1
        return n - self.pole_order_reduction(n)

    def to_list(self) -> List[int]:
        if not self.coeffs:
            return []
        return [self.coeffs.get(k, 0) for k in range(self.min_exp(), self.max_exp() + 1)]

    def __repr__(self):
        return f"HilbertNumerator({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            mon = "" if k == 0 else ("λ" if k == 1 else f"λ^{k}")
            mag = abs(v)
            body = (str(mag) if mag != 1 or not mon else "") + mon
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


ONE_MINUS_LAMBDA = HilbertNumerator({0: 1, 1: -1})


def koszul_alternating(n: int, lo: int, power: int) -> int:
    """``Σ_{i=lo}^{n} (-1)^i C(n,i) i^power`` by direct summation."""
    return sum((-1) ** i * math.comb(n, i) * i ** power for i in range(max(lo, 0), n + 1))


@dataclass(frozen=True)
class BourbakiParameters:
    """Twist data of ``0 → ⊕S(-a_i) → ⊕S(-b_i) → E_{t+1} ⊕ E_{n-1}(d) → I(c) → 0``."""

    n: int
    t: int
    c: int = 0
    d: int = 0
    a: Tuple[int, ...] = ()
    b: Tuple[int, ...] = ()
    with_top: bool = True  # False for M = E_{t+1} alone

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return len(self.b)

    def expected_p(self) -> int:
        if self.with_top:
            return self.q - self.n + 2 - binom_safe(self.n - 1, self.t)
        return self.q + 1 - binom_safe(self.n - 1, self.t)


def q_polynomial(params: BourbakiParameters) -> HilbertNumerator:
    """Closed-form numerator of ``Hilb(S/I)`` for the mapping-cone resolution."""
    n, t, c, d = params.n, params.t, params.c, params.d
    Q = HilbertNumerator.one()
    if params.with_top:
        Q = Q + HilbertNumerator({n - 1 + c - d: -n}) + HilbertNumerator({n + c - d: 1})
    for b in params.b:
        Q = Q + HilbertNumerator.monomial(b + c)
    for a in params.a:
        Q = Q - HilbertNumerator.monomial(a + c)
    sign = (-1) ** t
    tail = {c + i: sign * (-1) ** i * math.comb(n, i) for i in range(t + 1, n + 1)}
    return Q + HilbertNumerator(tail)


@dataclass
class Condition:
    name: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def delta(self) -> int:
        return self.lhs - self.rhs

    def as_dict(self) -> dict:
        return {"check": self.name, "status": "pass" if self.holds else "fail",
                "lhs": self.lhs, "rhs": self.rhs}


def numerical_conditions(params: BourbakiParameters) -> Tuple[Condition, Condition, Condition]:
    """The three equalities characterising ``codim I = 3``.

    1. ``q = p + C(n-1,t) + n - 2``
    2. ``Σb - Σa = n² - (2+d)n + c + d + C(n-2,t-1) + C(n-1,t)·t``
    3. ``Σb² - Σa² = n³ - (3+2d)n² + (d²+4d+1)n - c² - d²
       + C(n-1,t)(t+1)² - C(n-2,t)(2t+1) - 2C(n-3,t-1)``
    """
    n, t, c, d = params.n, params.t, params.c, params.d
    B = binom_safe
    cond1 = Condition("rank", params.q, params.p + B(n - 1, t) + n - 2)
    cond2 = Condition("first_moment", sum(params.b) - sum(params.a),
                      n * n - (2 + d) * n + c + d + B(n - 2, t - 1) + B(n - 1, t) * t)
    cond3 = Condition(
        "second_moment",
        sum(x * x for x in params.b) - sum(x * x for x in params.a),
        n ** 3 - (3 + 2 * d) * n ** 2 + (d * d + 4 * d + 1) * n - c * c - d * d
        + B(n - 1, t) * (t + 1) ** 2 - B(n - 2, t) * (2 * t + 1) - 2 * B(n - 3, t - 1))
    return cond1, cond2, cond3


def first_moment_closed(n: int, t: int) -> int:
    """``(-1)^{t+1} Σ_{i=t+1}^n (-1)^i C(n,i) i`` in closed form."""
    return binom_safe(n - 2, t - 1) + binom_safe(n - 1, t) * t


def second_moment_closed(n: int, t: int) -> int:
    """``(-1)^{t+1} Σ_{i=t+1}^n (-1)^i C(n,i) i²`` in closed form."""
    return (binom_safe(n - 1, t) * (t + 1) ** 2 - binom_safe(n - 2, t) * (2 * t + 1)
            - 2 * binom_safe(n - 3, t - 1))


def syzygy_rank_alternating(n: int, t: int) -> int:
    """``rank E_t`` from the Koszul tail: ``Σ_{i=t}^n (-1)^{i-t} C(n,i)``."""
    return sum((-1) ** (i - t) * math.comb(n, i) for i in range(t, n + 1))


@dataclass
class IdentityReport:
    checks: Dict[str, int] = field(default_factory=dict)
    mismatches: List[dict] = field(default_factory=list)

    @property
    def cases(self) -> int:
        return sum(self.checks.values())

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {"check": "identities", "status": "pass" if self.ok else "fail",
                "lhs": self.cases - len(self.mismatches), "rhs": self.cases,
                "notes": {"checks": dict(self.checks), "mismatches": self.mismatches[:10]}}


def identity_suite(n_max: int, n_min: int = 4) -> IdentityReport:
    """Compare closed forms with brute-force alternating sums for ``0 <= t <= n``.

    For every ``n_min <= n <= n_max`` and ``0 <= t <= n`` this checks the
    first-moment identity (both alternating sums against the closed form), the
    second-moment identity, and for ``t >= 1`` the rank formula
    ``rank E_t = C(n-1,t-1)`` together with its recursion
    ``α(n,t) - α(n-1,t) = α(n-1,t-1)``.
    """
    rep = IdentityReport()

    def record(name, n, t, ok, values):
        rep.checks[name] = rep.checks.get(name, 0) + 1
        if not ok:
            rep.mismatches.append({"identity": name, "n": n, "t": t, "values": list(values)})

    for n in range(n_min, n_max + 1):
        for t in range(0, n + 1):
            sign = (-1) ** (t + 1)
            upper = sign * koszul_alternating(n, t + 1, 1)
            lower = (-1) ** t * sum((-1) ** i * math.comb(n, i) * i for i in range(0, t + 1))
            closed1 = first_moment_closed(n, t)
            record("first_moment", n, t, upper == lower == closed1, (upper, lower, closed1))
            brute2 = sign * koszul_alternating(n, t + 1, 2)
            closed2 = second_moment_closed(n, t)
            record("second_moment", n, t, brute2 == closed2, (brute2, closed2))
            if t >= 1:
                alpha = syzygy_rank_alternating(n, t)
                record("rank_E", n, t, alpha == binom_safe(n - 1, t - 1), (alpha, binom_safe(n - 1, t - 1)))
                if n >= 1:
                    diff = alpha - syzygy_rank_alternating(n - 1, t)
                    rec = syzygy_rank_alternating(n - 1, t - 1)
                    record("rank_recursion", n, t, diff == rec, (diff, rec))
    return rep


# -- random parameter draws ----------------------------------------------------

def _base_numerator(n: int, t: int, c: int, d: int, with_top: bool = True) -> HilbertNumerator:
    """``q_polynomial`` without the ``a``/``b`` contributions."""
    return q_polynomial(BourbakiParameters(n, t, c, d, (), (), with_top))


def random_parameters(rng, max_n: int = 10, mode: str = "rank") -> Optional[BourbakiParameters]:
    """One random parameter set with non-negative ``λ``-exponents, or ``None`` if the draw is unusable.

    ``mode``: ``"rank"`` enforces condition 1 only; ``"first_moment"`` also
    solves condition 2 through the last ``b``; ``"codim3"`` reads ``a``, ``b``
    off ``(1-λ)^3 R(λ) - base`` so all three conditions hold.
    """
    n = rng.randint(4, max_n)
    t = rng.randint(0, n - 3)
    c = rng.randint(0, 4)
    d = rng.randint(-2, 2)
    if n - 1 + c - d < 0:
        return None
    if mode == "codim3":
        lo = c + 1
        R = HilbertNumerator({lo + k: rng.randint(-3, 3) for k in range(rng.randint(1, 4))})
        cube = HilbertNumerator({0: 1, 1: -3, 2: 3, 3: -1})
        diff = cube * R - _base_numerator(n, t, c, d)
        if diff.min_exp() < c:
            return None
        a, b = [], []
        for e, v in diff.coeffs.items():
            (b if v > 0 else a).extend([e - c] * abs(v))
        return BourbakiParameters(n, t, c, d, sorted(a), sorted(b))
    p = rng.randint(0, 5)
    q = p + binom_safe(n - 1, t) + n - 2
    a = [rng.randint(1, n + 6) for _ in range(p)]
    b = [rng.randint(1, n + 4) for _ in range(q)]
    params = BourbakiParameters(n, t, c, d, a, b)
    if mode == "first_moment":
        gap = numerical_conditions(params)[1]
        b[-1] -= gap.delta
        if b[-1] + c < 0:
            return None
        params = BourbakiParameters(n, t, c, d, a, b)
    return params


@dataclass
class DerivativeSweep:
    cases: int = 0
    by_mode: Dict[str, int] = field(default_factory=dict)
    positives: Dict[str, int] = field(default_factory=dict)
    mismatches: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def derivative_sweep(cases: int = 500, max_n: int = 10, seed: int = 0) -> DerivativeSweep:
    """``Q(1) = 0`` under condition 1; ``Q'(1) = 0`` iff condition 2; given 2, ``Q''(1) = 0`` iff condition 3."""
    import random
    rng = random.Random(seed)
    modes = ("rank", "first_moment", "codim3")
    rep = DerivativeSweep()
    while rep.cases < cases:
        mode = modes[rep.cases % len(modes)]
        params = random_parameters(rng, max_n, mode)
        if params is None:
            continue
        Q = q_polynomial(params)
        if Q.min_exp() < 0:
            continue
        rep.cases += 1
        rep.by_mode[mode] = rep.by_mode.get(mode, 0) + 1
        c1, c2, c3 = numerical_conditions(params)
        q0, q1, q2 = Q(1), Q.derivative_at_one(1), Q.derivative_at_one(2)
        for name, ok in (("cond1", c1.holds), ("cond2", c2.holds), ("cond3", c2.holds and c3.holds)):
            if ok:
                rep.positives[name] = rep.positives.get(name, 0) + 1
        bad = []
        if c1.holds and q0 != 0:
            bad.append("Q(1)")
        if c1.holds and (q1 == 0) != c2.holds:
            bad.append("Q'(1)")
        if c1.holds and c2.holds and (q2 == 0) != c3.holds:
            bad.append("Q''(1)")
        if bad:
            rep.mismatches.append({"params": repr(params), "failed": bad})
    return rep
