"""Exact sparse multivariate polynomials over QQ or GF(p).

Monomials are exponent tuples, coefficients are ``gmpy2.mpq`` (rationals) or
plain ``int`` in ``[0, p)`` (prime field).  All values are immutable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import gmpy2
from gmpy2 import mpq

Monomial = Tuple[int, ...]

DEFAULT_PRIME = 32003


class ParseError(ValueError):
    """Syntax error in polynomial text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class _AnyDegree:
    """Degree of the zero polynomial: compatible with every degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANY_DEGREE"

    def __reduce__(self):
        return (_AnyDegree, ())


ANY_DEGREE = _AnyDegree()


@dataclass(frozen=True)
class PolynomialRing:
    """``K[x1..xn]`` with the standard grading; ``characteristic`` 0 means QQ."""

    n: int
    characteristic: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        p = self.characteristic
        if p and not gmpy2.is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")

    @classmethod
    def rationals(cls, n: int) -> "PolynomialRing":
        return cls(n, 0)

    @classmethod
    def prime_field(cls, n: int, p: int = DEFAULT_PRIME) -> "PolynomialRing":
        return cls(n, p)

    @property
    def field_name(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def coerce(self, c):
        p = self.characteristic
        if p:
            if isinstance(c, (int, type(gmpy2.mpz(0)))):
                return int(c) % p
            c = mpq(c)
            return int(c.numerator) * pow(int(c.denominator), -1, p) % p
        return mpq(c)

    def is_zero_coeff(self, c) -> bool:
        return c == 0

    def inverse(self, c):
        p = self.characteristic
        if p:
            return pow(int(c), -1, p)
        return 1 / mpq(c)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {(0,) * self.n: c} if c != 0 else {})

    def var(self, i: int) -> "Polynomial":
        """The variable ``x_i`` (1-based, as printed)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"variable x{i} out of range [1, {self.n}]")
        e = [0] * self.n
        e[i - 1] = 1
        return Polynomial(self, {tuple(e): self.coerce(1)})

    def gens(self) -> List["Polynomial"]:
        return [self.var(i) for i in range(1, self.n + 1)]

    def monomial(self, exps: Iterable[int], c=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.n or min(exps, default=0) < 0:
            raise ValueError(f"bad exponent vector {exps} for n={self.n}")
        return Polynomial(self, {exps: self.coerce(c)}) if c != 0 else self.zero()

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


# --- monomial orders -------------------------------------------------------

GREVLEX = "grevlex"
LEX = "lex"
TOP = "term-over-position"
POT = "position-over-term"


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = GREVLEX
    module_extension: str = TOP

    def __post_init__(self):
        if self.kind not in (GREVLEX, LEX):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.module_extension not in (TOP, POT):
            raise ValueError(f"unknown module extension {self.module_extension!r}")

    def key(self, m: Monomial):
        """Sort key: larger key means larger monomial."""
        if self.kind == GREVLEX:
            return (sum(m), tuple(-e for e in reversed(m)))
        return m

    def module_key(self, m: Monomial, component: int):
        # lower component index wins ties
        if self.module_extension == TOP:
            return (self.key(m), -component)
        return (-component, self.key(m))


DEFAULT_ORDER = MonomialOrder()


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder = DEFAULT_ORDER) -> int:
    """Return 1, 0, -1 as ``a`` is greater than, equal to, less than ``b``."""
    if len(a) != len(b):
        raise ValueError("monomials from different rings")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


# --- polynomials -----------------------------------------------------------

@total_ordering
class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolynomialRing, terms) -> "Polynomial":
        out: Dict[Monomial, object] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for m, c in items:
            m = tuple(m)
            c = out.get(m, 0) + ring.coerce(c)
            if ring.characteristic:
                c %= ring.characteristic
            if c == 0:
                out.pop(m, None)
            else:
                out[m] = c
        return cls(ring, out)

    # -- queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and sum(next(iter(self.terms))) == 0)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.n, 0)

    def degree(self) -> int:
        """Total degree; -1 for zero."""
        return max((sum(m) for m in self.terms), default=-1)

    def homogeneous_degree(self):
        """Common degree of all terms, ``None`` if mixed, ``ANY_DEGREE`` for zero."""
        if not self.terms:
            return ANY_DEGREE
        degs = {sum(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def sorted_terms(self, order: MonomialOrder = DEFAULT_ORDER) -> List[Tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = DEFAULT_ORDER) -> Optional[Monomial]:
        if not self.terms:
            return None
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEFAULT_ORDER):
        lm = self.leading_monomial(order)
        return 0 if lm is None else self.terms[lm]

    def support_variables(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # -- arithmetic
    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._check(other)
        p = self.ring.characteristic
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        if p:
            return Polynomial(self.ring, {m: (p - c) % p for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        p = self.ring.characteristic
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if p:
                    v %= p
                out[m] = v
        return Polynomial(self.ring, {m: c for m, c in out.items() if c != 0})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = self.ring.coerce(c)
        if c == 0:
            return self.ring.zero()
        p = self.ring.characteristic
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, u: Monomial, c=1) -> "Polynomial":
        c = self.ring.coerce(c)
        p = self.ring.characteristic
        out = {}
        for m, v in self.terms.items():
            w = v * c % p if p else v * c
            if w != 0:
                out[tuple(a + b for a, b in zip(m, u))] = w
        return Polynomial(self.ring, out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if ``other`` does not divide."""
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        order = DEFAULT_ORDER
        lm_d = other.leading_monomial(order)
        inv = self.ring.inverse(other.terms[lm_d])
        rem = self
        quot = self.ring.zero()
        while rem:
            lm = rem.leading_monomial(order)
            if not monomial_divides(lm_d, lm):
                raise ArithmeticError("inexact polynomial division")
            u = monomial_div(lm, lm_d)
            c = rem.terms[lm] * inv
            if self.ring.characteristic:
                c %= self.ring.characteristic
            quot = quot + self.ring.monomial(u, c)
            rem = rem - other.mul_monomial(u, c)
        return quot

    def evaluate(self, point) -> object:
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x ** e
            total = total + v
        if self.ring.characteristic:
            total %= self.ring.characteristic
        return total

    def monic(self, order: MonomialOrder = DEFAULT_ORDER) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.inverse(self.leading_coefficient(order)))

    # -- comparison / hashing
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, type(mpq(0)))):
            return self == self.ring.constant(other)
        return NotImplemented

    def __lt__(self, other):
        # only for deterministic sorting
        return self._sort_key() < other._sort_key()

    def _sort_key(self):
        return tuple((DEFAULT_ORDER.key(m), str(c)) for m, c in self.sorted_terms())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset((m, str(c)) for m, c in self.terms.items())))
        return self._hash

    # -- printing
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, n={self.ring.n})"

    def __iter__(self) -> Iterator[Tuple[Monomial, object]]:
        return iter(self.sorted_terms())


def _coeff_str(c, p: int) -> str:
    if p:
        c = int(c)
        return str(c - p if c > p // 2 else c)
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_term(c, m: Monomial, p: int, first: bool) -> str:
    s = _coeff_str(c, p)
    neg = s.startswith("-")
    mag = s[1:] if neg else s
    mono = format_monomial(m)
    if mono:
        body = mono if mag == "1" else f"{mag}*{mono}"
    else:
        body = mag
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    p = f.ring.characteristic
    return "".join(format_term(c, m, p, i == 0) for i, (m, c) in enumerate(f.sorted_terms()))


# --- parsing ---------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<var>x(?P<idx>\d+))|(?P<basis>(?P<bname>e\*|e|m|g)\[(?P<blist>[^\]]*)\])"
    r"|(?P<op>[-+*^/])|(?P<lp>\()|(?P<rp>\)))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group("int") is not None:
            out.append(("int", int(m.group("int")), start))
        elif m.group("var") is not None:
            out.append(("var", int(m.group("idx")), start))
        elif m.group("basis") is not None:
            raw = m.group("blist").strip()
            try:
                idx = tuple(int(s) for s in raw.split(",")) if raw else ()
            except ValueError:
                raise ParseError("bad basis index list", text, start) from None
            out.append(("basis", (m.group("bname"), idx), start))
        elif m.group("op") is not None:
            out.append(("op", m.group("op"), start))
        else:
            raise ParseError("parentheses are not part of the grammar", text, start)
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_terms(text: str, n: int, allow_basis: bool = False):
    """Parse ``term (('+'|'-') term)*`` into ``(sign*coeff, exponents, basis)`` triples.

    ``basis`` is ``None`` or ``(name, indices)`` for a tagged free-module
    symbol such as ``e[1,2]``, ``e*[1,2]`` or ``m[3]``.
    """
    toks = _tokenize(text)
    i = 0
    terms = []

    def peek():
        return toks[i]

    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if peek()[1] == "-" else 1
        i += 1
    while True:
        coeff = 1
        exps = [0] * n
        basis = None
        saw_factor = False
        kind, val, pos = peek()
        if kind == "int":
            coeff = val
            i += 1
            saw_factor = True
            if peek()[0] == "op" and peek()[1] == "/":
                i += 1
                k2, v2, p2 = peek()
                if k2 != "int" or v2 == 0:
                    raise ParseError("expected nonzero integer denominator", text, p2)
                coeff = mpq(coeff, v2)
                i += 1
        while True:
            kind, val, pos = peek()
            if kind == "op" and val == "*":
                if not saw_factor:
                    raise ParseError("unexpected '*'", text, pos)
                i += 1
                kind, val, pos = peek()
                if kind not in ("var", "basis"):
                    raise ParseError("expected a variable after '*'", text, pos)
            if kind == "var":
                if not 1 <= val <= n:
                    raise ParseError(f"variable x{val} out of range [1,{n}]", text, pos)
                i += 1
                e = 1
                if peek()[0] == "op" and peek()[1] == "^":
                    i += 1
                    k2, v2, p2 = peek()
                    if k2 != "int":
                        raise ParseError("expected exponent after '^'", text, p2)
                    e = v2
                    i += 1
                exps[val - 1] += e
                saw_factor = True
            elif kind == "basis":
                if not allow_basis:
                    raise ParseError("basis symbols are not allowed here", text, pos)
                if basis is not None:
                    raise ParseError("more than one basis symbol in a term", text, pos)
                basis = val
                i += 1
                saw_factor = True
            else:
                break
        if not saw_factor:
            raise ParseError("expected a term", text, peek()[2])
        terms.append((sign * coeff, tuple(exps), basis))
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            continue
        raise ParseError(f"unexpected token {val!r}", text, pos)
    return terms


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse the text grammar ``poly := term (('+'|'-') term)*``."""
    terms = parse_terms(text, ring.n)
    return Polynomial.from_terms(ring, [(m, c) for c, m, _ in terms])
