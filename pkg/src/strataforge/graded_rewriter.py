"""Graded polynomial rewriting for relation systems on n-pointed covers.

Polynomials live over an exact rational coefficient field in a fixed
variable universe: per-marking classes zeta_i, z_i, psi_i for 1 <= i <= n,
plus the global symbols kappa1, kappa2, lambda1, c2, cE1, cE2, cE3 and the
opaque cubic coefficients a1, a2, a2p, a3, a3p. Every variable carries a
grading, every operation preserves it, and coefficients are Fractions
throughout: floats are rejected outright.

Three relation presets drive the reduction. The plane preset substitutes
both z_i and zeta_i away entirely; the trigonal and tetragonal presets
first rewrite z-squares, then substitute the remaining z-linear part, then
reduce zeta-squares by the preset's quadratic rule. The quadratic rules
have pairwise coprime leading monomials, so normal_form is canonical:
idempotent, grading-preserving, and an exact ring map modulo the declared
relations. The tetragonal cubic is handled by separate operations
(cubic_relation, zeta_cube_reduction, eliminate_zeta_cubes) whose output
is validated by substituting back into the cubic, not by folding the cubic
into normal_form, which would destroy exact multiplicativity.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DegenerateInput,
    DegreeTooSmall,
    DivisorZero,
    IndexOutOfRange,
    NotInUniverse,
    UniverseMismatch,
    UsageError,
)

GLOBAL_SYMBOLS = (
    ("kappa1", 1),
    ("kappa2", 2),
    ("lambda1", 1),
    ("c2", 2),
    ("cE1", 1),
    ("cE2", 2),
    ("cE3", 3),
    ("a1", 1),
    ("a2", 2),
    ("a2p", 1),
    ("a3", 3),
    ("a3p", 2),
)

_FAMILY_RE = re.compile(r"^(zeta|psi|z)([0-9]+)$")


@lru_cache(maxsize=None)
def _universe(n):
    """Variable table for n markings: names, ranks, and grading degrees.

    Rank order (rank 0 highest) is zeta1..zetan, z1..zn, psi1..psin,
    then the global symbols; term ordering is graded lex on this ranking.
    """
    if not isinstance(n, int) or n < 0:
        raise NotInUniverse("marking count must be a non-negative integer")
    names = []
    degrees = []
    for family in ("zeta", "z", "psi"):
        for i in range(1, n + 1):
            names.append("%s%d" % (family, i))
            degrees.append(1)
    for name, deg in GLOBAL_SYMBOLS:
        names.append(name)
        degrees.append(deg)
    ranks = {name: r for r, name in enumerate(names)}
    return tuple(names), ranks, tuple(degrees)


def _rank_of(name, n):
    names, ranks, _ = _universe(n)
    if name in ranks:
        return ranks[name]
    m = _FAMILY_RE.match(name)
    if m:
        raise NotInUniverse(
            "%s is outside the universe with %d markings" % (name, n)
        )
    raise UsageError("unknown variable %r" % name)


def _coerce_coeff(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise UsageError("coefficients must be exact rationals, not floats")
    raise UsageError("coefficients must be integers or Fractions")


def _mono_mul(a, b):
    merged = dict(a)
    for rank, exp in b:
        merged[rank] = merged.get(rank, 0) + exp
    return tuple(sorted(merged.items()))


def _mono_degree(mono, degrees):
    return sum(exp * degrees[rank] for rank, exp in mono)


def _zeta_total(mono, n):
    # zeta ranks occupy 0..n-1 by construction
    return sum(exp for rank, exp in mono if rank < n)


def _z_ranks(mono, n):
    return [(rank, exp) for rank, exp in mono if n <= rank < 2 * n]


def _sort_key(mono, n):
    _, _, degrees = _universe(n)
    dense = [0] * len(degrees)
    for rank, exp in mono:
        dense[rank] = exp
    return (_mono_degree(mono, degrees), tuple(dense))


class GradedPoly:
    """Sparse polynomial with Fraction coefficients over a fixed universe."""

    __slots__ = ("n", "_terms")

    def __init__(self, n, terms=None):
        _universe(n)
        clean = {}
        for mono, coeff in (terms or {}).items():
            coeff = _coerce_coeff(coeff)
            if coeff == 0:
                continue
            mono = tuple(sorted((int(r), int(e)) for r, e in mono if e))
            for rank, exp in mono:
                if rank < 0 or rank >= 3 * n + len(GLOBAL_SYMBOLS):
                    raise NotInUniverse("variable rank %d out of range" % rank)
                if exp < 0:
                    raise UsageError("negative exponents are not supported")
            clean[mono] = clean.get(mono, Fraction(0)) + coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(
            self, "_terms", {m: c for m, c in clean.items() if c != 0}
        )

    def __setattr__(self, name, value):
        raise AttributeError("GradedPoly is immutable")

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def one(cls, n):
        return cls(n, {(): Fraction(1)})

    @classmethod
    def rational(cls, value, n):
        return cls(n, {(): _coerce_coeff(value)})

    @classmethod
    def variable(cls, name, n):
        return cls(n, {((_rank_of(name, n), 1),): Fraction(1)})

    def _check_same_universe(self, other):
        if self.n != other.n:
            raise UniverseMismatch(
                "cannot combine polynomials over %d and %d markings"
                % (self.n, other.n)
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.rational(other, self.n)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        self._check_same_universe(other)
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return GradedPoly(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.rational(other, self.n)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce_coeff(other)
            return GradedPoly(
                self.n, {m: coeff * c for m, coeff in self._terms.items()}
            )
        if not isinstance(other, GradedPoly):
            return NotImplemented
        self._check_same_universe(other)
        terms = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = _mono_mul(ma, mb)
                terms[mono] = terms.get(mono, Fraction(0)) + ca * cb
        return GradedPoly(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError("polynomial powers must be non-negative integers")
        result = GradedPoly.one(self.n)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.rational(other, self.n)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def terms(self):
        """Terms as (coefficient, ((name, exponent), ...)), largest first."""
        names, _, _ = _universe(self.n)
        ordered = sorted(
            self._terms.items(),
            key=lambda item: _sort_key(item[0], self.n),
            reverse=True,
        )
        return tuple(
            (coeff, tuple((names[r], e) for r, e in mono))
            for mono, coeff in ordered
        )

    def max_degree(self):
        _, _, degrees = _universe(self.n)
        if not self._terms:
            return 0
        return max(_mono_degree(m, degrees) for m in self._terms)

    def degree_part(self, k):
        _, _, degrees = _universe(self.n)
        return GradedPoly(
            self.n,
            {
                m: c
                for m, c in self._terms.items()
                if _mono_degree(m, degrees) == k
            },
        )

    def is_homogeneous(self):
        _, _, degrees = _universe(self.n)
        found = {_mono_degree(m, degrees) for m in self._terms}
        return len(found) <= 1

    def to_text(self):
        if not self._terms:
            return "0"
        pieces = []
        for coeff, mono in self.terms():
            body = "*".join(
                name if exp == 1 else "%s^%d" % (name, exp)
                for name, exp in mono
            )
            mag = abs(coeff)
            if not body:
                chunk = str(mag)
            elif mag == 1:
                chunk = body
            else:
                chunk = "%s*%s" % (mag, body)
            if not pieces:
                pieces.append(chunk if coeff > 0 else "-" + chunk)
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + chunk)
        return " ".join(pieces)

    def __repr__(self):
        return "GradedPoly(n=%d, %s)" % (self.n, self.to_text())

    def to_json_dict(self):
        return {
            "n": self.n,
            "terms": [
                {
                    "coeff": str(coeff),
                    "monomial": [[name, exp] for name, exp in mono],
                }
                for coeff, mono in self.terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data):
        n = data["n"]
        terms = {}
        for entry in data["terms"]:
            mono = tuple(
                (_rank_of(name, n), int(exp))
                for name, exp in entry["monomial"]
            )
            coeff = Fraction(entry["coeff"])
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return cls(n, terms)


# ---------------------------------------------------------------------------
# expression parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>[0-9]+(?:/[0-9]+)?)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<op>[-+*^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            bad = text[pos:].strip()
            if bad.startswith("."):
                raise UsageError("float literals are not supported")
            raise UsageError("cannot tokenize %r" % text[pos:pos + 10])
        if m.group("number") and m.end() < len(text) and text[m.end()] == ".":
            raise UsageError("float literals are not supported")
        pos = m.end()
        if m.group("number"):
            tokens.append(("number", m.group("number")))
        elif m.group("ident"):
            tokens.append(("ident", m.group("ident")))
        else:
            tokens.append(("op", m.group("op")))
    tokens.append(("end", ""))
    return tokens


class _Parser:
    """Recursive descent over +, -, *, ^ with parentheses."""

    def __init__(self, tokens, n):
        self.tokens = tokens
        self.pos = 0
        self.n = n

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        result = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                nxt = self.term()
                result = result + nxt if val == "+" else result - nxt
            else:
                return result

    def term(self):
        result = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = result * self.factor()
            else:
                return result

    def factor(self):
        base = self.primary()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "number" or "/" in val:
                raise UsageError("exponent must be a plain non-negative integer")
            return base ** int(val)
        return base

    def primary(self):
        kind, val = self.take()
        if kind == "number":
            return GradedPoly.rational(Fraction(val), self.n)
        if kind == "ident":
            return GradedPoly.variable(val, self.n)
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, val = self.take()
            if kind != "op" or val != ")":
                raise UsageError("unbalanced parentheses")
            return inner
        if kind == "op" and val == "-":
            return -self.primary()
        raise UsageError("unexpected token %r" % (val or "end of input"))


def parse_poly(text, n):
    """Parse an expression over the n-marking universe into a GradedPoly."""
    if "." in text:
        raise UsageError("float literals are not supported")
    parser = _Parser(_tokenize(text), n)
    result = parser.expr()
    if parser.peek()[0] != "end":
        raise UsageError("trailing input %r" % parser.peek()[1])
    return result


# ---------------------------------------------------------------------------
# relation presets

@dataclass(frozen=True)
class RelationPreset:
    """Which relation system drives reduction, plus its numeric parameter."""

    kind: str
    genus: int = None
    degree: int = None


def plane_preset(degree):
    """Plane-curve relations for degree-d curves; needs d >= 4."""
    if not isinstance(degree, int) or degree < 3:
        raise DegreeTooSmall("plane preset needs an integer degree >= 4")
    if degree == 3:
        raise DivisorZero("plane preset divides by degree - 3")
    return RelationPreset("plane", degree=degree)


def trigonal_preset(genus):
    if not isinstance(genus, int) or genus < 0:
        raise DegenerateInput("genus must be a non-negative integer")
    return RelationPreset("trigonal", genus=genus)


def tetragonal_preset(genus):
    if not isinstance(genus, int) or genus < 0:
        raise DegenerateInput("genus must be a non-negative integer")
    return RelationPreset("tetragonal", genus=genus)


def _require_kind(preset, *kinds):
    if preset.kind not in kinds:
        raise DegenerateInput(
            "operation defined for %s presets, not %s"
            % ("/".join(kinds), preset.kind)
        )


# ---------------------------------------------------------------------------
# reduction

def _substitute(poly, images):
    """Replace ranked variables by polynomials; a pure ring homomorphism."""
    n = poly.n
    out = GradedPoly.zero(n)
    for mono, coeff in poly._terms.items():
        piece = GradedPoly.rational(coeff, n)
        plain = []
        for rank, exp in mono:
            if rank in images:
                piece = piece * images[rank] ** exp
            else:
                plain.append((rank, exp))
        piece = piece * GradedPoly(n, {tuple(plain): Fraction(1)})
        out = out + piece
    return out


def substitute_z(poly, preset):
    """Eliminate z_i (and, for the plane preset, zeta_i) by substitution."""
    n = poly.n
    images = {}
    if preset.kind == "plane":
        scale = Fraction(1, preset.degree - 3)
        for i in range(1, n + 1):
            psi = GradedPoly.variable("psi%d" % i, n)
            lam = GradedPoly.variable("lambda1", n)
            images[_rank_of("z%d" % i, n)] = (psi - lam) * scale
            images[_rank_of("zeta%d" % i, n)] = lam
    else:
        half = Fraction(1, 2)
        for i in range(1, n + 1):
            zeta = GradedPoly.variable("zeta%d" % i, n)
            psi = GradedPoly.variable("psi%d" % i, n)
            images[_rank_of("z%d" % i, n)] = (zeta - psi) * half
    return _substitute(poly, images)


def _reduce_z_squares(poly):
    """Rewrite z_i^(2k) to (-c2)^k in closed form; no iteration needed."""
    n = poly.n
    c2_rank = _rank_of("c2", n)
    terms = {}
    for mono, coeff in poly._terms.items():
        parts = dict(mono)
        for rank, exp in _z_ranks(mono, n):
            pairs, rest = divmod(exp, 2)
            if pairs:
                coeff = coeff * (-1) ** pairs
                parts[c2_rank] = parts.get(c2_rank, 0) + pairs
                parts[rank] = rest
        mono2 = tuple(sorted((r, e) for r, e in parts.items() if e))
        terms[mono2] = terms.get(mono2, Fraction(0)) + coeff
    return GradedPoly(n, terms)


def _zeta_square_rule(preset, i, n):
    """Return (u, v) with zeta_i^2 rewriting to u*zeta_i + v."""
    if preset.kind == "trigonal":
        u = -GradedPoly.variable("cE1", n)
        v = -GradedPoly.variable("cE2", n)
    else:
        psi = GradedPoly.variable("psi%d" % i, n)
        c2 = GradedPoly.variable("c2", n)
        u = 2 * psi
        v = -(psi * psi) - 4 * c2
    return u, v


def _reduce_zeta_squares(poly, preset):
    """Drive every zeta exponent below 2, one monomial rewrite per step.

    Termination: each step strictly decreases
    Phi = sum over monomials of 4^(total zeta exponent), so the step
    counter is asserted against the initial Phi.
    """
    n = poly.n
    rules = {}
    phi_bound = sum(4 ** _zeta_total(m, n) for m in poly._terms)
    steps = 0
    current = poly
    while True:
        offender = None
        for mono in current._terms:
            hot = [(r, e) for r, e in mono if r < n and e >= 2]
            if not hot:
                continue
            if offender is None or _sort_key(mono, n) > _sort_key(offender[0], n):
                offender = (mono, hot[0][0])
        if offender is None:
            return current
        steps += 1
        assert steps <= phi_bound, "zeta reduction exceeded its step bound"
        mono, rank = offender
        i = rank + 1
        if i not in rules:
            rules[i] = _zeta_square_rule(preset, i, n)
        u, v = rules[i]
        coeff = current._terms[mono]
        rest = tuple(
            (r, e - 2 if r == rank else e)
            for r, e in mono
            if not (r == rank and e == 2)
        )
        zeta = GradedPoly.variable("zeta%d" % i, n)
        rest_poly = GradedPoly(n, {rest: coeff})
        replacement = rest_poly * (u * zeta + v)
        current = current - GradedPoly(n, {mono: coeff}) + replacement


def normal_form(poly, preset):
    """Canonical representative modulo the preset's declared relations.

    Plane: substitute z_i and zeta_i away (needs degree >= 4). Trigonal and
    tetragonal: rewrite z-squares to -c2, substitute the remaining z-linear
    part, then eliminate zeta-squares. The result has every zeta exponent
    at most 1 and no z at all; the map is idempotent, grading-preserving,
    and exactly multiplicative modulo the relations.
    """
    if not isinstance(poly, GradedPoly):
        raise NotInUniverse("normal_form expects a GradedPoly")
    if preset.kind == "plane":
        return substitute_z(poly, preset)
    reduced = _reduce_z_squares(poly)
    reduced = substitute_z(reduced, preset)
    return _reduce_zeta_squares(reduced, preset)


# ---------------------------------------------------------------------------
# the tetragonal cubic

def cubic_relation(preset, i, n):
    """The degree-3 relation satisfied by zeta_i in the tetragonal preset."""
    _require_kind(preset, "tetragonal")
    if not 1 <= i <= n:
        raise IndexOutOfRange("marking %d not in 1..%d" % (i, n))
    g = preset.genus
    zeta = GradedPoly.variable("zeta%d" % i, n)
    psi = GradedPoly.variable("psi%d" % i, n)
    a1 = GradedPoly.variable("a1", n)
    a2 = GradedPoly.variable("a2", n)
    a2p = GradedPoly.variable("a2p", n)
    a3 = GradedPoly.variable("a3", n)
    a3p = GradedPoly.variable("a3p", n)
    half = Fraction(1, 2)
    spread = zeta - psi
    return (
        zeta ** 3
        - (a1 + Fraction(g + 3, 2) * spread) * zeta ** 2
        + half * (a2 + a2p * spread) * zeta
        - (a3 + a3p * spread)
    )


def _cube_coefficient(cubic, i, n):
    rank = _rank_of("zeta%d" % i, n)
    return cubic._terms.get(((rank, 3),), Fraction(0))


def zeta_cube_reduction(preset, i, n):
    """Solve the cubic for zeta_i^3 and reduce the quadratic part.

    The zeta_i^3 coefficient is read off the constructed cubic rather than
    assumed; it must be non-zero for the solve to make sense.
    """
    cubic = cubic_relation(preset, i, n)
    lead = _cube_coefficient(cubic, i, n)
    if lead == 0:
        raise DivisorZero("cubic has no zeta^3 term to solve for")
    zeta = GradedPoly.variable("zeta%d" % i, n)
    solved = zeta ** 3 - cubic * (Fraction(1) / lead)
    rank = _rank_of("zeta%d" % i, n)
    assert all(
        exp <= 2 for mono in solved._terms for r, exp in mono if r == rank
    ), "solving the cubic must cancel the zeta^3 term exactly"
    return _reduce_zeta_squares(solved, preset)


def eliminate_zeta_cubes(poly, preset):
    """Rewrite every zeta_i^e with e >= 3 using the solved cubic."""
    _require_kind(preset, "tetragonal")
    n = poly.n
    reductions = {}
    phi_bound = sum(16 ** _zeta_total(m, n) for m in poly._terms)
    steps = 0
    current = poly
    while True:
        offender = None
        for mono in current._terms:
            hot = [(r, e) for r, e in mono if r < n and e >= 3]
            if not hot:
                continue
            if offender is None or _sort_key(mono, n) > _sort_key(offender[0], n):
                offender = (mono, hot[0][0])
        if offender is None:
            return current
        steps += 1
        assert steps <= phi_bound, "cube elimination exceeded its step bound"
        mono, rank = offender
        i = rank + 1
        if i not in reductions:
            reductions[i] = zeta_cube_reduction(preset, i, n)
        coeff = current._terms[mono]
        rest = tuple(
            (r, e - 3 if r == rank else e)
            for r, e in mono
            if not (r == rank and e == 3)
        )
        rest_poly = GradedPoly(n, {rest: coeff})
        current = (
            current
            - GradedPoly(n, {mono: coeff})
            + rest_poly * reductions[i]
        )


# ---------------------------------------------------------------------------
# relations, generators, classes

def defining_relations(preset, n):
    """The relations normal_form annihilates, one tuple per preset."""
    relations = []
    if preset.kind == "plane":
        d = preset.degree
        lam = GradedPoly.variable("lambda1", n)
        for i in range(1, n + 1):
            zeta = GradedPoly.variable("zeta%d" % i, n)
            z = GradedPoly.variable("z%d" % i, n)
            psi = GradedPoly.variable("psi%d" % i, n)
            relations.append(zeta - lam)
            relations.append(psi - (d - 3) * z - zeta)
        return tuple(relations)
    c2 = GradedPoly.variable("c2", n)
    for i in range(1, n + 1):
        zeta = GradedPoly.variable("zeta%d" % i, n)
        z = GradedPoly.variable("z%d" % i, n)
        psi = GradedPoly.variable("psi%d" % i, n)
        relations.append(z * z + c2)
        relations.append(zeta - psi - 2 * z)
        if preset.kind == "trigonal":
            cE1 = GradedPoly.variable("cE1", n)
            cE2 = GradedPoly.variable("cE2", n)
            relations.append(zeta * zeta + cE1 * zeta + cE2)
        else:
            relations.append(zeta * zeta - 2 * zeta * psi + psi * psi + 4 * c2)
    return tuple(relations)


@dataclass(frozen=True)
class ModuleGenerator:
    """A square-free zeta monomial, with a torsion-piece marker when needed."""

    poly: GradedPoly
    marker: str = None


def module_generators(preset, n):
    """Module generators over the psi/kappa/base coefficient ring.

    Plane: just 1. Trigonal: the 2^n square-free zeta monomials.
    Tetragonal: the same monomials crossed with markers T0, T1, T2 for the
    three summands of the rank-3 piece, giving 3 * 2^n generators.
    """
    _universe(n)
    if preset.kind == "plane":
        return (ModuleGenerator(GradedPoly.one(n)),)
    monomials = []
    for size in range(n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            poly = GradedPoly.one(n)
            for i in subset:
                poly = poly * GradedPoly.variable("zeta%d" % i, n)
            monomials.append(poly)
    if preset.kind == "trigonal":
        return tuple(ModuleGenerator(m) for m in monomials)
    return tuple(
        ModuleGenerator(m, "T%d" % c)
        for m in monomials
        for c in range(3)
    )


def r_class(preset, i, n):
    """The universal divisor class attached to marking i."""
    if not 1 <= i <= n:
        raise IndexOutOfRange("marking %d not in 1..%d" % (i, n))
    return GradedPoly.variable("zeta%d" % i, n)


def spans_module_generators(poly, preset):
    """Whether every monomial is a generator times psi/kappa/base symbols."""
    n = poly.n
    for mono, _ in poly._terms.items():
        for rank, exp in mono:
            if n <= rank < 2 * n:
                return False
            if rank < n and exp > 1:
                return False
            if preset.kind == "plane" and rank < n:
                return False
    return True
