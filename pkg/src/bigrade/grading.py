"""Grade indices and the ordered commutative monoids they live in.

Shipped instances:

* ``N``         natural numbers with the usual order
* ``N2_usual``  pairs, componentwise order
* ``N2_lex``    pairs, lexicographic order
* ``N2_total``  pairs, (a,b) <= (a',b') iff equal or a+b < a'+b'
* ``weighted_N`` natural numbers carrying per-class weights for pairs
* ``ordinal``   ordinals below epsilon_0 in Cantor normal form, Hessenberg sum

A non-good instance ``Z`` (integers) is available as a negative control for
:func:`check_good_axioms`.
"""

import enum
import functools
import itertools
import re
from dataclasses import dataclass


class InvalidIndex(ValueError):
    pass


class OrdinalSyntaxError(ValueError):
    pass


class Order(enum.Enum):
    LE = "LE"   # strictly below
    GE = "GE"   # strictly above
    EQ = "EQ"
    INCOMPARABLE = "Incomparable"


@functools.total_ordering
class Ordinal:
    """Ordinal below epsilon_0: tuple of (exponent Ordinal, coefficient >= 1).

    Exponents are strictly decreasing; the empty tuple is 0.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        terms = tuple((e, int(c)) for e, c in terms)
        for e, c in terms:
            if not isinstance(e, Ordinal):
                raise InvalidIndex("exponents must be ordinals")
            if c < 1:
                raise InvalidIndex("coefficients must be positive")
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if not e1 > e2:
                raise InvalidIndex("exponents must be strictly decreasing")
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, key, value):
        raise AttributeError("Ordinal is immutable")

    def __reduce__(self):
        return (Ordinal, (self.terms,))

    @classmethod
    def finite(cls, n):
        if n < 0:
            raise InvalidIndex("negative ordinal")
        return cls(((ZERO, n),)) if n else ZERO

    @classmethod
    def omega_power(cls, e, c=1):
        if isinstance(e, int):
            e = cls.finite(e)
        return cls(((e, c),))

    def _cmp(self, other):
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 != e2:
                return 1 if e1 > e2 else -1
            if c1 != c2:
                return 1 if c1 > c2 else -1
        return (len(self.terms) > len(other.terms)) - (len(self.terms) < len(other.terms))

    def __eq__(self, other):
        return isinstance(other, Ordinal) and self.terms == other.terms

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __hash__(self):
        return hash(self.terms)

    def is_finite(self):
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def __int__(self):
        if not self.is_finite():
            raise InvalidIndex("infinite ordinal")
        return self.terms[0][1] if self.terms else 0

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)})"

    def __str__(self):
        return format_ordinal(self)


ZERO = Ordinal()


def hessenberg_sum(a, b):
    """Natural sum: add coefficients of equal exponents."""
    coeffs = {}
    for e, c in a.terms + b.terms:
        coeffs[e] = coeffs.get(e, 0) + c
    return Ordinal(sorted(coeffs.items(), key=lambda t: t[0], reverse=True))


def format_ordinal(a):
    """Text form ``w^2*3+w+5``; nested exponents are parenthesized."""
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(str(c))
            continue
        if e.is_finite() and int(e) == 1:
            base = "w"
        elif e.is_finite():
            base = f"w^{int(e)}"
        else:
            base = f"w^({format_ordinal(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


def parse_ordinal(text):
    """Parse CNF text such as ``w^2*3 + w*1 + 5``; non-CNF input is rejected."""
    s = text.replace(" ", "").replace("ω", "w")
    if not s:
        raise OrdinalSyntaxError("empty ordinal")
    pos = 0

    def parse_sum():
        nonlocal pos
        terms = [parse_term()]
        while pos < len(s) and s[pos] == "+":
            pos += 1
            terms.append(parse_term())
        return terms

    def parse_int():
        nonlocal pos
        m = re.match(r"\d+", s[pos:])
        if not m:
            raise OrdinalSyntaxError(f"expected integer at {pos} in {text!r}")
        pos += m.end()
        return int(m.group())

    def parse_term():
        nonlocal pos
        if pos < len(s) and s[pos] == "w":
            pos += 1
            exp = Ordinal.finite(1)
            if pos < len(s) and s[pos] == "^":
                pos += 1
                if pos < len(s) and s[pos] == "(":
                    pos += 1
                    exp = build(parse_sum())
                    if pos >= len(s) or s[pos] != ")":
                        raise OrdinalSyntaxError(f"unbalanced parenthesis in {text!r}")
                    pos += 1
                else:
                    exp = Ordinal.finite(parse_int())
            coeff = 1
            if pos < len(s) and s[pos] == "*":
                pos += 1
                coeff = parse_int()
            return exp, coeff
        return ZERO, parse_int()

    def build(terms):
        terms = [(e, c) for e, c in terms if c != 0]
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if not e1 > e2:
                raise OrdinalSyntaxError(f"not in Cantor normal form: {text!r}")
        return Ordinal(terms)

    terms = parse_sum()
    if pos != len(s):
        raise OrdinalSyntaxError(f"trailing input {s[pos:]!r} in {text!r}")
    if any(c == 0 for _, c in terms) and len(terms) > 1:
        raise OrdinalSyntaxError(f"zero coefficient in {text!r}")
    return build(terms)


@dataclass(frozen=True)
class ExtPair:
    """Extended filtration level (m, n) with m, n >= -1; clamps at construction."""

    m: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "m", max(-1, int(self.m)))
        object.__setattr__(self, "n", max(-1, int(self.n)))

    def __iter__(self):
        return iter((self.m, self.n))

    def __le__(self, other):
        return self.m <= other.m and self.n <= other.n

    def __lt__(self, other):
        return self <= other and self != other

    @property
    def total(self):
        return self.m + self.n

    def __str__(self):
        return f"({self.m},{self.n})"


def clamp0(m, n):
    """The K-index rule K_{m,n} = K_{max(0,m), max(0,n)}."""
    return (max(0, m), max(0, n))


class MonoidInstance:
    """An ordered commutative monoid of grade indices.

    Elements are plain Python values: int (N, weighted_N, Z), pairs of ints
    (N2_*) or :class:`Ordinal`.
    """

    KINDS = ("N", "N2_usual", "N2_lex", "N2_total", "weighted_N", "ordinal", "Z")

    def __init__(self, kind, weights=(1, 1)):
        if kind not in self.KINDS:
            raise InvalidIndex(f"unknown monoid kind {kind!r}")
        self.kind = kind
        self.weights = tuple(weights)

    def __repr__(self):
        if self.kind == "weighted_N":
            return f"MonoidInstance(weighted_N, weights={self.weights})"
        return f"MonoidInstance({self.kind})"

    @property
    def zero(self):
        if self.kind in ("N", "weighted_N", "Z"):
            return 0
        if self.kind == "ordinal":
            return ZERO
        return (0, 0)

    def validate(self, a):
        k = self.kind
        if k in ("N", "weighted_N"):
            if not isinstance(a, int) or isinstance(a, bool) or a < 0:
                raise InvalidIndex(f"{a!r} is not a natural number")
        elif k == "Z":
            if not isinstance(a, int) or isinstance(a, bool):
                raise InvalidIndex(f"{a!r} is not an integer")
        elif k == "ordinal":
            if not isinstance(a, Ordinal):
                raise InvalidIndex(f"{a!r} is not an ordinal")
        else:
            if not (isinstance(a, tuple) and len(a) == 2
                    and all(isinstance(v, int) and v >= 0 for v in a)):
                raise InvalidIndex(f"{a!r} is not a pair of naturals")
        return a

    def add(self, a, b):
        self.validate(a)
        self.validate(b)
        if self.kind == "ordinal":
            return hessenberg_sum(a, b)
        if isinstance(a, tuple):
            return (a[0] + b[0], a[1] + b[1])
        return a + b

    def leq(self, a, b):
        """Non-strict order a <= b."""
        self.validate(a)
        self.validate(b)
        if a == b:
            return True
        k = self.kind
        if k == "N2_usual":
            return a[0] <= b[0] and a[1] <= b[1]
        if k == "N2_lex":
            return a < b
        if k == "N2_total":
            return a[0] + a[1] < b[0] + b[1]
        return a < b

    def compare(self, a, b):
        if a == b:
            self.validate(a)
            return Order.EQ
        if self.leq(a, b):
            return Order.LE
        if self.leq(b, a):
            return Order.GE
        return Order.INCOMPARABLE

    def weighted_degree(self, pair):
        """Collapse a bidegree to weighted_N using the instance weights."""
        return self.weights[0] * pair[0] + self.weights[1] * pair[1]


def monoid_add(inst, a, b):
    return inst.add(a, b)


def monoid_leq(inst, a, b):
    return inst.compare(a, b)


def check_good_axioms(inst, sample):
    """Report violations of the good-monoid axioms over a finite sample.

    Returns a list of dicts ``{axiom, witness}``; empty means no violation.
    """
    sample = list(sample)
    if not sample:
        raise ValueError("sample must be nonempty")
    report = []
    zero = inst.zero
    for a in sample:
        if not inst.leq(zero, a):
            report.append({"axiom": "0 <= lambda", "witness": [repr(a)]})
        if inst.add(zero, a) != a:
            report.append({"axiom": "0 + lambda = lambda", "witness": [repr(a)]})
    for a, b in itertools.product(sample, repeat=2):
        if inst.add(a, b) != inst.add(b, a):
            report.append({"axiom": "commutativity", "witness": [repr(a), repr(b)]})
    for a, b, c in itertools.product(sample, repeat=3):
        if inst.add(inst.add(a, b), c) != inst.add(a, inst.add(b, c)):
            report.append({"axiom": "associativity", "witness": [repr(a), repr(b), repr(c)]})
        if inst.leq(a, b):
            lhs, rhs = inst.add(a, c), inst.add(b, c)
            if not inst.leq(lhs, rhs):
                report.append({"axiom": "lambda <= lambda' => lambda + mu <= lambda' + mu",
                               "witness": [repr(a), repr(b), repr(c)]})
            if a != b and (lhs == rhs or not inst.leq(lhs, rhs)):
                report.append({"axiom": "lambda < lambda' => lambda + mu < lambda' + mu",
                               "witness": [repr(a), repr(b), repr(c)]})
    return report


def standard_instances():
    return {
        "N": MonoidInstance("N"),
        "N2_usual": MonoidInstance("N2_usual"),
        "N2_lex": MonoidInstance("N2_lex"),
        "N2_total": MonoidInstance("N2_total"),
        "weighted_N": MonoidInstance("weighted_N", weights=(2, 1)),
        "ordinal": MonoidInstance("ordinal"),
    }


def small_ordinals():
    """A fixed sample of ordinals used by axiom checks."""
    return [ZERO, Ordinal.finite(1), Ordinal.finite(3),
           Ordinal.omega_power(1), Ordinal.omega_power(1, 2),
           hessenberg_sum(Ordinal.omega_power(1, 2), Ordinal.finite(3)),
           Ordinal.omega_power(2), Ordinal.omega_power(Ordinal.omega_power(1)),
           hessenberg_sum(Ordinal.omega_power(2), Ordinal.omega_power(1, 3))]
