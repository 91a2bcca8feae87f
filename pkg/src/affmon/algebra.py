"""Elements of monoid algebras R[M] with R one of ZZ, QQ or ZZ/m.

Terms are always kept in the lower order (t_r most significant), so
iteration, printing and serialisation are canonical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import InputError, ParseError
from .lattice import Vector
from .monoid import AffineMonoid, contains, monomial_str
from .order import lower_key, lower_than

__all__ = [
    "CoefficientDomain", "ZZ", "QQ", "AlgebraElement", "lower_than",
    "highest_member", "is_monic", "grade_decompose", "leading_coeff_ideal_gens",
    "LeadingCoefficientIdeal", "parse_element",
]


@dataclass(frozen=True)
class CoefficientDomain:
    """One of the three computable coefficient rings: ``ZZ``, ``QQ`` or ``ZZ/m``."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("ZZ", "QQ", "ZZ/m"):
            raise InputError(f"unknown coefficient domain {self.kind!r}")
        if self.kind == "ZZ/m":
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise InputError("modulus must be an integer >= 2")
        elif self.modulus is not None:
            raise InputError(f"{self.kind} takes no modulus")

    @classmethod
    def mod(cls, m: int) -> "CoefficientDomain":
        return cls("ZZ/m", m)

    @classmethod
    def parse(cls, text: str) -> "CoefficientDomain":
        text = text.strip()
        if text in ("ZZ", "QQ"):
            return cls(text)
        match = re.fullmatch(r"ZZ/(\d+)", text)
        if match:
            return cls.mod(int(match.group(1)))
        raise InputError(f"unknown coefficient domain {text!r} (use ZZ, QQ or ZZ/m)")

    def __str__(self):
        return f"ZZ/{self.modulus}" if self.kind == "ZZ/m" else self.kind

    @property
    def is_field(self) -> bool:
        if self.kind == "QQ":
            return True
        return self.kind == "ZZ/m" and _is_prime(self.modulus)

    @property
    def is_integral_domain(self) -> bool:
        return self.kind == "ZZ" or self.is_field

    def convert(self, x):
        if self.kind == "QQ":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1 and self.kind == "ZZ":
                raise InputError(f"{x} is not an integer")
            if x.denominator != 1:
                inv = pow(x.denominator, -1, self.modulus)  # raises if not invertible
                return x.numerator * inv % self.modulus
            x = x.numerator
        if self.kind == "ZZ":
            return int(x)
        return int(x) % self.modulus

    def is_unit(self, a) -> bool:
        if self.kind == "QQ":
            return a != 0
        if self.kind == "ZZ":
            return a in (1, -1)
        return gcd(a, self.modulus) == 1

    def fmt(self, a) -> str:
        return str(a)


ZZ = CoefficientDomain("ZZ")
QQ = CoefficientDomain("QQ")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class AlgebraElement:
    """A finite sum of coefficient * monomial in R[Z_+^r].

    If ``monoid`` is given, every support monomial must belong to it and the
    element is regarded as living in R[M].
    """

    __slots__ = ("_terms", "domain", "rank", "monoid")

    def __init__(self, terms: Mapping[Sequence[int], object] | Iterable[tuple[Sequence[int], object]],
                 domain: CoefficientDomain = QQ, rank: int | None = None,
                 monoid: AffineMonoid | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Vector, object] = {}
        for exp, c in items:
            exp = tuple(int(a) for a in exp)
            if any(a < 0 for a in exp):
                raise InputError(f"negative exponent in {exp}")
            acc[exp] = acc.get(exp, 0) + domain.convert(c)
        if rank is None:
            rank = monoid.ambient_rank if monoid is not None else (len(next(iter(acc))) if acc else None)
            if rank is None:
                raise InputError("rank is required for the zero element")
        for exp in acc:
            if len(exp) != rank:
                raise InputError(f"monomial {exp} does not have {rank} exponents")
        clean = {e: domain.convert(c) for e, c in acc.items()}
        clean = {e: c for e, c in clean.items() if c != 0}
        if monoid is not None:
            if monoid.ambient_rank != rank:
                raise InputError("monoid rank does not match element rank")
            outside = [e for e in clean if not contains(monoid, e)]
            if outside:
                raise InputError(f"monomial {monomial_str(outside[0])} is not in the monoid")
        self._terms = dict(sorted(clean.items(), key=lambda kv: lower_key(kv[0])))
        self.domain = domain
        self.rank = rank
        self.monoid = monoid

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1, domain: CoefficientDomain = QQ,
                 monoid: AffineMonoid | None = None) -> "AlgebraElement":
        return cls({tuple(exp): coeff}, domain, len(exp), monoid)

    @classmethod
    def zero(cls, rank: int, domain: CoefficientDomain = QQ) -> "AlgebraElement":
        return cls({}, domain, rank)

    @property
    def terms(self) -> dict[Vector, object]:
        """Copy of the term map, in increasing lower order."""
        return dict(self._terms)

    @property
    def support(self) -> tuple[Vector, ...]:
        return tuple(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def detach(self) -> "AlgebraElement":
        """The same element viewed in R[Z_+^r]."""
        return AlgebraElement(self._terms, self.domain, self.rank)

    def _compatible(self, other: "AlgebraElement") -> AffineMonoid | None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"cannot combine an algebra element with {type(other).__name__}")
        if other.domain != self.domain:
            raise InputError(f"coefficient domains differ: {self.domain} vs {other.domain}")
        if other.rank != self.rank:
            raise InputError(f"ranks differ: {self.rank} vs {other.rank}")
        if self.monoid is not None and other.monoid is not None and self.monoid != other.monoid:
            raise InputError("elements are attached to different monoids")
        return self.monoid if self.monoid is not None and other.monoid is not None else None

    def _build(self, terms, monoid):
        # sums and products of elements of R[M] stay in R[M]; skip revalidation
        out = AlgebraElement(terms, self.domain, self.rank)
        out.monoid = monoid
        return out

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement({(0,) * self.rank: other}, self.domain, self.rank)
        monoid = self._compatible(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return self._build(acc, monoid)

    __radd__ = __add__

    def __neg__(self):
        return self._build({e: -c for e, c in self._terms.items()}, self.monoid)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            c0 = self.domain.convert(other)
            return self._build({e: c * c0 for e, c in self._terms.items()}, self.monoid)
        monoid = self._compatible(other)
        acc: dict[Vector, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return self._build(acc, monoid)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.domain == other.domain and self.rank == other.rank and self._terms == other._terms
        if not self._terms:
            return other == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.domain, self.rank, tuple(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in reversed(self._terms.items()):
            mono = monomial_str(exp)
            neg = c < 0 if self.domain.kind != "ZZ/m" else False
            mag = -c if neg else c
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append(("- " if neg else "+ ") + body)
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"AlgebraElement({str(self)!r}, domain={self.domain})"

    # module-level operations, also reachable as methods
    def highest_member(self):
        return highest_member(self)

    def is_monic(self) -> bool:
        return is_monic(self)


def highest_member(f: AlgebraElement) -> tuple[object, Vector]:
    """(coefficient, exponent) of the term that is highest in the lower order."""
    if not f:
        raise InputError("the zero element has no highest member")
    exp = next(reversed(f._terms))
    return f._terms[exp], exp


def is_monic(f: AlgebraElement) -> bool:
    """H(f) = u t_r^s with u a unit and s > 0."""
    coeff, exp = highest_member(f)
    return not any(exp[:-1]) and exp[-1] > 0 and f.domain.is_unit(coeff)


def grade_decompose(f: AlgebraElement) -> dict[int, AlgebraElement]:
    """Split f by the exponent of t_r; degree 0 is the part supported on M_0."""
    parts: dict[int, dict] = {}
    for exp, c in f:
        parts.setdefault(exp[-1], {})[exp] = c
    return {k: AlgebraElement(v, f.domain, f.rank) for k, v in sorted(parts.items())}


@dataclass(frozen=True)
class LeadingCoefficientIdeal:
    """Generators of (a sub-ideal of) the leading coefficient ideal.

    ``exact`` is True only when the generators provably span the whole
    ideal; otherwise the result is an under-approximation.
    """

    domain: CoefficientDomain
    generators: tuple
    exact: bool

    @property
    def principal_generator(self):
        """Single generator of the ideal spanned by ``generators``."""
        if self.domain.kind == "QQ":
            return Fraction(1) if any(self.generators) else Fraction(0)
        g = reduce(gcd, (int(a) for a in self.generators), 0)
        if self.domain.kind == "ZZ/m":
            return gcd(g, self.domain.modulus) % self.domain.modulus
        return g

    @property
    def label(self) -> str:
        return "exact" if self.exact else "under-approximation"

    def contains(self, a) -> bool:
        g = self.principal_generator
        if self.domain.kind == "QQ":
            return a == 0 or g != 0
        if g == 0:
            return a % self.domain.modulus == 0 if self.domain.kind == "ZZ/m" else a == 0
        return a % g == 0


def leading_coeff_ideal_gens(fs: Sequence[AlgebraElement]) -> LeadingCoefficientIdeal:
    """Highest coefficients of the inputs plus one round of cross-multiplication.

    For each pair f, g and support monomials u of g, v of f with
    H(u f) and H(v g) on the same monomial, the leading terms are cancelled
    and the new highest coefficient is recorded. The result is exact for a
    single element over an integral domain, since there H(hf) = H(h)H(f),
    and for any nonzero input over a field.
    """
    fs = list(fs)
    if not fs:
        return LeadingCoefficientIdeal(QQ, (), True)
    domain = fs[0].domain
    if any(f.domain != domain for f in fs):
        raise InputError("elements have different coefficient domains")
    if any(not f for f in fs):
        raise InputError("leading coefficient ideal inputs must be nonzero")
    gens = []
    for f in fs:
        gens.append(highest_member(f)[0])
    for f, g in combinations(fs, 2):
        a, mf = highest_member(f)
        b, mg = highest_member(g)
        for u in g.support:
            for v in f.support:
                if tuple(x + y for x, y in zip(u, mf)) != tuple(x + y for x, y in zip(v, mg)):
                    continue
                combo = (f * AlgebraElement.monomial(u, b, domain)) - (g * AlgebraElement.monomial(v, a, domain))
                if combo:
                    gens.append(highest_member(combo)[0])
    exact = (domain.is_field) or (len(fs) == 1 and domain.is_integral_domain)
    uniq = tuple(sorted(set(gens), key=lambda x: (abs(x), x)))
    return LeadingCoefficientIdeal(domain, uniq, exact)


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>t(?P<idx>\d+))|(?P<op>[-+*^]))")


def parse_element(text: str, domain: CoefficientDomain = QQ, rank: int | None = None,
                  monoid: AffineMonoid | None = None) -> AlgebraElement:
    """Parse ``3*t1^2*t2 - 5/2*t1*t2^2 + 7``.

    Whitespace is ignored. ``rank`` defaults to the monoid rank or the
    largest variable index used.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[offset]!r}", offset)
        start = m.start(m.lastgroup if m.lastgroup != "idx" else "var")
        if m.group("num"):
            tokens.append(("num", m.group("num"), start))
        elif m.group("var"):
            idx = int(m.group("idx"))
            if idx < 1:
                raise ParseError("variables are numbered from t1", start)
            tokens.append(("var", idx, start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))

    i = 0
    terms: list[tuple[dict[int, int], Fraction]] = []

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def parse_term(sign):
        coeff = Fraction(sign)
        powers: dict[int, int] = {}
        while True:
            kind, val, at = take()
            if kind == "num":
                coeff *= Fraction(val)
            elif kind == "var":
                exp = 1
                if peek()[:2] == ("op", "^"):
                    take()
                    k2, v2, at2 = take()
                    if k2 != "num" or "/" in v2:
                        raise ParseError("expected a nonnegative integer exponent", at2)
                    exp = int(v2)
                powers[val] = powers.get(val, 0) + exp
            else:
                raise ParseError("expected a number or a variable", at)
            if peek()[:2] == ("op", "*"):
                take()
                continue
            return powers, coeff

    sign = 1
    if peek()[:2] in (("op", "-"), ("op", "+")):
        sign = -1 if take()[1] == "-" else 1
    if peek()[0] == "end":
        raise ParseError("empty expression", 0)
    terms.append(parse_term(sign))
    while peek()[0] != "end":
        kind, val, at = take()
        if kind != "op" or val not in "+-":
            raise ParseError("expected '+' or '-'", at)
        terms.append(parse_term(-1 if val == "-" else 1))

    used = max((k for powers, _ in terms for k in powers), default=0)
    if rank is None:
        rank = monoid.ambient_rank if monoid is not None else max(used, 1)
    if used > rank:
        raise ParseError(f"variable t{used} exceeds rank {rank}", None)
    mapped = []
    for powers, coeff in terms:
        exp = [0] * rank
        for k, e in powers.items():
            exp[k - 1] = e
        mapped.append((tuple(exp), coeff))
    return AlgebraElement(mapped, domain, rank, monoid)
