"""Shear automorphisms t_i -> t_i + s * t_r^{c_i} and what they preserve.

A shear fixes t_r and is invertible with inverse the opposite-sign shear.
This module tests whether a shear restricts to an automorphism of R[M],
searches for such shears level by level over the truncations of M, uses
them to make elements monic in t_r, and computes the rank-2 normal form
((1, a1), (0, a2)) cap Z_+^2 of a normal Phi-simplicial monoid.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import count, product
from math import comb, gcd
from typing import Iterable, Iterator, Sequence

from .algebra import ZZ, AlgebraElement, highest_member, is_monic
from .closures import is_normal, points_up_to_degree
from .errors import InputError, PreconditionError, SearchExhausted
from .lattice import Vector, degree, lattice_contains
from .monoid import (AffineMonoid, contains, group_of_fractions, is_phi_simplicial,
                     monomial_str, truncation)

DEFAULT_SEARCH_LIMIT = int(os.environ.get("AFFMON_SEARCH_LIMIT", "40"))


@dataclass(frozen=True)
class ShearAutomorphism:
    """t_i -> t_i + sign * t_r^{c[i]} for i < r, t_r fixed."""

    rank: int
    c: tuple[int, ...]
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if len(self.c) != self.rank - 1:
            raise InputError(f"a rank-{self.rank} shear needs {self.rank - 1} exponents, got {len(self.c)}")
        if any(x < 1 for x in self.c):
            raise InputError("shear exponents must be positive")
        if self.sign not in (1, -1):
            raise InputError("sign must be +1 or -1")

    def inverse(self) -> "ShearAutomorphism":
        return ShearAutomorphism(self.rank, self.c, -self.sign)

    def __str__(self):
        op = "+" if self.sign > 0 else "-"
        maps = ", ".join(f"t{i} -> t{i} {op} t{self.rank}^{ci}" for i, ci in enumerate(self.c, 1))
        return maps or "identity"


def _image_terms(eta: ShearAutomorphism, exp: Sequence[int]) -> Iterator[tuple[Vector, int]]:
    """Expansion of eta(t^exp) as (exponent, integer coefficient) pairs.

    Distinct choices of l give distinct exponents (they differ in the first
    r-1 coordinates), so no cancellation happens inside one monomial.
    """
    head = exp[:-1]
    for ls in product(*(range(a + 1) for a in head)):
        coeff = 1
        top = exp[-1]
        for a, l, ci in zip(head, ls, eta.c):
            coeff *= comb(a, l) * eta.sign ** l
            top += ci * l
        yield tuple(a - l for a, l in zip(head, ls)) + (top,), coeff


def apply_shear(eta: ShearAutomorphism, f: AlgebraElement) -> AlgebraElement:
    """eta(f) in R[Z_+^r]; any monoid attachment is dropped."""
    if f.rank != eta.rank:
        raise InputError(f"rank-{eta.rank} shear applied to a rank-{f.rank} element")
    acc: dict[Vector, object] = {}
    for exp, c in f:
        for e, k in _image_terms(eta, exp):
            acc[e] = acc.get(e, 0) + c * k
    return AlgebraElement(acc, f.domain, f.rank)


@dataclass(frozen=True)
class TranscriptLine:
    generator: Vector
    sign: int
    image_support: tuple[Vector, ...]
    missing: tuple[Vector, ...]

    @property
    def ok(self) -> bool:
        return not self.missing

    def __str__(self):
        op = "eta" if self.sign > 0 else "eta^-1"
        status = "ok" if self.ok else "missing " + ", ".join(monomial_str(v) for v in self.missing)
        n = len(self.image_support)
        return f"{op}({monomial_str(self.generator)}): {n} term{'s' if n != 1 else ''}, {status}"


@dataclass(frozen=True)
class RestrictionCheck:
    shear: ShearAutomorphism
    restricts: bool
    transcript: tuple[TranscriptLine, ...]

    def __bool__(self):
        return self.restricts


def restricts_to_monoid(eta: ShearAutomorphism, M: AffineMonoid, full_transcript: bool = True) -> RestrictionCheck:
    """Whether eta and eta^-1 both map R[M] into R[M].

    Checking generators suffices since they generate R[M] as an R-algebra.
    Integer coefficients are used, so the answer holds for every ring R.
    With ``full_transcript=False`` the check stops at the first failure.
    """
    if eta.rank != M.ambient_rank:
        raise InputError(f"rank-{eta.rank} shear against a rank-{M.ambient_rank} monoid")
    lines = []
    ok = True
    for g in M.generators:
        for sign in (1, -1):
            shear = eta if sign == eta.sign else eta.inverse()
            support = tuple(e for e, _ in _image_terms(shear, g))
            missing = tuple(e for e in support if not contains(M, e))
            lines.append(TranscriptLine(g, sign, support, missing))
            if missing:
                ok = False
                if not full_transcript:
                    return RestrictionCheck(eta, False, tuple(lines))
    return RestrictionCheck(eta, ok, tuple(lines))


# -- witness search ------------------------------------------------------------------

@dataclass(frozen=True)
class LevelWitness:
    level: int
    c: tuple[int, ...]
    check: RestrictionCheck


@dataclass(frozen=True)
class CPhiWitness:
    """Shears restricting to every truncation M_m (m = 2..r), all c_i > bound_c."""

    monoid: AffineMonoid
    bound_c: int
    levels: tuple[LevelWitness, ...] = field(default=())

    def verify(self) -> bool:
        """Re-run every restriction check from scratch."""
        for lw in self.levels:
            if any(ci <= self.bound_c for ci in lw.c):
                return False
            Mm = truncation(self.monoid, lw.level)
            if not restricts_to_monoid(ShearAutomorphism(lw.level, lw.c), Mm).restricts:
                return False
        return [lw.level for lw in self.levels] == list(range(2, self.monoid.ambient_rank + 1))


def _candidate_moduli(M: AffineMonoid) -> list[int]:
    degs = sorted({degree(g) for g in M.generators})
    mods = [n for n in degs if n >= 2]
    g = 0
    for d in degs:
        g = gcd(g, d)
    if g >= 2 and g not in mods:
        mods.insert(0, g)
    return mods


def _level_candidates(M: AffineMonoid, k: int, bound_c: int, limit: int) -> Iterator[tuple[int, ...]]:
    """c-vectors of length k: progressions c = 1 (mod n) suggested by the
    generator degrees first (uniform vectors), then every vector in
    lexicographic order."""
    seen = set()
    for n in _candidate_moduli(M):
        start = bound_c + 1 + (1 - (bound_c + 1)) % n
        for v in range(start, limit + 1, n):
            cand = (v,) * k
            if cand not in seen:
                seen.add(cand)
                yield cand
    for cand in product(range(bound_c + 1, limit + 1), repeat=k):
        if cand not in seen:
            seen.add(cand)
            yield cand


def search_level(M: AffineMonoid, m: int, bound_c: int, limit: int) -> LevelWitness | None:
    """First shear of truncation(M, m) with bound_c < c_i <= limit that restricts."""
    Mm = truncation(M, m)
    for cand in _level_candidates(Mm, m - 1, bound_c, limit):
        eta = ShearAutomorphism(m, cand)
        if restricts_to_monoid(eta, Mm, full_transcript=False).restricts:
            return LevelWitness(m, cand, restricts_to_monoid(eta, Mm))
    return None


def find_cphi_witness(M: AffineMonoid, bound_c: int, search_limit: int = DEFAULT_SEARCH_LIMIT) -> CPhiWitness | None:
    """A witness for the shear property at this one bound, or None.

    None only means nothing was found with c_i <= search_limit; it says
    nothing about membership of M in the class.
    """
    if bound_c < 1:
        raise InputError("bound_c must be at least 1")
    if not is_phi_simplicial(M):
        raise PreconditionError("the monoid is not Phi-simplicial")
    levels = []
    for m in range(2, M.ambient_rank + 1):
        lw = search_level(M, m, bound_c, search_limit)
        if lw is None:
            return None
        levels.append(lw)
    return CPhiWitness(M, bound_c, tuple(levels))


# -- monicization -------------------------------------------------------------------

@dataclass(frozen=True)
class Progression:
    """The values start, start + step, start + 2*step, ..."""

    start: int
    step: int

    def __post_init__(self):
        if self.start < 1 or self.step < 1:
            raise InputError("progressions need positive start and step")

    def values(self, limit: int) -> range:
        return range(self.start, limit + 1, self.step)

    @classmethod
    def parse(cls, text: str) -> "Progression":
        try:
            start, step = (int(x) for x in text.split(":"))
        except ValueError:
            raise InputError(f"progression must look like START:STEP, got {text!r}") from None
        return cls(start, step)

    def __str__(self):
        return f"{self.start}:{self.step}"


def discover_progressions(M: AffineMonoid, bound_c: int = 1, moduli: Iterable[int] = (1, 2, 3, 4),
                          probes: int = 3, limit: int = DEFAULT_SEARCH_LIMIT) -> list[Progression] | None:
    """Guess a progression for the shear exponents from residues.

    For each modulus n and residue class, uniform shears c_i = v are probed
    at the first few values v > bound_c in that class; the first class in
    which every probe restricts is returned for all i. None if no class
    passes. The probes are evidence, not a proof for the whole progression.
    """
    k = M.ambient_rank - 1
    for n in moduli:
        for residue in range(n):
            start = bound_c + 1 + (residue - (bound_c + 1)) % n
            values = list(range(start, limit + 1, n))[:probes]
            if len(values) < probes:
                continue
            if all(restricts_to_monoid(ShearAutomorphism(M.ambient_rank, (v,) * k), M, False).restricts
                   for v in values):
                return [Progression(start, n)] * k
    return None


def _weight(c: Sequence[int], exp: Sequence[int]) -> int:
    return sum(ci * a for ci, a in zip(c, exp)) + exp[-1]


def monicize(f: AlgebraElement, M: AffineMonoid, allowed: Sequence[Progression] | None = None,
             limit: int = DEFAULT_SEARCH_LIMIT) -> tuple[ShearAutomorphism, AlgebraElement]:
    """Find a shear eta restricting to M with eta(f) monic in t_r.

    Candidates c are taken from ``allowed`` (one progression per i) in
    lexicographic order of progression indices. A candidate is accepted
    when the weight w(a) = sum c_i a_i + a_r has a unique maximiser over
    the support of f whose coefficient is a unit; the highest member of
    eta(f) is then that coefficient times t_r^{max w}. The maximiser
    coincides with H(f) whenever such a c exists in the progressions; when
    it does not, any unit-coefficient maximiser is used.
    """
    if not f:
        raise InputError("cannot monicize the zero element")
    if f.rank != M.ambient_rank:
        raise InputError("element and monoid ranks differ")
    if M.ambient_rank < 2:
        raise PreconditionError("monicization needs rank at least 2")
    outside = [e for e in f.support if not contains(M, e)]
    if outside:
        raise PreconditionError(f"support monomial {monomial_str(outside[0])} is not in the monoid")
    lead, lead_exp = highest_member(f)
    if not any(lead_exp):
        raise PreconditionError("a constant is fixed by every shear and is never monic")
    if not f.domain.is_unit(lead):
        raise PreconditionError(f"highest coefficient {lead} is not a unit in {f.domain}")
    k = M.ambient_rank - 1
    if allowed is None:
        allowed = discover_progressions(M, limit=limit)
        if allowed is None:
            raise SearchExhausted("no shear progression restricting to the monoid was found")
    allowed = list(allowed)
    if len(allowed) != k:
        raise InputError(f"need {k} progressions, got {len(allowed)}")

    terms = f.terms
    restricts_cache: dict[tuple[int, ...], bool] = {}
    fallback = None
    for c in _lex_by_index([p.values(limit) for p in allowed]):
        weights = {e: _weight(c, e) for e in terms}
        top = max(weights.values())
        argmax = [e for e, w in weights.items() if w == top]
        if len(argmax) != 1 or not f.domain.is_unit(terms[argmax[0]]):
            continue
        at_lead = argmax[0] == lead_exp
        if not at_lead and fallback is not None:
            continue
        if c not in restricts_cache:
            restricts_cache[c] = restricts_to_monoid(ShearAutomorphism(M.ambient_rank, c), M, False).restricts
        if not restricts_cache[c]:
            continue
        if at_lead:
            return _finish(f, c)
        fallback = c
    if fallback is not None:
        return _finish(f, fallback)
    raise SearchExhausted(f"no admissible shear with exponents <= {limit}")


def _finish(f: AlgebraElement, c: tuple[int, ...]) -> tuple[ShearAutomorphism, AlgebraElement]:
    eta = ShearAutomorphism(f.rank, c)
    image = apply_shear(eta, f.detach())
    assert is_monic(image), "weight argument failed"
    return eta, image


def _lex_by_index(ranges: Sequence[range]) -> Iterator[tuple[int, ...]]:
    """Tuples from ``ranges`` ordered by the sum of indices, then lexicographically,
    so that small exponents in every slot are tried before large ones."""
    lens = [len(r) for r in ranges]
    if not ranges or min(lens) == 0:
        return
    for total in count():
        if total > sum(n - 1 for n in lens):
            return
        for idx in _compositions_bounded(total, lens):
            yield tuple(r[i] for r, i in zip(ranges, idx))


def _compositions_bounded(total: int, lens: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if len(lens) == 1:
        if total < lens[0]:
            yield (total,)
        return
    for first in range(min(total, lens[0] - 1) + 1):
        for rest in _compositions_bounded(total - first, lens[1:]):
            yield (first,) + rest


# -- rank two normal form --------------------------------------------------------------

def rank2_canonical_form(M: AffineMonoid, check_degree: int = 10) -> tuple[int, int]:
    """(a1, a2) with M isomorphic to ((1, a1), (0, a2)) cap Z_+^2.

    gp(M) has Hermite basis {(a, b), (0, c)}; with g = gcd(b, c) the map
    (x, y) -> (x / a, y / g) carries gp(M) onto the lattice spanned by
    (1, b/g), (0, c/g) and preserves the orthant. The identification of M
    with gp(M) cap Z_+^2 is confirmed by enumeration up to ``check_degree``.
    """
    if M.ambient_rank != 2:
        raise PreconditionError("the rank-2 normal form needs ambient rank 2")
    if not is_phi_simplicial(M):
        raise PreconditionError("the monoid is not Phi-simplicial")
    if not is_normal(M):
        raise PreconditionError("the monoid is not normal")
    (a, b), (_, c) = group_of_fractions(M).basis
    g = gcd(b, c)
    a1, a2 = b // g, c // g
    L = group_of_fractions(M)
    for x in points_up_to_degree(2, check_degree):
        if lattice_contains(L, x) != contains(M, x):
            raise AssertionError(f"{x}: lattice membership and monoid membership disagree")
    return a1, a2


def canonical_form_map(M: AffineMonoid) -> tuple[int, int]:
    """Scale factors (a, g) with (x, y) -> (x / a, y / g) the isomorphism used
    by :func:`rank2_canonical_form`."""
    (a, b), (_, c) = group_of_fractions(M).basis
    return a, gcd(b, c)
