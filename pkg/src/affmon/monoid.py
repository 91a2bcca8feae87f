"""Finitely generated submonoids of Z_+^r.

A monoid is stored together with its embedding: the generators are
nonnegative exponent vectors t_1^{a_1}...t_r^{a_r}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError
from .lattice import (IntegerLattice, Vector, cone_from_generators, degree,
                      hermite_normal_form)
from .order import lower_key


@dataclass(frozen=True)
class AffineMonoid:
    """Submonoid of Z_+^r generated by ``generators``.

    Generators are deduplicated and sorted in the lower order on
    construction but never reduced; use :meth:`canonical` for the minimal
    generating set.
    """

    ambient_rank: int
    generators: tuple[Vector, ...]
    name: str | None = None

    def __post_init__(self):
        r = self.ambient_rank
        if not isinstance(r, int) or r < 1:
            raise InputError(f"ambient rank must be a positive integer, got {r!r}")
        gens = set()
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != r:
                raise InputError(f"generator {g} does not have length {r}")
            if any(x < 0 for x in g):
                raise InputError(f"generator {g} has a negative exponent")
            if not any(g):
                raise InputError("the zero vector is not allowed as a generator")
            gens.add(g)
        object.__setattr__(self, "generators", tuple(sorted(gens, key=lower_key)))

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]], ambient_rank: int | None = None,
                        name: str | None = None) -> "AffineMonoid":
        gens = [tuple(g) for g in generators]
        if ambient_rank is None:
            if not gens:
                raise InputError("cannot infer the ambient rank of an empty generator list")
            ambient_rank = len(gens[0])
        return cls(ambient_rank, tuple(gens), name)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __str__(self):
        gens = ", ".join(monomial_str(g) for g in self.generators)
        return f"({gens})"

    @property
    def max_degree(self) -> int:
        return max((degree(g) for g in self.generators), default=0)

    def canonical(self) -> "AffineMonoid":
        """Same monoid on its minimal generating set.

        A generator is dropped when it lies in the monoid generated by the
        remaining ones. For positive affine monoids the result is unique.
        """
        kept = list(self.generators)
        for g in sorted(self.generators, key=lambda v: (-degree(v), lower_key(v))):
            rest = [h for h in kept if h != g]
            if rest and contains(AffineMonoid(self.ambient_rank, tuple(rest)), g):
                kept = rest
        return AffineMonoid(self.ambient_rank, tuple(kept), self.name)

    def equals(self, other: "AffineMonoid") -> bool:
        """Equality of canonical generating sets."""
        return (self.ambient_rank == other.ambient_rank
                and self.canonical().generators == other.canonical().generators)


def monomial_str(v: Sequence[int]) -> str:
    parts = []
    for i, a in enumerate(v, start=1):
        if a == 1:
            parts.append(f"t{i}")
        elif a:
            parts.append(f"t{i}^{a}")
    return "*".join(parts) or "1"


def _check_query(M: AffineMonoid, v: Sequence[int]) -> Vector:
    v = tuple(int(x) for x in v)
    if len(v) != M.ambient_rank:
        raise InputError(f"vector {v} does not have length {M.ambient_rank}")
    if any(x < 0 for x in v):
        raise InputError(f"vector {v} has a negative coordinate")
    return v


def membership_witness(M: AffineMonoid, v: Sequence[int]) -> tuple[int, ...] | None:
    """Multiplicities n with sum n_i g_i = v, or None if v is not in M.

    Depth-first search over residuals v - (partial sums); the visited set
    lives only for this call. Terminates since each step lowers the total
    degree by at least one.
    """
    v = _check_query(M, v)
    gens = M.generators
    zero = (0,) * M.ambient_rank
    parent: dict[Vector, tuple[Vector, int] | None] = {v: None}
    stack = [v]
    found = v == zero
    while stack and not found:
        res = stack.pop()
        for i, g in enumerate(gens):
            if all(a >= b for a, b in zip(res, g)):
                nxt = tuple(a - b for a, b in zip(res, g))
                if nxt in parent:
                    continue
                parent[nxt] = (res, i)
                if nxt == zero:
                    found = True
                    break
                stack.append(nxt)
    if not found:
        return None
    mult = [0] * len(gens)
    node = zero
    while parent[node] is not None:
        node, i = parent[node]
        mult[i] += 1
    return tuple(mult)


def contains(M: AffineMonoid, v: Sequence[int]) -> bool:
    """Whether v is a nonnegative integer combination of the generators."""
    return membership_witness(M, v) is not None


def group_of_fractions(M: AffineMonoid) -> IntegerLattice:
    return hermite_normal_form(M.generators, M.ambient_rank)


def rank(M: AffineMonoid) -> int:
    return group_of_fractions(M).rank


def monoid_cone(M: AffineMonoid):
    return cone_from_generators(M.generators, M.ambient_rank)


def is_phi_simplicial(M: AffineMonoid) -> bool:
    """Whether M has full rank and M in Z_+^r is an integral extension.

    Integrality means every z in Z_+^r has a positive multiple in M. Given
    full rank this is the same as cone(M) being the whole orthant, which is
    what gets checked.
    """
    r = M.ambient_rank
    if rank(M) != r:
        return False
    C = monoid_cone(M)
    units = {tuple(int(i == j) for j in range(r)) for i in range(r)}
    return not C.equations and set(C.facet_normals) == units


def truncation(M: AffineMonoid, m: int) -> AffineMonoid:
    """M intersected with the monomials in t_1..t_m, re-embedded in Z_+^m.

    Filtering generators is exact: all exponents are nonnegative, so an
    element with vanishing coordinates m+1..r can only be built from
    generators that vanish there too.
    """
    if not isinstance(m, int) or not 1 <= m <= M.ambient_rank:
        raise InputError(f"truncation level must be in 1..{M.ambient_rank}, got {m!r}")
    gens = tuple(g[:m] for g in M.generators if not any(g[m:]))
    return AffineMonoid(m, gens)


def same_elements(M: AffineMonoid, N: AffineMonoid) -> bool:
    """Semantic equality via two-sided generator membership."""
    if M.ambient_rank != N.ambient_rank:
        return False
    return all(contains(M, g) for g in N.generators) and all(contains(N, g) for g in M.generators)


def is_submonoid(M: AffineMonoid, N: AffineMonoid) -> bool:
    """Whether M is contained in N."""
    return M.ambient_rank == N.ambient_rank and all(contains(N, g) for g in M.generators)


class ElementTable:
    """The elements of a monoid inside the box [0, bound]^r, as a boolean array.

    Used by the closure algorithms, which need many membership queries over
    a fixed bounded region. Generators can be added incrementally.
    """

    def __init__(self, ambient_rank: int, bound: int, generators: Iterable[Sequence[int]] = ()):
        self.ambient_rank = ambient_rank
        self.bound = bound
        self.table = np.zeros((bound + 1,) * ambient_rank, dtype=bool)
        self.table[(0,) * ambient_rank] = True
        for g in generators:
            self.add(g)

    def add(self, g: Sequence[int]) -> None:
        step = tuple(g)
        n = self.bound + 1
        while all(s < n for s in step) and any(step):
            dst = tuple(slice(s, None) for s in step)
            src = tuple(slice(0, n - s) for s in step)
            self.table[dst] |= self.table[src]
            step = tuple(2 * s for s in step)

    def __contains__(self, v) -> bool:
        if any(x > self.bound for x in v):
            raise ValueError(f"{tuple(v)} lies outside the table box (bound {self.bound})")
        if any(x < 0 for x in v):
            return False
        return bool(self.table[tuple(v)])
