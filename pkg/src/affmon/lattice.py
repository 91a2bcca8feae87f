"""Exact integer lattices and rational polyhedral cones.

Everything here works on plain tuples of Python ints so that exponent
growth never overflows. Rationals (``fractions.Fraction``) only appear
inside linear solves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import floor, gcd
from typing import Iterable, Sequence

from .errors import InputError

Vector = tuple[int, ...]

MAX_CONE_RANK = 4


def _as_vectors(vectors: Iterable[Sequence[int]]) -> list[Vector]:
    out = [tuple(int(x) for x in v) for v in vectors]
    if out and len({len(v) for v in out}) != 1:
        raise InputError("vectors have mismatched lengths")
    return out


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def degree(v: Sequence[int]) -> int:
    return sum(v)


def primitive(v: Sequence) -> Vector:
    """Scale a rational or integer vector to the primitive integer vector
    pointing the same way."""
    fr = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Primitive integer basis of {x : <row, x> = 0 for every row}."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * ncols
        x[fcol] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[fcol]
        basis.append(primitive(x))
    return basis


def solve_left(rows: Sequence[Sequence], v: Sequence) -> list[Fraction] | None:
    """Find y with y . rows = v (rows linearly independent), or None."""
    k = len(rows)
    if k == 0:
        return [] if all(x == 0 for x in v) else None
    # columns of the augmented system: unknowns are y_1..y_k
    system = [[Fraction(rows[i][c]) for i in range(k)] + [Fraction(v[c])]
              for c in range(len(v))]
    red, pivots = rref(system)
    if k in pivots:
        return None
    y = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        y[pc] = row[k]
    return y


# -- Hermite normal form ---------------------------------------------------

def hnf_rows(vectors: Iterable[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """Row-style Hermite normal form: echelon rows, positive pivots, entries
    above each pivot reduced into [0, pivot)."""
    m = [list(v) for v in _as_vectors(vectors)]
    if not m:
        return []
    ncols = len(m[0]) if ncols is None else ncols
    r = 0
    pivot_cols = []
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[i_min] = m[i_min], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
    return [tuple(row) for row in m[:r]]


@dataclass(frozen=True)
class IntegerLattice:
    """A subgroup of Z^r stored by its Hermite normal form basis."""

    ambient_rank: int
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    def coordinates(self, v: Sequence[int]) -> list[Fraction] | None:
        """Rational y with y . basis = v, or None if v is outside the span."""
        y = []
        for i, (row, p) in enumerate(zip(self.basis, self.pivots)):
            acc = Fraction(v[p]) - sum(y[j] * self.basis[j][p] for j in range(i))
            y.append(acc / row[p])
        recon = [sum(y[i] * self.basis[i][c] for i in range(self.rank))
                 for c in range(self.ambient_rank)]
        if any(a != b for a, b in zip(recon, v)):
            return None
        return y

    def __contains__(self, v) -> bool:
        return lattice_contains(self, v)


def hermite_normal_form(generators: Iterable[Sequence[int]], ambient_rank: int | None = None) -> IntegerLattice:
    gens = _as_vectors(generators)
    if ambient_rank is None:
        if not gens:
            raise InputError("ambient rank needed for an empty generator list")
        ambient_rank = len(gens[0])
    if gens and len(gens[0]) != ambient_rank:
        raise InputError("generator length does not match ambient rank")
    return IntegerLattice(ambient_rank, tuple(hnf_rows(gens, ambient_rank)))


def lattice_contains(L: IntegerLattice, v: Sequence[int]) -> bool:
    if len(v) != L.ambient_rank:
        raise InputError(f"vector of length {len(v)} in a rank-{L.ambient_rank} lattice")
    rem = list(v)
    for row, p in zip(L.basis, L.pivots):
        q, r = divmod(rem[p], row[p])
        if r:
            return False
        if q:
            rem = [a - q * b for a, b in zip(rem, row)]
    return not any(rem)


def lattice_primitive_multiple(L: IntegerLattice, v: Sequence[int]) -> Vector:
    """First nonzero point of L on the ray through v (v must be in span(L))."""
    v = primitive(v)
    y = L.coordinates(v)
    if y is None:
        raise InputError("vector is not in the span of the lattice")
    k = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in y), 1)
    return tuple(k * x for x in v)


# -- cones --------------------------------------------------------------------

@dataclass(frozen=True)
class RationalCone:
    """Pointed rational cone in double description.

    ``facet_normals`` are primitive vectors inside the linear span of the
    cone; ``equations`` cut out that span. The cone is
    ``{x : <e, x> = 0 for e in equations, <n, x> >= 0 for n in facet_normals}``.
    """

    ambient_rank: int
    extreme_rays: tuple[Vector, ...]
    facet_normals: tuple[Vector, ...]
    equations: tuple[Vector, ...] = ()

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def full_dimensional(self) -> bool:
        return not self.equations

    def __contains__(self, v) -> bool:
        return cone_contains(self, v)


def cone_from_generators(generators: Iterable[Sequence[int]], ambient_rank: int | None = None) -> RationalCone:
    """Double description of the cone spanned by ``generators``.

    Facets come from enumerating (dim-1)-subsets of generators, which is
    fine for the small ranks supported here.
    """
    gens = _as_vectors(generators)
    if ambient_rank is None:
        if not gens:
            raise InputError("ambient rank needed for an empty generator list")
        ambient_rank = len(gens[0])
    if ambient_rank > MAX_CONE_RANK:
        raise InputError(f"cone computations are limited to ambient rank <= {MAX_CONE_RANK}")
    if gens and len(gens[0]) != ambient_rank:
        raise InputError("generator length does not match ambient rank")
    prim = sorted({primitive(g) for g in gens if any(g)})
    equations = tuple(sorted(nullspace(prim, ambient_rank))) if prim else tuple(
        tuple(int(i == j) for j in range(ambient_rank)) for i in range(ambient_rank))
    d = ambient_rank - len(equations)
    if d == 0:
        return RationalCone(ambient_rank, (), (), equations)

    span_basis, _ = rref(prim)
    normals = set()
    for subset in combinations(prim, d - 1):
        if matrix_rank(subset) != d - 1:
            continue
        # n = y . span_basis with <n, s> = 0 for s in subset
        coeff_rows = [[dot(b, s) for b in span_basis] for s in subset]
        for y in nullspace(coeff_rows, d):
            n = primitive([sum(y[i] * span_basis[i][c] for i in range(d)) for c in range(ambient_rank)])
            vals = [dot(n, g) for g in prim]
            if all(x >= 0 for x in vals):
                normals.add(n)
            elif all(x <= 0 for x in vals):
                normals.add(tuple(-x for x in n))
    facets = tuple(sorted(normals))

    rays = []
    for g in prim:
        tight = [n for n in facets if dot(n, g) == 0]
        if matrix_rank(tight) >= d - 1:
            rays.append(g)
    return RationalCone(ambient_rank, tuple(sorted(rays)), facets, equations)


def cone_contains(C: RationalCone, v: Sequence[int], strict: bool = False) -> bool:
    """Membership in C; with ``strict`` membership in the Euclidean interior.

    The interior of a cone that is not full-dimensional is empty, so strict
    membership is always False there.
    """
    if len(v) != C.ambient_rank:
        raise InputError(f"vector of length {len(v)} tested against a rank-{C.ambient_rank} cone")
    if strict and not C.full_dimensional:
        return False
    if any(dot(e, v) for e in C.equations):
        return False
    if strict:
        return all(dot(n, v) > 0 for n in C.facet_normals)
    return all(dot(n, v) >= 0 for n in C.facet_normals)


@dataclass(frozen=True)
class Face:
    """A face of a cone: the facet normals vanishing on it and its rays."""

    normals: frozenset[Vector]
    rays: tuple[Vector, ...]
    dim: int = field(compare=False)

    def contains(self, C: RationalCone, v: Sequence[int]) -> bool:
        return cone_contains(C, v) and all(dot(n, v) == 0 for n in self.normals)

    def relint_contains(self, C: RationalCone, v: Sequence[int]) -> bool:
        if not cone_contains(C, v):
            return False
        return all((dot(n, v) == 0) == (n in self.normals) for n in C.facet_normals)


def faces(C: RationalCone) -> list[Face]:
    """All faces of C, from {0} up to C itself, ordered by dimension."""
    rays = C.extreme_rays
    incidence = [frozenset(i for i, r in enumerate(rays) if dot(n, r) == 0) for n in C.facet_normals]
    found = {frozenset(range(len(rays)))}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for inc in incidence:
                t = s & inc
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    out = []
    for s in found:
        face_rays = tuple(rays[i] for i in sorted(s))
        normals = frozenset(n for n, inc in zip(C.facet_normals, incidence) if s <= inc)
        out.append(Face(normals, face_rays, matrix_rank(face_rays) if face_rays else 0))
    out.sort(key=lambda f: (f.dim, f.rays))
    return out


def face_of(C: RationalCone, v: Sequence[int]) -> frozenset[Vector]:
    """Facet normals vanishing at v; identifies the face whose relative
    interior contains v (v must lie in C)."""
    return frozenset(n for n in C.facet_normals if dot(n, v) == 0)


# -- triangulation and parallelepipeds ------------------------------------

def _hyperplane_normal(span_rows: Sequence[Vector], facet: Sequence[Vector], ambient_rank: int) -> Vector:
    basis, _ = rref(span_rows)
    coeff_rows = [[dot(b, s) for b in basis] for s in facet]
    (y,) = nullspace(coeff_rows, len(basis))
    return primitive([sum(y[i] * basis[i][c] for i in range(len(basis))) for c in range(ambient_rank)])


def placing_triangulation(rays: Sequence[Vector]) -> list[tuple[int, ...]]:
    """Placing triangulation of a pointed cone on its extreme rays, inserted
    in the given order. Returns simplices as sorted tuples of ray indices."""
    rays = list(rays)
    if not rays:
        return []
    r = len(rays[0])
    simplices: list[tuple[int, ...]] = [(0,)]
    placed = [0]
    for idx in range(1, len(rays)):
        v = rays[idx]
        cur = [rays[i] for i in placed]
        if matrix_rank(cur + [v]) > matrix_rank(cur):
            simplices = [s + (idx,) for s in simplices]
        else:
            count: dict[tuple[int, ...], int] = {}
            for s in simplices:
                for f in combinations(s, len(s) - 1):
                    count[f] = count.get(f, 0) + 1
            new = []
            for s in simplices:
                for opp in s:
                    f = tuple(i for i in s if i != opp)
                    if count[f] != 1:
                        continue
                    n = _hyperplane_normal(cur, [rays[i] for i in f], r)
                    if dot(n, rays[opp]) < 0:
                        n = tuple(-x for x in n)
                    if dot(n, v) < 0:
                        new.append(tuple(sorted(f + (idx,))))
            simplices = simplices + new
        placed.append(idx)
    return sorted(simplices)


def parallelepiped_points(vectors: Sequence[Vector], L: IntegerLattice) -> list[Vector]:
    """Points of L of the form sum q_i v_i with 0 <= q_i < 1.

    ``vectors`` must be linearly independent, lie in L, and span the same
    space as L.
    """
    k = len(vectors)
    if k != L.rank:
        raise InputError("simplicial cone does not span the lattice")
    A = []
    for v in vectors:
        y = L.coordinates(v)
        if y is None or any(x.denominator != 1 for x in y):
            raise InputError(f"{v} is not a lattice vector")
        A.append(tuple(int(x) for x in y))
    H = hnf_rows(A, k)
    diag = [H[i][i] for i in range(k)]
    points = []
    for y in product(*(range(h) for h in diag)):
        q = solve_left(A, y)
        frac = [x - floor(x) for x in q]
        p = [sum(frac[i] * vectors[i][c] for i in range(k)) for c in range(L.ambient_rank)]
        points.append(tuple(int(x) for x in p))
    return sorted(set(points))
