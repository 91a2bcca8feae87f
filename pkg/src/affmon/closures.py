"""Normalization, seminormalization and interior points of affine monoids.

Degree bounds
-------------
Let M be generated by g_1..g_k, of rank d, and let F be a face of cone(M).
Any x in cone(F) lies in a simplicial cone spanned by d_F = dim F linearly
independent generators on F, x = sum l_i g_i with l_i >= 0. If some
l_j > 1 then x - g_j still has every l_i positive that x had, so it sits in
the relative interior of the same face and in the same group
gp(M cap F); hence x is reducible both in cone(M) cap gp(M) and in the
seminormalization. Irreducible elements therefore have every l_i <= 1 and
total degree at most the sum of the d largest generator degrees. That sum
is the enumeration bound used below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import AlgorithmDisagreement, InputError
from .lattice import (IntegerLattice, RationalCone, Vector, cone_contains, degree, dot,
                      face_of, faces, hermite_normal_form, lattice_contains,
                      lattice_primitive_multiple, parallelepiped_points,
                      placing_triangulation)
from .monoid import (AffineMonoid, ElementTable, contains, group_of_fractions,
                     monoid_cone, rank)
from .order import lower_key


def points_up_to_degree(r: int, bound: int) -> Iterator[Vector]:
    """All of Z_+^r with total degree <= bound, by degree then lower order."""
    def compositions(n, parts):
        if parts == 1:
            yield (n,)
            return
        for first in range(n, -1, -1):
            for rest in compositions(n - first, parts - 1):
                yield (first,) + rest
    for d in range(bound + 1):
        yield from sorted(compositions(d, r), key=lower_key)


def degree_bound(M: AffineMonoid) -> int:
    """Sum of the rank(M) largest generator degrees (see module docstring)."""
    degs = sorted((degree(g) for g in M.generators), reverse=True)
    return sum(degs[:rank(M)])


# -- normalization --------------------------------------------------------------

@dataclass(frozen=True)
class HilbertBasis:
    elements: tuple[Vector, ...]
    cone: RationalCone
    lattice: IntegerLattice


def hilbert_basis(C: RationalCone, L: IntegerLattice) -> HilbertBasis:
    """Irreducible elements of the normal monoid C cap L.

    The cone is triangulated on lattice-primitive ray generators; every
    irreducible element is either such a generator or a point of a
    fundamental parallelepiped of one of the simplicial cones.
    """
    if L.rank != C.dim:
        raise InputError(f"lattice of rank {L.rank} does not span a {C.dim}-dimensional cone")
    if C.dim == 0:
        return HilbertBasis((), C, L)
    rays = sorted(lattice_primitive_multiple(L, ray) for ray in C.extreme_rays)
    candidates = set(rays)
    for simplex in placing_triangulation(rays):
        candidates.update(p for p in parallelepiped_points([rays[i] for i in simplex], L) if any(p))
    irreducible = []
    for x in candidates:
        if not any(h != x and cone_contains(C, [a - b for a, b in zip(x, h)]) for h in candidates):
            irreducible.append(x)
    return HilbertBasis(tuple(sorted(irreducible, key=lower_key)), C, L)


def normalization(M: AffineMonoid) -> AffineMonoid:
    """cone(M) cap gp(M) on its Hilbert basis."""
    if not M.generators:
        return M
    hb = hilbert_basis(monoid_cone(M), group_of_fractions(M))
    return AffineMonoid(M.ambient_rank, hb.elements)


def is_normal(M: AffineMonoid) -> bool:
    return all(contains(M, h) for h in normalization(M).generators)


# -- seminormalization ----------------------------------------------------------

@dataclass(frozen=True)
class Seminormalization:
    """Result of :func:`seminormalize`.

    ``bound`` is the total degree up to which faces were enumerated and
    ``certificate`` names why that bound suffices.
    """

    monoid: AffineMonoid
    bound: int
    certificate: str
    cross_checked: bool = False


def _irreducibles(points: Sequence[Vector], members: set[Vector]) -> list[Vector]:
    """Irreducible elements among ``points`` (sorted by degree) of a monoid
    whose nonzero elements up to the largest degree are ``members``."""
    irr: list[Vector] = []
    for x in points:
        reducible = False
        for h in irr:
            diff = tuple(a - b for a, b in zip(x, h))
            if min(diff) >= 0 and diff in members:
                reducible = True
                break
        if not reducible:
            irr.append(x)
    return irr


def seminormal_points(M: AffineMonoid, bound: int) -> list[Vector]:
    """Nonzero elements of sn(M) of degree <= bound, by the face formula:
    sn(M) is {0} together with relint(F) cap gp(M cap F) over all faces F."""
    r = M.ambient_rank
    C = monoid_cone(M)
    face_lattices = {}
    for F in faces(C):
        on_face = [g for g in M.generators if all(dot(n, g) == 0 for n in F.normals)]
        face_lattices[F.normals] = hermite_normal_form(on_face, r)
    out = []
    for x in points_up_to_degree(r, bound):
        if not any(x) or not cone_contains(C, x):
            continue
        if lattice_contains(face_lattices[face_of(C, x)], x):
            out.append(x)
    return out


def seminormalize(M: AffineMonoid, cross_check: bool = False) -> Seminormalization:
    """Seminormalization by the face formula, with an explicit degree bound.

    With ``cross_check`` the fixpoint of the 2z/3z closure is computed too,
    and a mismatch raises :class:`AlgorithmDisagreement`.
    """
    if not M.generators:
        return Seminormalization(M, 0, "trivial", cross_check)
    bound = max(2 * M.max_degree, degree_bound(M))
    points = seminormal_points(M, bound)
    gens = _irreducibles(points, set(points))
    result = AffineMonoid(M.ambient_rank, tuple(gens))
    if cross_check:
        other = seminormalization_fixpoint(M)
        if other.generators != result.canonical().generators:
            raise AlgorithmDisagreement(
                f"face formula gives {result}, 2z/3z fixpoint gives {other}")
    return Seminormalization(result, bound, "parallelepiped-bound", cross_check)


def seminormalization(M: AffineMonoid) -> AffineMonoid:
    return seminormalize(M).monoid


def seminormalization_fixpoint(M: AffineMonoid, bound: int | None = None) -> AffineMonoid:
    """Smallest overmonoid closed under (2z, 3z in N => z in N), restricted
    to candidates z in cone(M) cap gp(M) of degree <= bound.

    Independent of the face formula; used as its cross-check. The default
    bound is twice the generator bound so that chains z, 2z, 3z, ... that
    pass through higher degrees are still seen.
    """
    r = M.ambient_rank
    if not M.generators:
        return M
    if bound is None:
        bound = 2 * max(2 * M.max_degree, degree_bound(M))
    C = monoid_cone(M)
    L = group_of_fractions(M)
    candidates = [x for x in points_up_to_degree(r, bound)
                  if any(x) and cone_contains(C, x) and lattice_contains(L, x)]
    table = ElementTable(r, 3 * bound, M.generators)
    added = []
    changed = True
    while changed:
        changed = False
        for z in candidates:
            if z in table:
                continue
            if tuple(2 * a for a in z) in table and tuple(3 * a for a in z) in table:
                table.add(z)
                added.append(z)
                changed = True
    return AffineMonoid(r, M.generators + tuple(added)).canonical()


def is_seminormal(M: AffineMonoid) -> bool:
    return all(contains(M, g) for g in seminormalization(M).generators)


def two_three_violations(M: AffineMonoid, bound: int) -> list[Vector]:
    """z in gp(M) cap cone(M) of degree <= bound with 2z, 3z in M but z not
    in M. Any hit proves M is not seminormal."""
    r = M.ambient_rank
    if not M.generators:
        return []
    C = monoid_cone(M)
    L = group_of_fractions(M)
    table = ElementTable(r, 3 * bound, M.generators)
    out = []
    for z in points_up_to_degree(r, bound):
        if not any(z) or z in table:
            continue
        if cone_contains(C, z) and lattice_contains(L, z) \
                and tuple(2 * a for a in z) in table and tuple(3 * a for a in z) in table:
            out.append(z)
    return out


# -- interior --------------------------------------------------------------------

def interior_points(M: AffineMonoid, degree_bound: int) -> list[Vector]:
    """Points of Z_+^r strictly inside cone(M), total degree <= degree_bound,
    in the lower order. Empty for cones that are not full-dimensional."""
    if degree_bound < 0:
        raise InputError("degree bound must be nonnegative")
    C = monoid_cone(M)
    pts = [x for x in points_up_to_degree(M.ambient_rank, degree_bound) if cone_contains(C, x, strict=True)]
    return sorted(pts, key=lower_key)
