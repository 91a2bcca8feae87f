import pytest

from affmon import (AffineMonoid, contains, hilbert_basis, interior_points, is_normal,
                    is_seminormal, lattice_contains, normalization, seminormalization,
                    seminormalize)
from affmon.catalog import cubic_skew, diagonal, mixed_squares, orthant, skew, veronese
from affmon.closures import (degree_bound, points_up_to_degree, seminormalization_fixpoint,
                             two_three_violations)
from affmon.lattice import cone_contains
from affmon.monoid import group_of_fractions, is_submonoid, monoid_cone, same_elements

from conftest import catalog_monoids, random_phi_simplicial


def brute_hilbert_basis(M, bound):
    C, L = monoid_cone(M), group_of_fractions(M)
    pts = [x for x in points_up_to_degree(M.ambient_rank, bound)
           if any(x) and cone_contains(C, x) and lattice_contains(L, x)]
    members = set(pts)
    irr = []
    for x in pts:
        if not any(tuple(a - b for a, b in zip(x, h)) in members for h in pts if h != x):
            irr.append(x)
    return sorted(irr)


@pytest.mark.parametrize("M", catalog_monoids(), ids=lambda M: M.name)
def test_hilbert_basis_matches_brute_force(M):
    hb = hilbert_basis(monoid_cone(M), group_of_fractions(M)).elements
    assert sorted(hb) == brute_hilbert_basis(M, degree_bound(M) + 2)


def test_hilbert_basis_random(rng):
    for _ in range(15):
        M = random_phi_simplicial(rng)
        hb = normalization(M).generators
        assert sorted(hb) == brute_hilbert_basis(M, degree_bound(M) + 1), M


def test_normalization_examples():
    assert sorted(normalization(skew(2)).generators) == [(0, 2), (1, 0)]
    assert sorted(normalization(AffineMonoid(2, ((2, 0), (0, 2)))).generators) == [(0, 2), (2, 0)]
    assert sorted(normalization(cubic_skew()).generators) == [(0, 3), (1, 2), (2, 1), (3, 0)]
    narrow = AffineMonoid(2, ((1, 2), (2, 1)))
    assert sorted(normalization(narrow).generators) == [(1, 2), (2, 1)]
    assert is_normal(narrow)


def test_normality():
    for n in range(2, 7):
        assert is_normal(diagonal(n))
    assert is_normal(veronese(3, 3))
    assert not is_normal(skew(2))
    assert not is_normal(mixed_squares())


def test_seminormality_examples():
    assert is_seminormal(mixed_squares())
    assert is_seminormal(skew(2))
    for j in range(3, 7):
        assert not is_seminormal(skew(j))
    assert sorted(seminormalization(cubic_skew()).generators) == [(0, 3), (1, 2), (2, 1), (3, 0)]


def test_seminormalize_certificate():
    res = seminormalize(skew(3), cross_check=True)
    assert res.cross_checked and res.certificate == "parallelepiped-bound"
    assert res.bound >= 2 * skew(3).max_degree


def test_rank_deficient_monoid():
    M = AffineMonoid(3, ((2, 0, 2), (0, 2, 2), (1, 1, 2)))
    assert same_elements(normalization(M), M)
    N = AffineMonoid(3, ((2, 0, 0), (3, 0, 0)))
    assert sorted(seminormalization(N).generators) == [(1, 0, 0)]


def test_closure_chain_and_idempotence(rng):
    for M in catalog_monoids() + [random_phi_simplicial(rng) for _ in range(10)]:
        sn, nm = seminormalization(M), normalization(M)
        assert is_submonoid(M, sn) and is_submonoid(sn, nm)
        assert same_elements(seminormalization(sn), sn)
        assert same_elements(normalization(nm), nm)


def test_fixpoint_agrees(rng):
    for M in [skew(3), skew(4), cubic_skew(), mixed_squares()] + [random_phi_simplicial(rng) for _ in range(10)]:
        assert seminormalization_fixpoint(M).equals(seminormalization(M)), M


def test_two_three_violations():
    assert two_three_violations(skew(3), 6) == [(1, 1), (3, 1), (5, 1)]
    assert two_three_violations(mixed_squares(), 8) == []


def test_interior_examples():
    assert interior_points(mixed_squares(), 3) == [(1, 1, 1)]
    assert sorted(interior_points(orthant(2), 3)) == [(1, 1), (1, 2), (2, 1)]
    assert interior_points(AffineMonoid(3, ((1, 0, 0), (0, 1, 0))), 5) == []
    assert interior_points(AffineMonoid(2, ((1, 2), (2, 1))), 3) == [(1, 1)]
