import pytest
import sympy

from affmon import (QQ, ZZ, AffineMonoid, AlgebraElement, InputError, PreconditionError,
                    Progression, SearchExhausted, ShearAutomorphism, apply_shear,
                    find_cphi_witness, is_monic, monicize, parse_element, rank2_canonical_form,
                    restricts_to_monoid, truncation)
from affmon.catalog import diagonal, mixed_squares, orthant, skew, veronese
from affmon.shear import canonical_form_map, discover_progressions, search_level

from conftest import random_element

T = sympy.symbols("t1:5")


def sympy_shear(f, c, sign=1):
    r = f.rank
    subs = {T[i]: T[i] + sign * T[r - 1] ** ci for i, ci in enumerate(c)}
    expr = sum(sympy.Rational(int(co.numerator), int(co.denominator)) *
               sympy.prod([T[i] ** a for i, a in enumerate(e)]) for e, co in f)
    return sympy.expand(sympy.sympify(expr).xreplace(subs))


def as_sympy(f):
    return sympy.expand(sum(sympy.Rational(int(co.numerator), int(co.denominator)) *
                            sympy.prod([T[i] ** a for i, a in enumerate(e)]) for e, co in f))


def test_shear_matches_sympy(rng):
    for _ in range(40):
        r = rng.choice([2, 3])
        f = random_element(rng, r, QQ, max_degree=4)
        c = tuple(rng.randint(1, 4) for _ in range(r - 1))
        sign = rng.choice([1, -1])
        assert as_sympy(apply_shear(ShearAutomorphism(r, c, sign), f)) == sympy_shear(f, c, sign)


def test_inverse_and_homomorphism(rng):
    for _ in range(25):
        r = rng.choice([2, 3])
        eta = ShearAutomorphism(r, tuple(rng.randint(1, 3) for _ in range(r - 1)))
        f, g = random_element(rng, r, QQ, 3), random_element(rng, r, QQ, 3)
        assert apply_shear(eta.inverse(), apply_shear(eta, f)) == f
        assert apply_shear(eta, f * g) == apply_shear(eta, f) * apply_shear(eta, g)
        assert apply_shear(eta, f + g) == apply_shear(eta, f) + apply_shear(eta, g)


def test_shear_validation():
    with pytest.raises(InputError):
        ShearAutomorphism(3, (1,))
    with pytest.raises(InputError):
        ShearAutomorphism(2, (0,))


def test_restriction_examples():
    assert restricts_to_monoid(ShearAutomorphism(2, (3,)), veronese(2, 2))
    assert not restricts_to_monoid(ShearAutomorphism(2, (2,)), veronese(2, 2))
    assert not restricts_to_monoid(ShearAutomorphism(2, (3,)), AffineMonoid(2, ((2, 0), (0, 1))))
    assert restricts_to_monoid(ShearAutomorphism(2, (5,)), orthant(2))
    assert restricts_to_monoid(ShearAutomorphism(3, (3, 3)), mixed_squares())


def test_restriction_transcript():
    check = restricts_to_monoid(ShearAutomorphism(2, (2,)), veronese(2, 2))
    assert len(check.transcript) == 2 * len(veronese(2, 2).generators)
    bad = [line for line in check.transcript if not line.ok]
    assert bad and "missing" in str(bad[0])
    short = restricts_to_monoid(ShearAutomorphism(2, (2,)), veronese(2, 2), full_transcript=False)
    assert not short.restricts and len(short.transcript) <= len(check.transcript)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_veronese_progression_family(n, k):
    c = n * k + 1
    for r in (2, 3):
        assert restricts_to_monoid(ShearAutomorphism(r, (c,) * (r - 1)), veronese(n, r))


def test_veronese_off_progression_fails():
    assert not restricts_to_monoid(ShearAutomorphism(2, (4,)), veronese(2, 2))
    assert not restricts_to_monoid(ShearAutomorphism(3, (3, 4)), veronese(2, 3))


def test_find_witness_veronese():
    for n in (2, 3):
        for r in (2, 3):
            w = find_cphi_witness(veronese(n, r), bound_c=2)
            assert w is not None and w.verify()
            assert all(ci % n == 1 and ci > 2 for lw in w.levels for ci in lw.c)


def test_find_witness_needs_phi_simplicial():
    with pytest.raises(PreconditionError):
        find_cphi_witness(AffineMonoid(2, ((1, 1),)), 2)


def test_mixed_squares_second_level_obstruction():
    # truncation to t1, t2 is (t1^2, t2^2); every shear sends t1^2 to a sum
    # containing 2*t1*t2^c, and t1*t2^c is outside the truncation
    M2 = truncation(mixed_squares(), 2)
    assert M2.generators == ((2, 0), (0, 2))
    for c in range(1, 30):
        assert not restricts_to_monoid(ShearAutomorphism(2, (c,)), M2)
    assert search_level(mixed_squares(), 2, 2, 30) is None
    assert search_level(mixed_squares(), 3, 2, 30) is not None
    assert find_cphi_witness(mixed_squares(), 2, 30) is None


def test_monicize_example():
    f = parse_element("t1^2", rank=2)
    eta, image = monicize(f, veronese(2, 2), [Progression(3, 2)])
    assert eta.c == (3,)
    assert image == parse_element("t2^6 + 2*t1*t2^3 + t1^2")


def test_monicize_prefers_highest_member():
    f = parse_element("t1^2*t2^2 + t2^2 + 3*t1^2")
    eta, image = monicize(f, veronese(2, 2), [Progression(3, 2)])
    assert is_monic(image)
    w = {e: eta.c[0] * e[0] + e[1] for e in f.support}
    assert max(w, key=w.get) == (2, 2)


def test_monicize_random(rng):
    M = veronese(2, 3)
    support = [e for e in veronese(2, 3).generators] + [(2, 2, 0), (0, 2, 2), (1, 1, 2)]
    for _ in range(15):
        f = random_element(rng, 3, QQ, support=support)
        eta, image = monicize(f, M, [Progression(3, 2)] * 2)
        assert is_monic(image) and restricts_to_monoid(eta, M)
        assert image == apply_shear(eta, f)


def test_monicize_errors():
    M = veronese(2, 2)
    with pytest.raises(PreconditionError):
        monicize(parse_element("2*t2^2 + t1^2", domain=ZZ), M, [Progression(3, 2)])
    with pytest.raises(PreconditionError):
        monicize(parse_element("t1", rank=2), M, [Progression(3, 2)])
    with pytest.raises(SearchExhausted):
        monicize(parse_element("t1^2", rank=2), M, [Progression(2, 2)], limit=20)
    with pytest.raises(InputError):
        monicize(AlgebraElement.zero(2), M)
    with pytest.raises(PreconditionError):
        monicize(parse_element("3", rank=2), M, [Progression(3, 2)])


def test_monicize_discovers_progression():
    assert discover_progressions(veronese(2, 2)) == [Progression(3, 2)]
    eta, image = monicize(parse_element("t1^2 + t1*t2"), veronese(2, 2))
    assert is_monic(image)


def test_progression_parse():
    assert Progression.parse("3:2") == Progression(3, 2)
    assert list(Progression(3, 2).values(9)) == [3, 5, 7, 9]
    with pytest.raises(InputError):
        Progression.parse("3")


@pytest.mark.parametrize("M,expected", [
    (orthant(2), (0, 1)), (veronese(2, 2), (1, 2)), (diagonal(3), (1, 3)),
    (diagonal(5), (1, 5)), (AffineMonoid(2, ((2, 0), (0, 1))), (0, 1)),
])
def test_rank2_canonical_form(M, expected):
    assert rank2_canonical_form(M) == expected


def test_rank2_needs_normal():
    with pytest.raises(PreconditionError):
        rank2_canonical_form(skew(2))
    with pytest.raises(PreconditionError):
        rank2_canonical_form(mixed_squares())


def test_canonical_form_map():
    assert canonical_form_map(veronese(2, 2)) == (1, 1)
    assert canonical_form_map(AffineMonoid(2, ((2, 0), (0, 3)))) == (2, 3)
