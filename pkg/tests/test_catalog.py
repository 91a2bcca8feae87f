from math import comb

import pytest

from affmon import InputError
from affmon.catalog import entries, entry, evaluate, example_monoid, get, veronese


@pytest.mark.parametrize("e", entries(), ids=lambda e: e.name)
def test_expected_properties(e):
    M = e.monoid
    for prop, exp in e.expected.items():
        assert evaluate(prop, M) == exp.value, f"{e.name} {prop}: {exp.reason}"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_veronese_generator_count(n, r):
    gens = veronese(n, r).generators
    assert len(gens) == comb(n + r - 1, r - 1)
    assert all(sum(g) == n for g in gens)


def test_get_parses_names():
    assert get("veronese(2, 3)").equals(veronese(2, 3))
    assert get("mixed-squares").ambient_rank == 3
    assert example_monoid("skew", 4).generators == get("skew(4)").generators
    assert entry("skew(2)").expected["normal"].value is False


@pytest.mark.parametrize("bad", ["veronese(2)", "unknown", "skew(1)", "veronese(0,2)", "diag onal(2)"])
def test_bad_names(bad):
    with pytest.raises(InputError):
        get(bad)


def test_unknown_property():
    with pytest.raises(InputError):
        evaluate("smooth", veronese(2, 2))
