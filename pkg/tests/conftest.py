import random

import pytest

from affmon import AffineMonoid
from affmon.catalog import entries
from affmon.closures import points_up_to_degree

DEFAULT_SEED = 20240611

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized tests")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


def random_phi_simplicial(rng, rank=None, max_degree=4):
    """Pure powers t_i^{a_i} (so the cone is the orthant) plus a few random
    mixed monomials of degree <= max_degree."""
    r = rank or rng.choice([2, 3])
    gens = set()
    for i in range(r):
        e = [0] * r
        e[i] = rng.randint(1, max_degree)
        gens.add(tuple(e))
    pool = [p for p in points_up_to_degree(r, max_degree) if sum(1 for x in p if x) > 1]
    gens.update(rng.sample(pool, rng.randint(1, min(4, len(pool)))))
    return AffineMonoid.from_generators(sorted(gens))


def bfs_elements(M, bound):
    """Every element of M of total degree <= bound, by plain breadth-first search."""
    zero = (0,) * M.ambient_rank
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in M.generators:
                w = tuple(a + b for a, b in zip(v, g))
                if sum(w) <= bound and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def catalog_monoids():
    return [e.monoid for e in entries()]


def random_element(rng, r, domain, max_degree=5, max_terms=5, support=None):
    """Random nonzero element; coefficients are small integers (over QQ,
    occasionally fractions)."""
    from fractions import Fraction

    from affmon import AlgebraElement
    pool = support if support is not None else [p for p in points_up_to_degree(r, max_degree)]
    while True:
        terms = {}
        for e in rng.sample(pool, min(len(pool), rng.randint(1, max_terms))):
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            if domain.kind == "QQ" and rng.random() < 0.3:
                c = Fraction(c, rng.randint(2, 5))
            terms[e] = c
        f = AlgebraElement(terms, domain, r)
        if f:
            return f
