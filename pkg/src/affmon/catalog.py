"""Named monoid families with their known classifications.

Names accepted by :func:`get` (and the CLI ``--catalog`` flag)::

    veronese(n,r)       all monomials of total degree n in r variables
    diagonal(n)         (t1^n, t1*t2, t2^n)
    skew(j)             (t1^2, t1*t2^j, t2^2), j >= 2
    cubic-skew          (t1^3, t1*t2^2, t2^3)
    mixed-squares       (t1^2, t2^2, t3^2, t1*t3, t2*t3)
    orthant(r)          Z_+^r
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .errors import InputError
from .monoid import AffineMonoid


@dataclass(frozen=True)
class Expectation:
    value: object
    reason: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: dict
    build: Callable[[], AffineMonoid] = field(repr=False)
    expected: dict[str, Expectation] = field(default_factory=dict)

    @property
    def monoid(self) -> AffineMonoid:
        return self.build()


def veronese(n: int, r: int) -> AffineMonoid:
    """Generated by every monomial of total degree exactly n in t_1..t_r."""
    if not isinstance(n, int) or n < 1:
        raise InputError(f"veronese degree must be >= 1, got {n!r}")
    if not isinstance(r, int) or not 1 <= r <= 4:
        raise InputError(f"veronese rank must be in 1..4, got {r!r}")
    gens = [v for v in product(range(n + 1), repeat=r) if sum(v) == n]
    return AffineMonoid(r, tuple(gens), f"veronese({n},{r})")


def orthant(r: int) -> AffineMonoid:
    return AffineMonoid(r, tuple(tuple(int(i == j) for j in range(r)) for i in range(r)), f"orthant({r})")


def diagonal(n: int) -> AffineMonoid:
    if n < 1:
        raise InputError("diagonal(n) needs n >= 1")
    return AffineMonoid(2, ((n, 0), (1, 1), (0, n)), f"diagonal({n})")


def skew(j: int) -> AffineMonoid:
    if j < 2:
        raise InputError("skew(j) needs j >= 2")
    return AffineMonoid(2, ((2, 0), (1, j), (0, 2)), f"skew({j})")


def cubic_skew() -> AffineMonoid:
    return AffineMonoid(2, ((3, 0), (1, 2), (0, 3)), "cubic-skew")


def mixed_squares() -> AffineMonoid:
    return AffineMonoid(3, ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 0, 1), (0, 1, 1)), "mixed-squares")


_FAMILIES = {
    "veronese": (veronese, 2),
    "orthant": (orthant, 1),
    "diagonal": (diagonal, 1),
    "skew": (skew, 1),
    "cubic-skew": (cubic_skew, 0),
    "mixed-squares": (mixed_squares, 0),
}


def example_monoid(name: str, *params: int) -> AffineMonoid:
    try:
        build, arity = _FAMILIES[name]
    except KeyError:
        raise InputError(f"unknown catalog name {name!r}; known: {', '.join(sorted(_FAMILIES))}") from None
    if len(params) != arity:
        raise InputError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return build(*params)


def get(spec: str) -> AffineMonoid:
    """Parse ``name`` or ``name(p1,p2)`` and build the monoid."""
    m = re.fullmatch(r"\s*([a-z][a-z0-9-]*)\s*(?:\(\s*([0-9,\s]*)\s*\))?\s*", spec)
    if not m:
        raise InputError(f"malformed catalog name {spec!r}")
    params = [int(p) for p in m.group(2).split(",") if p.strip()] if m.group(2) else []
    return example_monoid(m.group(1), *params)


def _veronese_entry(n, r):
    return CatalogEntry(f"veronese({n},{r})", {"n": n, "r": r}, lambda: veronese(n, r), {
        "phi_simplicial": Expectation(True, "every t_i^n is a generator"),
        "normal": Expectation(True, "Veronese monoids are normal"),
        "seminormal": Expectation(True, "normal implies seminormal"),
    })


def entries() -> list[CatalogEntry]:
    """The regression catalog: every family at the parameters of interest."""
    out = [_veronese_entry(n, r) for n in (1, 2, 3) for r in (2, 3)]
    for n in range(2, 7):
        out.append(CatalogEntry(f"diagonal({n})", {"n": n}, lambda n=n: diagonal(n), {
            "phi_simplicial": Expectation(True, "contains t1^n and t2^n"),
            "normal": Expectation(True, "gp(M) cap Z_+^2 is generated by t1^n, t1*t2, t2^n"),
            "seminormal": Expectation(True, "normal implies seminormal"),
        }))
    out.append(CatalogEntry("skew(2)", {"j": 2}, lambda: skew(2), {
        "phi_simplicial": Expectation(True, "contains t1^2 and t2^2"),
        "normal": Expectation(False, "t1 is in gp(M) with t1^2 in M but t1 not in M"),
        "seminormal": Expectation(True, "every z with z^2, z^3 in M already lies in M"),
        "normalization": Expectation(((0, 2), (1, 0)), "cone is the orthant, gp(M) = Z x 2Z"),
    }))
    for j in range(3, 7):
        sn = ((0, 2), (1, 1), (2, 0)) if j % 2 else ((0, 2), (1, 2), (2, 0))
        out.append(CatalogEntry(f"skew({j})", {"j": j}, lambda j=j: skew(j), {
            "phi_simplicial": Expectation(True, "contains t1^2 and t2^2"),
            "seminormal": Expectation(False, "z = t1*t2^(j-2) has z^2, z^3 in M but z not in M"),
            "seminormalization": Expectation(sn, "odd j gives t1*t2, even j gives t1*t2^2"),
        }))
    out.append(CatalogEntry("cubic-skew", {}, cubic_skew, {
        "phi_simplicial": Expectation(True, "contains t1^3 and t2^3"),
        "seminormal": Expectation(False, "z = t1^2*t2 has z^2, z^3 in M but z not in M"),
        "seminormalization": Expectation(((0, 3), (1, 2), (2, 1), (3, 0)), "adding t1^2*t2 closes it"),
        "normalization": Expectation(((0, 3), (1, 2), (2, 1), (3, 0)), "equals the seminormalization"),
    }))
    out.append(CatalogEntry("mixed-squares", {}, mixed_squares, {
        "phi_simplicial": Expectation(True, "contains t1^2, t2^2, t3^2"),
        "rank": Expectation(3, "full rank"),
        "normal": Expectation(False, "t1*t2 lies in gp(M) and (t1*t2)^2 in M, but t1*t2 is not in M"),
        "seminormal": Expectation(True, "any z with z^2, z^3 in M already lies in M"),
    }))
    return out


def entry(name: str) -> CatalogEntry:
    for e in entries():
        if e.name == name:
            return e
    raise InputError(f"no catalog entry named {name!r}")


def evaluate(prop: str, M: AffineMonoid):
    """Compute one of the properties recorded in ``CatalogEntry.expected``.

    Generator-set properties come back as sorted tuples so that they compare
    equal to the recorded values regardless of storage order.
    """
    from . import closures, monoid
    if prop == "phi_simplicial":
        return monoid.is_phi_simplicial(M)
    if prop == "rank":
        return monoid.rank(M)
    if prop == "normal":
        return closures.is_normal(M)
    if prop == "seminormal":
        return closures.is_seminormal(M)
    if prop == "normalization":
        return tuple(sorted(closures.normalization(M).canonical().generators))
    if prop == "seminormalization":
        return tuple(sorted(closures.seminormalization(M).canonical().generators))
    raise InputError(f"unknown property {prop!r}")
