"""Exact computations with affine monoids in Z_+^r and their monoid algebras."""

from .algebra import (QQ, ZZ, AlgebraElement, CoefficientDomain, grade_decompose,
                      highest_member, is_monic, leading_coeff_ideal_gens, lower_than,
                      parse_element)
from .closures import (hilbert_basis, interior_points, is_normal, is_seminormal,
                       normalization, seminormalization, seminormalize)
from .errors import (AlgorithmDisagreement, InputError, ParseError, PreconditionError,
                     SearchExhausted)
from .lattice import (IntegerLattice, RationalCone, cone_contains, cone_from_generators,
                      faces, hermite_normal_form, lattice_contains)
from .monoid import (AffineMonoid, contains, group_of_fractions, is_phi_simplicial,
                     membership_witness, rank, truncation)
from .shear import (Progression, ShearAutomorphism, apply_shear, find_cphi_witness,
                    monicize, rank2_canonical_form, restricts_to_monoid)

__version__ = "0.1.0"
