"""Exact computations with quantum OGZ algebras, skew group algebras and G(m,p,n) invariants."""

from .laurent import DivisionByZeroError, LaurentPoly, LaurentRing, RatFunc, elementary_symmetric, frac_normalize, monomial_substitute
from .ogz import (CheckRecord, build_A, build_B, build_X, cartan_commutator, ogz_generators, verify_galois_support,
                  verify_heisenberg, verify_invariance, verify_serre_and_cross)
from .reflection import (AlgebraSpec, GroupElement, ProductGroupElement, act_on_poly, coset_rep_and_epsilon,
                         enumerate_group, gamma_generators, generating_set, group_inv, group_make, group_mul,
                         is_invariant)
from .scalars import CyclotomicRational, Scalar, cyclo_reduce, mp_q_number
from .skew import MonoidResult, SkewAlgebra, SkewElement, act_on_skew, commutator, monoid_generates, skew_mul, skew_support

__version__ = "0.1.0"
