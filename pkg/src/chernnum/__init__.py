"""Exact Chern-number computations for foliation witnesses on projective spaces."""

from .bundles import VirtualBundle, char_number, chern_numbers, conjugate, difference, direct_sum, external, line, tangent_cp, trivial
from .cohomology import CohomologyElement, ProductSpace, StructuredSpace, external_product, pair_fundamental
from .linalg import determinant
from .obstruction import ManifoldFacts, QueryMode, Verdict, connectivity_bound, decide
from .partitions import Partition, enumerate_partitions, juxtapose, refines, triangular_order
from .symfunc import ChernMonomial, ChernPolynomial, c_poly, monomial_symmetric, s_poly, transition_matrix
from .witness import CharMatrix, StructuredManifold, assemble_matrix, build_F, verify_independence, witness_product

__version__ = "0.1.0"
