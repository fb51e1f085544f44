"""Dimensions of matrix sets with prescribed eigenvalue, Jordan, or
singular-value multiplicities, with numerical verification oracles."""

from .commutant import (
    CommutantBasis,
    QPPairReport,
    ToeplitzPattern,
    ToeplitzStructureReport,
    ToeplitzViolationError,
    commutant_basis,
    commutant_dimension,
    commutant_structured_dim,
    solve_qp_pair,
    verify_toeplitz_structure,
)
from .factory import (
    SpectrumSpec,
    make_block_diagonal_lambda,
    make_jordan,
    make_sigma,
    random_transform,
    sample_spectrum,
)
from .formulas import (
    DimensionReport,
    MatrixClass,
    commutant_dim_diagonal,
    dim_diagonalizable,
    dim_hermitian,
    dim_jordan,
    dim_normal,
    dim_real_symmetric,
    dim_singular,
    dim_unitary,
    dimension_report,
    table1,
    table2,
)
from .profiles import (
    JordanStructure,
    MultiplicityProfile,
    SingularProfile,
    invariant_degrees,
    pairwise_min_sum,
    partitions,
    sorted_parts,
    weighted_degree_sum,
)
from .ranktools import InconclusiveRankError
from .tangent_oracle import (
    RankProbe,
    assemble_differential,
    conjugation_consistency,
    verify_class,
)

__version__ = "0.1.0"
