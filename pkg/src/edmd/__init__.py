from .gram import (EdmdMatrices, build_gram_matrices, assemble_edmd, least_squares_edmd,
                   node_sum, chop)
from .transfer import (OperatorMatrix, transfer_matrix_quadrature, galerkin_representation,
                       transfer_apply_inverse_branches)

__all__ = ['EdmdMatrices', 'build_gram_matrices', 'assemble_edmd', 'least_squares_edmd', 'node_sum', 'chop',
           'OperatorMatrix', 'transfer_matrix_quadrature', 'galerkin_representation',
           'transfer_apply_inverse_branches']
