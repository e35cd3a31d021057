from paraprod.norms.quadrature import NormEstimate, QuadratureConfig
from paraprod.norms.bergman import bergman_norm, moment_norm, mz_isomorphism_check, pointwise_bound_check
from paraprod.norms.stolz import calderon_check, maximal_function_norm, tent_norm, tent_product_check
from paraprod.norms.seminorms import (SeminormEstimate, b_phi_seminorm, bloch_seminorm, c1_omega_star_seminorm,
                                      garsia_seminorm, lip_seminorm)
from paraprod.norms.kernels import kernel_integral_check


__all__ = [
    'NormEstimate',
    'QuadratureConfig',
    'SeminormEstimate',
    'b_phi_seminorm',
    'bergman_norm',
    'bloch_seminorm',
    'c1_omega_star_seminorm',
    'calderon_check',
    'garsia_seminorm',
    'kernel_integral_check',
    'lip_seminorm',
    'maximal_function_norm',
    'moment_norm',
    'mz_isomorphism_check',
    'pointwise_bound_check',
    'tent_norm',
    'tent_product_check'
]
