"""
Kernel integral estimate ∫_𝔻 ω(z)/|1 − ξ̄z|^{η+1} dA(z) ≍ ω̂(|ξ|)/(1 − |ξ|)^η.
"""

import logging
from typing import Optional

import numpy as np
from scipy import special

from paraprod.exceptions import DomainError
from paraprod.weights import RadialWeightDescriptor, quad


logger = logging.getLogger(__name__)


def kernel_circle_mean(xi_abs: float, eta: float, r: float) -> float:
    """Mean of |1 − ξ̄z|^{−(η+1)} over |z| = r, as ₂F₁(s, s; 1; (|ξ|r)²) with s = (η+1)/2."""
    s = (eta + 1.) / 2.
    return float(special.hyp2f1(s, s, 1., (xi_abs * r) ** 2))


def kernel_integral_check(xi: complex, eta: float, weight: RadialWeightDescriptor,
                          beta: Optional[float] = None, rel_tol: float = 1e-9) -> dict:
    """Both sides of the kernel estimate and their ratio.

    Args:
        xi: point of the disc.
        eta: exponent, must exceed the weight's β exponent.
        weight: an upper doubling weight.
        beta: β if already known; computed with beta_exponent otherwise.
        rel_tol: relative tolerance of the radial quadrature.

    Raises:
        DomainError: |ξ| >= 1 or η <= β.
        NotUpperDoublingError: the weight has no β exponent.
    """
    xi_abs = abs(complex(xi))
    if xi_abs >= 1.:
        raise DomainError(f'xi must lie in the disc, got {xi}')
    if beta is None:
        beta = weight.beta_exponent().beta
    if not eta > beta:
        raise DomainError(f'eta must exceed beta = {beta}, got {eta}')

    def integrand(r):
        return 2. * r * float(weight.omega(r)) * kernel_circle_mean(xi_abs, eta, r) if r < 1. else 0.

    points = [xi_abs] if 0. < xi_abs < 1. else None
    integral = quad(integrand, 0., 1., rel_tol=rel_tol, points=points)
    model = weight.omega_hat(xi_abs) / (1. - xi_abs) ** eta
    ratio = integral / model if model > 0. else float('nan')
    logger.debug(f'kernel check |xi|={xi_abs} eta={eta}: integral {integral:.6g}, model {model:.6g}')
    return {'xi': [float(np.real(xi)), float(np.imag(xi))], 'eta': eta, 'beta': beta,
            'integral': integral, 'model': model, 'ratio': ratio}
