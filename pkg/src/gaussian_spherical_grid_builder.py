import numpy as np

from .factorization import Factorization
from .reference_kind import ReferenceKind
from .special_functions import vdw_radius
from .spherical_uniform_grid_builder import SphericalUniformGridBuilder


class GaussianSphericalGridBuilder(SphericalUniformGridBuilder):
    """Same directions as the uniform shells, radii moved to the chi quantiles.

    Shell j sits at norm sqrt(F^{-1}_{chi2_d}(p_j)) with p_j the uniform
    shell radius, so it is exactly the p_j radial quantile of N(0, I_d).
    """

    kind = ReferenceKind.GAUSSIAN_SPHERICAL

    def shell_radii(self, fact: Factorization) -> np.ndarray:
        return vdw_radius(self.uniform_radii(fact), self.dim)
