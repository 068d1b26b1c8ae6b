import numpy as np

from .cubic_uniform_grid_builder import CubicUniformGridBuilder
from .reference_kind import ReferenceKind
from .special_functions import inv_cdf_normal


class GaussianCubicGridBuilder(CubicUniformGridBuilder):

    kind = ReferenceKind.GAUSSIAN_CUBIC

    def transform(self, cube_points: np.ndarray) -> np.ndarray:
        # componentwise standard normal quantile
        return inv_cdf_normal(cube_points)
