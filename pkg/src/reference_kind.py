from enum import Enum

class ReferenceKind(Enum):
    SPHERICAL_UNIFORM = 'spherical-uniform'     #(Gi) shells of radius j/(n_r+1)
    CUBIC_UNIFORM = 'cubic-uniform'             #(Gii) Halton over the unit cube
    GAUSSIAN_SPHERICAL = 'gaussian-spherical'   #(Giii) chi-square quantile shells
    GAUSSIAN_CUBIC = 'gaussian-cubic'           #(Giv) normal quantiles of Halton

    @property
    def is_spherical(self) -> bool:
        return self in (ReferenceKind.SPHERICAL_UNIFORM, ReferenceKind.GAUSSIAN_SPHERICAL)

    @property
    def is_gaussian(self) -> bool:
        return self in (ReferenceKind.GAUSSIAN_SPHERICAL, ReferenceKind.GAUSSIAN_CUBIC)
