from enum import Enum

class ScoreKind(Enum):
    WILCOXON = 'wilcoxon'
    VDW_SPHERICAL = 'vdw-spherical'
    VDW_MARGINAL = 'vdw-marginal'
