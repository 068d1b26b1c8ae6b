from .errors import InvalidArgumentError, OtrankError, SolverError, UnsupportedError
from .reference_kind import ReferenceKind
from .score_kind import ScoreKind
from .factorization import Factorization, factorization_candidates
from .grid import Grid
from .qmc import halton, sphere_directions, spherical_uniform_qmc
from .wasserstein import w2_to_reference
from .factorization_search import optimal_factorization
from .grids import build_grid
from .dataset import Dataset
from .assignment import Assignment, cost_matrix, solve_assignment
from .empirical_map import EmpiricalMap, empirical_map
from .special_functions import inv_cdf_chisq, inv_cdf_normal
from .rank_sign import RankSign, extract_rank_sign
from .scores import ScoredSample, score, scored_sample
from .rank_statistics import delta_statistic, exact_null_covariance, hotelling, rank_statistic
from .critical_values import CriticalValueCache, CriticalValueTable, exact_critical_value, mc_critical_value
from .rank_test_result import TestResult
from .two_sample_procedure import Procedure, TwoSampleConfig, hotelling_test, two_sample_test
from .scenario import PRESETS, Scenario, ScenarioKind, sample_scenario
from .power_curve import PowerCurve, power_curve
