"""gpfree: densities and certified bounds for 3-term geometric-progression-free
subsets of the integers and ideals of quadratic number fields."""

__version__ = "0.1.0"

from .errors import (
    ConsistencyError,
    DomainError,
    GpfreeError,
    InvalidDError,
    LimitExceededError,
    NoPresetError,
    NonSquarefreeError,
    NotClassNumberOneError,
    NotImaginaryError,
    NotPrimeError,
)
from .euler import (
    ApproxValue,
    FactorKind,
    a3_contains,
    dedekind_zeta,
    dirichlet_L,
    euler_product_by_splitting,
    f_factor,
    riemann_zeta_int,
)
from .fields import (
    CLASS_NUMBER_ONE_D,
    FieldSpec,
    SplitType,
    Splitting,
    achievable_norm,
    make_field,
    quad_character,
    smallest_nonunit_norms,
    split_type,
)
from .greedy import (
    DensityReport,
    Route,
    SetKind,
    SurveyRow,
    greedy_density_ideals,
    greedy_density_integers,
    histogram,
    rankin_density,
    rational_ratio_density,
    survey,
    universal_bounds,
)
from .lattice import (
    RATIONALS,
    GreedyMode,
    GreedyResult,
    IdealVector,
    PrimeIdealTag,
    QuadInt,
    count_elements,
    count_primitive,
    empirical_density,
    enumerate_elements,
    enumerate_ideals,
    factor_element,
    find_gp_triples,
    greedy_set,
)
from .lower_bounds import (
    Certificate,
    CertStatus,
    IntervalSystem,
    RatInterval,
    certify_gp_free,
    chaining_constant,
    density,
    empirical_upper_density,
    preset,
)
from .upper_bounds import (
    ExclusionProfile,
    SmoothElement,
    coprime_density,
    exclusion_profile,
    improved_bound,
    min_exclusions,
    riddell_bound,
    smooth_elements,
)
