"""Muckenhoupt A_1 weights on (0, 1): exact constants for step weights,
decreasing rearrangement, and sharp reverse Hölder checks."""

from a1tk.a1 import (
    a1_constant,
    a1_constant_bruteforce,
    a1_constant_of,
    hardy_average,
    hardy_constant,
    power_a1_constant,
    verify_theorem1,
)
from a1tk.errors import (
    A1Error,
    DomainError,
    InvalidWeightError,
    PreconditionError,
    RangeError,
    UnsupportedOperationError,
)
from a1tk.generators import (
    GenSpec,
    discretize_extremal,
    gen_bounded_ratio,
    gen_nonincreasing_hardy,
    generate,
    shuffle_cells,
)
from a1tk.rearrange import decreasing_rearrangement, distribution, is_equimeasurable
from a1tk.reverse_holder import (
    INFINITE,
    extremal_weight,
    lemma1_residual,
    p_critical,
    p_sweep,
    sharp_constant,
    sharpness_gap,
    verify_hy_monotone,
    verify_lemma2,
    verify_theorem2,
)
from a1tk.serialization import dumps_weight, load_weight, loads_weight, save_weight
from a1tk.weights import (
    DIVERGES,
    UNIT,
    Interval,
    PowerWeight,
    StepWeight,
    average,
    ess_inf,
    integral,
    lp_integral,
    renormalize,
)

__version__ = "0.1.0"
