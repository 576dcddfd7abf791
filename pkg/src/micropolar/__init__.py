"""Cosserat (micropolar) elastoplasticity at a material point.

Six-modulus isotropic Cosserat elasticity, the Cosserat equivalent stress
``q``, Lode-dependent Generalized Classical yield and potential surfaces,
exponential cohesion softening and a backward-Euler return map.

The invariant and flow-direction kernels come from a compiled extension
when it is available and from a pure-Python fallback otherwise; see
:data:`micropolar.kernels.BACKEND`.
"""

__version__ = "0.1.0"

from .criterion import (  # noqa: E402
    PRESETS,
    GCCriterion,
    GCShape,
    HardeningLaw,
    gamma_value,
    potential_gradients,
    preset,
    sigma0,
    yield_gradients,
    yield_value,
)
from .elasticity import CosseratMaterial  # noqa: E402
from .errors import (  # noqa: E402
    ConsistencyError,
    CornerSingularityError,
    IntegrationError,
    InvalidInputError,
    MicropolarError,
    ParameterDomainError,
    SingularGradientError,
)
from .integrator import MaterialState, Settings, StepResult, integrate_path, return_map, trial_state  # noqa: E402
from .invariants import invariant_set, lode_angle, q_cosserat  # noqa: E402

__all__ = [
    "PRESETS",
    "ConsistencyError",
    "CornerSingularityError",
    "CosseratMaterial",
    "GCCriterion",
    "GCShape",
    "HardeningLaw",
    "IntegrationError",
    "InvalidInputError",
    "MaterialState",
    "MicropolarError",
    "ParameterDomainError",
    "Settings",
    "SingularGradientError",
    "StepResult",
    "gamma_value",
    "integrate_path",
    "invariant_set",
    "lode_angle",
    "potential_gradients",
    "preset",
    "q_cosserat",
    "return_map",
    "sigma0",
    "trial_state",
    "yield_gradients",
    "yield_value",
]
