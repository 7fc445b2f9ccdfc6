"""Lommel functions s_{mu,1/2}, S_{mu,1/2} and the Fresnel-type integrals
they close: moments of trig(lam z^2) on [0, 1] and rational integrals
trig^eta(lam z^2)/(1 + a z^2)^nu on the half-line, with independent
quadrature and series oracles for every closed form."""

from .asymptotics import (
    infinite_rational_asym_lowest,
    moment_asym,
    rational_asym,
    rational_asym_lowest,
)
from .finite_integrals import (
    MomentSpec,
    integration_by_parts_residual,
    moment_closed,
    moment_lommel_form,
    moment_series,
)
from .lommel import (
    derivative_residual,
    lommel,
    lommel_base,
    lommel_even,
    lommel_half_minus,
    lommel_half_next,
    lommel_half_plus,
    lommel_odd,
    recurrence_residual,
    series_oracle,
)
from .numeric import (
    ConvergenceError,
    DomainError,
    Evaluation,
    PoleError,
    UnsupportedOrderError,
    resolve_precision,
)
from .oracle import IntegrandSpec, quad_finite, quad_infinite_oscillatory, sum_extended
from .rational_integrals import (
    CoefficientTables,
    I_half_one,
    I_half_one_hankel,
    I_nu_one,
    I_one_two,
    I_one_two_aux,
    I_two_one,
    I_two_two,
    MissingCoefficientError,
    RationalSpec,
    anger_form_eval,
    bundled_tables,
    connection_validate,
    dd_recursion_residual,
    infinite_exact,
    power_reduce,
    rational_value,
)
from .special_fn import (
    anger_J_3half,
    anger_J_half,
    aux_f,
    aux_f_asym,
    aux_g,
    aux_g_asym,
    bessel_J0,
    bessel_Y0,
    delta_eta,
    double_factorial,
    fresnel_C,
    fresnel_parts,
    fresnel_S,
    gamma_half,
    greubel_eta,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
