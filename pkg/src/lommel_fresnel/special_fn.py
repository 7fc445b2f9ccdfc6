"""Scalar special functions: Fresnel integrals and their auxiliary functions,
Bessel J0/Y0, half-order Anger functions, Gamma at half-integers, the
extended double factorial and the Greubel eta sequence.

Fresnel-type quantities are parameterised internally by the *phase*
``lam = pi*x**2/2`` rather than by ``x``: every closed form downstream
multiplies ``S``/``C`` by ``sin(lam)``/``cos(lam)``, and computing both from
the same ``lam`` keeps the oscillatory reconstruction consistent.

* ``lam <= LAM_SWITCH`` (``x <= 1.6``): Maclaurin series in ``lam``.
* ``lam > LAM_SWITCH``: the auxiliary functions ``f``, ``g`` come from the
  continued fraction of ``sqrt(pi) exp(y**2) erfc(y)`` at
  ``y = sqrt(lam) exp(-i pi/4)``; ``S``, ``C`` are rebuilt from them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import mpmath
import scipy.special

from .numeric import (
    EPS,
    FLOAT,
    ConvergenceError,
    DomainError,
    Evaluation,
    PoleError,
    mp_backend,
    resolve_precision,
)

FRESNEL_X_SWITCH = 1.6
LAM_SWITCH = math.pi * FRESNEL_X_SWITCH ** 2 / 2
_MP_SERIES_LAM = 40.0
_SQRT_2PI = math.sqrt(2.0 * math.pi)


class FresnelParts(NamedTuple):
    S: object
    C: object
    f: object
    g: object


def _check_real(x, name="x", *, positive=False, nonneg=False):
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    if positive and not x > 0.0:
        raise DomainError(f"{name} must be > 0, got {x!r}")
    if nonneg and x < 0.0:
        raise DomainError(f"{name} must be >= 0, got {x!r}")
    return x


# ---------------------------------------------------------------------------
# Fresnel core
# ---------------------------------------------------------------------------

def _series_SC(lam, X):
    """S(chi), C(chi) with chi = sqrt(2 lam / pi) by Maclaurin series."""
    chi = X.sqrt(2 * lam / X.pi)
    tol = X.eps if X is FLOAT else X.mpf(10) ** (-X.dps - 2)
    s_terms, c_terms = [], []
    term = X.mpf(1)  # lam**k / k!
    k = 0
    while True:
        if k % 2 == 0:
            c_terms.append((-1) ** (k // 2) * term / (2 * k + 1))
        else:
            s_terms.append((-1) ** (k // 2) * term / (2 * k + 1))
        k += 1
        term = term * lam / k
        # relative to S, whose leading term is lam/3
        if k > lam and abs(term) < tol * 1e-3 * min(1, lam):
            break
        if k > 100000:
            raise ConvergenceError("Fresnel series did not converge")
    return chi * X.fsum(s_terms), chi * X.fsum(c_terms)


def _continued_fraction_fg(lam, X):
    """f(lam), g(lam) from the erfc continued fraction.

    With ``y = sqrt(lam) e^{-i pi/4}``, ``f - i g = (y K(y)) / sqrt(2 pi lam)``
    where ``K(y) = 1/(y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))``.  The tail
    ``T = (1/2)/(y + ...)`` is evaluated by modified Lentz so that
    ``y K - 1 = -u/(1+u)``, ``u = T/y``, is formed without cancellation.
    """
    sq = X.sqrt(lam)
    rot = X.mpc(1, -1) / X.sqrt(2) if X is not FLOAT else FLOAT.cexp_quarter()
    y = sq * rot
    tiny = 1e-300 if X is FLOAT else X.mpf(10) ** (-10 * X.dps)
    eps = X.eps if X is FLOAT else X.mpf(10) ** (-X.dps - 2)
    # modified Lentz for T = A_2/(y + A_3/(y + ...)),  A_k = (k-1)/2
    fval = tiny
    C = fval
    D = 0
    k = 2
    while True:
        A = X.mpf(k - 1) / 2
        D = y + A * D
        D = 1 / (D if D != 0 else tiny)
        C = y + A / C
        if C == 0:
            C = tiny
        delta = C * D
        fval = fval * delta
        if abs(delta - 1) < eps:
            break
        k += 1
        if k > 20000:
            raise ConvergenceError(f"Fresnel continued fraction stalled at lam={lam}")
    u = fval / y
    w = -u / (1 + u)
    norm = X.sqrt(2 * X.pi * lam)
    return (1 + w.real) / norm, -w.imag / norm


def fresnel_parts(lam, X=FLOAT) -> FresnelParts:
    """S, C at ``chi = sqrt(2 lam/pi)`` and the auxiliary ``f``, ``g`` at the
    same point, all in backend ``X``.  Trig factors use ``lam`` directly."""
    lam = X.mpf(lam)
    s, c = X.sin(lam), X.cos(lam)
    if X is FLOAT:
        use_series = lam <= LAM_SWITCH
    else:
        use_series = lam <= _MP_SERIES_LAM
    if use_series:
        if X is FLOAT:
            S, C = _series_SC(lam, X)
        else:
            # Alternating terms peak near e**lam; pad the working precision.
            Y = mp_backend(X.dps + int(float(lam) / 2.3) + 8)
            S, C = _series_SC(Y.mpf(lam), Y)
            S, C = X.mpf(S), X.mpf(C)
        hs = X.mpf(1) / 2 - S
        hc = C - X.mpf(1) / 2
        f = hs * c + hc * s
        g = hs * s - hc * c
    else:
        f, g = _continued_fraction_fg(lam, X)
        S = X.mpf(1) / 2 - f * c - g * s
        C = X.mpf(1) / 2 + f * s - g * c
    return FresnelParts(S, C, f, g)


def _backend(precision):
    return FLOAT if resolve_precision(precision) == "standard" else mp_backend()


def _two_square(x: float) -> tuple[float, float]:
    """x*x = hi + lo exactly (Dekker splitting)."""
    hi = x * x
    split = 134217729.0 * x
    xh = split - (split - x)
    xl = x - xh
    lo = ((xh * xh - hi) + 2.0 * xh * xl) + xl * xl
    return hi, lo


def _sincos_half_pi_square(x: float) -> tuple[float, float]:
    """sin and cos of pi*x**2/2 with the argument reduced exactly mod 4."""
    hi, lo = _two_square(x)
    r = math.fmod(hi, 4.0) + lo
    phase = 0.5 * math.pi * r
    return math.sin(phase), math.cos(phase)


def _fresnel_x(x, precision):
    x = _check_real(x, nonneg=True)
    if resolve_precision(precision) == "extended":
        X = mp_backend()
        xm = X.mpf(x)
        lam = X.pi * xm * xm / 2
        p = fresnel_parts(lam, X)
        return float(p.S), float(p.C)
    if x == 0.0:
        return 0.0, 0.0
    if x < 1e-4:
        # two Maclaurin terms are exact to rounding; also avoids lam underflow
        q = (0.5 * math.pi) ** 2 * x ** 4
        return math.pi * x ** 3 / 6 * (1 - q / 14), x * (1 - q / 10)
    lam = 0.5 * math.pi * x * x
    if x <= FRESNEL_X_SWITCH:
        S, C = _series_SC(lam, FLOAT)
        # rescale chi -> x to drop the rounding of sqrt(2 lam / pi)
        chi = math.sqrt(2.0 * lam / math.pi)
        return S * (x / chi), C * (x / chi)
    f, g = _continued_fraction_fg(lam, FLOAT)
    s, c = _sincos_half_pi_square(x)
    return 0.5 - f * c - g * s, 0.5 + f * s - g * c


def fresnel_S(x, precision=None) -> float:
    """Fresnel sine integral S(x) = int_0^x sin(pi t^2/2) dt, x >= 0."""
    return _fresnel_x(x, precision)[0]


def fresnel_C(x, precision=None) -> float:
    """Fresnel cosine integral C(x) = int_0^x cos(pi t^2/2) dt, x >= 0."""
    return _fresnel_x(x, precision)[1]


def aux_f(lam, precision=None) -> float:
    """Auxiliary function f at chi = sqrt(2 lam/pi):
    ``f = (1/2 - S) cos(lam) + (C - 1/2) sin(lam)``."""
    lam = _check_real(lam, "lam", positive=True)
    return float(fresnel_parts(lam, _backend(precision)).f)


def aux_g(lam, precision=None) -> float:
    """Auxiliary function g at chi = sqrt(2 lam/pi):
    ``g = (1/2 - S) sin(lam) - (C - 1/2) cos(lam)``."""
    lam = _check_real(lam, "lam", positive=True)
    return float(fresnel_parts(lam, _backend(precision)).g)


def _aux_asym(lam, N, offset):
    lam = _check_real(lam, "lam", positive=True)
    N = int(N)
    if N < 1:
        raise DomainError("truncation order N must be >= 1")
    lead = 1.0 / (math.sqrt(2.0) * math.pi * lam ** (offset + 0.5))
    terms = [(-1) ** j * math.gamma(2 * j + offset + 0.5) / lam ** (2 * j)
             for j in range(N + 1)]
    value = lead * math.fsum(terms[:N])
    # first omitted term, plus rounding of the partial sum
    omitted = abs(lead * terms[N]) + 4 * EPS * abs(value)
    notes = ()
    if abs(terms[N]) > abs(terms[N - 1]):
        notes = ("divergent",)
    return Evaluation(value, omitted, "asymptotic", N, notes)


def aux_f_asym(lam, N) -> Evaluation:
    """N-term asymptotic series of f; error estimate = first omitted term
    (plus rounding)."""
    return _aux_asym(lam, N, 0)


def aux_g_asym(lam, N) -> Evaluation:
    """N-term asymptotic series of g; error estimate = first omitted term
    (plus rounding)."""
    return _aux_asym(lam, N, 1)


# ---------------------------------------------------------------------------
# Bessel and Anger
# ---------------------------------------------------------------------------

def bessel_J0(z, precision=None) -> float:
    z = _check_real(z, "z", nonneg=True)
    if resolve_precision(precision) == "extended":
        X = mp_backend()
        return float(X.besselj(0, X.mpf(z)))
    return float(scipy.special.j0(z))


def bessel_Y0(z, precision=None) -> float:
    z = _check_real(z, "z", positive=True)
    if resolve_precision(precision) == "extended":
        X = mp_backend()
        return float(X.bessely(0, X.mpf(z)))
    return float(scipy.special.y0(z))


def _anger_parts(z, precision):
    z = _check_real(z, "z", positive=True)
    X = _backend(precision)
    zm = X.mpf(z)
    p = fresnel_parts(zm, X)
    return X, zm, p, X.sin(zm), X.cos(zm), X.sqrt(2 / (X.pi * zm))


def anger_J_half(z, precision=None) -> float:
    """Anger function of order 1/2 via Fresnel integrals at sqrt(2z/pi)."""
    X, z, p, s, c, amp = _anger_parts(z, precision)
    return float(amp * (p.C * (s + c) + p.S * (s - c)))


def anger_J_3half(z, precision=None) -> float:
    """Anger function of order 3/2 via Fresnel integrals at sqrt(2z/pi)."""
    X, z, p, s, c, amp = _anger_parts(z, precision)
    inv = 1 / z
    osc = (p.C * (s * (1 + inv) - c * (1 - inv))
           - p.S * (s * (1 - inv) + c * (1 + inv)))
    return float(-2 / (X.pi * z) + amp * osc)


# ---------------------------------------------------------------------------
# Exact integer / rational helpers
# ---------------------------------------------------------------------------

def double_factorial(n: int) -> Fraction:
    """n!! for n >= 0 and for every odd n, negative odd values by the
    downward recursion n!! = (n+2)!!/(n+2): (-1)!! = 1, (-3)!! = -1,
    (-5)!! = 1/3, ...  Negative even n raises :class:`DomainError`."""
    n = int(n)
    if n >= -1:
        r = 1
        for k in range(n, 0, -2):
            r *= k
        return Fraction(r)
    if n % 2 == 0:
        raise DomainError(f"double factorial undefined for negative even n={n}")
    r = Fraction(1)
    for k in range(-1, n, -2):
        # k!! = (k-2)!! * k  =>  (k-2)!! = k!!/k
        r /= k
    return r


def greubel_eta(n: int) -> int:
    """floor(sqrt(2) n) + floor(sqrt(3/2) n) in exact integer arithmetic."""
    n = int(n)
    if n < 0:
        raise DomainError("greubel_eta needs n >= 0")
    # floor(sqrt(r)) == isqrt(floor(r)) for rational r >= 0
    return math.isqrt(2 * n * n) + math.isqrt((3 * n * n) // 2)


def delta_eta(n: int) -> int:
    return greubel_eta(n + 1) - greubel_eta(n)


def gamma_half_exact(q) -> tuple[Fraction, bool]:
    """Gamma(q) for integer or half-integer q as ``(r, has_sqrt_pi)`` with
    Gamma(q) = r * sqrt(pi)**has_sqrt_pi."""
    q = Fraction(q)
    if q.denominator == 1:
        if q <= 0:
            raise PoleError(f"Gamma has a pole at {q}")
        return Fraction(math.factorial(int(q) - 1)), False
    if q.denominator != 2:
        raise DomainError(f"{q} is not a half-integer")
    n = int(q - Fraction(1, 2))  # q = n + 1/2
    # Gamma(n + 1/2) = (2n-1)!! sqrt(pi) / 2**n, valid for negative n too
    return double_factorial(2 * n - 1) / Fraction(2) ** n, True


def gamma_half(q, precision=None) -> float:
    """Gamma(q) at an integer or half-integer q (negative allowed away from
    the poles) through its sqrt(pi)-rational closed form."""
    r, root = gamma_half_exact(q)
    if resolve_precision(precision) == "extended":
        X = mp_backend()
        return float(X.mpf(r.numerator) / r.denominator * (X.sqrt(X.pi) if root else 1))
    return float(r) * (math.sqrt(math.pi) if root else 1.0)
