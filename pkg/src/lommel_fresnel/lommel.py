"""Lommel functions s_{mu,1/2} and S_{mu,1/2} at integer and half-odd orders.

Integer orders reduce to Fresnel integrals; half-odd orders are elementary.
Each closed form is a prefactor times a short alternating sum, evaluated by
:func:`numeric.guarded_sum`, which recomputes in mpmath when the sum cancels
badly (large ``lam`` against high order).

``variant`` selects the particular solution ``"s"`` (lower) or the complete
solution ``"S"`` (upper).  ``"lower"``/``"upper"`` are accepted as aliases.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .numeric import (
    ConvergenceError,
    DomainError,
    Evaluation,
    PoleError,
    UnsupportedOrderError,
    guarded_sum,
)
from .oracle import lommel_ascending
from .special_fn import _check_real, fresnel_parts

_VARIANTS = {"s": "s", "lower": "s", "lower-s": "s", "S": "S", "upper": "S", "upper-S": "S"}


def normalize_variant(variant: str) -> str:
    try:
        return _VARIANTS[variant]
    except KeyError:
        raise ValueError(f"variant must be 's' or 'S', got {variant!r}") from None


def _order(mu) -> Fraction:
    if isinstance(mu, float) and not math.isfinite(mu):
        raise DomainError("order must be finite")
    return Fraction(mu)


def _evaluation(value, err, promoted, m) -> Evaluation:
    return Evaluation(value, err, "closed-form", m, ("extended",) if promoted else ())


# -- Fresnel-based base values ----------------------------------------------
#
# Each helper returns (prefactor, terms) in backend X.

def _base_terms(which: int, variant: str, lam, X):
    lam = X.mpf(lam)
    p = fresnel_parts(lam, X)
    s, c = X.sin(lam), X.cos(lam)
    half = X.mpf(1) / 2
    root = X.sqrt(2 * X.pi / lam)
    if which == 0:
        if variant == "s":
            return root, [s * p.C, -c * p.S]
        return root, [c * (half - p.S), -s * (half - p.C)]
    if which == -1:
        if variant == "s":
            return -2 * root, [s * p.S, c * p.C]
        return 2 * root, [c * (half - p.C), s * (half - p.S)]
    if which == 1:
        r = X.sqrt(X.pi / (2 * lam))
        if variant == "s":
            return X.mpf(1), [X.mpf(1), -r * s * p.S, -r * c * p.C]
        return X.mpf(1), [X.mpf(1), r * c * (half - p.C), r * s * (half - p.S)]
    raise UnsupportedOrderError(f"base order must be -1, 0 or 1, got {which}")


def lommel_base(which: int, variant: str, lam, precision=None) -> Evaluation:
    """s_{k,1/2} or S_{k,1/2} for k in {-1, 0, 1} from Fresnel integrals."""
    lam = _check_real(lam, "lam", positive=True)
    variant = normalize_variant(variant)
    which = int(which)
    value, err, promoted = guarded_sum(lambda X: _base_terms(which, variant, lam, X),
                                       precision=precision)
    return _evaluation(value, err, promoted, 0)


def _even_terms(m, variant, lam, X):
    pref0, base = _base_terms(0, variant, lam, X)
    lam = X.mpf(lam)
    rpi = X.sqrt(X.pi)
    terms = [pref0 * t / rpi for t in base]
    for j in range(m):
        terms.append(-lam * (-lam * lam) ** j / X.gamma(X.mpf(4 * j + 5) / 2))
    return (-1) ** m * X.gamma(X.mpf(4 * m + 1) / 2), terms


def _odd_terms(m, variant, lam, X):
    pref0, base = _base_terms(-1, variant, lam, X)
    lam = X.mpf(lam)
    rpi = X.sqrt(X.pi)
    terms = [pref0 * t / (2 * rpi) for t in base]
    for j in range(m + 1):
        terms.append((-lam * lam) ** j / X.gamma(X.mpf(4 * j + 3) / 2))
    return (-1) ** m * X.gamma(X.mpf(4 * m + 3) / 2), terms


def _check_m(m, lowest=0):
    if int(m) != m or m < lowest:
        raise DomainError(f"m must be an integer >= {lowest}, got {m!r}")
    return int(m)


def lommel_even(m: int, variant: str, lam, precision=None) -> Evaluation:
    """s_{2m,1/2} or S_{2m,1/2}."""
    m = _check_m(m)
    lam = _check_real(lam, "lam", positive=True)
    variant = normalize_variant(variant)
    value, err, promoted = guarded_sum(lambda X: _even_terms(m, variant, lam, X),
                                       precision=precision)
    return _evaluation(value, err, promoted, m)


def lommel_odd(m: int, variant: str, lam, precision=None) -> Evaluation:
    """s_{2m+1,1/2} or S_{2m+1,1/2}."""
    m = _check_m(m)
    lam = _check_real(lam, "lam", positive=True)
    variant = normalize_variant(variant)
    value, err, promoted = guarded_sum(lambda X: _odd_terms(m, variant, lam, X),
                                       precision=precision)
    return _evaluation(value, err, promoted, m)


# -- half-odd orders: elementary -------------------------------------------

def _sin_tail_terms(m_terms, lam, X):
    # sin(lam) minus its first m_terms Maclaurin terms
    lam = X.mpf(lam)
    out = [X.sin(lam)]
    for j in range(m_terms):
        out.append(-(-1) ** j * lam ** (2 * j + 1) / X.factorial(2 * j + 1))
    return out


def _cos_tail_terms(m_terms, lam, X):
    lam = X.mpf(lam)
    out = [X.cos(lam)]
    for j in range(m_terms):
        out.append(-(-1) ** j * lam ** (2 * j) / X.factorial(2 * j))
    return out


def lommel_half_minus(m: int, lam, precision=None) -> Evaluation:
    """s_{2m-1/2,1/2}(lam) for m >= 1."""
    m = _check_m(m, 1)
    lam = _check_real(lam, "lam", positive=True)

    def build(X):
        pref = (-1) ** m * X.factorial(2 * m - 1) / X.sqrt(X.mpf(lam))
        return pref, _sin_tail_terms(m, lam, X)

    return _evaluation(*guarded_sum(build, precision=precision), m)


def lommel_half_plus(m: int, lam, precision=None) -> Evaluation:
    """s_{2m+1/2,1/2}(lam) for m >= 0."""
    m = _check_m(m)
    lam = _check_real(lam, "lam", positive=True)

    def build(X):
        pref = (-1) ** (m + 1) * X.factorial(2 * m) / X.sqrt(X.mpf(lam))
        return pref, _cos_tail_terms(m + 1, lam, X)

    return _evaluation(*guarded_sum(build, precision=precision), m)


def lommel_half_next(m: int, lam, precision=None) -> Evaluation:
    """s_{2m+3/2,1/2}(lam) for m >= 0.

    Obtained from s_{2m+1/2,1/2} through the first-order relation
    (d/dz + 1/(2z)) s_{mu,1/2} = (mu - 1/2) s_{mu-1,1/2}, applied one order
    up and integrated; the result is the same function as
    ``lommel_half_minus(m + 1)`` but is built independently here.
    """
    m = _check_m(m)
    lam = _check_real(lam, "lam", positive=True)

    def build(X):
        pref = (-1) ** (m + 1) * X.factorial(2 * m + 1) / X.sqrt(X.mpf(lam))
        return pref, _sin_tail_terms(m + 1, lam, X)

    return _evaluation(*guarded_sum(build, precision=precision), m)


# -- dispatch ----------------------------------------------------------------

def classify(mu, variant: str = "s") -> tuple[str, int]:
    """Map an order to ``(family, m)``; raises for orders without a closed form."""
    mu = _order(mu)
    variant = normalize_variant(variant)
    if mu.denominator == 1:
        k = int(mu)
        if k < -1:
            raise UnsupportedOrderError(f"integer order {k} < -1 is not implemented")
        if k in (-1, 0):
            return "base", k
        return ("even", k // 2) if k % 2 == 0 else ("odd", (k - 1) // 2)
    if mu.denominator == 2:
        if variant == "S":
            raise UnsupportedOrderError("S_{mu,1/2} is not available at half-odd mu")
        if mu == Fraction(-1, 2):
            raise PoleError("s_{-1/2,1/2} has a pole")
        twice = int(2 * mu)          # 4m+1 or 4m-1
        if twice < 0:
            raise UnsupportedOrderError(f"half-odd order {mu} < -1/2 is not implemented")
        if twice % 4 == 1:
            return "half-plus", (twice - 1) // 4
        return "half-minus", (twice + 1) // 4
    raise UnsupportedOrderError(f"order {mu} is neither integer nor half-odd")


def lommel(mu, lam, variant: str = "s", precision=None) -> Evaluation:
    """s_{mu,1/2}(lam) (or S_{mu,1/2}) for any implemented order."""
    family, m = classify(mu, variant)
    if family == "base":
        return lommel_base(m, variant, lam, precision)
    if family == "even":
        return lommel_even(m, variant, lam, precision)
    if family == "odd":
        return lommel_odd(m, variant, lam, precision)
    if family == "half-plus":
        return lommel_half_plus(m, lam, precision)
    return lommel_half_minus(m, lam, precision)


def recurrence_residual(mu, lam, variant: str = "s", precision=None) -> float:
    """Residual of [(mu+1)**2 - 1/4] F_mu + F_{mu+2} = lam**(mu+1), relative
    to the largest of the three terms (and to 1 when all are small)."""
    mu = _order(mu)
    lam = _check_real(lam, "lam", positive=True)
    f0 = lommel(mu, lam, variant, precision).value
    f2 = lommel(mu + 2, lam, variant, precision).value
    coeff = float((mu + 1) ** 2 - Fraction(1, 4))
    rhs = lam ** float(mu + 1)
    scale = max(1.0, abs(coeff * f0), abs(f2), rhs)
    return abs(math.fsum([coeff * f0, f2, -rhs])) / scale


def derivative_residual(mu, lam, variant: str = "s", precision=None) -> float:
    """|F'_mu + F_mu/(2 lam) - (mu - 1/2) F_{mu-1}| with F' by central difference.

    The right side uses s_{mu-1,-1/2} = s_{mu-1,1/2}.  At mu = 1/2 it is
    0 * s_{-1/2,1/2}, a pole times zero; the ascending series gives the
    limit sin(lam)/sqrt(lam).
    """
    mu = _order(mu)
    lam = _check_real(lam, "lam", positive=True)
    h = 1e-5 * max(1.0, lam)
    if h >= lam:
        raise DomainError("lam too small for the finite-difference step")
    fp = lommel(mu, lam + h, variant, precision).value
    fm = lommel(mu, lam - h, variant, precision).value
    f0 = lommel(mu, lam, variant, precision).value
    coeff = mu - Fraction(1, 2)
    if coeff == 0:
        if normalize_variant(variant) == "S":
            raise UnsupportedOrderError("S_{mu,1/2} is not available at half-odd mu")
        rhs = math.sin(lam) / math.sqrt(lam)
    else:
        rhs = float(coeff) * lommel(mu - 1, lam, variant, precision).value
    return abs((fp - fm) / (2 * h) + f0 / (2 * lam) - rhs)


def series_oracle(mu, nu, lam, terms: int = 10_000, precision=None) -> Evaluation:
    """s_{mu,nu}(lam) from the ascending series, summed in extended precision.

    Independent of every closed form in this module.  The working precision
    grows with ``lam`` so any real ``lam > 0`` is accepted.
    """
    lam = _check_real(lam, "lam", positive=True)
    total, tail, used = lommel_ascending(mu, nu, lam, max_terms=int(terms))
    value = float(total)
    if not abs(tail) <= 1e-12 * abs(total):
        raise ConvergenceError("ascending series tail bound not met")
    return Evaluation(value, float(abs(tail)) + abs(value) * 2.0 ** -53, "series", used)
