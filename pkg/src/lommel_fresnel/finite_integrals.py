"""Moments  M_n(lam) = int_0^1 z**n trig(lam z**2) dz  for integer n >= 0.

``moment_closed`` picks one of eight closed forms by ``n mod 4`` and kind.
Even powers involve Fresnel integrals, odd powers are elementary.  All of
them divide by a power of ``lam`` and subtract a truncated trig series, so
small ``lam`` is routed to the Maclaurin series of the integrand instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lommel import lommel
from .numeric import (
    DomainError,
    EPS,
    Evaluation,
    guarded_sum,
    standard_loss,
)
from .special_fn import _check_real, fresnel_parts

SERIES_ALWAYS = 0.25
SERIES_THRESHOLD = 4.0
_KINDS = {"cos": "cos", "cosine": "cos", "sin": "sin", "sine": "sin"}


def normalize_kind(kind: str) -> str:
    try:
        return _KINDS[kind]
    except KeyError:
        raise ValueError(f"kind must be cos or sin, got {kind!r}") from None


@dataclass(frozen=True)
class MomentSpec:
    n: int
    lam: float
    kind: str

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"power n must be an integer >= 0, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "lam", _check_real(self.lam, "lam", positive=True))
        object.__setattr__(self, "kind", normalize_kind(self.kind))


def _as_spec(spec, lam=None, kind=None) -> MomentSpec:
    if isinstance(spec, MomentSpec):
        return spec
    return MomentSpec(spec, lam, kind)


# -- closed forms ------------------------------------------------------------

def _pow_terms(lam, X, upto, denom, factor):
    """factor * (-lam**2)**j / denom(j) for j < upto, one summand each."""
    return [factor * (-lam * lam) ** j / denom(j) for j in range(upto)]


def _even_build(n, lam, kind, X):
    lam = X.mpf(lam)
    p = fresnel_parts(lam, X)
    s, c = X.sin(lam), X.cos(lam)
    root = X.sqrt(2 / lam)

    def g32(j):
        return X.gamma(X.mpf(4 * j + 3) / 2)

    def g52(j):
        return X.gamma(X.mpf(4 * j + 5) / 2)

    if n % 4 == 0:
        m = n // 4
        pref = (-1) ** m * X.gamma(X.mpf(4 * m + 1) / 2) / (2 * lam ** (2 * m))
        if kind == "cos":
            terms = [root * p.C] + _pow_terms(lam, X, m, g32, -c) + _pow_terms(lam, X, m, g52, -lam * s)
        else:
            terms = [root * p.S] + _pow_terms(lam, X, m, g32, -s) + _pow_terms(lam, X, m, g52, lam * c)
    else:
        m = (n - 2) // 4
        sign = -1 if kind == "cos" else 1
        pref = sign * (-1) ** m * X.gamma(X.mpf(4 * m + 3) / 2) / (2 * lam ** (2 * m + 1))
        if kind == "cos":
            terms = [root * p.S] + _pow_terms(lam, X, m, g52, lam * c) + _pow_terms(lam, X, m + 1, g32, -s)
        else:
            terms = [root * p.C] + _pow_terms(lam, X, m, g52, -lam * s) + _pow_terms(lam, X, m + 1, g32, -c)
    return pref, terms


def _odd_build(n, lam, kind, X):
    lam = X.mpf(lam)
    s, c = X.sin(lam), X.cos(lam)
    one = X.mpf(1)

    def even_f(upto):
        return [(-1) ** j * lam ** (2 * j) / X.factorial(2 * j) for j in range(upto)]

    def odd_f(upto):
        return [(-1) ** j * lam ** (2 * j) / X.factorial(2 * j + 1) for j in range(upto)]

    if n % 4 == 1:
        m = (n - 1) // 4
        pref = (-1) ** m * X.factorial(2 * m) / (2 * lam ** (2 * m + 1))
        if kind == "cos":
            terms = [s * t for t in even_f(m + 1)] + [-lam * c * t for t in odd_f(m)]
        else:
            terms = [one] + [-c * t for t in even_f(m + 1)] + [-lam * s * t for t in odd_f(m)]
    else:
        m = (n - 3) // 4
        if kind == "cos":
            pref = (-1) ** (m + 1) * X.factorial(2 * m + 1) / (2 * lam ** (2 * m + 2))
            terms = [one] + [-c * t for t in even_f(m + 1)] + [-lam * s * t for t in odd_f(m + 1)]
        else:
            pref = (-1) ** m * X.factorial(2 * m + 1) / (2 * lam ** (2 * m + 2))
            terms = [-lam * c * t for t in odd_f(m + 1)] + [s * t for t in even_f(m + 1)]
    return pref, terms


def _closed_build(spec: MomentSpec):
    n, lam, kind = spec.n, spec.lam, spec.kind
    if n % 2 == 0:
        return lambda X: _even_build(n, lam, kind, X)
    return lambda X: _odd_build(n, lam, kind, X)


def moment_closed(spec, lam=None, kind=None, precision=None) -> Evaluation:
    """Closed-form moment with automatic small-``lam`` delegation.

    ``lam < 0.25`` always uses :func:`moment_series`; for ``lam < 4`` the
    series is used whenever the closed form would lose more than about
    1e-11 relative accuracy in double precision.
    """
    spec = _as_spec(spec, lam, kind)
    build = _closed_build(spec)
    if spec.lam < SERIES_ALWAYS:
        return moment_series(spec)
    if spec.lam < SERIES_THRESHOLD and standard_loss(build) > 1e-11:
        return moment_series(spec)
    value, err, promoted = guarded_sum(build, precision=precision)
    return Evaluation(value, err, "closed-form", 0, ("extended",) if promoted else ())


def moment_series(spec, lam=None, kind=None, threshold: float = SERIES_THRESHOLD) -> Evaluation:
    """Maclaurin series of the integrand integrated term by term.

    cos: sum_j (-1)**j lam**(2j) / ((2j)! (n+4j+1))
    sin: sum_j (-1)**j lam**(2j+1) / ((2j+1)! (n+4j+3))

    ``lam`` may be negative here (the series is formally valid), which lets
    callers check the parity of the moments in ``lam``.
    """
    if isinstance(spec, MomentSpec):
        n, lam, kind = spec.n, spec.lam, spec.kind
    else:
        n, kind = int(spec), normalize_kind(kind)
        lam = float(lam)
        if n < 0 or not math.isfinite(lam):
            raise DomainError("need n >= 0 and finite lam")
    if abs(lam) > threshold:
        raise DomainError(f"|lam| = {abs(lam)} exceeds the series threshold {threshold}")
    odd = kind == "sin"
    terms = []
    term_mag = math.inf
    # t_j = (-1)**j lam**(2j+odd) / (2j+odd)!; divided by (n + 4j + 1 + 2 odd)
    t = lam if odd else 1.0
    j = 0
    while True:
        val = t / (n + 4 * j + 1 + 2 * odd)
        terms.append(val)
        j += 1
        t = -t * lam * lam / ((2 * j - 1 + odd) * (2 * j + odd))
        nxt = t / (n + 4 * j + 1 + 2 * odd)
        total = math.fsum(terms)
        if abs(nxt) <= 1e-17 * abs(total) or nxt == 0.0:
            term_mag = abs(nxt)
            break
        if j > 200:
            term_mag = abs(nxt)
            break
    total = math.fsum(terms)
    err = term_mag + 4 * EPS * math.fsum(abs(v) for v in terms)
    return Evaluation(total, err, "series", len(terms))


def moment_lommel_form(k: int, lam, kind: str, parity: str, precision=None) -> Evaluation:
    """The moment of z**(2k) (``parity="even"``) or z**(2k+1) (``"odd"``)
    written through s_{mu,1/2}; used to cross-check :func:`moment_closed`."""
    k = int(k)
    lam = _check_real(lam, "lam", positive=True)
    kind = normalize_kind(kind)
    s, c = math.sin(lam), math.cos(lam)
    if parity == "even":
        if k < 0:
            raise DomainError("k must be >= 0")
        lo = lommel(k - 1, lam, "s", precision)
        hi = lommel(k, lam, "s", precision)
        pref = 1.0 / (4.0 * lam ** k)
        if kind == "cos":
            a, b = (2 * k - 1) * c, 2 * s
        else:
            a, b = (2 * k - 1) * s, -2 * c
    elif parity == "odd":
        if k < 1:
            raise DomainError("degenerate order: k = 0 needs s_{-1/2,1/2}, which has a pole; "
                              "use moment_closed for n = 1")
        lo = lommel(k - 0.5, lam, "s", precision)
        hi = lommel(k + 0.5, lam, "s", precision)
        pref = 1.0 / (2.0 * lam ** (k + 0.5))
        if kind == "cos":
            a, b = k * c, s
        else:
            a, b = k * s, -c
    else:
        raise ValueError("parity must be 'even' or 'odd'")
    parts = [a * lo.value, b * hi.value]
    value = pref * math.fsum(parts)
    err = pref * (abs(a) * lo.abs_error_estimate + abs(b) * hi.abs_error_estimate
                  + 4 * EPS * (abs(parts[0]) + abs(parts[1])))
    return Evaluation(value, err, "closed-form", k)


def integration_by_parts_residual(k: int, lam, precision=None) -> float:
    """|M_{2k}^sin - sin(lam)/(2k+1) + (2 lam/(2k+1)) M_{2k+2}^cos|."""
    k = int(k)
    if k < 0:
        raise DomainError("k must be >= 0")
    lam = _check_real(lam, "lam", positive=True)
    lhs = moment_closed(2 * k, lam, "sin", precision).value
    rhs_c = moment_closed(2 * k + 2, lam, "cos", precision).value
    return abs(math.fsum([lhs, -math.sin(lam) / (2 * k + 1), 2 * lam / (2 * k + 1) * rhs_c]))
