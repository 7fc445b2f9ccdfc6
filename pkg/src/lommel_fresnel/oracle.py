"""Independent numerical references.

Nothing here calls a closed form from the rest of the package: the
quadratures sample the integrands directly and the extended summation works
from caller-supplied term generators.  Schedules are fixed (no randomness,
deterministic panel order) so identical requests give bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

import numpy as np

from .numeric import ConvergenceError, DomainError, Evaluation, PoleError, mp_backend

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])          # 15 nodes, ascending
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])

MAX_PANELS = 100_000
_EPS = np.finfo(float).eps


FAMILIES = ("moment", "rational-finite", "rational-infinite", "anger-defining", "custom")


@dataclass(frozen=True)
class IntegrandSpec:
    """One integrand from a supported family plus the requested tolerance.

    Parameters by family:

    ``moment``            n, lam, kind            z**n trig(lam z**2) on [0, 1]
    ``rational-finite``   a, lam, nu, eta, kind   trig**eta(lam z**2)/(1+a z**2)**nu on [0, 1]
    ``rational-infinite`` same                    same on [0, inf)
    ``anger-defining``    order, z                cos(order t - z sin t)/pi on [0, pi]
    ``custom``            func, lo, hi            func vectorised over numpy arrays
    """

    family: str
    params: dict = field(default_factory=dict)
    tol: float = 1e-13

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown integrand family {self.family!r}")
        if not self.tol >= 1e-13 * (1 - 1e-9):
            raise ValueError("tolerance must be >= 1e-13")

    def __getitem__(self, key):
        return self.params[key]


def _trig(kind: str):
    if kind in ("cos", "cosine"):
        return np.cos
    if kind in ("sin", "sine"):
        return np.sin
    raise ValueError(f"kind must be cos or sin, got {kind!r}")


def _finite_integrand(spec: IntegrandSpec):
    p = spec.params
    fam = spec.family
    if fam == "moment":
        n, lam, trig = int(p["n"]), float(p["lam"]), _trig(p["kind"])
        if n < 0:
            raise DomainError("moment power must be >= 0")
        return (lambda z: z ** n * trig(lam * z * z)), 0.0, 1.0, abs(lam)
    if fam == "rational-finite":
        a, lam, nu = float(p["a"]), float(p["lam"]), float(p.get("nu", 1))
        eta, trig = int(p.get("eta", 1)), _trig(p["kind"])
        return ((lambda z: trig(lam * z * z) ** eta / (1.0 + a * z * z) ** nu),
                0.0, 1.0, abs(lam) * eta)
    if fam == "anger-defining":
        order, z0 = float(p["order"]), float(p["z"])
        return ((lambda t: np.cos(order * t - z0 * np.sin(t)) / np.pi),
                0.0, math.pi, 0.0)
    if fam == "custom":
        func = p["func"]
        if not p.get("vectorized", True):
            func = np.vectorize(func, otypes=[float])
        return func, float(p["lo"]), float(p["hi"]), float(p.get("lam", 0.0))
    raise ValueError(f"family {fam!r} is not a finite-interval family")


def _gk15(func, lo: np.ndarray, hi: np.ndarray):
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(func(x), dtype=float)
    k = half * (fx @ _KW)
    g = half * (fx @ _GW)
    scale = half * (np.abs(fx) @ _KW)
    return k, np.abs(k - g), scale


def integrate_interval(func: Callable, lo: float, hi: float, tol: float,
                       breakpoints=()) -> tuple[float, float, int]:
    """Globally adaptive Gauss-Kronrod 7/15 on [lo, hi].

    Returns ``(value, error_estimate, panels_used)``.  Every panel whose
    Kronrod-Gauss difference exceeds its share of ``tol`` is bisected;
    panels at the roundoff floor are accepted as they are.
    """
    if hi == lo:
        return 0.0, 0.0, 0
    pts = sorted({lo, hi, *[b for b in breakpoints if lo < b < hi]})
    active_lo = np.array(pts[:-1])
    active_hi = np.array(pts[1:])
    length = hi - lo
    total, total_err = [], 0.0
    used = 0
    while active_lo.size:
        used += active_lo.size
        if used > MAX_PANELS:
            raise ConvergenceError(f"quadrature exceeded {MAX_PANELS} panels")
        k, err, scale = _gk15(func, active_lo, active_hi)
        width = active_hi - active_lo
        allowed = 0.5 * tol * width / length
        done = (err <= allowed) | (err <= 50 * _EPS * scale) | (width < 1e-14 * length)
        total.extend(k[done])
        total_err += float(err[done].sum())
        lo_s, hi_s = active_lo[~done], active_hi[~done]
        mid = 0.5 * (lo_s + hi_s)
        active_lo = np.concatenate([lo_s, mid])
        active_hi = np.concatenate([mid, hi_s])
        order = np.argsort(active_lo, kind="stable")
        active_lo, active_hi = active_lo[order], active_hi[order]
    return math.fsum(total), total_err, used


def _oscillation_breaks(lam: float, lo: float, hi: float) -> list[float]:
    # phase lam*z**2 advances by pi between consecutive breakpoints
    if lam <= 20.0:
        return []
    kmax = int(lam * hi * hi / math.pi)
    return [math.sqrt(k * math.pi / lam) for k in range(1, kmax + 1)
            if lo < math.sqrt(k * math.pi / lam) < hi]


def quad_finite(spec: IntegrandSpec) -> Evaluation:
    """Adaptive quadrature of a finite-interval family member."""
    func, lo, hi, lam = _finite_integrand(spec)
    breaks = _oscillation_breaks(lam, lo, hi)
    value, err, used = integrate_interval(func, lo, hi, spec.tol, breaks)
    return Evaluation(value, err, "oracle", used)


# ---------------------------------------------------------------------------
# half-line oscillatory integrals
# ---------------------------------------------------------------------------

def _iterated_average(partials: np.ndarray, order: int) -> float:
    seq = np.array(partials, dtype=float)
    for _ in range(order):
        seq = 0.5 * (seq[:-1] + seq[1:])
    return float(seq[-1])


def _cell_integrals(freq: float, a: float, nu: float, kind: str, ncells: int,
                    tol: float) -> np.ndarray:
    """Integrals of trig(freq z**2)/(1+a z**2)**nu over successive cells
    bounded by consecutive zeros of the trig factor."""
    trig = _trig(kind)
    offset = 0.5 if kind.startswith("cos") else 0.0
    # zeros: sin -> k*pi (k>=1); cos -> (k - 1/2)*pi (k>=1)
    phases = [0.0] + [(k - offset) * math.pi for k in range(1, ncells + 1)]
    z = np.sqrt(np.array(phases) / freq)

    def func(x):
        return trig(freq * x * x) / (1.0 + a * x * x) ** nu

    out = np.empty(ncells)
    for i in range(ncells):
        out[i], _, _ = integrate_interval(func, float(z[i]), float(z[i + 1]), tol)
    return out


def oscillatory_halfline(freq: float, a: float, nu: float, kind: str,
                         tol: float = 1e-11, order: int = 12) -> Evaluation:
    """int_0^inf trig(freq z**2) (1 + a z**2)**-nu dz by half-period cell
    summation with iterated averaging of the alternating partial sums."""
    if not (freq > 0 and a > 0):
        raise DomainError("frequency and a must be > 0")
    ncells = 48
    prev_err = math.inf
    while ncells <= 3072:
        cells = _cell_integrals(freq, a, nu, kind, ncells, tol * 1e-2)
        tail = cells[-(order + 4):]
        signs = np.sign(tail)
        if np.any(signs[1:] * signs[:-1] >= 0) or np.any(np.abs(tail[1:]) > np.abs(tail[:-1]) * 1.5):
            raise ConvergenceError("cell sums are not eventually alternating")
        partials = np.cumsum(cells)
        window = partials[-(order + 1):]
        value = _iterated_average(window, order)
        shifted = _iterated_average(partials[-(order + 2):-1], order)
        lower = _iterated_average(partials[-order:], order - 1)
        err = max(abs(value - shifted), abs(value - lower))
        if err <= tol:
            return Evaluation(value, err, "oracle", ncells)
        if err >= prev_err:
            raise ConvergenceError(f"acceleration stagnated at error {err:.3e}")
        prev_err = err
        ncells *= 2
    raise ConvergenceError("half-line quadrature exceeded its cell budget")


def _halfline_constant(a: float, nu: float, tol: float) -> Evaluation:
    """int_0^inf (1 + a z**2)**-nu dz via z = t/(1-t)."""
    if nu <= 0.5:
        raise ConvergenceError("non-oscillatory part diverges for nu <= 1/2")

    def func(t):
        u = 1.0 - t
        return u ** (2 * nu - 2) / (u * u + a * t * t) ** nu

    value, err, used = integrate_interval(func, 0.0, 1.0, tol)
    return Evaluation(value, err, "oracle", used)


def quad_infinite_oscillatory(spec: IntegrandSpec) -> Evaluation:
    """int_0^inf trig**eta(lam z**2)/(1 + a z**2)**nu dz.

    ``cos**eta`` is expanded into single frequencies (plus a constant for
    even eta); each frequency is summed cell by cell.  ``sin`` is supported
    for eta = 1.
    """
    if spec.family != "rational-infinite":
        raise ValueError("quad_infinite_oscillatory needs a rational-infinite spec")
    p = spec.params
    a, lam = float(p["a"]), float(p["lam"])
    nu, eta = float(p.get("nu", 1)), int(p.get("eta", 1))
    kind = p["kind"]
    if a <= 0 or lam <= 0:
        raise DomainError("a and lam must be > 0")
    if kind.startswith("sin"):
        if eta != 1:
            raise ValueError("only eta = 1 is supported for sin")
        return oscillatory_halfline(lam, a, nu, "sin", spec.tol)
    parts, errs, cells = [], [], 0
    for j in range(eta + 1):
        c = eta - 2 * j
        if c < 0:
            break
        weight = comb(eta, j) * (1 if c == 0 else 2) / 2.0 ** eta
        if c == 0:
            ev = _halfline_constant(a, nu, spec.tol / 4)
        else:
            ev = oscillatory_halfline(c * lam, a, nu, "cos", spec.tol / (2 * eta))
        parts.append(weight * ev.value)
        errs.append(weight * ev.abs_error_estimate)
        cells += ev.truncation_used
    return Evaluation(math.fsum(parts), math.fsum(errs), "oracle", cells)


# ---------------------------------------------------------------------------
# extended-precision summation
# ---------------------------------------------------------------------------

def _alternating_tail(j, next_term, partial):
    return abs(next_term)


def sum_extended(term: Callable, *, tail_bound: Callable | None = None,
                 tol: float = 1e-30, dps: int = 40, max_terms: int = 10_000,
                 min_terms: int = 1) -> Evaluation:
    """Sum ``term(j, ctx)`` for j = 0, 1, ... in an mpmath context of ``dps``
    digits.

    ``tail_bound(j, next_term, partial)`` bounds the remainder after ``j+1``
    terms; the default is the magnitude of the next term (alternating,
    eventually decreasing series).  Summation stops once the bound is below
    ``tol * max(1, |partial|)``.  The value is rounded to double; the error
    estimate is the tail bound plus the final rounding.
    """
    ctx = mp_backend(dps)
    rule = tail_bound or _alternating_tail
    total = ctx.mpf(0)
    t = ctx.mpf(term(0, ctx))
    for j in range(max_terms):
        total += t
        nxt = ctx.mpf(term(j + 1, ctx))
        bound = rule(j, nxt, total)
        if j + 1 >= min_terms and bound < tol * max(1, abs(total)):
            value = float(total)
            err = float(bound) + abs(float(total) - float(ctx.mpf(value))) + abs(value) * 2 ** -53
            return Evaluation(value, err, "oracle", j + 1)
        t = nxt
    raise ConvergenceError(f"series not converged after {max_terms} terms")


def sum_extended_mp(term: Callable, *, tol: float = 1e-30, dps: int = 40,
                    max_terms: int = 10_000, min_terms: int = 1):
    """Like :func:`sum_extended` but returns the unrounded mpf sum and the
    tail bound, for oracles that keep working in extended precision."""
    ctx = mp_backend(dps)
    total = ctx.mpf(0)
    t = ctx.mpf(term(0, ctx))
    for j in range(max_terms):
        total += t
        nxt = ctx.mpf(term(j + 1, ctx))
        if j + 1 >= min_terms and abs(nxt) < tol * max(1, abs(total)):
            return total, abs(nxt), j + 1
        t = nxt
    raise ConvergenceError(f"series not converged after {max_terms} terms")


def fresnel_maclaurin(x: float, which: str = "C") -> Evaluation:
    """Fresnel integral from its Maclaurin series summed in extended precision."""
    x = float(x)
    if x < 0:
        raise DomainError("x must be >= 0")
    half_pi = None

    def term(n, ctx):
        nonlocal half_pi
        if half_pi is None:
            half_pi = ctx.pi / 2
        xm = ctx.mpf(x)
        if which == "C":
            return (-1) ** n * half_pi ** (2 * n) * xm ** (4 * n + 1) / (ctx.factorial(2 * n) * (4 * n + 1))
        return (-1) ** n * half_pi ** (2 * n + 1) * xm ** (4 * n + 3) / (ctx.factorial(2 * n + 1) * (4 * n + 3))

    dps = 40 + int(math.pi * x * x / 2 / 2.3)
    return sum_extended(term, dps=dps, min_terms=int(x * x) + 2)


def bessel_series(z: float) -> tuple[float, float]:
    """J0 and Y0 from their ascending series in extended precision."""
    z = float(z)
    if z <= 0:
        raise DomainError("z must be > 0")
    dps = 40 + int(z / 2.3)
    ctx = mp_backend(dps)
    q = (ctx.mpf(z) / 2) ** 2
    j0 = ctx.mpf(0)
    ysum = ctx.mpf(0)
    term = ctx.mpf(1)
    harmonic = ctx.mpf(0)
    k = 0
    while True:
        j0 += term
        if k > 0:
            ysum += (-1) ** (k + 1) * harmonic * abs(term)
        k += 1
        harmonic += ctx.mpf(1) / k
        term = -term * q / (k * k)
        if k > z and abs(term) * (1 + harmonic) < ctx.mpf(10) ** (-dps + 2):
            break
    y0 = 2 / ctx.pi * ((ctx.log(ctx.mpf(z) / 2) + ctx.euler) * j0 + ysum)
    return float(j0), float(y0)


def lommel_ascending(mu, nu, lam: float, *, max_terms: int = 10_000) -> tuple[object, object, int]:
    """Partial sum and tail bound of
    s_{mu,nu}(z) = z**(mu+1) sum_j (-1)**j z**(2j) / prod_{i<=j}((mu+2i+1)**2 - nu**2)
    as unrounded mpf values."""
    mu_f, nu_f = Fraction(mu), Fraction(nu)
    for sgn in (1, -1):
        i2 = sgn * nu_f - mu_f - 1
        if i2 >= 0 and i2.denominator == 1 and int(i2) % 2 == 0:
            raise PoleError(f"ascending Lommel series has a pole at mu={mu_f}, nu={nu_f}")
    lam = float(lam)
    if not lam > 0:
        raise DomainError("lam must be > 0")
    dps = 40 + int(lam / 2.3) + int(abs(float(mu_f) + 1) * math.log10(max(lam, 1.0)))
    ctx = mp_backend(dps)
    mu_m = ctx.mpf(mu_f.numerator) / mu_f.denominator
    nu_m = ctx.mpf(nu_f.numerator) / nu_f.denominator
    z = ctx.mpf(lam)
    zz = z * z
    denom_cache = [None]

    def term(j, c):
        if j == 0:
            denom_cache[0] = (mu_m + 1) ** 2 - nu_m ** 2
            term.last = 1 / denom_cache[0]
            return term.last
        term.last = -term.last * zz / ((mu_m + 2 * j + 1) ** 2 - nu_m ** 2)
        return term.last

    total, tail, used = sum_extended_mp(term, dps=dps, max_terms=max_terms,
                                        min_terms=int(lam) + 2)
    scale = z ** (mu_m + 1)
    return total * scale, tail * scale, used

