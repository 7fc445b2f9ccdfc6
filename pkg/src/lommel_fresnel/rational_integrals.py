"""Half-line rational integrals

    I_nu^(eta)(a, lam) = int_0^inf cos(lam z**2)**eta / (1 + a z**2)**nu dz

and the sine companion of I_1^(1).  Every closed form depends on (a, lam)
only through x = lam/a up to an overall 1/sqrt(a), which the tests use as a
homogeneity check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Callable, Iterable

from .finite_integrals import normalize_kind
from .numeric import (
    ConvergenceError,
    DomainError,
    Evaluation,
    guarded_sum,
)
from .oracle import IntegrandSpec, quad_infinite_oscillatory
from .special_fn import (
    _check_real,
    anger_J_3half,
    anger_J_half,
    bessel_J0,
    bessel_Y0,
    delta_eta,
    fresnel_parts,
    greubel_eta,
)

DATA_DIR = Path(__file__).resolve().parent / "data"


def _ax(a, lam):
    a = _check_real(a, "a", positive=True)
    lam = _check_real(lam, "lam", positive=True)
    return a, lam


def _closed(value, err, promoted, truncation=0) -> Evaluation:
    return Evaluation(value, err, "closed-form", truncation, ("extended",) if promoted else ())


@dataclass(frozen=True)
class RationalSpec:
    a: float
    lam: float
    nu: Fraction = Fraction(1)
    eta: int = 1
    range: str = "half-line"

    def __post_init__(self):
        _ax(self.a, self.lam)
        nu = Fraction(self.nu)
        if nu.denominator not in (1, 2) or nu < Fraction(1, 2):
            raise DomainError(f"nu must be a half-integer >= 1/2, got {nu}")
        object.__setattr__(self, "nu", nu)
        if int(self.eta) != self.eta or self.eta < 1:
            raise DomainError("eta must be an integer >= 1")
        if self.range not in ("half-line", "unit-interval"):
            raise ValueError("range must be 'half-line' or 'unit-interval'")
        if self.range == "half-line" and self.eta % 2 == 0 and nu <= Fraction(1, 2):
            raise ConvergenceError("half-line integral with even power diverges for nu <= 1/2")


# -- exact forms ------------------------------------------------------------

def infinite_exact(a, lam, kind: str, precision=None) -> Evaluation:
    """int_0^inf trig(lam z**2)/(1 + a z**2) dz from Fresnel integrals at
    chi = sqrt(2 lam/(pi a))."""
    a, lam = _ax(a, lam)
    kind = normalize_kind(kind)

    def build(X):
        xm = X.mpf(lam) / X.mpf(a)
        p = fresnel_parts(xm, X)
        s, c = X.sin(xm), X.cos(xm)
        pref = X.pi / (2 * X.sqrt(X.mpf(a)))
        if kind == "sin":
            return pref, [-s, p.C * s, p.C * c, p.S * s, -p.S * c]
        return pref, [c, -p.C * c, p.C * s, -p.S * c, -p.S * s]

    return _closed(*guarded_sum(build, precision=precision))


def I_half_one(a, lam, precision=None) -> Evaluation:
    """I_{1/2}^(1) through J0 and Y0 at y = lam/(2a)."""
    a, lam = _ax(a, lam)
    y = lam / (2 * a)
    j0, y0 = bessel_J0(y, precision), bessel_Y0(y, precision)
    parts = [math.sin(y) * j0, -math.cos(y) * y0]
    pref = math.pi / (4 * math.sqrt(a))
    value = pref * math.fsum(parts)
    err = pref * (abs(parts[0]) + abs(parts[1])) * 1e-15
    return Evaluation(value, err, "closed-form", 0)


def I_one_two(a, lam, precision=None) -> Evaluation:
    """I_1^(2) from Fresnel integrals at phase 2 lam/a."""
    a, lam = _ax(a, lam)

    def build(X):
        x = X.mpf(lam) / X.mpf(a)
        p = fresnel_parts(2 * x, X)
        s2, c2 = X.sin(2 * x), X.cos(2 * x)
        cx = X.cos(x)
        pref = X.pi / (4 * X.sqrt(X.mpf(a)))
        return pref, [2 * cx * cx, -p.C * c2, p.C * s2, -p.S * c2, -p.S * s2]

    return _closed(*guarded_sum(build, precision=precision))


def I_one_two_aux(a, lam, precision=None) -> Evaluation:
    """I_1^(2) = pi/(4 sqrt a) (1 + f + g), auxiliary functions at phase 2 lam/a."""
    a, lam = _ax(a, lam)

    def build(X):
        x = X.mpf(lam) / X.mpf(a)
        p = fresnel_parts(2 * x, X)
        return X.pi / (4 * X.sqrt(X.mpf(a))), [X.mpf(1), p.f, p.g]

    return _closed(*guarded_sum(build, precision=precision))


def _I_two_two_build(a, lam, literal: bool):
    def build(X):
        x = X.mpf(lam) / X.mpf(a)
        p = fresnel_parts(2 * x, X)
        s2, c2 = X.sin(2 * x), X.cos(2 * x)
        cx = X.cos(x)
        root = X.sqrt(4 * x / X.pi)
        terms = [2 * cx * cx, 4 * x * s2, root,
                 p.C * s2 * (1 - 4 * x), -p.C * c2 * (1 + 4 * x),
                 -p.S * s2 * (1 + 4 * x)]
        if literal:
            terms.append(-p.S * cx * (1 - 8 * x))
        else:
            terms.append(-p.S * c2 * (1 - 4 * x))
        return X.pi / (8 * X.sqrt(X.mpf(a))), terms

    return build


def I_two_two(a, lam, precision=None) -> Evaluation:
    """I_2^(2) = int_0^inf cos(lam z**2)**2/(1 + a z**2)**2 dz.

    The S-bracket is symmetric with the C-bracket:
    S(.)[sin(2x)(1 + 4x) + cos(2x)(1 - 4x)], x = lam/a.
    """
    a, lam = _ax(a, lam)
    return _closed(*guarded_sum(_I_two_two_build(a, lam, False), precision=precision))


def _I_two_two_literal(a, lam) -> float:
    """Same display with the last bracket read as cos(x)(1 - 8x)."""
    return guarded_sum(_I_two_two_build(a, lam, True))[0]


def I_two_one(a, lam, precision=None) -> Evaluation:
    """I_2^(1) = (pi/(2 sqrt a)) [(f + g)/2 - x (f - g) + sqrt(x/(2 pi))],
    with f, g at phase x = lam/a.  Follows from I_1^(1) by one step of the
    recursion in nu carried out analytically."""
    a, lam = _ax(a, lam)

    def build(X):
        x = X.mpf(lam) / X.mpf(a)
        p = fresnel_parts(x, X)
        return (X.pi / (2 * X.sqrt(X.mpf(a))),
                [p.f / 2, p.g / 2, -x * p.f, x * p.g, X.sqrt(x / (2 * X.pi))])

    return _closed(*guarded_sum(build, precision=precision))


# -- recursion in nu and power reduction -----------------------------------

def _richardson_derivative(fun: Callable[[float], float], a: float, h: float) -> float:
    """d fun/da by central differences at steps a*h and a*h/2, Richardson-combined."""
    d1 = (fun(a * (1 + h)) - fun(a * (1 - h))) / (2 * a * h)
    d2 = (fun(a * (1 + h / 2)) - fun(a * (1 - h / 2))) / (a * h)
    return (4 * d2 - d1) / 3


def I_nu_one(nu, a, lam, precision=None) -> Evaluation:
    """I_nu^(1)(a, lam) for half-integer nu >= 1/2.

    nu in {1/2, 1, 2} use closed forms; other orders are lifted from nu - 1
    with I_{nu+1} = I_nu + (a/nu) dI_nu/da, the a-derivative taken by
    Richardson-extrapolated central differences (about 1e-8 relative per lift).
    """
    nu = Fraction(nu)
    a, lam = _ax(a, lam)
    if nu == Fraction(1, 2):
        return I_half_one(a, lam, precision)
    if nu == 1:
        return infinite_exact(a, lam, "cos", precision)
    if nu == 2:
        return I_two_one(a, lam, precision)
    if nu.denominator not in (1, 2) or nu < Fraction(1, 2):
        raise DomainError(f"nu must be a half-integer >= 1/2, got {nu}")
    lower = nu - 1

    def f(aa):
        return I_nu_one(lower, aa, lam, precision).value

    base = I_nu_one(lower, a, lam, precision)
    deriv = _richardson_derivative(f, a, 1e-3)
    value = base.value + a / float(lower) * deriv
    err = base.abs_error_estimate * (1 + 1 / float(lower)) + 1e-8 * abs(value)
    return Evaluation(value, err, "closed-form", int(nu))


def beta_constant(nu, a) -> float:
    """int_0^inf (1 + a z**2)**-nu dz = sqrt(pi) Gamma(nu - 1/2)/(2 sqrt(a) Gamma(nu))."""
    nu = float(Fraction(nu))
    if nu <= 0.5:
        raise ConvergenceError("int (1 + a z**2)**-nu diverges for nu <= 1/2")
    return math.sqrt(math.pi) * math.exp(math.lgamma(nu - 0.5) - math.lgamma(nu)) / (2 * math.sqrt(a))


def printed_reduction_constant(eta_half: int, a) -> float:
    """The nu-independent constant sqrt(pi/a) Gamma(2 eta - 1/2)/(2**(2 eta) eta! (eta-1)!)."""
    e = int(eta_half)
    return (math.sqrt(math.pi / a) * math.gamma(2 * e - 0.5)
            / (2 ** (2 * e) * math.factorial(e) * math.factorial(e - 1)))


def power_reduce(spec: RationalSpec, base_evaluator: Callable | None = None,
                 precision=None) -> Evaluation:
    """I_nu^(eta) as a binomial combination of I_nu^(1) at multiples of lam.

    Even eta = 2e:  C(2e, e)/4**e * B_nu(a) + 2**(1-2e) sum_{j=1..e} C(2e, e-j) I_nu^(1)(a, 2 j lam)
    Odd  eta = 2e+1:  4**-e sum_{j=0..e} C(2e+1, e-j) I_nu^(1)(a, (2j+1) lam)
    with B_nu(a) the Beta-function integral of (1 + a z**2)**-nu.
    """
    if spec.range != "half-line":
        raise DomainError("power_reduce works on the half-line")
    base = base_evaluator or (lambda nu, a, lam: I_nu_one(nu, a, lam, precision))
    a, lam, nu, eta = spec.a, spec.lam, spec.nu, spec.eta
    parts, errs = [], []
    if eta % 2 == 0:
        e = eta // 2
        parts.append(comb(2 * e, e) / 4 ** e * beta_constant(nu, a))
        for j in range(1, e + 1):
            w = comb(2 * e, e - j) * 2.0 ** (1 - 2 * e)
            ev = base(nu, a, 2 * j * lam)
            parts.append(w * ev.value)
            errs.append(w * ev.abs_error_estimate)
    else:
        e = (eta - 1) // 2
        for j in range(e + 1):
            w = comb(2 * e + 1, e - j) / 4 ** e
            ev = base(nu, a, (2 * j + 1) * lam)
            parts.append(w * ev.value)
            errs.append(w * ev.abs_error_estimate)
    value = math.fsum(parts)
    err = math.fsum(errs) + 4e-16 * math.fsum(abs(p) for p in parts)
    return Evaluation(value, err, "closed-form", eta)


def rational_value(nu, eta: int, a, lam, source: str = "auto", precision=None) -> Evaluation:
    """I_nu^(eta)(a, lam) from the best available route.

    ``source="auto"`` uses a closed form when one exists (nu in {1/2, 1, 2}
    for eta = 1, the dedicated I_1^(2), I_2^(2), otherwise power reduction
    over closed forms) and the oscillatory oracle for anything else;
    ``"oracle"`` forces the oracle.
    """
    nu = Fraction(nu)
    eta = int(eta)
    if source == "auto":
        if eta == 1 and nu in (Fraction(1, 2), 1, 2):
            return I_nu_one(nu, a, lam, precision)
        if eta == 2 and nu == 1:
            return I_one_two(a, lam, precision)
        if eta == 2 and nu == 2:
            return I_two_two(a, lam, precision)
        if nu in (1, 2) and eta > 2:
            return power_reduce(RationalSpec(a, lam, nu, eta), precision=precision)
    elif source != "oracle":
        raise ValueError("source must be 'auto' or 'oracle'")
    spec = IntegrandSpec("rational-infinite",
                         dict(a=float(a), lam=float(lam), nu=float(nu), eta=eta, kind="cos"),
                         tol=1e-12)
    return quad_infinite_oscillatory(spec)


def dd_recursion_residual(nu, eta: int, a, lam, h: float = 1e-4, precision=None) -> float:
    """|I_{nu+1} - I_nu - (a/nu) dI_nu/da| with a central difference of
    relative step ``h`` in ``a``."""
    nu = Fraction(nu)
    a, lam = _ax(a, lam)
    if not 0 < h <= 1e-2:
        raise DomainError("h must lie in (0, 1e-2]")
    upper = rational_value(nu + 1, eta, a, lam, precision=precision).value
    lower = rational_value(nu, eta, a, lam, precision=precision).value
    plus = rational_value(nu, eta, a * (1 + h), lam, precision=precision).value
    minus = rational_value(nu, eta, a * (1 - h), lam, precision=precision).value
    deriv = (plus - minus) / (2 * a * h)
    return abs(upper - lower - a / float(nu) * deriv)


# -- Anger-form templates ----------------------------------------------------

FAMILIES = ("a", "c", "d", "e", "f")


class MissingCoefficientError(KeyError):
    """A template needed a coefficient for an order the tables do not hold."""


def index_ranges(order: int) -> dict[str, range]:
    """k-ranges of each family for I_order^(1) in the Anger-form template.

    For odd orders the a-family runs to k = 2n (one beyond the even case):
    the connection relations reference a_{2n,2n+1}.
    """
    order = int(order)
    if order < 2:
        raise DomainError("Anger-form templates start at order 2")
    n = order // 2
    if order % 2 == 0:
        return {"a": range(0, 2 * n), "c": range(0, n), "d": range(0, n),
                "e": range(0, n + 1), "f": range(0, n)}
    return {"a": range(0, 2 * n + 1), "c": range(0, n + 1), "d": range(0, n),
            "e": range(0, n + 1), "f": range(0, n + 1)}


@dataclass
class CoefficientTables:
    """Rational coefficients keyed by (family, k, order).

    An order counts as populated once any entry for it exists; inside a
    populated order, absent entries read as zero.
    """

    entries: dict = field(default_factory=dict)

    @property
    def orders(self) -> set[int]:
        return {order for (_, _, order) in self.entries}

    def get(self, family: str, k: int, order: int) -> Fraction:
        if order not in self.orders:
            raise MissingCoefficientError(f"no coefficients for order {order}")
        return self.entries.get((family, int(k), int(order)), Fraction(0))

    def set(self, family: str, k: int, order: int, value) -> None:
        if family not in FAMILIES:
            raise ValueError(f"unknown coefficient family {family!r}")
        self.entries[(family, int(k), int(order))] = Fraction(value)

    def copy(self) -> "CoefficientTables":
        return CoefficientTables(dict(self.entries))

    @classmethod
    def zeros(cls, orders: Iterable[int]) -> "CoefficientTables":
        t = cls()
        for order in orders:
            for fam, ks in index_ranges(order).items():
                for k in ks:
                    t.set(fam, k, order, 0)
        return t

    @classmethod
    def parse(cls, text: str) -> "CoefficientTables":
        t = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: expected 'family k order value'")
            fam, k, order, val = parts
            t.set(fam, int(k), int(order), Fraction(val))
        return t

    @classmethod
    def load(cls, path) -> "CoefficientTables":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def dump(self) -> str:
        lines = [f"{fam} {k} {order} {val}" for (fam, k, order), val in sorted(
            self.entries.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]))]
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.dump(), encoding="utf-8", newline="\n")


def bundled_tables() -> CoefficientTables:
    """Coefficient tables for n = 1 (orders 2 and 3) shipped with the package."""
    return CoefficientTables.load(DATA_DIR / "anger_n1.txt")


def anger_form_eval(n: int, parity: str, tables: CoefficientTables, a, lam,
                    precision=None) -> Evaluation:
    """Evaluate the Anger-function template for I_{2n}^(1) or I_{2n+1}^(1)
    with the supplied coefficients."""
    n = int(n)
    if n < 1:
        raise DomainError("n must be >= 1")
    a, lam = _ax(a, lam)
    order = 2 * n if parity == "even" else 2 * n + 1
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    ranges = index_ranges(order)
    coef = {fam: [tables.get(fam, k, order) for k in ks] for fam, ks in ranges.items()}
    x = lam / a
    root = math.sqrt(2 * math.pi / x)
    jh, j3 = anger_J_half(x, precision), anger_J_3half(x, precision)
    d_mult = 4 if parity == "even" else 2
    parts = []
    parts += [2 * root * float(c) * x ** k for k, c in zip(ranges["a"], coef["a"])]
    parts += [2 * math.pi * math.cos(x) * float(c) * x ** (2 * k) for k, c in zip(ranges["c"], coef["c"])]
    parts += [d_mult * math.pi * math.sin(x) * float(c) * x ** (2 * k + 1)
              for k, c in zip(ranges["d"], coef["d"])]
    parts += [-math.pi * root * jh * float(c) * x ** (2 * k) for k, c in zip(ranges["e"], coef["e"])]
    parts += [math.pi * root * j3 * float(c) * x ** (2 * k + 1) for k, c in zip(ranges["f"], coef["f"])]
    eps_exp = greubel_eta(n) + n if parity == "even" else greubel_eta(n + 1) + n
    pref = 1.0 / (math.sqrt(a) * 2.0 ** eps_exp)
    value = pref * math.fsum(parts)
    err = pref * 1e-14 * math.fsum(abs(p) for p in parts)
    return Evaluation(value, err, "closed-form", order)


def connection_validate(tables_n: CoefficientTables, tables_n_plus: CoefficientTables,
                        n: int, literal: bool = False) -> list[tuple[str, Fraction]]:
    """Residuals (lhs - rhs) of the linear relations between the order-2n
    and order-(2n+1) coefficients implied by the recursion in nu.

    With ``r = 4n / 2**delta_eta(n)``.  The d-relation carries the factor
    2n / 2**delta_eta(n); ``literal=True`` drops the power of two there, as
    in the form without the normalisation ratio.
    """
    n = int(n)
    if n < 1:
        raise DomainError("n must be >= 1")
    ev, od = 2 * n, 2 * n + 1

    def E(fam, k):
        if k < 0:
            return Fraction(0)
        return tables_n.get(fam, k, ev)

    def O(fam, k):
        return tables_n_plus.get(fam, k, od)

    scale = Fraction(1, 2 ** delta_eta(n))
    r = 4 * n * scale
    out: list[tuple[str, Fraction]] = []
    out.append((f"a[{2 * n},{od}] (k={n})", r * O("a", 2 * n) + E("e", n)))
    for k in range(n):
        out.append((f"a[{2 * k},{od}] (k={k})",
                    r * O("a", 2 * k) + (4 * k - 4 * n) * E("a", 2 * k) + E("e", k)))
    for k in range(n):
        out.append((f"a[{2 * k + 1},{od}] (k={k})",
                    r * O("a", 2 * k + 1) + (4 * k + 2 - 4 * n) * E("a", 2 * k + 1) - E("f", k)))
    out.append((f"c[{n},{od}] (k={n})", n * scale * O("c", n) + E("d", n - 1)))
    for k in range(n):
        out.append((f"c[{k},{od}] (k={k})",
                    r * O("c", k) + (4 * k + 1 - 4 * n) * E("c", k) + 4 * E("d", k - 1)))
    d_mult = 2 * n if literal else 2 * n * scale
    for k in range(n):
        out.append((f"d[{k},{od}] (k={k})",
                    d_mult * O("d", k) + (4 * k + 3 - 4 * n) * E("d", k) - E("c", k)))
    out.append((f"e[0,{od}]", r * O("e", 0) - (4 * n - 1) * E("e", 0)))
    for k in range(1, n + 1):
        out.append((f"e[{k},{od}] (k={k})",
                    r * O("e", k) + (4 * k + 1 - 4 * n) * E("e", k) - 2 * E("f", k - 1)))
    out.append((f"f[{n},{od}] (k={n})", r * O("f", n) + 2 * E("e", n)))
    for k in range(n):
        out.append((f"f[{k},{od}] (k={k})",
                    r * O("f", k) + (4 * k - 1 - 4 * n) * E("f", k) + 2 * E("e", k)))
    return out


# -- large-lam expansions used in cross-checks ---------------------------------

HANKEL_COEFFS = (Fraction(1), Fraction(1, 4), Fraction(-9, 32), Fraction(-75, 128))


def I_half_one_hankel(a, lam, terms: int = 4) -> float:
    """(1/4) sqrt(2 pi/lam) sum_{i<terms} h_i (a/lam)**i."""
    a, lam = _ax(a, lam)
    r = a / lam
    return 0.25 * math.sqrt(2 * math.pi / lam) * math.fsum(
        float(h) * r ** i for i, h in enumerate(HANKEL_COEFFS[:terms]))


def I_one_two_asym(a, lam) -> float:
    """pi/(4 sqrt a) + (1/8) sqrt(pi/lam)(1 - (3/16) r**2) + (1/32) sqrt(pi/lam)(r - (15/16) r**3)."""
    a, lam = _ax(a, lam)
    r = a / lam
    q = math.sqrt(math.pi / lam)
    return (math.pi / (4 * math.sqrt(a)) + q / 8 * (1 - 3 / 16 * r * r)
            + q / 32 * (r - 15 / 16 * r ** 3))

