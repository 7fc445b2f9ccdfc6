"""Large-``lam`` expansions of the even moments and of the rational
integrals int_0^1 trig(lam z**2)/(1 + a z**2) dz.

The series are divergent.  Each returns the truncated value plus the size of
the first omitted term(s); a ``"divergent"`` note is attached when an omitted
term is larger than the last one kept.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .finite_integrals import normalize_kind
from .numeric import EPS, DomainError, Evaluation
from .special_fn import _check_real, double_factorial, gamma_half

N_CAP = 8
K_CAP = 6


def _g(q: Fraction) -> float:
    return gamma_half(q)


# -- even moments ------------------------------------------------------------
#
# Each family is  P * { const + (cos/pi) A + (sin/pi) B }  where A and B are
# finite sums over j.  A term function returns the j-th summand (without the
# trig factor); ranges give the first and last j kept for a given N.

def _moment_family(n: int, kind: str):
    """(m, P, const, const_power, cos_term, (first j, extra), sin_term, (first j, extra))."""
    half = Fraction(1, 2)
    if n % 4 == 0:
        m = n // 4
        pref = _g(2 * m + half) / 2
        const = (-1) ** m / math.sqrt(2.0)
        cpow = 2 * m + half
        if kind == "cos":
            def ct(j, lam):
                return (-1) ** j * _g(2 * j - 2 * m - half) / lam ** (2 * j)

            def st(j, lam):
                return (-1) ** (j + 1) * _g(2 * j - 2 * m - 3 * half) / lam ** (2 * j - 1)
        else:
            def ct(j, lam):
                return (-1) ** j * _g(2 * j - 2 * m - 3 * half) / lam ** (2 * j - 1)

            def st(j, lam):
                return (-1) ** j * _g(2 * j - 2 * m - half) / lam ** (2 * j)
        return m, pref, const, cpow, ct, (1, 0), st, (1, 0)
    m = (n - 2) // 4
    pref = _g(2 * m + 3 * half) / 2
    cpow = 2 * m + 3 * half
    if kind == "cos":
        const = (-1) ** (m + 1) / math.sqrt(2.0)

        def ct(j, lam):
            return (-1) ** (j + 1) * _g(2 * j - 2 * m - 3 * half) / lam ** (2 * j)

        # the sine sum runs one index further than the cosine sum
        def st(j, lam):
            return (-1) ** j * _g(2 * j - 2 * m - 5 * half) / lam ** (2 * j - 1)
        return m, pref, const, cpow, ct, (1, 0), st, (1, 1)
    const = (-1) ** m / math.sqrt(2.0)

    # cosine sum starts at j = 0; this is what substituting the f, g series
    # into the closed form produces
    def ct(j, lam):
        return (-1) ** j * _g(2 * j - 2 * m - half) / lam ** (2 * j + 1)

    def st(j, lam):
        return (-1) ** (j + 1) * _g(2 * j - 2 * m - 3 * half) / lam ** (2 * j)
    return m, pref, const, cpow, ct, (0, 0), st, (1, 0)


def _smallest_term_N(term, start, extra, m, lam):
    """Largest N <= N_CAP such that the kept terms are still decreasing."""
    best = 1
    for N in range(1, N_CAP):
        last = abs(term(m + N + extra, lam))
        nxt = abs(term(m + N + 1 + extra, lam))
        if nxt < last:
            best = N + 1
        else:
            break
    return best


def moment_asym(n: int, lam, kind: str, N: int | None = None) -> Evaluation:
    """Asymptotic expansion of int_0^1 z**n trig(lam z**2) dz for even n.

    ``N`` is the truncation order (inner sums end at j = m + N, or m + N + 1
    for the sine sum of the z**(4m+2) cosine moment).  ``None`` selects the
    smallest-term rule, capped at 8.
    """
    n = int(n)
    if n < 0 or n % 2:
        raise DomainError("moment_asym needs an even power n >= 0")
    lam = _check_real(lam, "lam", positive=True)
    if lam < 1:
        raise DomainError("moment_asym needs lam >= 1")
    kind = normalize_kind(kind)
    m, pref, const, cpow, ct, (c0, cx), st, (s0, sx) = _moment_family(n, kind)
    if N is None:
        N = min(_smallest_term_N(ct, c0, cx, m, lam), _smallest_term_N(st, s0, sx, m, lam))
    N = int(N)
    if N < 1:
        raise DomainError("truncation order N must be >= 1")
    c_terms = [ct(j, lam) for j in range(c0, m + N + cx + 1)]
    s_terms = [st(j, lam) for j in range(s0, m + N + sx + 1)]
    c_next = ct(m + N + cx + 1, lam)
    s_next = st(m + N + sx + 1, lam)
    cl, sl = math.cos(lam), math.sin(lam)
    body = [const / lam ** float(cpow)] + [cl * t / math.pi for t in c_terms] \
        + [sl * t / math.pi for t in s_terms]
    value = pref * math.fsum(body)
    err = abs(pref) / math.pi * (abs(c_next) + abs(s_next)) + 4 * EPS * abs(value)
    divergent = abs(c_next) > abs(c_terms[-1]) or abs(s_next) > abs(s_terms[-1])
    return Evaluation(value, err, "asymptotic", N, ("divergent",) if divergent else ())


# -- rational integrals on the unit interval ----------------------------------

def _df(n: int) -> float:
    return float(double_factorial(n))


def _outer_term(k: int, t: float, sign: int) -> float:
    return (-1) ** k * t ** (2 * k) * (_df(4 * k - 1) + sign * t * _df(4 * k + 1))


def _default_K(t: float) -> int:
    K = 0
    while K < K_CAP:
        now = t ** (2 * K) * _df(4 * K + 1)
        nxt = t ** (2 * K + 2) * _df(4 * K + 5)
        if nxt >= now:
            break
        K += 1
    return K


class _Block:
    """sum_k outer(k) * sum_{j=j0}^{k+N+extra} inner(k, j)  with accounting
    of the first omitted inner terms."""

    def __init__(self, outer, inner, j0, extra):
        self.outer, self.inner, self.j0, self.extra = outer, inner, j0, extra

    def k_value(self, k, N):
        w = self.outer(k)
        return w * math.fsum(self.inner(k, j) for j in range(self.j0, k + N + self.extra + 1))

    def value(self, K, N):
        return math.fsum(self.k_value(k, N) for k in range(K + 1))

    def omitted_inner(self, K, N):
        return math.fsum(abs(self.outer(k) * self.inner(k, k + N + self.extra + 1))
                         for k in range(K + 1))


def _rational_blocks(a: float, lam: float, kind: str):
    """(sign of the non-oscillatory bracket, cos blocks, sin blocks)."""
    L = 2.0 * lam
    t = a / L

    def i_cos(shift, power_off):
        def inner(k, j):
            return (-1) ** j * _df(4 * j - 4 * k + shift) / L ** (2 * j - power_off)
        return inner

    ev = lambda k: a ** (2 * k) * _df(4 * k - 1)             # noqa: E731
    od = lambda k: a ** (2 * k + 1) * _df(4 * k + 1)         # noqa: E731
    if kind == "cos":
        cos_blocks = [_Block(ev, i_cos(-3, 0), 1, 0), _Block(od, i_cos(-5, 0), 1, 0)]
        sin_blocks = [_Block(lambda k: -ev(k), i_cos(-5, 1), 1, 0),
                      _Block(lambda k: -od(k), i_cos(-7, 1), 1, 1)]
        return +1, cos_blocks, sin_blocks
    cos_blocks = [_Block(ev, i_cos(-5, 1), 1, 0),
                  _Block(lambda k: -t * a ** (2 * k) * _df(4 * k + 1), i_cos(-3, 0), 0, 0)]
    sin_blocks = [_Block(ev, i_cos(-3, 0), 1, 0), _Block(od, i_cos(-5, 0), 1, 0)]
    return -1, cos_blocks, sin_blocks


def rational_asym(a, lam, kind: str, K: int | None = None, N: int | None = None) -> Evaluation:
    """Asymptotic double-sum expansion of int_0^1 trig(lam z**2)/(1 + a z**2) dz.

    The outer sum over k (powers of a) is cut at ``K``; the inner sums over j
    at ``k + N`` (``k + N + 1`` for the last sine block of the cosine
    integral).  Double factorials of negative odd arguments follow the
    downward recursion of :func:`special_fn.double_factorial`.
    """
    a = _check_real(a, "a", positive=True)
    lam = _check_real(lam, "lam", positive=True)
    if not a < 1:
        raise DomainError("rational_asym needs 0 < a < 1")
    if lam < 1:
        raise DomainError("rational_asym needs lam >= 1")
    kind = normalize_kind(kind)
    t = a / (2.0 * lam)
    K = _default_K(t) if K is None else int(K)
    N = 2 if N is None else int(N)
    if K < 0 or N < 1:
        raise DomainError("need K >= 0 and N >= 1")
    sign, cos_blocks, sin_blocks = _rational_blocks(a, lam, kind)
    root = 0.5 * math.sqrt(math.pi / (2.0 * lam))
    cl, sl = math.cos(lam), math.sin(lam)

    def total(Kc):
        parts = [root * math.fsum(_outer_term(k, t, sign) for k in range(Kc + 1))]
        parts += [cl * b.value(Kc, N) for b in cos_blocks]
        parts += [sl * b.value(Kc, N) for b in sin_blocks]
        return math.fsum(parts)

    value = total(K)
    outer_next = abs(root * _outer_term(K + 1, t, sign)) \
        + sum(abs(b.k_value(K + 1, N)) for b in cos_blocks + sin_blocks)
    inner_next = max(math.fsum(b.omitted_inner(K, N) for b in cos_blocks),
                     math.fsum(b.omitted_inner(K, N) for b in sin_blocks))
    last_outer = abs(root * _outer_term(K, t, sign))
    notes = ("divergent",) if abs(root * _outer_term(K + 1, t, sign)) > last_outer else ()
    return Evaluation(value, outer_next + inner_next, "asymptotic", K, notes)


def rational_asym_lowest(a, lam, kind: str) -> Evaluation:
    """Lowest order in a and 1/lam of the unit-interval rational integral."""
    a = _check_real(a, "a", nonneg=True)
    lam = _check_real(lam, "lam", positive=True)
    kind = normalize_kind(kind)
    root = 0.25 * math.sqrt(2.0 * math.pi / lam)
    L = 2.0 * lam
    cl, sl = math.cos(lam), math.sin(lam)
    if kind == "sin":
        parts = [root * (1 - a / L), -cl / L * (1 - a), -sl / L ** 2 * (1 + a)]
    else:
        parts = [root * (1 + a / L), -cl / L ** 2 * (1 + a), sl / L * (1 - a)]
    # the next neglected orders are O(a**2/lam**2) and O(1/lam**3)
    err = root * (a / L) ** 2 * 3 + (1 + a) * 3 / L ** 3
    return Evaluation(math.fsum(parts), err, "asymptotic", 1)


def infinite_rational_asym_lowest(a, lam, kind: str) -> Evaluation:
    """Leading large-lam behaviour of int_0^inf trig(lam z**2)/(1 + a z**2) dz."""
    a = _check_real(a, "a", positive=True)
    lam = _check_real(lam, "lam", positive=True)
    kind = normalize_kind(kind)
    root = 0.25 * math.sqrt(2.0 * math.pi / lam)
    L = 2.0 * lam
    value = root * (1 - a / L) if kind == "sin" else root * (1 + a / L)
    return Evaluation(value, root * 3 * (a / L) ** 2, "asymptotic", 1)


# -- literal variants kept for the audit report ------------------------------

def _moment_4m2_sin_literal(m: int, lam: float, N: int) -> float:
    """z**(4m+2) sine expansion with its cosine sum taken literally:
    (-1)**(j+1) Gamma(2j-2m-1/2)/lam**(2j+1) for j = 1..m+N."""
    half = Fraction(1, 2)
    pref = _g(2 * m + 3 * half) / 2
    const = (-1) ** m / math.sqrt(2.0) / lam ** (2 * m + 1.5)
    cs = math.fsum((-1) ** (j + 1) * _g(2 * j - 2 * m - half) / lam ** (2 * j + 1)
                   for j in range(1, m + N + 1))
    ss = math.fsum((-1) ** (j + 1) * _g(2 * j - 2 * m - 3 * half) / lam ** (2 * j)
                   for j in range(1, m + N + 1))
    return pref * (const + math.cos(lam) / math.pi * cs + math.sin(lam) / math.pi * ss)


def _rational_sin_literal(a: float, lam: float, K: int, N: int) -> float:
    """Sine double sum with the halved trig prefactors and a/lam block
    weights taken literally."""
    L = 2.0 * lam
    t = a / L
    root = 0.5 * math.sqrt(math.pi / (2.0 * lam))
    non_osc = root * math.fsum(_outer_term(k, t, -1) for k in range(K + 1))

    def dsum(weight, shift, power_off):
        return math.fsum(weight(k) * math.fsum((-1) ** j * _df(4 * j - 4 * k + shift) / L ** (2 * j - power_off)
                                               for j in range(1, k + N + 1))
                         for k in range(K + 1))

    ev = lambda k: a ** (2 * k) * _df(4 * k - 1)             # noqa: E731
    od = lambda k: a ** (2 * k) * _df(4 * k + 1)             # noqa: E731
    cos_part = dsum(ev, -5, 1) + a / lam * dsum(od, -3, 0)
    sin_part = dsum(ev, -3, 0) + a / lam * dsum(od, -5, 1)
    return non_osc + math.cos(lam) / 2 * cos_part + math.sin(lam) / 2 * sin_part
