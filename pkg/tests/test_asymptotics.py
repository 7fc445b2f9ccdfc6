import math

import pytest

from lommel_fresnel import (
    infinite_exact,
    infinite_rational_asym_lowest,
    moment_asym,
    moment_closed,
    rational_asym,
    rational_asym_lowest,
)
from lommel_fresnel import asymptotics as asy
from lommel_fresnel.numeric import DomainError
from lommel_fresnel.oracle import IntegrandSpec, quad_finite
from lommel_fresnel.special_fn import gamma_half


def exact(n, lam, kind):
    return moment_closed(n, lam, kind, precision="extended").value


def unit_oracle(a, lam, kind):
    spec = IntegrandSpec("rational-finite", dict(a=a, lam=lam, nu=1, eta=1, kind=kind), tol=1e-13)
    return quad_finite(spec).value


def test_leading_constant_term():
    lam = 1e6
    ev = moment_asym(0, lam, "cos", 1)
    assert ev.value == pytest.approx(0.5 * math.sqrt(math.pi / (2 * lam)), abs=2e-6)


def test_contained_at_named_point():
    ev = moment_asym(0, 100.0, "cos", 3)
    assert abs(ev.value - exact(0, 100.0, "cos")) <= ev.abs_error_estimate


def _errors(n, kind, N, lams=(20.0, 40.0, 80.0, 160.0)):
    out = []
    for lam in lams:
        ev = moment_asym(n, lam, kind, N)
        err = abs(ev.value - exact(n, lam, kind))
        assert err <= 2 * ev.abs_error_estimate
        out.append(err)
    return out


@pytest.mark.parametrize("n", [0, 2, 4, 6])
@pytest.mark.parametrize("kind", ["cos", "sin"])
@pytest.mark.parametrize("N", [1, 2, 3])
def test_containment_and_monotone_decay(n, kind, N):
    errs = _errors(n, kind, N)
    assert errs[0] > errs[1] > errs[2] >= errs[3]


@pytest.mark.parametrize("n", [8, 10, 12])
def test_containment_higher_powers(n):
    for kind in ("cos", "sin"):
        for N in (1, 2, 3):
            _errors(n, kind, N)


def test_divergent_character_at_moderate_lambda():
    lam = 10.0
    ref = exact(0, lam, "cos")
    errs = {N: abs(moment_asym(0, lam, "cos", N).value - ref) for N in range(1, 13)}
    best = min(errs, key=errs.get)
    assert 2 <= best <= 10
    tail = [errs[N] for N in range(best + 1, 13)]
    assert all(b > a for a, b in zip(tail, tail[1:]))


def test_default_truncation_is_smallest_term():
    ev = moment_asym(2, 30.0, "sin")
    assert 1 <= ev.truncation_used <= asy.N_CAP
    assert abs(ev.value - exact(2, 30.0, "sin")) <= 2 * ev.abs_error_estimate


def test_divergence_flag():
    ev = moment_asym(6, 2.0, "cos", 8)
    assert "divergent" in ev.notes


def test_reflection_coefficients():
    # Gamma(2j - 2m - 1/2) from 1/Gamma(-z) = -Gamma(z+1) sin(pi z)/pi applied
    # to the terms 1/Gamma(2k+5/2) of the finite sums
    m = 1
    for j in range(3):
        q = 2 * j - 2 * m - 0.5
        z = -q
        via_reflection = -math.pi / (gamma_half(z + 1) * math.sin(math.pi * z))
        assert via_reflection == pytest.approx(gamma_half(q), rel=1e-13)


def test_rejects_odd_power():
    with pytest.raises(DomainError):
        moment_asym(3, 50.0, "cos", 2)


def test_rational_small_a_reduces_to_moment():
    for kind in ("cos", "sin"):
        for N in (1, 2, 3):
            r = rational_asym(1e-12, 50.0, kind, 2, N).value
            assert r == pytest.approx(moment_asym(0, 50.0, kind, N).value, abs=1e-10)


def test_rational_named_point():
    ev = rational_asym(0.25, 100.0, "sin", 2, 2)
    assert abs(ev.value - unit_oracle(0.25, 100.0, "sin")) <= 5e-6


@pytest.mark.parametrize("kind", ["cos", "sin"])
@pytest.mark.parametrize("a", [0.1, 0.5, 0.9])
def test_rational_containment(kind, a):
    for lam in (20.0, 60.0, 150.0):
        ev = rational_asym(a, lam, kind)
        assert abs(ev.value - unit_oracle(a, lam, kind)) <= 2 * ev.abs_error_estimate


def test_negative_double_factorial_enters_outer_sum():
    a, lam = 0.3, 40.0
    k0 = rational_asym(a, lam, "sin", 0, 1).value
    k1 = rational_asym(a, lam, "sin", 1, 1).value
    sign, cos_blocks, sin_blocks = asy._rational_blocks(a, lam, "sin")
    t = a / (2 * lam)
    increment = (0.5 * math.sqrt(math.pi / (2 * lam)) * asy._outer_term(1, t, sign)
                 + math.cos(lam) * sum(b.k_value(1, 1) for b in cos_blocks)
                 + math.sin(lam) * sum(b.k_value(1, 1) for b in sin_blocks))
    assert k1 - k0 == pytest.approx(increment, rel=1e-9, abs=1e-18)
    # the j = 1, k = 1 inner term of the first cos block carries (-5)!! = 1/3
    inner = cos_blocks[0].inner(1, 1)
    assert inner == pytest.approx(-(1 / 3) / (2 * lam) ** 1)


def test_lowest_order_zero_a_matches_moment():
    lam = 25.0
    for kind in ("cos", "sin"):
        assert rational_asym_lowest(0.0, lam, kind).value == pytest.approx(
            moment_asym(0, lam, kind, 1).value, abs=1e-14)


@pytest.mark.parametrize("kind", ["cos", "sin"])
def test_lowest_order_against_oracle(kind):
    e100 = abs(rational_asym_lowest(0.1, 100.0, kind).value - unit_oracle(0.1, 100.0, kind))
    e200 = abs(rational_asym_lowest(0.1, 200.0, kind).value - unit_oracle(0.1, 200.0, kind))
    assert e100 <= 1e-3
    assert e200 < e100


@pytest.mark.parametrize("kind", ["cos", "sin"])
def test_infinite_lowest(kind):
    a, lam = 0.5, 100.0
    inf = infinite_rational_asym_lowest(a, lam, kind).value
    assert abs(inf - infinite_exact(a, lam, kind).value) <= 2e-4
    sign = 1 if kind == "cos" else -1
    assert inf == 0.25 * math.sqrt(2 * math.pi / lam) * (1 + sign * a / (2 * lam))
    lowest = rational_asym_lowest(a, lam, kind).value
    osc = lowest - inf
    c, s = math.cos(lam), math.sin(lam)
    if kind == "sin":
        expected = -c / (2 * lam) * (1 - a) - s / (2 * lam) ** 2 * (1 + a)
    else:
        expected = -c / (2 * lam) ** 2 * (1 + a) + s / (2 * lam) * (1 - a)
    assert osc == pytest.approx(expected, abs=1e-15)
