import math
from fractions import Fraction

import numpy as np
import pytest

from lommel_fresnel import special_fn as sf
from lommel_fresnel.numeric import DomainError, PoleError
from lommel_fresnel.oracle import IntegrandSpec, bessel_series, fresnel_maclaurin, quad_finite


def test_fresnel_at_zero():
    assert sf.fresnel_S(0) == 0.0
    assert sf.fresnel_C(0) == 0.0


@pytest.mark.parametrize("x", [0.3, 1.0, 1.5, 1.6, 1.7, 2.5, 4.0])
def test_fresnel_against_extended_maclaurin(x):
    assert sf.fresnel_C(x) == pytest.approx(fresnel_maclaurin(x, "C").value, abs=2e-15)
    assert sf.fresnel_S(x) == pytest.approx(fresnel_maclaurin(x, "S").value, abs=2e-15)


def test_fresnel_known_values_and_limit():
    assert sf.fresnel_C(1) == pytest.approx(0.7798934, abs=1e-7)
    assert sf.fresnel_S(1) == pytest.approx(0.4382591, abs=1e-7)
    assert abs(sf.fresnel_C(1e3) - 0.5) < 1e-3
    assert abs(sf.fresnel_S(1e3) - 0.5) < 1e-3


@pytest.mark.parametrize("bad", [-1.0, math.nan, math.inf])
def test_fresnel_rejects_bad_argument(bad):
    with pytest.raises(DomainError):
        sf.fresnel_S(bad)


@pytest.mark.parametrize("lam", np.logspace(-1, 3, 13))
def test_fresnel_round_trip_through_auxiliary_functions(lam):
    # S(x), C(x) at x = sqrt(2 lam/pi) rebuilt from f and g
    x = math.sqrt(2 * lam / math.pi)
    f, g = sf.aux_f(lam), sf.aux_g(lam)
    s, c = math.sin(lam), math.cos(lam)
    assert 0.5 + f * s - g * c == pytest.approx(sf.fresnel_C(x), abs=1e-13)
    assert 0.5 - f * c - g * s == pytest.approx(sf.fresnel_S(x), abs=1e-13)


def test_aux_rejects_nonpositive():
    with pytest.raises(DomainError):
        sf.aux_f(0.0)
    with pytest.raises(DomainError):
        sf.aux_g(-2.0)


def test_aux_asymptotic_leading_terms():
    lam = 37.0
    assert sf.aux_f_asym(lam, 1).value == pytest.approx(1 / math.sqrt(2 * math.pi * lam), rel=1e-15)
    assert sf.aux_g(200.0) / sf.aux_f(200.0) == pytest.approx(1 / 400, rel=0.02)


@pytest.mark.parametrize("lam", [10.0, 30.0, 100.0, 1000.0])
@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_aux_asymptotic_containment(lam, N):
    for asym, exact in ((sf.aux_f_asym, sf.aux_f), (sf.aux_g_asym, sf.aux_g)):
        ev = asym(lam, N)
        assert ev.method == "asymptotic"
        assert abs(ev.value - exact(lam, precision="extended")) <= ev.abs_error_estimate


def test_aux_asymptotic_flags_saturation():
    ev = sf.aux_f_asym(0.5, 6)
    assert "divergent" in ev.notes


def test_bessel_values():
    assert sf.bessel_J0(0) == 1.0
    assert sf.bessel_J0(0.5) == pytest.approx(0.9384698, abs=1e-7)
    assert sf.bessel_Y0(0.5) == pytest.approx(-0.4445187, abs=1e-7)
    with pytest.raises(DomainError):
        sf.bessel_Y0(0.0)


@pytest.mark.parametrize("z", [0.1, 1.0, 4.0, 7.9])
def test_bessel_against_ascending_series(z):
    j0, y0 = bessel_series(z)
    assert sf.bessel_J0(z) == pytest.approx(j0, abs=1e-12)
    assert sf.bessel_Y0(z) == pytest.approx(y0, abs=1e-12)


@pytest.mark.parametrize("z", [0.5, 1, 2, 5, 10, 50])
def test_anger_against_defining_integral(z):
    for order, fn in ((0.5, sf.anger_J_half), (1.5, sf.anger_J_3half)):
        q = quad_finite(IntegrandSpec("anger-defining", dict(order=order, z=z), tol=1e-13)).value
        assert fn(z) == pytest.approx(q, abs=1e-9)


def test_anger_domain():
    with pytest.raises(DomainError):
        sf.anger_J_half(0.0)


def test_double_factorial_values():
    assert sf.double_factorial(7) == 105
    assert sf.double_factorial(0) == 1
    assert sf.double_factorial(-1) == 1
    assert sf.double_factorial(-3) == -1
    assert sf.double_factorial(-5) == Fraction(1, 3)
    with pytest.raises(DomainError):
        sf.double_factorial(-2)


@pytest.mark.parametrize("n", list(range(-9, 12, 2)) + list(range(2, 12, 2)))
def test_double_factorial_recursion(n):
    assert sf.double_factorial(n) == n * sf.double_factorial(n - 2)


def test_greubel_eta():
    assert [sf.greubel_eta(n) for n in range(4)] == [0, 2, 4, 7]
    assert sf.delta_eta(2) == 3
    seq = [sf.greubel_eta(n) for n in range(300)]
    assert all(b >= a for a, b in zip(seq, seq[1:]))
    assert abs(sf.greubel_eta(1000) / 1000 - (math.sqrt(2) + math.sqrt(1.5))) < 2e-3


@pytest.mark.parametrize("n", [5741, 9369319, 10**12 + 7])
def test_greubel_eta_exact_at_large_n(n):
    # sqrt(2)*5741 = 8118.99993...; a float floor is one ulp from the wrong answer at large n
    from lommel_fresnel.checks import greubel_reference
    assert sf.greubel_eta(n) == greubel_reference(n)


def test_gamma_half():
    rp = math.sqrt(math.pi)
    assert sf.gamma_half(Fraction(1, 2)) == pytest.approx(rp, rel=1e-15)
    assert sf.gamma_half(Fraction(5, 2)) == pytest.approx(0.75 * rp, rel=1e-15)
    assert sf.gamma_half(Fraction(-3, 2)) == pytest.approx(4 / 3 * rp, rel=1e-15)
    assert sf.gamma_half(4) == pytest.approx(6.0)
    with pytest.raises(PoleError):
        sf.gamma_half(0)
    with pytest.raises(PoleError):
        sf.gamma_half(-3)
    with pytest.raises(DomainError):
        sf.gamma_half(Fraction(1, 3))
