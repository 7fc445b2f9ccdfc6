import math
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from lommel_fresnel import infinite_exact, moment_closed, moment_series, recurrence_residual
from lommel_fresnel.oracle import fresnel_maclaurin
from lommel_fresnel.rational_integrals import I_one_two, I_one_two_aux
from lommel_fresnel.checks import greubel_reference
from lommel_fresnel.special_fn import double_factorial, fresnel_C, fresnel_S, greubel_eta

lams = st.floats(min_value=0.05, max_value=80.0, allow_nan=False)
kinds = st.sampled_from(["cos", "sin"])
settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@given(st.integers(0, 13), lams, kinds)
def test_moment_bounded_by_power_integral(n, lam, kind):
    assert abs(moment_closed(n, lam, kind).value) <= 1 / (n + 1) + 1e-14


@given(st.integers(0, 10), st.floats(min_value=0.01, max_value=4.0), kinds)
def test_series_parity_in_lambda(n, lam, kind):
    sign = 1 if kind == "cos" else -1
    assert moment_series(n, -lam, kind).value == sign * moment_series(n, lam, kind).value


@given(st.integers(0, 8), st.floats(min_value=0.1, max_value=4.0), kinds)
def test_series_agrees_with_closed(n, lam, kind):
    a = moment_series(n, lam, kind).value
    b = moment_closed(n, lam, kind).value
    assert abs(a - b) <= 1e-11


@given(st.floats(min_value=0.05, max_value=1.0), st.floats(min_value=0.2, max_value=50.0),
       st.floats(min_value=0.2, max_value=5.0), kinds)
def test_half_line_scaling(a, lam, c, kind):
    # z -> z/sqrt(c): I(a, lam) = sqrt(c) I(c a, c lam)
    lhs = infinite_exact(a, lam, kind).value
    rhs = math.sqrt(c) * infinite_exact(c * a, c * lam, kind).value
    assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(lhs))


@given(st.floats(min_value=0.05, max_value=1.0), st.floats(min_value=0.3, max_value=60.0))
def test_squared_cosine_two_forms(a, lam):
    assert abs(I_one_two(a, lam).value - I_one_two_aux(a, lam).value) <= 1e-12 / math.sqrt(a)


@given(st.integers(-1, 8), st.floats(min_value=0.5, max_value=10.0), st.sampled_from(["s", "S"]))
def test_integer_order_recurrence(mu, lam, variant):
    assert recurrence_residual(Fraction(mu), lam, variant) <= 1e-10


@given(st.integers(0, 3), st.floats(min_value=0.5, max_value=10.0))
def test_half_order_recurrence(m, lam):
    assert recurrence_residual(Fraction(4 * m + 1, 2), lam, "s") <= 1e-10


@given(st.integers(-15, 30).filter(lambda n: n % 2 or n >= 2))
def test_double_factorial_recursion(n):
    assert double_factorial(n) == n * double_factorial(n - 2)


@given(st.integers(0, 10_000))
def test_greubel_eta_increments(n):
    # each floor advances by 1 or 2 per step since both slopes lie in (1, 2)
    assert greubel_eta(n + 1) - greubel_eta(n) in (2, 3, 4)
    assert greubel_eta(n) == greubel_reference(n)


@given(st.floats(min_value=0.0, max_value=30.0))
def test_fresnel_bounds(x):
    c, s = fresnel_C(x), fresnel_S(x)
    assert 0.0 <= s <= 0.72 and 0.0 <= c <= 0.78
    if x > 0:
        assert abs(c) <= x + 1e-15 and abs(s) <= x + 1e-15


@given(st.floats(min_value=1e-300, max_value=1e-3))
def test_fresnel_small_argument(x):
    assert abs(fresnel_C(x) - fresnel_maclaurin(x, "C").value) <= 1e-15 * x
    assert abs(fresnel_S(x) - fresnel_maclaurin(x, "S").value) <= 1e-15 * max(fresnel_S(x), 1e-300)
