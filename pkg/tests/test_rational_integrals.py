import math
from fractions import Fraction

import pytest

from lommel_fresnel import rational_integrals as ri
from lommel_fresnel.numeric import ConvergenceError, DomainError
from lommel_fresnel.oracle import IntegrandSpec, quad_infinite_oscillatory
from lommel_fresnel.special_fn import greubel_eta

GRID = [(a, lam) for a in (0.1, 0.5, 0.9) for lam in (0.5, 2.0, 10.0)]


def oracle(a, lam, nu=1.0, eta=1, kind="cos"):
    spec = IntegrandSpec("rational-infinite", dict(a=a, lam=lam, nu=nu, eta=eta, kind=kind), tol=1e-12)
    return quad_infinite_oscillatory(spec).value


@pytest.mark.parametrize("a,lam", GRID + [(0.25, 1.0), (0.25, 20.0)])
def test_exact_forms_against_oracle(a, lam):
    for kind in ("cos", "sin"):
        assert ri.infinite_exact(a, lam, kind).value == pytest.approx(oracle(a, lam, kind=kind), abs=1e-8)
    assert ri.I_half_one(a, lam).value == pytest.approx(oracle(a, lam, nu=0.5), abs=1e-7)
    assert ri.I_one_two(a, lam).value == pytest.approx(oracle(a, lam, eta=2), abs=1e-7)
    assert ri.I_two_two(a, lam).value == pytest.approx(oracle(a, lam, nu=2.0, eta=2), abs=1e-7)
    assert ri.I_two_one(a, lam).value == pytest.approx(oracle(a, lam, nu=2.0), abs=1e-7)


def test_named_points():
    assert ri.infinite_exact(0.5, 2.0, "cos").value == pytest.approx(oracle(0.5, 2.0), abs=1e-8)
    assert ri.I_half_one(1.0, 1.0).value == pytest.approx(oracle(1.0, 1.0, nu=0.5), abs=1e-8)
    assert ri.I_one_two(0.5, 3.0).value == pytest.approx(oracle(0.5, 3.0, eta=2), abs=1e-8)


@pytest.mark.parametrize("a,lam", GRID + [(0.3, 1.1)])
def test_scaling_homogeneity(a, lam):
    fns = [lambda a, l: ri.infinite_exact(a, l, "cos"), lambda a, l: ri.infinite_exact(a, l, "sin"),
           ri.I_half_one, ri.I_one_two, ri.I_one_two_aux, ri.I_two_two, ri.I_two_one]
    for fn in fns:
        assert fn(a, lam).value == pytest.approx(fn(1.0, lam / a).value / math.sqrt(a), abs=1e-12)


def test_large_ratio_limit():
    a, lam = 0.25, 400.0
    for kind, sign in (("cos", 1), ("sin", -1)):
        lim = 0.25 * math.sqrt(2 * math.pi / lam) * (1 + sign * a / (2 * lam))
        assert ri.infinite_exact(a, lam, kind).value == pytest.approx(lim, abs=1e-5)


@pytest.mark.parametrize("a,lam", GRID + [(0.5, 1.0), (0.25, 10.0)])
def test_fresnel_and_auxiliary_forms_agree(a, lam):
    assert ri.I_one_two(a, lam).value == pytest.approx(ri.I_one_two_aux(a, lam).value, abs=1e-12)


def test_squared_cosine_split():
    a, lam = 0.5, 2.0
    split = math.pi / (4 * math.sqrt(a)) + 0.5 * oracle(a, 2 * lam)
    assert oracle(a, lam, eta=2) == pytest.approx(split, abs=1e-8)


def test_hankel_expansion_successive_orders():
    a, lam = 1.0, 200.0
    exact = ri.I_half_one(a, lam, precision="extended").value
    errs = [abs(ri.I_half_one_hankel(a, lam, t) - exact) for t in range(1, 5)]
    assert all(errs[i + 1] < errs[i] / 10 for i in range(3))
    # error after t terms is about the size of term t
    pref = 0.25 * math.sqrt(2 * math.pi / lam)
    for t in range(1, 4):
        assert errs[t - 1] < 2 * pref * abs(ri.HANKEL_COEFFS[t]) * (a / lam) ** t
    assert ri.HANKEL_COEFFS == (1.0, 0.25, -9 / 32, -75 / 128)


def test_squared_cosine_large_lambda_expansion():
    a, lam = 0.2, 20.0
    exact = ri.I_one_two(a, lam).value
    next_size = math.sqrt(math.pi / lam) * (a / lam) ** 3
    assert abs(ri.I_one_two_asym(a, lam) - exact) <= next_size


def test_power_reduction_exact():
    a, lam = 0.5, 2.0
    assert ri.power_reduce(ri.RationalSpec(a, lam, 1, 2)).value == pytest.approx(
        ri.I_one_two(a, lam).value, abs=1e-12)
    assert ri.power_reduce(ri.RationalSpec(a, lam, 2, 2)).value == pytest.approx(
        ri.I_two_two(a, lam).value, abs=1e-12)
    assert ri.power_reduce(ri.RationalSpec(a, lam, 1, 3)).value == pytest.approx(
        oracle(a, lam, eta=3), abs=1e-7)
    expected = 0.25 * (3 * ri.infinite_exact(a, lam, "cos").value + ri.infinite_exact(a, 3 * lam, "cos").value)
    assert ri.power_reduce(ri.RationalSpec(a, lam, 1, 3)).value == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("eta", [2, 4])
def test_power_reduction_against_direct_integration(eta):
    a, lam = 0.4, 1.5
    assert ri.power_reduce(ri.RationalSpec(a, lam, 1, eta)).value == pytest.approx(
        oracle(a, lam, eta=eta), abs=1e-7)


def test_reduction_constants():
    a = 0.5
    assert ri.beta_constant(1, a) == pytest.approx(math.pi / (2 * math.sqrt(a)), rel=1e-15)
    assert ri.printed_reduction_constant(1, a) == pytest.approx(math.pi / (8 * math.sqrt(a)), rel=1e-15)
    assert ri.printed_reduction_constant(1, a) == pytest.approx(ri.beta_constant(2, a) / 2, rel=1e-15)
    # even power with nu = 1/2 diverges at infinity
    with pytest.raises(ConvergenceError):
        ri.power_reduce(ri.RationalSpec(a, 1.0, Fraction(1, 2), 2))


def test_bracket_repair_is_needed():
    a, lam = 0.5, 2.0
    o = oracle(a, lam, nu=2.0, eta=2)
    assert abs(ri.I_two_two(a, lam).value - o) < 1e-12
    assert abs(ri._I_two_two_literal(a, lam) - o) > 1.0


def test_recursion_in_nu():
    assert ri.dd_recursion_residual(1, 2, 0.5, 2.0, h=1e-4) <= 1e-6
    assert ri.dd_recursion_residual(Fraction(1, 2), 1, 0.5, 2.0, h=1e-4) <= 1e-5
    coarse = ri.dd_recursion_residual(1, 2, 0.5, 2.0, h=1e-3)
    fine = ri.dd_recursion_residual(1, 2, 0.5, 2.0, h=1e-4)
    assert 30 < coarse / fine < 300
    with pytest.raises(DomainError):
        ri.dd_recursion_residual(1, 2, 0.5, 2.0, h=0.1)


def test_lifted_orders_against_oracle():
    a, lam = 0.6, 1.7
    assert ri.I_nu_one(3, a, lam).value == pytest.approx(oracle(a, lam, nu=3.0), abs=1e-6)
    assert ri.I_nu_one(Fraction(3, 2), a, lam).value == pytest.approx(oracle(a, lam, nu=1.5), abs=1e-6)


def test_rational_spec_rules():
    with pytest.raises(ConvergenceError):
        ri.RationalSpec(0.5, 1.0, Fraction(1, 2), 2)
    ri.RationalSpec(0.5, 1.0, Fraction(1, 2), 2, "unit-interval")
    with pytest.raises(DomainError):
        ri.RationalSpec(0.5, 1.0, Fraction(1, 3), 1)
    with pytest.raises(DomainError):
        ri.RationalSpec(-0.5, 1.0)
    with pytest.raises(DomainError):
        ri.infinite_exact(0.5, 0.0, "cos")


# -- Anger templates and connection relations ----------------------------------

def test_all_zero_tables_give_zero():
    zero = ri.CoefficientTables.zeros([2, 3])
    assert ri.anger_form_eval(1, "even", zero, 0.5, 2.0).value == 0.0
    assert ri.anger_form_eval(1, "odd", zero, 0.5, 2.0).value == 0.0
    assert all(r == 0 for _, r in ri.connection_validate(zero, zero, 1))


def test_single_coefficient_template_value():
    a, lam = 0.7, 2.5
    t = ri.CoefficientTables.zeros([2])
    t.set("a", 0, 2, 1)
    expected = 1 / (math.sqrt(a) * 2 ** (greubel_eta(1) + 1)) * 2 * math.sqrt(2 * math.pi * a / lam)
    assert ri.anger_form_eval(1, "even", t, a, lam).value == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("a,lam", [(0.5, 2.0), (0.2, 7.0), (0.9, 0.4)])
def test_derived_tables_against_oracle(a, lam):
    tables = ri.bundled_tables()
    assert ri.anger_form_eval(1, "even", tables, a, lam).value == pytest.approx(oracle(a, lam, nu=2.0), abs=1e-10)
    assert ri.anger_form_eval(1, "odd", tables, a, lam).value == pytest.approx(oracle(a, lam, nu=3.0), abs=1e-10)


def test_derived_tables_satisfy_connection_relations():
    tables = ri.bundled_tables()
    assert all(r == 0 for _, r in ri.connection_validate(tables, tables, 1))
    literal = [r for _, r in ri.connection_validate(tables, tables, 1, literal=True) if r]
    assert literal == [6]


def test_perturbation_changes_exactly_referencing_residuals():
    delta = Fraction(3, 11)
    base = ri.CoefficientTables.zeros([2, 3])
    labels = [label for label, _ in ri.connection_validate(base, base, 1)]
    for key in sorted(base.entries):
        t = base.copy()
        t.entries[key] += delta
        res = dict(ri.connection_validate(t, t, 1))
        changed = {label: r for label, r in res.items() if r}
        assert changed, key
        for r in changed.values():
            # every multiplier in the relations is a small rational
            assert (r / delta).denominator <= 4
        assert set(changed) <= set(labels)


def test_missing_coefficients():
    t = ri.CoefficientTables.zeros([2])
    with pytest.raises(ri.MissingCoefficientError):
        ri.anger_form_eval(1, "odd", t, 0.5, 1.0)
    with pytest.raises(ri.MissingCoefficientError):
        ri.connection_validate(t, t, 1)


def test_table_file_round_trip(tmp_path):
    tables = ri.bundled_tables()
    path = tmp_path / "t.txt"
    tables.save(path)
    assert ri.CoefficientTables.load(path).entries == tables.entries
    parsed = ri.CoefficientTables.parse("# comment\nd 0 3 4/1\n\na 2 3 -2\n")
    assert parsed.get("d", 0, 3) == 4 and parsed.get("a", 2, 3) == -2
    with pytest.raises(ValueError):
        ri.CoefficientTables.parse("a 0 2")
    with pytest.raises(ValueError):
        ri.CoefficientTables.parse("z 0 2 1")


def test_index_ranges():
    assert ri.index_ranges(2)["a"] == range(0, 2)
    assert ri.index_ranges(2)["e"] == range(0, 2)
    assert ri.index_ranges(3)["a"] == range(0, 3)
    with pytest.raises(DomainError):
        ri.index_ranges(1)
