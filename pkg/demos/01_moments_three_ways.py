"""Three routes to int_0^1 z^n cos(lambda z^2) dz.

The closed form (through Fresnel integrals), the Maclaurin series and an
adaptive Gauss-Kronrod quadrature are computed side by side, then the
large-lambda expansion is truncated at increasing orders to show where it
stops improving.
"""

from lommel_fresnel import moment_asym, moment_closed, moment_series
from lommel_fresnel.oracle import IntegrandSpec, quad_finite


def main():
    print("n  lambda   closed form            series                 quadrature")
    for n in (0, 3, 8):
        for lam in (0.5, 3.0):
            closed = moment_closed(n, lam, "cos").value
            series = moment_series(n, lam, "cos").value
            quad = quad_finite(IntegrandSpec("moment", dict(n=n, lam=lam, kind="cos"))).value
            print(f"{n:<2} {lam:<8} {closed:<22.16g} {series:<22.16g} {quad:.16g}")

    # at small lambda the closed form loses digits to cancellation; the
    # dispatcher notices and answers from the series instead
    ev = moment_closed(10, 0.05, "cos")
    print(f"\nn=10, lambda=0.05 -> {ev.value:.16g} via {ev.method}")

    lam = 10.0
    exact = moment_closed(0, lam, "cos", precision="extended").value
    print(f"\nlarge-lambda expansion at lambda = {lam}, exact {exact:.16g}")
    print("N   value                  |error|    estimate")
    for N in range(1, 11):
        ev = moment_asym(0, lam, "cos", N)
        flag = "  (past smallest term)" if "divergent" in ev.notes else ""
        print(f"{N:<3} {ev.value:<22.16g} {abs(ev.value - exact):.2e}   {ev.abs_error_estimate:.2e}{flag}")


if __name__ == "__main__":
    main()
