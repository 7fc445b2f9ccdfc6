"""Oscillatory integrals over the half-line with a rational damping factor.

Exact values of int_0^inf trig(lambda z^2)/(1 + a z^2)^nu dz are set
against the cell-summation oracle, which knows nothing about Fresnel or
Bessel functions.  The Hankel expansion for nu = 1/2 is then watched
converging as terms are added.
"""

from lommel_fresnel import rational_integrals as ri
from lommel_fresnel.oracle import IntegrandSpec, quad_infinite_oscillatory


def oracle(a, lam, nu=1.0, eta=1, kind="cos"):
    spec = IntegrandSpec("rational-infinite", dict(a=a, lam=lam, nu=nu, eta=eta, kind=kind), tol=1e-12)
    return quad_infinite_oscillatory(spec).value


def main():
    a, lam = 0.5, 2.0
    rows = [
        ("cos / (1 + a z^2)", ri.infinite_exact(a, lam, "cos").value, oracle(a, lam)),
        ("sin / (1 + a z^2)", ri.infinite_exact(a, lam, "sin").value, oracle(a, lam, kind="sin")),
        ("cos / sqrt(1 + a z^2)", ri.I_half_one(a, lam).value, oracle(a, lam, nu=0.5)),
        ("cos^2 / (1 + a z^2)", ri.I_one_two(a, lam).value, oracle(a, lam, eta=2)),
        ("cos^2 / (1 + a z^2)^2", ri.I_two_two(a, lam).value, oracle(a, lam, nu=2.0, eta=2)),
        ("cos / (1 + a z^2)^3", ri.I_nu_one(3, a, lam).value, oracle(a, lam, nu=3.0)),
    ]
    print(f"a = {a}, lambda = {lam}")
    for label, exact, quad in rows:
        print(f"  {label:<24} {exact:.15f}  oracle {quad:.15f}  diff {abs(exact - quad):.1e}")

    lam = 200.0
    ref = ri.I_half_one(1.0, lam, precision="extended").value
    print(f"\nHankel expansion, a = 1, lambda = {lam}")
    for terms in range(1, 5):
        approx = ri.I_half_one_hankel(1.0, lam, terms)
        print(f"  {terms} term(s): error {abs(approx - ref):.2e}")


if __name__ == "__main__":
    main()
