"""Derive Anger-form coefficient tables by lifting the order-1 integral.

Development helper (needs sympy, which the package itself does not use).
Writes src/lommel_fresnel/data/anger_n1.txt.

With G_nu(x) = sqrt(a) I_nu^(1)(a, lam) as a function of x = lam/a, the
recursion in nu becomes
    G_{nu+1} = (1 - 1/(2 nu)) G_nu - (x/nu) G_nu'(x),
and the half-order Anger functions obey
    J_{1/2}' = J_{1/2}/(2x) - J_{3/2} - 1/(pi x)
    J_{3/2}' = J_{1/2} - 3 J_{3/2}/(2x) - 1/(pi x).
"""

from pathlib import Path

import sympy as sp

x = sp.symbols("x", positive=True)
R, Jh, J3, co, si = sp.symbols("R Jh J3 co si")   # R = sqrt(2 pi / x)

DERIV = {
    R: -R / (2 * x),
    Jh: Jh / (2 * x) - J3 - 1 / (sp.pi * x),
    J3: Jh - sp.Rational(3, 2) * J3 / x - 1 / (sp.pi * x),
    co: -si,
    si: co,
}


def d(expr):
    out = sp.diff(expr, x)
    for s, ds in DERIV.items():
        out += sp.diff(expr, s) * ds
    return out


def lift(G, nu):
    return sp.expand((1 - sp.Rational(1, 2 * nu)) * G - x / nu * d(G))


def eliminate_bare_power(G):
    # 1/(pi x) from the Anger derivatives always arrives multiplied by R;
    # powers of x without R, trig or Anger factors must cancel.
    G = sp.expand(G)
    bare = G.subs({R: 0, Jh: 0, J3: 0, co: 0, si: 0})
    assert sp.simplify(bare) == 0, bare
    return G


def table(G, order, n, eta_exp):
    """Read off a,c,d,e,f coefficients of a template with prefactor 2**-eta_exp."""
    G = sp.expand(G * 2 ** eta_exp)
    out = {}
    poly = sp.Poly(G, R, Jh, J3, co, si)
    for monom, coeff in poly.terms():
        r, jh, j3, c, s = monom
        coeff = sp.expand(coeff)
        for term in sp.Add.make_args(coeff):
            cst, xp = term.as_coeff_exponent(x)
            if (r, jh, j3, c, s) == (1, 0, 0, 0, 0):
                fam, k, mult = "a", xp, 2
            elif (r, jh, j3, c, s) == (0, 0, 0, 1, 0):
                fam, k, mult = "c", xp / 2, 2 * sp.pi
            elif (r, jh, j3, c, s) == (0, 0, 0, 0, 1):
                fam, k, mult = "d", (xp - 1) / 2, (4 if order % 2 == 0 else 2) * sp.pi
            elif (r, jh, j3, c, s) == (1, 1, 0, 0, 0):
                fam, k, mult = "e", xp / 2, -sp.pi
            elif (r, jh, j3, c, s) == (1, 0, 1, 0, 0):
                fam, k, mult = "f", (xp - 1) / 2, sp.pi
            else:
                raise ValueError(f"unexpected monomial {monom}")
            val = sp.nsimplify(cst / mult)
            assert val.is_rational, (fam, k, val)
            out[(fam, int(k))] = out.get((fam, int(k)), 0) + val
    return out


def greubel_eta(n):
    return sp.floor(sp.sqrt(2) * n) + sp.floor(sp.sqrt(sp.Rational(3, 2)) * n)


def main():
    u = x / 2 * R                                   # sqrt(pi x / 2)
    G1 = sp.expand(sp.pi / 2 * co + sp.pi / 2 * u * J3 - sp.pi / 2 * u / x * Jh + u / x)
    G2 = eliminate_bare_power(lift(G1, 1))
    G3 = eliminate_bare_power(lift(G2, 2))
    t2 = table(G2, 2, 1, greubel_eta(1) + 1)
    t3 = table(G3, 3, 1, greubel_eta(2) + 1)
    lines = ["# Anger-form coefficients for n = 1 (orders 2 and 3)",
             "# derived by tools/derive_anger_tables.py; format: family k order value"]
    for order, tab in ((2, t2), (3, t3)):
        for (fam, k), val in sorted(tab.items()):
            if val != 0:
                lines.append(f"{fam} {k} {order} {sp.Rational(val)}")
    path = Path(__file__).resolve().parents[1] / "src" / "lommel_fresnel" / "data" / "anger_n1.txt"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print("\n".join(lines))


if __name__ == "__main__":
    main()
