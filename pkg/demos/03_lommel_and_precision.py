"""Lommel functions s_{mu,1/2} from closed forms, and the cancellation guard.

For small lambda the elementary closed forms subtract nearly equal
quantities.  Every closed form is summed under a guard that estimates the
loss and, when it is too large, repeats the sum in extended precision.
"""

import os
from fractions import Fraction

from lommel_fresnel import lommel, series_oracle


def main():
    half = Fraction(1, 2)
    print("mu    lambda  closed form              ascending series         notes")
    for mu in (0, 3, Fraction(5, 2), 6):
        for lam in (0.05, 4.0):
            ev = lommel(mu, lam)
            ref = series_oracle(mu, half, lam).value
            print(f"{str(mu):<5} {lam:<7} {ev.value:<24.17g} {ref:<24.17g} {','.join(ev.notes) or '-'}")

    # the same call can be forced into extended precision for a whole process
    os.environ["LOMMEL_PRECISION"] = "extended"
    ev = lommel(6, 4.0)
    print(f"\nwith LOMMEL_PRECISION=extended: s_6,1/2(4) = {ev.value:.17g} ({','.join(ev.notes)})")


if __name__ == "__main__":
    main()
