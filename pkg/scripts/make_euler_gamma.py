"""Regenerate src/cnct/data/euler_gamma.txt (Euler's constant, 1100 decimals).

The embedded digits come from mpmath and are cross-checked in the test suite
against an Euler-Maclaurin evaluation of H_N - ln N built on this package's
own Bernoulli numbers.
"""
from pathlib import Path

import mpmath

DIGITS = 1100

def main():
    mpmath.mp.dps = DIGITS + 20
    text = mpmath.nstr(mpmath.euler, DIGITS + 5, strip_zeros=False)
    head, frac = text.split(".")
    out = Path(__file__).resolve().parents[1] / "src" / "cnct" / "data" / "euler_gamma.txt"
    out.write_text(f"{head}.{frac[:DIGITS]}\n")
    print(f"wrote {out} ({DIGITS} decimals)")


if __name__ == "__main__":
    main()
