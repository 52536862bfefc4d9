"""Tour of the reference laws: semicircle and Marchenko-Pastur.

Prints the key closed-form values (density at the center, Catalan moments,
support edges, the point mass at zero for y > 1) and writes plot-ready
(x, pdf, cdf) tables for both laws.
"""

import numpy as np

from tylerlaw import MarchenkoPastur, Semicircle, semicircle_moment


def dump_table(path, law, grid):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("x,pdf,cdf\n")
        for x in grid:
            try:
                pdf = law.pdf(x)
            except ValueError:
                pdf = float("nan")
            fh.write(f"{x:.6g},{pdf:.10g},{law.cdf(x):.10g}\n")
    print(f"  wrote {path}")


def main():
    sc = Semicircle()
    print("Semicircle law on [-2, 2]")
    print(f"  pdf(0)  = {sc.pdf(0.0):.6f}  (= 1/pi)")
    print(f"  cdf(0)  = {sc.cdf(0.0):.6f}")
    print(f"  cdf(1)  = {sc.cdf(1.0):.6f}")
    evens = [semicircle_moment(m) for m in (2, 4, 6, 8, 10)]
    print(f"  even moments m=2,4,6,8,10 -> Catalan numbers {evens}")
    print(f"  odd moments vanish: m=3 -> {semicircle_moment(3)}")
    dump_table("semicircle_law.csv", sc, np.linspace(-2.2, 2.2, 221))

    print()
    for y in (0.25, 2.0):
        mp = MarchenkoPastur(y)
        lo, hi = mp.support()
        print(f"Marchenko-Pastur law, ratio y = {y}")
        print(f"  support edges      = ({lo:.4f}, {hi:.4f})   (1 -/+ sqrt(y))^2")
        print(f"  point mass at zero = {mp.point_mass_at_zero}")
        print(f"  cdf(0)             = {mp.cdf(0.0)}")
        dump_table(f"mp_law_y{y}.csv", mp, np.linspace(-0.2, hi + 0.2, 240))


if __name__ == "__main__":
    main()
