#!/usr/bin/env python3
"""Degree study for the built-in wrapping maps.

Produces the normalized-degree tables R^-n int_{B_R} Jf at two grid
resolutions, with a refinement-stability column, for the plane-to-
sphere wrap and the n = 3 join map.  Output is tab-separated, suitable
for plotting.
"""

import sys

from wrapcheck.wrapmaps import (
    asymptotic_degree,
    jacobian_floor,
    join_map,
    sphere_wrap_map,
    sphere_wrap_strip_sampler,
)


def study(m, radii, step):
    coarse = asymptotic_degree(m, radii, step)
    fine = asymptotic_degree(m, radii, step / 2)
    print(f"# map {m.name}  steps {step} / {step / 2}")
    print("R\tnormalized\tnormalized_fine\trel_change")
    for r, a, b in zip(radii, coarse.normalized, fine.normalized):
        print(f"{r:g}\t{a:.6f}\t{b:.6f}\t{abs(a - b) / b:.4f}")
    print(f"# least-squares slope: {coarse.slope():.3e}")


def main():
    radii2 = list(range(10, 101, 10))
    study(sphere_wrap_map(), radii2, 0.2)
    floor = jacobian_floor(sphere_wrap_map(), sphere_wrap_strip_sampler(), 100_000)
    print(f"# sphere-wrap Jacobian floor on the strips: {floor:.6f}")
    print()
    study(join_map(3), [5, 10, 15, 20], 0.25)
    return 0


if __name__ == "__main__":
    sys.exit(main())
