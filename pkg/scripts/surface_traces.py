#!/usr/bin/env python3
"""Dyadic-window traces for the built-in radial profiles.

Prints the per-window integrals of dr / L(r) that drive the length
criterion, for the Euclidean plane, the hyperbolic plane, the critical
r log r profile, and a convergent power-log profile.
"""

import sys

import numpy as np

from wrapcheck.geom2d import RadialProfile, ahlfors_classify, milnor_classify


def main():
    r = np.geomspace(2.0, 2.0**18, 6000)
    profiles = [
        ("euclidean", RadialProfile.euclidean()),
        ("hyperbolic", RadialProfile.hyperbolic()),
        ("r log r (critical)", RadialProfile.tabulated(r, 2 * np.pi * r * np.log(r))),
        ("power-log eps=0.5", RadialProfile.power_log(0.5)),
    ]
    for name, profile in profiles:
        cls = ahlfors_classify(profile)
        print(f"# {name}: {cls.verdict} ({cls.detail})")
        try:
            probe = np.geomspace(max(profile.rmin(), 1.01) + 1, min(profile.rmax, 1e5), 2048)
            mil = milnor_classify(probe, profile.curvature_samples(probe))
            print(f"# curvature criterion: {mil.verdict}")
        except ValueError as exc:
            print(f"# curvature criterion: skipped ({exc})")
        print(cls.trace_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
