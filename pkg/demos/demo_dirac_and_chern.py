"""Dirac cones and valley Chern diagnostics on the honeycomb lattice.

At equal masses (beta = 0) the two bands touch at the zone corners with
conical slopes +/- sqrt(3)/2; a mass contrast opens a gap 6 beta/(1-beta^2)
there.  The loop-integrated Berry phase around each corner is then finite
and opposite between the two valleys (and between the two bands), while the
full zone-boundary loop accumulates nothing.
"""

import numpy as np

from topolattice import (
    HoneycombParams,
    berry_bz_boundary,
    chern_discrete,
    dirac_check,
    dispersion_2d,
    k_point,
)


def main() -> None:
    # ----- Dirac cone at beta = 0 -----
    rep = dirac_check(HoneycombParams(beta=0.0), valley="K1")
    print("Dirac check at K1 (beta = 0):")
    print("  lambda(K1) = %.15f  (isotropic value 3)" % rep.lambda_star)
    print("  cone slopes, smallest step, per direction:")
    for ang, sm, sp in zip(rep.direction_angles, rep.slopes_minus[:, -1],
                           rep.slopes_plus[:, -1]):
        print("    theta = %6.3f   minus %+9.6f   plus %+9.6f"
              % (ang, sm, sp))
    print("  reference slope sqrt(3)/2 = %.6f" % (np.sqrt(3.0) / 2.0))
    print()

    # ----- gap opening -----
    print("gap at K1 versus beta:")
    for beta in (0.02, 0.05, 0.1, 0.2, 0.3):
        s = dispersion_2d(HoneycombParams(beta=beta), k_point("K1"))
        exact = 6.0 * beta / (1.0 - beta * beta)
        print("  beta = %.2f   lambda gap = %.9f   6b/(1-b^2) = %.9f"
              % (beta, s.lambda_plus - s.lambda_minus, exact))
    print()

    # ----- valley Chern table -----
    print("valley loop phases / 2pi (radius 0.05 |K1|, 512 points):")
    print("  beta    band     K1           K2           K4")
    for beta in (0.05, 0.1, 0.3):
        p = HoneycombParams(beta=beta)
        for band in ("minus", "plus"):
            vals = [chern_discrete(p, v, band).value for v in ("K1", "K2", "K4")]
            print("  %+.2f   %-5s  %+.9f  %+.9f  %+.9f"
                  % (beta, band, *vals))
    print("  (K1 = K3 = K5 and K2 = K4 = K6; adjacent corners negate;")
    print("   the minus band carries sign(beta), the plus band its opposite)")
    print()

    # ----- whole-boundary loop cancels -----
    for beta in (0.1, -0.3):
        ph = berry_bz_boundary(HoneycombParams(beta=beta), "minus")
        print("zone-boundary Berry phase, beta = %+.1f, minus band: %.2e"
              % (beta, ph))


if __name__ == "__main__":
    main()
