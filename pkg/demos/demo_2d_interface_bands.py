# Interface bands of a mass-inverted honeycomb seam.
#
# Sweeps the wave number along the seam and prints, per k_par:
#   - the projected bulk band edges (the gap window),
#   - the closed-form seam frequencies omega_1^2 / omega_2^2 and whether
#     each lands inside the window,
#   - the in-gap eigenvalues of an explicit width-24 ribbon supercell.
#
# The ribbon is a ring with two seams (a-a at the center, b-b at the wrap),
# so it carries both branches: one localized at each seam.

import numpy as np

from topolattice import (
    HoneycombParams,
    assemble_ribbon,
    edge_frequencies_2d,
    interface_bands,
    spectrum,
)

BETA = 0.1
WIDTH = 24


def ribbon_gap_modes(params, k_par):
    model = assemble_ribbon(params, k_par, width_per_side=WIDTH)
    rep = spectrum(model)
    return sorted(m.omega_sq for m in rep.gap_modes)


def main() -> None:
    params = HoneycombParams(beta=BETA)
    kmax = 2.0 * np.pi / params.a
    print("beta = %.2f, ribbon width %d cells per side" % (BETA, WIDTH))
    print()
    print("  k_par     gap window            omega1^2   omega2^2   in gap    ribbon")
    for k_par in np.linspace(0.05 * kmax, 0.95 * kmax, 10):
        ib = interface_bands(params, k_par)
        ef = edge_frequencies_2d(params, k_par)
        in_gap = ["y" if ib.lambda_minus < w < ib.lambda_plus else "-"
                  for w in ef.omega_sq[:2]]
        rib = ribbon_gap_modes(params, k_par)
        print("  %.4f   (%.5f, %.5f)   %8.5f   %8.5f   %s %s       %s"
              % (k_par, ib.lambda_minus, ib.lambda_plus,
                 ef.omega_sq[0], ef.omega_sq[1], in_gap[0], in_gap[1],
                 " ".join("%.5f" % w for w in rib) or "(none)"))
    print()
    print("matching residuals at k_par = pi (branch omega2 matches for beta > 0):")
    ef = edge_frequencies_2d(params, np.pi)
    for j, r in enumerate(ef.matching_residuals):
        print("  branch omega%d^2 = %.9f   residual = %.3e"
              % (j + 1, ef.omega_sq[j], r))


if __name__ == "__main__":
    main()
