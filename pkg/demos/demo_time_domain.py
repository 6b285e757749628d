"""Time-domain check that the 1D interface mode is dynamically trapped.

Launches the interface-localized eigenvector of a 30-cell-per-side joint
chain with velocity Verlet and tracks, over ~60 mode periods, the total
energy (conserved up to the symplectic ripple) and the fraction of it held
within five cells of the interface.  A bulk point impulse launched the same
way radiates away from its origin instead.
"""

import numpy as np

from topolattice import (
    ChainParams,
    SimState,
    assemble_chain,
    simulate,
    spectrum,
    stability_limit,
)


def interface_energy_fraction(model, result) -> float:
    mask = model.interface_mask(cells=5)
    dens = result.final_profile
    return float(dens[mask].sum() / dens.sum())


def main() -> None:
    model = assemble_chain(ChainParams(gamma=-0.5), ChainParams(gamma=0.5),
                           cells_per_side=30)
    rep = spectrum(model)
    mode = max(rep.gap_modes, key=lambda m: m.interface_fraction)
    omega = np.sqrt(mode.omega_sq)
    print("interface mode: omega = %.9f, interface fraction %.4f"
          % (omega, mode.interface_fraction))

    dt = 0.5 * stability_limit(model)
    period = 2.0 * np.pi / omega
    n_steps = int(round(60 * period / dt))
    state = SimState(time=0.0, positions=mode.profile.astype(float),
                     velocities=np.zeros_like(mode.profile, dtype=float))
    res = simulate(model, state, dt, n_steps)

    e0 = res.energies[0]
    ripple = np.max(np.abs(res.energies - e0)) / e0
    print("ran %d steps at dt = %.4f (half the stability bound)"
          % (n_steps, dt))
    print("  energy ripple (max |E - E0| / E0): %.3e" % ripple)
    print("  interface energy fraction after 60 periods: %.4f"
          % interface_energy_fraction(model, res))
    print()

    # same duration, but a unit velocity kick on one bulk site
    kick = np.zeros(model.n_dofs)
    u0 = np.zeros(model.n_dofs)
    kick[model.dof_index(-15, "a")] = 1.0
    res2 = simulate(model, SimState(0.0, u0, kick), dt, n_steps)
    print("bulk impulse at cell -15: interface energy fraction %.4f"
          % interface_energy_fraction(model, res2))
    print("(the eigenmode stays trapped; the impulse spreads over the chain)")


if __name__ == "__main__":
    main()
