"""Band topology and interface modes of 1D and 2D spring-mass lattices.

Subpackage map:

- ``numerics``    -- self-contained eigensolvers, root bracketing, Verlet.
- ``chain1d``     -- diatomic chain bands, Zak phase, transfer matrices,
                     interface-mode solver.
- ``honeycomb2d`` -- honeycomb lattice bands, Dirac cones, Berry/Chern
                     diagnostics, interface band solver.
- ``finite``      -- finite chain / ribbon assembly, spectra, time stepping.
- ``cli``         -- ``topolattice`` command-line entry point.
"""

from .chain1d import (
    BandGap1D,
    Bands1DSample,
    ChainParams,
    EdgeMode1D,
    Transfer1D,
    ZakResult,
    band_gap_1d,
    common_gap_1d,
    dispersion_1d,
    edge_mode_1d,
    edge_modes_1d,
    final_eqn_residual_1d,
    final_eqn_roots_1d,
    transfer_1d,
    transfer_matrix_1d,
    zak_discrete,
)
from .honeycomb2d import (
    ChernResult,
    DiracReport,
    Dispersion2DSample,
    EdgeFrequencies2D,
    HoneycombParams,
    InterfaceBands,
    Transfer2D,
    WaveVector2,
    berry_bz_boundary,
    bloch_matrix_2d,
    chern_discrete,
    d_function,
    dirac_check,
    dispersion_2d,
    edge_frequencies_2d,
    gap_survey,
    hexagon_vertices,
    interface_bands,
    k_point,
    loop_phase,
    transfer_2d,
)
from .finite import (
    FiniteChainModel,
    GapMode,
    RibbonModel,
    SimulationResult,
    SpectrumReport,
    assemble_chain,
    assemble_ribbon,
    simulate,
    spectrum,
    stability_limit,
)
from .numerics import (
    EigenDecomposition,
    SimState,
    eig2_hermitianlike,
    eig_hermitian_dense,
    find_roots_bracketed,
    verlet_step,
)

__version__ = "0.1.0"

__all__ = [
    "BandGap1D",
    "Bands1DSample",
    "ChainParams",
    "ChernResult",
    "DiracReport",
    "Dispersion2DSample",
    "EdgeFrequencies2D",
    "EdgeMode1D",
    "EigenDecomposition",
    "FiniteChainModel",
    "GapMode",
    "HoneycombParams",
    "InterfaceBands",
    "RibbonModel",
    "SimState",
    "SimulationResult",
    "SpectrumReport",
    "Transfer1D",
    "Transfer2D",
    "WaveVector2",
    "ZakResult",
    "assemble_chain",
    "assemble_ribbon",
    "band_gap_1d",
    "berry_bz_boundary",
    "bloch_matrix_2d",
    "chern_discrete",
    "common_gap_1d",
    "d_function",
    "dirac_check",
    "dispersion_1d",
    "dispersion_2d",
    "edge_frequencies_2d",
    "edge_mode_1d",
    "edge_modes_1d",
    "eig2_hermitianlike",
    "eig_hermitian_dense",
    "final_eqn_residual_1d",
    "final_eqn_roots_1d",
    "find_roots_bracketed",
    "gap_survey",
    "hexagon_vertices",
    "interface_bands",
    "k_point",
    "loop_phase",
    "simulate",
    "spectrum",
    "stability_limit",
    "transfer_1d",
    "transfer_2d",
    "transfer_matrix_1d",
    "verlet_step",
    "zak_discrete",
]
