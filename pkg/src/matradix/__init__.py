"""Matrix-radix number systems in Z^d.

Validated (base, digit set) pairs; eventually periodic digit encodings of
integer points, both absolute and relative to a cycle; fraction
attractors with measure and tiling diagnostics; Hadamard duality with
extreme cycles and tiling lattices; truncated solenoid embeddings; and
the exact affine group algebra behind them.
"""

from .attractor import (CoverageReport, Membership, PointCloud, Raster,
                        branch_overlap_fraction, build_cloud, default_depth,
                        exact_raster, measure_estimate, membership,
                        render_raster, rasterize, tiling_check, write_pgm,
                        write_sidecar)
from .cycles import (Cycle, CycleRelativePoint, companion_cycles,
                     cycle_decode, cycle_division_step, cycle_encode,
                     cycle_from_word, cycle_word)
from .errors import (BorderlineSpectrum, ConfigError, CountMismatch,
                     DegenerateDigitSpan, DomainError, IncompleteDigitSet,
                     InvariantSubspacePresent, MatradixError,
                     MembershipUndecided, NoSlotMatch, NotExpansive,
                     NotFinitelyRepresentable, PeriodNotCompanion,
                     SingularComposition, UndecidedError, WordTooShort,
                     WrongDigitCount)
from .group import DyadicLikeElement, GroupElement, WaveletGroup
from .linalg import (EPS_EIG, Lattice, attractor_radius, det,
                     integer_points_in_ball, is_expansive,
                     rational_eigenvalues, residue_canon, residues_enumerate)
from .radix import EventuallyPeriodicWord, RadixSystem, fraction_point
from .solenoid import (TOL_SOLENOID, DiagramReport, SymbolState,
                       TruncatedSolenoidPoint, alpha_step, attractor_samples,
                       shift_symbols, solenoid_embed, solenoid_embed_cycle,
                       solenoid_shift, solenoid_unshift, symbols_to_solenoid,
                       unshift_symbols, verify_commuting_diagram)
from .spectrum import (ExtremeCycle, check_hadamard, extreme_cycles,
                       fourier_permutation_defect, hadamard_matrix,
                       satisfies_criterion, spectrum_lattice, tiling_lattice,
                       unimodulus_criterion_lattice)
from .systems import PRESETS, SystemConfig, get_config

__version__ = "0.1.0"


def new_system(base, digits) -> RadixSystem:
    """Validate a (base, digits) pair and return the system."""
    return RadixSystem(base, digits)


__all__ = [
    "BorderlineSpectrum", "ConfigError", "CountMismatch", "CoverageReport",
    "Cycle", "CycleRelativePoint", "DegenerateDigitSpan", "DiagramReport",
    "DomainError", "DyadicLikeElement", "EPS_EIG", "EventuallyPeriodicWord",
    "ExtremeCycle", "GroupElement", "IncompleteDigitSet",
    "InvariantSubspacePresent", "Lattice", "MatradixError", "Membership",
    "MembershipUndecided", "NoSlotMatch", "NotExpansive",
    "NotFinitelyRepresentable", "PRESETS", "PeriodNotCompanion", "PointCloud",
    "RadixSystem", "Raster", "SingularComposition", "SymbolState",
    "SystemConfig", "TOL_SOLENOID", "TruncatedSolenoidPoint",
    "UndecidedError", "WaveletGroup", "WordTooShort", "WrongDigitCount",
    "alpha_step", "attractor_radius", "attractor_samples",
    "branch_overlap_fraction", "build_cloud", "check_hadamard",
    "companion_cycles", "cycle_decode", "cycle_division_step", "cycle_encode",
    "cycle_from_word", "cycle_word", "default_depth", "det", "exact_raster",
    "extreme_cycles", "fourier_permutation_defect", "fraction_point",
    "get_config",
    "hadamard_matrix", "integer_points_in_ball", "is_expansive",
    "measure_estimate", "membership", "new_system", "rasterize",
    "rational_eigenvalues", "render_raster", "residue_canon",
    "residues_enumerate", "satisfies_criterion", "shift_symbols",
    "solenoid_embed", "solenoid_embed_cycle", "solenoid_shift",
    "solenoid_unshift", "spectrum_lattice", "symbols_to_solenoid",
    "tiling_check", "tiling_lattice", "unimodulus_criterion_lattice",
    "unshift_symbols", "verify_commuting_diagram", "write_pgm",
    "write_sidecar",
]
