#pragma once

// Independent numerical references for the closed-form effective masses and the off-axis
// overlaps. Both integrate the raw mode profile directly; neither shares code with the
// production formulas beyond the input data types.

#include "mirnoise/acoustic_modes.hpp"
#include "mirnoise/beam_overlap.hpp"
#include "mirnoise/material_geometry.hpp"

namespace mirnoise {

/// rho (h0/2) * integral of u(r, phi, 0)^2 over the mirror face (r <= D/2), by a trapezoid
/// rule in phi and composite Gauss-Legendre in r refined until successive estimates agree to
/// 1e-12. Throws ConvergenceFailure if refinement stalls.
long double effective_mass_oracle(const PlanoConvexGeometry& geometry, const ModeIndex& index);

/// Infinite-plane variant of the mass integral (no edge truncation), for checking the
/// normalization of the closed form independently of the mirror size.
long double effective_mass_oracle_plane(const PlanoConvexGeometry& geometry, const ModeIndex& index);

struct QuadratureReport {
    double value = 0.0;
    double abs_integral = 0.0;  ///< integral of |u v|, the cancellation scale
    int digits = 0;             ///< working precision used (decimal digits)
    int levels = 0;             ///< refinement levels used
};

/// Direct 2D quadrature of <u, v> on a disk around the mirror center of radius
/// min(D/2, d + 8 w0 + 4 w_n sqrt(2p + l + 1)), in multiprecision arithmetic. Refined until
/// successive estimates agree to 1e-10 relative; the working precision is raised until the
/// result is resolved above the cancellation between positive and negative lobes.
/// Throws ConvergenceFailure if refinement stalls.
QuadratureReport overlap_quadrature_report(const PlanoConvexGeometry& geometry, const ModeData& mode,
                                           const BeamSpec& beam);

/// The overlap weight computed by overlap_quadrature_report (normalized field filled from the
/// closed-form mode norm).
OverlapWeight overlap_quadrature_oracle(const PlanoConvexGeometry& geometry, const ModeData& mode,
                                        const BeamSpec& beam);

}  // namespace mirnoise
