#pragma once

#include "mirnoise/acoustic_modes.hpp"
#include "mirnoise/material_geometry.hpp"
#include "mirnoise/special_functions.hpp"

namespace mirnoise {

/// TEM00 readout beam: waist w0 and transverse offset d of its axis along +x.
struct BeamSpec {
    double waist = 0.02;  ///< m
    double offset = 0.0;  ///< m

    /// Throws InvalidSpec unless w0 > 0, d >= 0 and d + w0 < D/2.
    void validate(const PlanoConvexGeometry& geometry) const;
};

/// Overlap <u_{n,p,l}(z = 0), v> of a mode with the beam intensity profile.
struct OverlapWeight {
    ModeIndex index;
    double value = 0.0;       ///< dimensionless, the raw overlap with the unnormalized mode profile
    double normalized = 0.0;  ///< value / ||u|| (1/m); value^2 / M = normalized^2 * 2 / (rho h0)
};

/// Normalized intensity (2 / (pi w0^2)) exp(-2 ((x - d)^2 + y^2) / w0^2), in 1/m^2.
double beam_profile(const BeamSpec& beam, double x, double y);

/// Closed-form overlap for a centered beam:
///   [2 w_n^2 / (2 w_n^2 + w0^2)] * [(2 w_n^2 - w0^2) / (2 w_n^2 + w0^2)]^p.
/// Modes with l >= 1 have zero overlap with a centered beam. Throws InvalidSpec if d != 0.
OverlapWeight overlap_centered(const ModeData& mode, const BeamSpec& beam);

/// Overlap with a beam displaced along x.
///
/// Integrating the angular factor against exp(4 r d cos(phi) / w0^2) and summing the
/// Laguerre generating function gives
///   <u, v> = (w_n^2/w0^2) exp(-2d^2/w0^2 + a/s) (g/2)^l s^{-l-1} q^p L_p^l(c/q)
/// with s = 1/2 + w_n^2/w0^2, q = (s-1)/s, g = 2 sqrt(2) d w_n / w0^2, a = g^2/4 and
/// c = (a/s)(1-q). The polynomial factor q^p L_p^l(c/q) is advanced by its own three-term
/// recurrence, so no alternating sums appear. Sine-parity modes give exactly 0.
/// Throws RecurrenceInstability if the raw value leaves the double range.
OverlapWeight overlap_offaxis(const ModeData& mode, const BeamSpec& beam);

/// Squared overlaps of one degenerate shell (fixed n and N = 2p + l), summed over the shell
/// in the Hermite-Gauss basis HG_{j, N-j}. Each Hermite-Gauss overlap factors into two 1D
/// displaced-Gaussian integrals produced by HermiteProjection. The shell sum equals the sum of
/// normalized^2 over the Laguerre-Gauss modes of the shell.
class ShellOverlaps {
public:
    ShellOverlaps(double mode_waist_sq, const BeamSpec& beam);

    /// Sum over the shell of normalized overlaps squared (1/m^2).
    double shell_weight(int transverse_order);
    /// Sum over all shells: the integral of v^2 over the plane, 1 / (pi w0^2).
    double total_weight() const;

private:
    HermiteProjection along_offset_;
    HermiteProjection across_offset_;
};

}  // namespace mirnoise

