#include "mirnoise/beam_overlap.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mirnoise/errors.hpp"

namespace mirnoise {

namespace {

/// log ||u||^2 over the plane for the unnormalized surface profile.
double log_mode_norm_sq(const ModeData& mode) {
    const auto& idx = mode.index;
    if (idx.l == 0) return std::log(std::numbers::pi * mode.waist_sq / 2.0);
    return std::log(std::numbers::pi * mode.waist_sq / 4.0) + log_factorial_ratio(idx.p, idx.l);
}

OverlapWeight from_log(const ModeIndex& index, double sign, double log_abs, double log_norm_sq) {
    OverlapWeight w{index, 0.0, 0.0};
    if (sign == 0.0) return w;
    w.value = sign * std::exp(log_abs);
    w.normalized = sign * std::exp(log_abs - 0.5 * log_norm_sq);
    if (!std::isfinite(w.value) || !std::isfinite(w.normalized)) {
        throw RecurrenceInstability("overlap for mode (n=" + std::to_string(index.n) + ", p=" +
                                    std::to_string(index.p) + ", l=" + std::to_string(index.l) +
                                    ") is outside the double range");
    }
    return w;
}

}  // namespace

void BeamSpec::validate(const PlanoConvexGeometry& geometry) const {
    if (!(waist > 0.0) || !std::isfinite(waist)) throw InvalidSpec("beam waist must be positive");
    if (!(offset >= 0.0) || !std::isfinite(offset)) throw InvalidSpec("beam offset must be >= 0");
    if (!(offset + waist < 0.5 * geometry.diameter())) {
        throw InvalidSpec("beam (offset " + std::to_string(offset) + " m, waist " + std::to_string(waist) +
                          " m) does not fit on a mirror of radius " +
                          std::to_string(0.5 * geometry.diameter()) + " m");
    }
}

double beam_profile(const BeamSpec& beam, double x, double y) {
    const double w0_sq = beam.waist * beam.waist;
    const double dx = x - beam.offset;
    return 2.0 / (std::numbers::pi * w0_sq) * std::exp(-2.0 * (dx * dx + y * y) / w0_sq);
}

OverlapWeight overlap_centered(const ModeData& mode, const BeamSpec& beam) {
    if (beam.offset != 0.0) throw InvalidSpec("overlap_centered requires a centered beam");
    OverlapWeight w{mode.index, 0.0, 0.0};
    if (mode.index.l != 0) return w;
    const double two_wn_sq = 2.0 * mode.waist_sq;
    const double w0_sq = beam.waist * beam.waist;
    const double q = (two_wn_sq - w0_sq) / (two_wn_sq + w0_sq);
    w.value = two_wn_sq / (two_wn_sq + w0_sq) * std::pow(q, mode.index.p);
    w.normalized = w.value / std::sqrt(std::numbers::pi * mode.waist_sq / 2.0);
    return w;
}

OverlapWeight overlap_offaxis(const ModeData& mode, const BeamSpec& beam) {
    const auto& idx = mode.index;
    if (idx.parity == Parity::sine) return {idx, 0.0, 0.0};
    if (beam.offset == 0.0 && idx.l > 0) return {idx, 0.0, 0.0};

    const double w0_sq = beam.waist * beam.waist;
    const double ratio = mode.waist_sq / w0_sq;
    const double s = 0.5 + ratio;
    const double q = (s - 1.0) / s;
    const double d = beam.offset;
    // a = g^2/4 with g = 2 sqrt(2) d w_n / w0^2
    const double a = 2.0 * d * d * mode.waist_sq / (w0_sq * w0_sq);
    const double c = a / (s * s);

    double log_pref = std::log(ratio) - 2.0 * d * d / w0_sq + a / s - (idx.l + 1.0) * std::log(s);
    if (idx.l > 0) log_pref += idx.l * 0.5 * std::log(a);  // (g/2)^l = a^{l/2}

    const ScaledValue poly = scaled_laguerre(idx.p, idx.l, q, c);
    if (poly.mantissa == 0.0) return {idx, 0.0, 0.0};
    const double sign = poly.mantissa > 0.0 ? 1.0 : -1.0;
    return from_log(idx, sign, log_pref + poly.log_abs(), log_mode_norm_sq(mode));
}

ShellOverlaps::ShellOverlaps(double mode_waist_sq, const BeamSpec& beam)
    : along_offset_(mode_waist_sq, beam.waist, beam.offset), across_offset_(mode_waist_sq, beam.waist, 0.0) {}

double ShellOverlaps::shell_weight(int transverse_order) {
    double sum = 0.0;
    // Odd orders across the offset vanish by symmetry.
    for (int j = 0; j <= transverse_order; j += 2) {
        sum += across_offset_.coefficient_sq(j) * along_offset_.coefficient_sq(transverse_order - j);
    }
    return sum;
}

double ShellOverlaps::total_weight() const {
    return along_offset_.total_weight() * across_offset_.total_weight();
}

}  // namespace mirnoise
