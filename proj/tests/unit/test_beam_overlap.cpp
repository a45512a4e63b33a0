#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mirnoise/beam_overlap.hpp"
#include "mirnoise/errors.hpp"
#include "mirnoise/oracles.hpp"
#include "mirnoise/special_functions.hpp"

using namespace mirnoise;

namespace {
constexpr double pi = std::numbers::pi;
const PlanoConvexGeometry g = solve_geometry(20.0, 0.07, Material::fused_silica());

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Trapezoid grid over the beam footprint, evaluating the mode through surface_displacement.
/// The offset may be negative (beam displaced along -x).
double grid_overlap(const ModeIndex& idx, double w0, double d) {
    const int half = 400;
    const double span = 7.0 * w0;
    const double h = span / half;
    const double edge = 0.5 * g.diameter();
    double sum = 0.0;
    for (int i = -half; i <= half; ++i) {
        for (int j = -half; j <= half; ++j) {
            const double x = d + i * h, y = j * h;
            const double r = std::hypot(x, y);
            if (r > edge) continue;
            const double v = 2.0 / (pi * w0 * w0) * std::exp(-2.0 * ((x - d) * (x - d) + y * y) / (w0 * w0));
            sum += surface_displacement(g, idx, r, std::atan2(y, x)) * v;
        }
    }
    return sum * h * h;
}
}  // namespace

TEST_CASE("beam profile") {
    const BeamSpec b{0.02, 0.0};
    CHECK(beam_profile(b, 0.0, 0.0) == doctest::Approx(2.0 / (pi * 0.0004)).epsilon(1e-15));
    const BeamSpec shifted{0.02, 0.05};
    CHECK(beam_profile(shifted, 0.05, 0.0) == doctest::Approx(2.0 / (pi * 0.0004)).epsilon(1e-15));
    // Unit integral over the plane (trapezoid is spectrally accurate for a Gaussian).
    double sum = 0.0;
    const double h = 0.0005;
    for (int i = -200; i <= 200; ++i) {
        for (int j = -200; j <= 200; ++j) sum += beam_profile(shifted, 0.05 + i * h, j * h);
    }
    CHECK(std::abs(sum * h * h - 1.0) < 1e-10);
}

TEST_CASE("beam spec validation") {
    CHECK_NOTHROW((BeamSpec{0.02, 0.12}).validate(g));
    CHECK_THROWS_AS((BeamSpec{0.0, 0.0}).validate(g), InvalidSpec);
    CHECK_THROWS_AS((BeamSpec{0.02, -0.01}).validate(g), InvalidSpec);
    CHECK_THROWS_AS((BeamSpec{0.02, 0.5 * g.diameter() - 0.02}).validate(g), InvalidSpec);
}

TEST_CASE("centered overlap closed form") {
    const auto m = mode_data(g, {1, 0, 0});
    CHECK(overlap_centered(m, {0.02, 0.0}).value == doctest::Approx(0.97880880232943734).epsilon(1e-13));
    // Point-sampling limit.
    CHECK(overlap_centered(m, {1e-9, 0.0}).value == doctest::Approx(1.0).epsilon(1e-12));
    // Zero of the p-th power at w0^2 = 2 w_n^2.
    const BeamSpec matched{std::sqrt(2.0 * m.waist_sq), 0.0};
    for (int p = 1; p <= 4; ++p) CHECK(overlap_centered(mode_data(g, {1, p, 0}), matched).value == 0.0);
    CHECK(overlap_centered(mode_data(g, {2, 3, 2}), {0.02, 0.0}).value == 0.0);
    CHECK_THROWS_AS(overlap_centered(m, {0.02, 0.01}), InvalidSpec);
    for (int n = 1; n <= 20; ++n) {
        for (int p = 0; p <= 40; ++p) CHECK(std::abs(overlap_centered(mode_data(g, {n, p, 0}), {0.02, 0}).value) <= 1.0);
    }
}

TEST_CASE("off-axis path reduces to the centered one at d = 0") {
    for (double w0 : {0.005, 0.02, 0.055, 0.1}) {
        for (int n : {1, 2, 5, 17, 60}) {
            for (int p = 0; p <= 60; p += 3) {
                const auto m = mode_data(g, {n, p, 0});
                const double c = overlap_centered(m, {w0, 0.0}).value;
                const double o = overlap_offaxis(m, {w0, 0.0}).value;
                CAPTURE(w0);
                CAPTURE(n);
                CAPTURE(p);
                CHECK(std::abs(o - c) <= 1e-12 * std::abs(c) + 1e-300);
            }
            for (int l = 1; l <= 5; ++l) CHECK(overlap_offaxis(mode_data(g, {n, 2, l}), {w0, 0.0}).value == 0.0);
        }
    }
}

TEST_CASE("sine parity vanishes for an offset along x") {
    for (int l = 1; l <= 10; ++l) {
        CHECK(overlap_offaxis(mode_data(g, {1, 3, l, Parity::sine}), {0.02, 0.05}).value == 0.0);
    }
    CHECK(std::abs(grid_overlap({1, 1, 3, Parity::sine}, 0.02, 0.05)) < 1e-14);
}

TEST_CASE("off-axis values against independent Cartesian quadrature") {
    // Reference values from tests/oracle/derive_values.py.
    const auto m121 = mode_data(g, {1, 2, 1});
    CHECK(rel(overlap_offaxis(m121, {0.02, 0.03}).value, 0.85815900154572899) < 1e-8);
    const auto m100 = mode_data(g, {1, 0, 0});
    CHECK(rel(overlap_offaxis(m100, {0.02, 0.05}).value, 0.75103056772084376) < 1e-8);
    // Completing the square for two displaced Gaussians.
    for (double d : {0.0, 0.02, 0.05, 0.1, 0.2}) {
        const double s = 2.0 * m100.waist_sq + 0.0004;
        CHECK(rel(overlap_offaxis(m100, {0.02, d}).value, 2.0 * m100.waist_sq / s * std::exp(-2.0 * d * d / s)) <
              1e-13);
    }
}

TEST_CASE("grid quadrature of the surface field agrees and shows the parity in d") {
    for (ModeIndex idx : {ModeIndex{1, 2, 1}, ModeIndex{2, 1, 2}, ModeIndex{3, 0, 3}, ModeIndex{1, 4, 0}}) {
        for (double d : {0.01, 0.04}) {
            const double fast = overlap_offaxis(mode_data(g, idx), {0.02, d}).value;
            const double plus = grid_overlap(idx, 0.02, d);
            const double minus = grid_overlap(idx, 0.02, -d);
            CAPTURE(idx.n);
            CAPTURE(idx.p);
            CAPTURE(idx.l);
            CAPTURE(d);
            CHECK(std::abs(plus - fast) <= 1e-9 * std::max(std::abs(fast), 1e-3));
            CHECK(std::abs(minus - (idx.l % 2 ? -plus : plus)) <= 1e-12);
        }
    }
}

TEST_CASE("small offsets approach the centered value quadratically") {
    const auto m = mode_data(g, {2, 3, 0});
    const double c = overlap_centered(m, {0.02, 0.0}).value;
    double prev = 0.0;
    for (double d = 1e-3; d >= 1e-5; d /= 10.0) {
        const double k = (overlap_offaxis(m, {0.02, d}).value - c) / (d * d);
        if (prev != 0.0) CHECK(k == doctest::Approx(prev).epsilon(1e-3));
        prev = k;
    }
}

TEST_CASE("overlap decays with the transverse order") {
    ShellOverlaps shells(acoustic_waist_sq(g, 3), {0.02, 0.05});
    double peak = 0.0;
    int peak_order = 0;
    for (int order = 0; order <= 600; ++order) {
        const double w = shells.shell_weight(order);
        if (w > peak) peak = w, peak_order = order;
    }
    CHECK(shells.shell_weight(600) < 1e-12 * peak);
    CHECK(peak_order < 100);
}

TEST_CASE("Hermite-Gauss shell sums equal Laguerre-Gauss shell sums") {
    for (int n : {1, 4, 12}) {
        for (double d : {0.0, 0.015, 0.06, 0.12}) {
            const BeamSpec b{0.02, d};
            ShellOverlaps shells(acoustic_waist_sq(g, n), b);
            for (int order = 0; order <= 80; ++order) {
                double lg = 0.0;
                for (int l = order % 2; l <= order; l += 2) {
                    const double c = overlap_offaxis(mode_data(g, {n, (order - l) / 2, l}), b).normalized;
                    lg += c * c;
                }
                const double hg = shells.shell_weight(order);
                CAPTURE(n);
                CAPTURE(d);
                CAPTURE(order);
                CHECK(std::abs(hg - lg) <= 1e-10 * std::max(hg, 1e-14 * shells.total_weight()));
            }
        }
    }
}

TEST_CASE("shell weights add up to the integral of v^2") {
    for (double d : {0.0, 0.05, 0.12}) {
        const BeamSpec b{0.02, d};
        ShellOverlaps shells(acoustic_waist_sq(g, 2), b);
        CHECK(shells.total_weight() == doctest::Approx(1.0 / (pi * 0.0004)).epsilon(1e-14));
        double sum = 0.0;
        for (int order = 0; order <= 3000; ++order) sum += shells.shell_weight(order);
        CHECK(sum == doctest::Approx(shells.total_weight()).epsilon(1e-12));
    }
}

TEST_CASE("Hermite projection coefficients against direct integration") {
    const double wn_sq = acoustic_waist_sq(g, 2), w0 = 0.02, d = 0.03;
    HermiteProjection proj(wn_sq, w0, d);
    const double wn = std::sqrt(wn_sq);
    for (int k = 0; k <= 12; ++k) {
        // psi_k by the Hermite recurrence, integrated against the 1D Gaussian with a fine trapezoid.
        double sum = 0.0;
        const double h = 2e-5;
        for (int i = -20000; i <= 20000; ++i) {
            const double x = d + i * h;
            const double s = std::sqrt(2.0) * x / wn;
            double h0 = 1.0, h1 = 2.0 * s;
            double hk = k == 0 ? h0 : h1;
            for (int j = 1; j < k; ++j) {
                const double h2 = 2.0 * s * h1 - 2.0 * j * h0;
                h0 = h1;
                h1 = h2;
                hk = h2;
            }
            const double norm = std::sqrt(wn / std::sqrt(2.0) * std::sqrt(pi) * std::pow(2.0, k) * std::tgamma(k + 1.0));
            const double psi = std::exp(-x * x / wn_sq) * hk / norm;
            sum += psi * std::sqrt(2.0 / pi) / w0 * std::exp(-2.0 * (x - d) * (x - d) / (w0 * w0));
        }
        sum *= h;
        CAPTURE(k);
        CHECK(std::abs(proj.coefficient(k) - sum) <= 1e-10 * std::abs(proj.coefficient(0)));
    }
}

TEST_CASE("scaled Laguerre recurrence") {
    for (int p = 0; p <= 20; ++p) {
        for (int l : {0, 1, 4}) {
            const double q = 0.7, c = 0.9;
            const double direct = std::pow(q, p) * laguerre(p, l, c / q);
            CHECK(scaled_laguerre(p, l, q, c).value() == doctest::Approx(direct).epsilon(1e-11));
        }
    }
    // q -> 0 stays finite: y_p -> (-c)^p / p!.
    CHECK(scaled_laguerre(5, 2, 0.0, 1.5).value() == doctest::Approx(-std::pow(1.5, 5) / 120.0).epsilon(1e-14));
}

TEST_CASE("quadrature oracle examples") {
    const auto m100 = mode_data(g, {1, 0, 0});
    CHECK(rel(overlap_quadrature_oracle(g, m100, {0.02, 0.0}).value, 0.97880880232943734) < 1e-10);
    const auto rep = overlap_quadrature_report(g, mode_data(g, {1, 0, 2}), {0.02, 0.0});
    CHECK(std::abs(rep.value) < 1e-10 * rep.abs_integral);
    const double d = 0.2;
    const double s = 2.0 * m100.waist_sq + 0.0004;
    CHECK(rel(overlap_quadrature_oracle(g, m100, {0.02, d}).value, 2.0 * m100.waist_sq / s * std::exp(-2.0 * d * d / s)) <
          1e-10);
}

TEST_CASE("fast path against the multiprecision oracle (sample)") {
    for (auto [idx, k] : {std::pair{ModeIndex{1, 2, 1}, 1.5}, std::pair{ModeIndex{3, 10, 7}, 3.0},
                          std::pair{ModeIndex{5, 30, 20}, 0.5}}) {
        const BeamSpec b{0.02, 0.02 * k};
        const auto m = mode_data(g, idx);
        const auto oracle = overlap_quadrature_oracle(g, m, b);
        const auto fast = overlap_offaxis(m, b);
        CAPTURE(idx.n);
        CAPTURE(idx.p);
        CAPTURE(idx.l);
        CHECK(rel(fast.value, oracle.value) < 1e-8);
        CHECK(rel(fast.normalized, oracle.normalized) < 1e-8);
    }
}

TEST_CASE("overflow is reported, not returned") {
    bool threw = false;
    try {
        const auto w = overlap_offaxis(mode_data(g, {1, 3000, 3000}), {0.02, 0.26});
        CHECK(std::isfinite(w.value));
    } catch (const RecurrenceInstability&) {
        threw = true;
    }
    CHECK(threw);
}
