#include "mirnoise/oracles.hpp"

#include <algorithm>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mirnoise/errors.hpp"

namespace mirnoise {

namespace {

using mp = boost::multiprecision::mpfr_float;

constexpr int kNodes = 16;

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
template <class T>
void gauss_legendre(int n, std::vector<T>& x, std::vector<T>& w, const T& tol) {
    x.assign(static_cast<std::size_t>(n), T(0));
    w.assign(static_cast<std::size_t>(n), T(0));
    const T pi = 4 * atan(T(1));
    for (int i = 0; i < n; ++i) {
        T z = cos(pi * (i + T(0.75)) / (n + T(0.5)));
        T dp = 0;
        for (int it = 0; it < 100; ++it) {
            T p0 = 1, p1 = z;
            for (int k = 2; k <= n; ++k) {
                T p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            const T dz = p1 / dp;
            z -= dz;
            if (abs(dz) < tol) break;
        }
        T p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k) {
            T p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        x[static_cast<std::size_t>(i)] = z;
        w[static_cast<std::size_t>(i)] = 2 / ((1 - z * z) * dp * dp);
    }
}

template <class T>
T laguerre_ref(int p, int l, const T& x) {
    T prev = 1;
    if (p == 0) return prev;
    T curr = 1 + l - x;
    for (int k = 1; k < p; ++k) {
        T next = ((2 * k + l + 1 - x) * curr - (k + l) * prev) / (k + 1);
        prev = curr;
        curr = next;
    }
    return curr;
}

/// Radial part e^{-t/2} t^{l/2} L_p^l(t), t = 2 r^2 / w^2, squared.
double radial_sq(int p, int l, double r, double wn_sq) {
    const long double t = 2.0L * r * r / wn_sq;
    const long double lag = laguerre_ref<long double>(p, l, t);
    return static_cast<double>(std::exp(-t) * std::pow(t, static_cast<long double>(l)) * lag * lag);
}

long double mass_integral(const PlanoConvexGeometry& geometry, const ModeIndex& index, double r_max) {
    index.validate();
    const double wn_sq = acoustic_waist_sq(geometry, index.n);
    // Trapezoid on a full period integrates cos^2(l phi) exactly once N > 2l.
    const int n_phi = 4 * (index.l + 1);
    double angular = 0.0;
    for (int j = 0; j < n_phi; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / n_phi;
        const double a = index.parity == Parity::cosine ? std::cos(index.l * phi) : std::sin(index.l * phi);
        angular += a * a;
    }
    angular *= 2.0 * std::numbers::pi / n_phi;

    std::vector<long double> x, w;
    gauss_legendre<long double>(kNodes, x, w, 1e-18L);

    auto radial = [&](int panels) {
        long double sum = 0.0L;
        const double h = r_max / panels;
        for (int k = 0; k < panels; ++k) {
            const double mid = (k + 0.5) * h;
            for (int i = 0; i < kNodes; ++i) {
                const double r = mid + 0.5 * h * static_cast<double>(x[static_cast<std::size_t>(i)]);
                sum += w[static_cast<std::size_t>(i)] * radial_sq(index.p, index.l, r, wn_sq) * r;
            }
        }
        return sum * 0.5L * h;
    };

    int panels = 8;
    long double prev = radial(panels);
    for (int level = 0; level < 14; ++level) {
        panels *= 2;
        const long double curr = radial(panels);
        if (std::abs(curr - prev) <= 1e-12L * std::abs(curr)) {
            return geometry.material().density * geometry.thickness() / 2.0L * angular * curr;
        }
        prev = curr;
    }
    throw ConvergenceFailure("effective-mass quadrature did not converge");
}

struct MpRule {
    int digits = 0;
    std::vector<mp> x, w;
};

const MpRule& mp_rule(int digits) {
    static MpRule rule;
    if (rule.digits != digits) {
        rule.digits = digits;
        gauss_legendre<mp>(kNodes, rule.x, rule.w, mp(pow(mp(10), -(digits - 5))));
    }
    return rule;
}

struct LevelResult {
    mp value;
    mp abs_value;
};

/// One tensor-product pass: trapezoid in phi, composite Gauss-Legendre in r.
LevelResult integrate_level(const ModeData& mode, const BeamSpec& beam, double r_max, int n_phi, int panels,
                            int digits) {
    const MpRule& rule = mp_rule(digits);
    const auto& idx = mode.index;
    const mp pi = 4 * atan(mp(1));
    const mp wn_sq = mode.waist_sq;
    const mp w0_sq = mp(beam.waist) * mp(beam.waist);
    const mp d = beam.offset;
    const mp peak = 2 / (pi * w0_sq);
    const bool even = idx.parity == Parity::cosine;

    // Cosine-parity integrands are even in phi: half period with end weights 1/2.
    const int n_ang = even ? n_phi / 2 + 1 : n_phi;
    std::vector<mp> cos_phi(static_cast<std::size_t>(n_ang)), ang(static_cast<std::size_t>(n_ang)),
        wphi(static_cast<std::size_t>(n_ang));
    for (int j = 0; j < n_ang; ++j) {
        const mp phi = 2 * pi * j / n_phi;
        cos_phi[static_cast<std::size_t>(j)] = cos(phi);
        ang[static_cast<std::size_t>(j)] = even ? mp(cos(idx.l * phi)) : mp(sin(idx.l * phi));
        mp wt = 2 * pi / n_phi;
        if (even) wt *= (j == 0 || j == n_ang - 1) ? 1 : 2;
        wphi[static_cast<std::size_t>(j)] = wt;
    }

    LevelResult out{mp(0), mp(0)};
    const mp h = mp(r_max) / panels;
    for (int k = 0; k < panels; ++k) {
        const mp mid = (k + mp(0.5)) * h;
        for (int i = 0; i < kNodes; ++i) {
            const mp r = mid + h / 2 * rule.x[static_cast<std::size_t>(i)];
            const mp t = 2 * r * r / wn_sq;
            mp radial = exp(-t / 2) * laguerre_ref<mp>(idx.p, idx.l, t);
            if (idx.l > 0) radial *= pow(sqrt(t), idx.l);
            const mp base = peak * exp(-2 * (r * r + d * d) / w0_sq);
            const mp z = 4 * r * d / w0_sq;
            mp sum = 0, abs_sum = 0;
            for (int j = 0; j < n_ang; ++j) {
                const mp f = ang[static_cast<std::size_t>(j)] * exp(z * cos_phi[static_cast<std::size_t>(j)]) *
                             wphi[static_cast<std::size_t>(j)];
                sum += f;
                abs_sum += abs(f);
            }
            const mp wr = rule.w[static_cast<std::size_t>(i)] * h / 2 * r * base;
            out.value += wr * radial * sum;
            out.abs_value += abs(wr * radial) * abs_sum;
        }
    }
    return out;
}

}  // namespace

long double effective_mass_oracle(const PlanoConvexGeometry& geometry, const ModeIndex& index) {
    return mass_integral(geometry, index, 0.5 * geometry.diameter());
}

long double effective_mass_oracle_plane(const PlanoConvexGeometry& geometry, const ModeIndex& index) {
    // The Gaussian factor exp(-2r^2/w^2) is below 1e-300 relative past this radius.
    const double wn = std::sqrt(acoustic_waist_sq(geometry, index.n));
    const double reach = wn * (std::sqrt(2.0 * index.p + index.l + 1.0) + 20.0);
    return mass_integral(geometry, index, reach);
}

QuadratureReport overlap_quadrature_report(const PlanoConvexGeometry& geometry, const ModeData& mode,
                                           const BeamSpec& beam) {
    const auto& idx = mode.index;
    const double w0 = beam.waist;
    const double d = beam.offset;
    const double r_max = std::min(0.5 * geometry.diameter(),
                                  d + 8.0 * w0 + 4.0 * mode.waist * std::sqrt(idx.transverse_order() + 1.0));
    const double z_max = 4.0 * r_max * d / (w0 * w0);
    int base_phi = 64;
    while (base_phi < idx.l + z_max + 10.0 * std::sqrt(z_max) + 32.0) base_phi *= 2;
    const double feature = std::min(w0, mode.waist / std::sqrt(idx.transverse_order() + 1.0));
    const int base_panels = std::max(8, static_cast<int>(std::ceil(2.0 * r_max / feature)));

    const auto saved_digits = mp::default_precision();
    int digits = 40;
    QuadratureReport rep;
    for (int attempt = 0; attempt < 6; ++attempt) {
        mp::default_precision(static_cast<unsigned>(digits));
        LevelResult prev = integrate_level(mode, beam, r_max, base_phi, base_panels, digits);
        bool converged = false;
        LevelResult curr = prev;
        int level = 1;
        for (; level <= 5; ++level) {
            curr = integrate_level(mode, beam, r_max, base_phi << level, base_panels << level, digits);
            const mp diff = abs(curr.value - prev.value);
            const mp resolution = curr.abs_value * pow(mp(10), -(digits - 8));
            if (diff <= mp(1e-10) * abs(curr.value) || diff <= resolution) {
                converged = true;
                break;
            }
            prev = curr;
        }
        if (!converged) {
            mp::default_precision(saved_digits);
            throw ConvergenceFailure("overlap quadrature did not converge for mode (n=" + std::to_string(idx.n) +
                                     ", p=" + std::to_string(idx.p) + ", l=" + std::to_string(idx.l) + ")");
        }
        rep.value = static_cast<double>(curr.value);
        rep.abs_integral = static_cast<double>(curr.abs_value);
        rep.digits = digits;
        rep.levels = level;
        // Digits lost to cancellation between lobes; keep 20 significant digits beyond them.
        const double lost = curr.value == 0 ? 1e9
                                            : static_cast<double>(log10(curr.abs_value / abs(curr.value)));
        const int needed = static_cast<int>(std::ceil(lost)) + 25;
        if (needed <= digits || digits >= 240) break;
        digits = std::min(240, needed);
    }
    mp::default_precision(saved_digits);
    return rep;
}

OverlapWeight overlap_quadrature_oracle(const PlanoConvexGeometry& geometry, const ModeData& mode,
                                        const BeamSpec& beam) {
    const QuadratureReport rep = overlap_quadrature_report(geometry, mode, beam);
    const long double mass = effective_mass_oracle_plane(geometry, mode.index);
    const double norm_sq =
        static_cast<double>(2.0L * mass / (geometry.material().density * geometry.thickness()));
    return {mode.index, rep.value, rep.value / std::sqrt(norm_sq)};
}

}  // namespace mirnoise
