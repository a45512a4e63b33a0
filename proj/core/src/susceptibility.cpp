#include "mirnoise/susceptibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mirnoise {

namespace {

using cplx = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Static shell weights (sum of overlap^2 / M over the cosine modes of one shell, 1/kg)
/// for a fixed longitudinal order n, with the bounded weight of everything not yet visited.
class LongitudinalFamily {
public:
    LongitudinalFamily(const PlanoConvexGeometry& geometry, const BeamSpec& beam, int n, int p_max, int l_max)
        : geometry_(geometry),
          beam_(beam),
          n_(n),
          p_max_(p_max),
          l_max_(l_max),
          centered_(beam.offset == 0.0),
          waist_sq_(acoustic_waist_sq(geometry, n)),
          mass_scale_(2.0 / (geometry.material().density * geometry.thickness())),
          shells_(waist_sq_, beam) {
        total_ = shells_.total_weight() * mass_scale_;
        remaining_ = total_;
        if (centered_) {
            const double two_wn_sq = 2.0 * waist_sq_;
            const double w0_sq = beam.waist * beam.waist;
            q_sq_ = std::pow((two_wn_sq - w0_sq) / (two_wn_sq + w0_sq), 2);
            const double ov0 = two_wn_sq / (two_wn_sq + w0_sq);
            first_weight_ = ov0 * ov0 / (std::numbers::pi / 4.0 * geometry.material().density *
                                         geometry.thickness() * waist_sq_);
        }
    }

    int step() const { return centered_ ? 2 : 1; }

    struct Shell {
        double weight = 0.0;
        std::size_t modes = 0;
    };

    /// Visits shell `order`; returns zero modes once the caps exclude the whole shell.
    Shell visit(int order) {
        Shell s;
        if (centered_) {
            const int p = order / 2;
            if (p > p_max_) return s;
            s.weight = first_weight_ * std::pow(q_sq_, p);
            s.modes = 1;
            remaining_ = q_sq_ < 1.0 ? s.weight * q_sq_ / (1.0 - q_sq_) : kInf;
            last_order_ = order;
            return s;
        }
        const bool complete = order / 2 <= p_max_ && order <= l_max_;
        if (complete) {
            s.weight = shells_.shell_weight(order) * mass_scale_;
            s.modes = static_cast<std::size_t>(order / 2 + 1);
        } else {
            if (first_partial_order_ < 0) first_partial_order_ = order;
            for (int l = order % 2; l <= std::min(order, l_max_); l += 2) {
                const int p = (order - l) / 2;
                if (p > p_max_) continue;
                const ModeData m = mode_data(geometry_, {n_, p, l, Parity::cosine});
                const double c = overlap_offaxis(m, beam_).normalized;
                s.weight += c * c * mass_scale_;
                ++s.modes;
            }
            if (s.modes == 0) return s;
        }
        visited_ += s.weight;
        // Parseval: the weights of all shells add up to the integral of v^2.
        const double floor = 4.0 * std::numeric_limits<double>::epsilon() * (order + 1.0) * total_;
        remaining_ = std::max(total_ - visited_, 0.0) + floor;
        last_order_ = order;
        return s;
    }

    /// Sum of the static weights not yet visited (upper bound).
    double remaining() const { return remaining_; }

    /// Lowest transverse order that may hold unvisited weight.
    int lowest_unvisited_order() const {
        const int next = last_order_ + step();
        return first_partial_order_ >= 0 ? std::min(first_partial_order_, next) : next;
    }

    double waist_sq() const { return waist_sq_; }
    double mass_scale() const { return mass_scale_; }
    bool centered() const { return centered_; }

private:
    const PlanoConvexGeometry& geometry_;
    BeamSpec beam_;
    int n_;
    int p_max_;
    int l_max_;
    bool centered_;
    double waist_sq_;
    double mass_scale_;
    ShellOverlaps shells_;
    double total_ = 0.0;
    double visited_ = 0.0;
    double remaining_ = 0.0;
    double q_sq_ = 0.0;
    double first_weight_ = 0.0;
    int last_order_ = -1;
    int first_partial_order_ = -1;
};

/// Bracket for the static sum over all longitudinal orders above n_last.
///
/// Per order n the static weights add up to W = 2 / (pi rho h0 w0^2) and the transverse order
/// N + 1 has mean m_n = beta_n + 1/(4 beta_n) + d^2/w_n^2 (beta_n = w_n^2/w0^2). Since
/// 1/(n^2 + a n (N+1)) is convex in N, Jensen gives a lower bound; N >= 0 gives the upper one.
struct LongitudinalTail {
    double lower = 0.0;
    double upper = 0.0;
};

LongitudinalTail longitudinal_tail(const PlanoConvexGeometry& geometry, const BeamSpec& beam, int n_last) {
    const double om = fundamental_frequency(geometry);
    const double w0_sq = beam.waist * beam.waist;
    const double weight =
        2.0 / (std::numbers::pi * geometry.material().density * geometry.thickness() * w0_sq) / (om * om);
    const double a = transverse_splitting(geometry);
    const double w1_sq = acoustic_waist_sq(geometry, 1);
    const double beta1 = w1_sq / w0_sq;
    const double c2 = 1.0 + a * (1.0 / (4.0 * beta1) + beam.offset * beam.offset / w1_sq);
    const double c0 = a * beta1;

    constexpr int kExplicit = 4096;
    LongitudinalTail t;
    for (int k = 1; k <= kExplicit; ++k) {
        const double n = n_last + k;
        t.upper += 1.0 / (n * n + a * n);
        t.lower += 1.0 / (c2 * n * n + c0);
    }
    // Remaining orders: midpoint and right-endpoint integral bounds for convex decreasing terms.
    const double x_up = n_last + kExplicit + 0.5;
    const double x_lo = n_last + kExplicit + 1.0;
    t.upper += std::log1p(a / x_up) / a;
    t.lower += std::atan(std::sqrt(c0 / c2) / x_lo) / std::sqrt(c2 * c0);
    t.upper *= weight;
    t.lower *= weight;
    return t;
}

std::string budget_message(const char* reason, const SusceptibilityResult& r) {
    std::ostringstream os;
    os << reason << " after " << r.modes_used << " modes (n <= " << r.longitudinal_orders
       << "); relative tail bound " << r.tail_bound;
    return os.str();
}

}  // namespace

LossAngle::LossAngle(double constant) : constant_(constant) {
    if (!(constant >= 0.0 && constant < 1.0)) throw InvalidSpec("loss angle must lie in [0, 1)");
}

LossAngle LossAngle::tabulated(std::vector<std::pair<double, double>> omega_phi) {
    if (omega_phi.empty()) throw InvalidSpec("loss-angle table is empty");
    std::sort(omega_phi.begin(), omega_phi.end());
    for (const auto& [om, phi] : omega_phi) {
        if (!(om >= 0.0) || !(phi >= 0.0 && phi < 1.0)) throw InvalidSpec("invalid loss-angle table entry");
    }
    LossAngle loss(omega_phi.front().second);
    loss.table_ = std::move(omega_phi);
    return loss;
}

double LossAngle::operator()(double omega) const {
    if (table_.empty()) return constant_;
    if (omega <= table_.front().first) return table_.front().second;
    if (omega >= table_.back().first) return table_.back().second;
    const auto hi = std::upper_bound(table_.begin(), table_.end(), omega,
                                     [](double x, const auto& e) { return x < e.first; });
    const auto lo = hi - 1;
    const double t = (omega - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
}

void TruncationPolicy::validate() const {
    if (max_modes < 1) throw InvalidSpec("mode budget must be at least 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidSpec("tail tolerance must lie in (0, 1)");
    if (n_max < 1 || p_max < 0 || l_max < 0) throw InvalidSpec("invalid index caps");
}

TruncationPolicy TruncationPolicy::explicit_indices(int n_max, int p_max, int l_max) {
    TruncationPolicy p;
    p.n_max = n_max;
    p.p_max = p_max;
    p.l_max = l_max;
    p.longitudinal_tail_estimate = false;
    return p;
}

cplx chi_mode(const ModeData& mode, double omega, double loss_angle) {
    const long double denom_re = mode.frequency_sq - static_cast<long double>(omega) * omega;
    const long double denom_im = -static_cast<long double>(mode.frequency_sq) * loss_angle;
    const std::complex<long double> z = mode.effective_mass * std::complex<long double>(denom_re, denom_im);
    const std::complex<long double> chi = 1.0L / z;
    return {static_cast<double>(chi.real()), static_cast<double>(chi.imag())};
}

SusceptibilityResult chi_eff(const PlanoConvexGeometry& geometry, const BeamSpec& beam, double omega,
                             const LossAngle& loss, const TruncationPolicy& policy) {
    policy.validate();
    beam.validate(geometry);
    if (!(omega >= 0.0)) throw DomainError("frequency must be >= 0");

    const double phi = loss(omega);
    const double omega_sq = omega * omega;
    const cplx damping(1.0, -phi);
    const double om_m = fundamental_frequency(geometry);
    const double split = transverse_splitting(geometry);

    SusceptibilityResult r;
    double shell_tails = 0.0;
    bool assessed = false;  // a longitudinal tail bound has been evaluated

    auto finish_partial = [&](int n, double pending_tail) {
        const LongitudinalTail lt = longitudinal_tail(geometry, beam, n);
        const double rho = omega_sq / (om_m * om_m * ((n + 1.0) * (n + 1.0) + split * (n + 1.0)));
        const double tail = rho < 1.0 ? lt.upper / (1.0 - rho) : kInf;
        r.value = r.enumerated;
        r.tail_estimate = 0.0;
        r.tail_bound = (shell_tails + pending_tail + tail) / std::abs(r.value);
        r.converged = false;
    };

    for (int n = 1; n <= policy.n_max; ++n) {
        LongitudinalFamily family(geometry, beam, n, policy.p_max, policy.l_max);
        cplx sum_n = 0.0;
        double abs_n = 0.0;
        double tail_n = kInf;
        for (int order = 0;; order += family.step()) {
            const auto shell = family.visit(order);
            if (shell.modes == 0) break;
            if (r.modes_used + shell.modes > policy.max_modes) {
                r.per_n.push_back(sum_n);
                r.enumerated += sum_n;
                r.longitudinal_orders = n;
                finish_partial(n, tail_n);
                throw BudgetExceeded(budget_message("mode budget exhausted", r), r);
            }
            const cplx term = shell.weight / (eigenfrequency_sq(geometry, n, order) * damping - omega_sq);
            sum_n += term;
            abs_n += std::abs(term);
            r.modes_used += shell.modes;

            const double next_sq = eigenfrequency_sq(geometry, n, family.lowest_unvisited_order());
            tail_n = next_sq > omega_sq ? family.remaining() / (next_sq - omega_sq) : kInf;
            if (tail_n <= 0.25 * policy.epsilon * abs_n) break;
        }
        r.per_n.push_back(sum_n);
        r.enumerated += sum_n;
        r.longitudinal_orders = n;
        shell_tails += tail_n;

        const double next_n = n + 1.0;
        const double rho = omega_sq / (om_m * om_m * (next_n * next_n + split * next_n));
        if (rho > 0.5) continue;
        const LongitudinalTail lt = longitudinal_tail(geometry, beam, n);
        cplx estimate = 0.0;
        double error = 0.0;
        if (policy.longitudinal_tail_estimate) {
            estimate = 0.5 * (lt.upper + lt.lower) / damping;
            error = 0.5 * (lt.upper - lt.lower) / std::abs(damping) + lt.upper * rho / (1.0 - rho);
        } else {
            error = lt.upper / (1.0 - rho);
        }
        assessed = true;
        const cplx value = r.enumerated + estimate;
        const double total = shell_tails + error;
        r.value = value;
        r.tail_estimate = estimate;
        r.tail_bound = total / std::abs(value);
        if (total <= policy.epsilon * std::abs(value)) {
            r.converged = true;
            return r;
        }
    }
    if (!assessed) finish_partial(r.longitudinal_orders, 0.0);
    throw BudgetExceeded(budget_message("tail bound above tolerance", r), r);
}

std::size_t enumerate_static_terms(const PlanoConvexGeometry& geometry, const BeamSpec& beam,
                                   double shell_tolerance, int n_max,
                                   const std::function<bool(const ModeTerm&)>& visit) {
    beam.validate(geometry);
    std::size_t count = 0;
    const double rho_h0 = geometry.material().density * geometry.thickness();
    for (int n = 1; n <= n_max; ++n) {
        LongitudinalFamily family(geometry, beam, n, std::numeric_limits<int>::max() / 4,
                                  std::numeric_limits<int>::max() / 4);
        double sum_n = 0.0;
        for (int order = 0;; order += family.step()) {
            const double omega_sq = eigenfrequency_sq(geometry, n, order);
            if (family.centered()) {
                const auto shell = family.visit(order);
                ++count;
                sum_n += shell.weight / omega_sq;
                if (!visit({{n, order / 2, 0, Parity::cosine}, shell.weight / omega_sq})) return count;
            } else {
                family.visit(order);
                for (int l = order % 2; l <= order; l += 2) {
                    const ModeIndex idx{n, (order - l) / 2, l, Parity::cosine};
                    const double c = overlap_offaxis(mode_data(geometry, idx), beam).normalized;
                    const double term = c * c * 2.0 / rho_h0 / omega_sq;
                    ++count;
                    sum_n += term;
                    if (!visit({idx, term})) return count;
                }
            }
            const double next_sq = eigenfrequency_sq(geometry, n, family.lowest_unvisited_order());
            if (family.remaining() / next_sq <= shell_tolerance * sum_n) break;
        }
    }
    return count;
}

double thermal_force_spectrum(cplx chi, double omega, double temperature) {
    if (!(omega > 0.0)) throw DomainError("force spectrum is undefined at zero frequency");
    return -(2.0 * kBoltzmann * temperature / omega) * (1.0 / chi).imag();
}

SpectrumPoint displacement_noise_spectrum(const PlanoConvexGeometry& geometry, const BeamSpec& beam,
                                          double omega, double temperature, const LossAngle& loss,
                                          const TruncationPolicy& policy) {
    if (!(omega > 0.0)) throw DomainError("displacement spectrum is undefined at zero frequency");
    if (!(temperature >= 0.0)) throw InvalidSpec("temperature must be >= 0");
    const SusceptibilityResult dynamic = chi_eff(geometry, beam, omega, loss, policy);
    const SusceptibilityResult stat = chi_eff(geometry, beam, 0.0, LossAngle(0.0), policy);

    SpectrumPoint s;
    s.omega = omega;
    s.temperature = temperature;
    s.chi = dynamic.value;
    s.chi_static = stat.value.real();
    s.force_psd = thermal_force_spectrum(dynamic.value, omega, temperature);
    s.displacement_psd = 2.0 * kBoltzmann * temperature / omega * dynamic.value.imag();
    s.displacement_psd_approx = 2.0 * kBoltzmann * temperature * loss(omega) / omega * s.chi_static;
    s.tail_bound = std::max(dynamic.tail_bound, stat.tail_bound);
    return s;
}

OpticalMassApprox optical_mass_approx(const PlanoConvexGeometry& geometry, const BeamSpec& beam) {
    if (beam.offset != 0.0) throw InvalidSpec("the optical-mass estimate assumes a centered beam");
    if (!(beam.waist > 0.0)) throw InvalidSpec("beam waist must be positive");
    OpticalMassApprox a;
    a.optical_mass = 12.0 / (std::numbers::pi * std::numbers::pi) *
                     (std::numbers::pi / 4.0 * geometry.material().density * geometry.thickness() *
                      beam.waist * beam.waist);
    a.fundamental_frequency = fundamental_frequency(geometry);
    a.chi = 1.0 / (a.optical_mass * a.fundamental_frequency * a.fundamental_frequency);
    return a;
}

}  // namespace mirnoise
