#include "mirnoise/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mirnoise/errors.hpp"

namespace mirnoise {

namespace {

constexpr double kRescaleHigh = 1e100;
constexpr double kRescaleLow = 1e-100;

}  // namespace

long double factorial_ratio(int p, int l) {
    long double ratio = 1.0L;
    for (int j = 1; j <= l; ++j) {
        ratio *= static_cast<long double>(p + j);
    }
    return ratio;
}

double log_factorial_ratio(int p, int l) {
    return std::lgamma(static_cast<double>(p + l) + 1.0) - std::lgamma(static_cast<double>(p) + 1.0);
}

double laguerre(int p, int l, double x) {
    double prev = 1.0;
    if (p == 0) return prev;
    double curr = 1.0 + l - x;
    for (int k = 1; k < p; ++k) {
        const double next = ((2.0 * k + l + 1.0 - x) * curr - (k + l) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

ScaledValue scaled_laguerre(int p, int l, double q, double c) {
    double prev = 1.0;
    double curr = 1.0;
    double log_scale = 0.0;
    if (p == 0) return {1.0, 0.0};
    curr = (l + 1.0) * q - c;
    const double q2 = q * q;
    for (int k = 1; k < p; ++k) {
        const double next = (((2.0 * k + l + 1.0) * q - c) * curr - (k + l) * q2 * prev) / (k + 1.0);
        prev = curr;
        curr = next;
        const double mag = std::max(std::abs(prev), std::abs(curr));
        if (!std::isfinite(mag)) {
            throw RecurrenceInstability("Laguerre recurrence overflowed at order " + std::to_string(k + 1));
        }
        if (mag > kRescaleHigh || (mag < kRescaleLow && mag > 0.0)) {
            const double s = std::log(mag);
            prev /= mag;
            curr /= mag;
            log_scale += s;
        }
    }
    return {curr, log_scale};
}

HermiteProjection::HermiteProjection(double mode_waist_sq, double beam_waist, double offset) {
    const double wn = std::sqrt(mode_waist_sq);
    const double beta = mode_waist_sq / (beam_waist * beam_waist);
    const double delta = std::numbers::sqrt2 * offset / wn;
    const double alpha = 0.5 + beta;
    a_ = (0.5 - beta) / alpha;
    b_ = 2.0 * beta * delta / alpha;
    log_prefactor_ = 0.5 * std::log(2.0 / std::numbers::pi) - std::log(beam_waist) +
                     0.5 * std::log(wn / std::numbers::sqrt2) + 0.5 * std::log(std::numbers::pi / alpha) +
                     beta * beta * delta * delta / alpha - beta * delta * delta -
                     0.25 * std::log(std::numbers::pi);
    total_weight_ = 1.0 / (std::sqrt(std::numbers::pi) * beam_waist);
    coeffs_.push_back(std::exp(log_prefactor_));
}

void HermiteProjection::extend_to(int k) {
    while (static_cast<int>(coeffs_.size()) <= k) {
        const int j = static_cast<int>(coeffs_.size()) - 1;  // current order held in m_curr_
        const double next = b_ / std::sqrt(2.0 * (j + 1)) * m_curr_ +
                            (j > 0 ? a_ * std::sqrt(static_cast<double>(j) / (j + 1)) * m_prev_ : 0.0);
        m_prev_ = m_curr_;
        m_curr_ = next;
        const double mag = std::max(std::abs(m_prev_), std::abs(m_curr_));
        if (!std::isfinite(mag)) {
            throw RecurrenceInstability("Hermite projection recurrence overflowed at order " +
                                        std::to_string(j + 1));
        }
        if (mag > kRescaleHigh || (mag < kRescaleLow && mag > 0.0)) {
            m_prev_ /= mag;
            m_curr_ /= mag;
            log_scale_ += std::log(mag);
        }
        coeffs_.push_back(m_curr_ == 0.0 ? 0.0 : m_curr_ * std::exp(log_prefactor_ + log_scale_));
    }
}

double HermiteProjection::coefficient(int k) {
    extend_to(k);
    return coeffs_[static_cast<std::size_t>(k)];
}

double HermiteProjection::coefficient_sq(int k) {
    const double c = coefficient(k);
    return c * c;
}

}  // namespace mirnoise
