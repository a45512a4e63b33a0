#pragma once

#include <cmath>
#include <vector>

namespace mirnoise {

/// (p + l)! / p! accumulated multiplicatively in extended precision.
/// Finite up to p + l of a few hundred; never forms the two factorials separately.
long double factorial_ratio(int p, int l);

/// log((p + l)! / p!).
double log_factorial_ratio(int p, int l);

/// Generalized Laguerre polynomial L_p^l(x) by the three-term recurrence in p.
double laguerre(int p, int l, double x);

/// Value stored as mantissa * exp(log_scale) so that very large or very small
/// magnitudes survive a recurrence.
struct ScaledValue {
    double mantissa = 0.0;
    double log_scale = 0.0;

    double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
    double value() const { return mantissa == 0.0 ? 0.0 : mantissa * std::exp(log_scale); }
};

/// y_p = q^p L_p^l(c / q), evaluated by
///   (p+1) y_{p+1} = ((2p + l + 1) q - c) y_p - (p + l) q^2 y_{p-1},
/// which stays well defined as q -> 0.
ScaledValue scaled_laguerre(int p, int l, double q, double c);

/// Overlaps of a displaced 1D Gaussian with the normalized Hermite-Gauss functions
///   psi_k(x) = exp(-x^2/w^2) H_k(sqrt(2) x / w) / sqrt((w/sqrt(2)) sqrt(pi) 2^k k!).
///
/// The Gaussian is g(x) = sqrt(2/pi)/w0 * exp(-2 (x - d)^2 / w0^2) (unit area). Coefficients are
/// produced in increasing order by the two-term recurrence
///   e_{k+1} = B / sqrt(2(k+1)) e_k + A sqrt(k/(k+1)) e_{k-1}
/// with periodic rescaling, so the sequence can be extended on demand.
class HermiteProjection {
public:
    HermiteProjection(double mode_waist_sq, double beam_waist, double offset);

    /// Coefficient c_k = <psi_k, g>; extends the sequence as needed.
    double coefficient(int k);
    /// c_k^2; extends the sequence as needed.
    double coefficient_sq(int k);
    /// Sum over all k of c_k^2, i.e. the integral of g^2 (1/m).
    double total_weight() const { return total_weight_; }

private:
    void extend_to(int k);

    double a_ = 0.0;
    double b_ = 0.0;
    double log_prefactor_ = 0.0;
    double total_weight_ = 0.0;
    double m_prev_ = 0.0;
    double m_curr_ = 1.0;
    double log_scale_ = 0.0;
    std::vector<double> coeffs_;
};

}  // namespace mirnoise
