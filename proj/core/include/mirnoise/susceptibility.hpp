#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mirnoise/acoustic_modes.hpp"
#include "mirnoise/beam_overlap.hpp"
#include "mirnoise/errors.hpp"
#include "mirnoise/material_geometry.hpp"

namespace mirnoise {

/// Boltzmann constant (J/K), exact SI value.
inline constexpr double kBoltzmann = 1.380649e-23;

/// Loss angle as a function of the analysis frequency. Constant by default; a table is
/// interpolated linearly in Omega and clamped at both ends.
class LossAngle {
public:
    LossAngle(double constant = 1e-6);  // NOLINT(google-explicit-constructor)
    static LossAngle tabulated(std::vector<std::pair<double, double>> omega_phi);

    double operator()(double omega) const;
    bool is_constant() const { return table_.empty(); }

private:
    double constant_;
    std::vector<std::pair<double, double>> table_;
};

/// Controls how far the modal sum is carried.
struct TruncationPolicy {
    std::size_t max_modes = 1'000'000;  ///< budget of enumerated modes
    double epsilon = 1e-4;              ///< relative tolerance on the omitted contribution
    int n_max = 200;
    int p_max = 1'000'000;
    int l_max = 1'000'000;
    /// Add a bracketed closed-form estimate for longitudinal orders beyond the last enumerated one.
    bool longitudinal_tail_estimate = true;

    void validate() const;

    /// Exactly the modes n <= n_max, p <= p_max, l <= l_max, without tail estimate.
    static TruncationPolicy explicit_indices(int n_max, int p_max, int l_max);
};

struct SusceptibilityResult {
    std::complex<double> value;       ///< enumerated sum plus longitudinal tail estimate (m/N)
    std::complex<double> enumerated;  ///< plain sum over enumerated modes
    std::complex<double> tail_estimate;
    std::size_t modes_used = 0;
    int longitudinal_orders = 0;  ///< highest n enumerated
    /// Upper bound on |value - exact sum| relative to |value|.
    double tail_bound = 0.0;
    std::vector<std::complex<double>> per_n;  ///< partial sums for each n
    bool converged = false;
};

/// Raised when the policy's budget is reached before the tail bound drops below epsilon.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, SusceptibilityResult partial)
        : Error(what), partial_(std::move(partial)) {}
    const SusceptibilityResult& partial() const { return partial_; }

private:
    SusceptibilityResult partial_;
};

/// 1 / (M (Omega_n^2 - Omega^2 - i Omega_n^2 Phi)).
std::complex<double> chi_mode(const ModeData& mode, double omega, double loss_angle);

/// Overlap-weighted modal sum. Modes are visited with n outermost and, for each n, in shells of
/// increasing 2p + l; a centered beam only visits l = 0. Throws BudgetExceeded (carrying the
/// partial sum) if the tail bound cannot be brought below epsilon.
SusceptibilityResult chi_eff(const PlanoConvexGeometry& geometry, const BeamSpec& beam, double omega,
                             const LossAngle& loss, const TruncationPolicy& policy = {});

/// One term of the canonical enumeration at zero frequency.
struct ModeTerm {
    ModeIndex index;
    double value = 0.0;  ///< overlap^2 / (M Omega^2)
};

/// Walks the canonical zero-frequency enumeration mode by mode. For each n the shells stop once
/// the bounded remainder of that n falls below shell_tolerance times its partial sum.
/// The callback returns false to stop early. Returns the number of modes visited.
std::size_t enumerate_static_terms(const PlanoConvexGeometry& geometry, const BeamSpec& beam,
                                   double shell_tolerance, int n_max,
                                   const std::function<bool(const ModeTerm&)>& visit);

/// S_T = -(2 k_B T / Omega) Im(1 / chi_eff). Throws DomainError for Omega <= 0.
double thermal_force_spectrum(std::complex<double> chi, double omega, double temperature);

struct SpectrumPoint {
    double omega = 0.0;
    double temperature = 0.0;
    double force_psd = 0.0;                ///< S_T (N^2 s)
    double displacement_psd = 0.0;         ///< S_u = (2 k_B T / Omega) Im chi_eff[Omega] (m^2 s)
    double displacement_psd_approx = 0.0;  ///< 2 k_B T Phi / Omega chi_eff[0]
    std::complex<double> chi;              ///< chi_eff[Omega]
    double chi_static = 0.0;               ///< chi_eff[0]
    double tail_bound = 0.0;
    double boltzmann = kBoltzmann;
};

/// Both branches of the low-frequency displacement noise. Throws DomainError for Omega <= 0.
SpectrumPoint displacement_noise_spectrum(const PlanoConvexGeometry& geometry, const BeamSpec& beam,
                                          double omega, double temperature, const LossAngle& loss,
                                          const TruncationPolicy& policy = {});

struct OpticalMassApprox {
    double optical_mass = 0.0;           ///< (12/pi^2) (pi/4) rho h0 w0^2
    double fundamental_frequency = 0.0;  ///< Omega_M
    double chi = 0.0;                    ///< 1 / (M_opt Omega_M^2)
};

/// Single-oscillator estimate of chi_eff[0]. Throws InvalidSpec for an off-center beam.
OpticalMassApprox optical_mass_approx(const PlanoConvexGeometry& geometry, const BeamSpec& beam);

}  // namespace mirnoise
