#pragma once

#include "mirnoise/material_geometry.hpp"

namespace mirnoise {

/// Angular family of a Laguerre-Gauss compression mode; only cosine exists for l = 0.
enum class Parity { cosine, sine };

/// Longitudinal index n >= 1, radial index p >= 0, angular index l >= 0.
struct ModeIndex {
    int n = 1;
    int p = 0;
    int l = 0;
    Parity parity = Parity::cosine;

    /// Transverse order 2p + l; modes of equal n and equal order are degenerate.
    int transverse_order() const { return 2 * p + l; }

    /// Throws InvalidSpec when an index is out of range or l = 0 carries sine parity.
    void validate() const;

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Derived acoustic quantities of one paraxial mode.
struct ModeData {
    ModeIndex index;
    double waist = 0.0;                  ///< w_n (m)
    double waist_sq = 0.0;               ///< w_n^2 (m^2)
    double frequency = 0.0;              ///< Omega_{n,p,l} (rad/s)
    double frequency_sq = 0.0;           ///< Omega_{n,p,l}^2
    long double effective_mass = 0.0L;   ///< M_{n,p,l} (kg), extended range for large p + l
    double fundamental_frequency = 0.0;  ///< Omega_M = pi c_l / h0
    /// w_n sqrt(2p + l + 1) / (D/2); values near or above 1 mean the Gaussian
    /// description is cut by the mirror edge.
    double confinement_ratio = 0.0;
};

/// Omega_M = pi c_l / h0.
double fundamental_frequency(const PlanoConvexGeometry& geometry);

/// w_n^2 = (2 h0 / (n pi)) sqrt(R h0).
double acoustic_waist_sq(const PlanoConvexGeometry& geometry, int n);

/// Dimensionless transverse splitting (2/pi) sqrt(h0/R).
double transverse_splitting(const PlanoConvexGeometry& geometry);

/// Omega^2 for longitudinal index n and transverse order 2p + l.
double eigenfrequency_sq(const PlanoConvexGeometry& geometry, int n, int transverse_order);

/// Waist, eigenfrequency and effective mass of a mode. The mass uses the kinetic-energy
/// normalization rho (h0/2) * integral of u^2 over the plane:
///   M = (pi/4) rho h0 w_n^2                       for l = 0,
///   M = (pi/8) rho h0 w_n^2 (p + l)! / p!         for l >= 1.
ModeData mode_data(const PlanoConvexGeometry& geometry, const ModeIndex& index);

/// Longitudinal displacement on the coated face (z = 0):
///   exp(-r^2/w_n^2) (sqrt(2) r / w_n)^l L_p^l(2 r^2 / w_n^2) cos(l phi) (or sin).
/// Throws DomainError for r outside [0, D/2].
double surface_displacement(const PlanoConvexGeometry& geometry, const ModeIndex& index, double r, double phi);

}  // namespace mirnoise
