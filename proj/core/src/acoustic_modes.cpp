#include "mirnoise/acoustic_modes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mirnoise/errors.hpp"
#include "mirnoise/special_functions.hpp"

namespace mirnoise {

void ModeIndex::validate() const {
    if (n < 1) throw InvalidSpec("longitudinal index n must be >= 1, got " + std::to_string(n));
    if (p < 0) throw InvalidSpec("radial index p must be >= 0, got " + std::to_string(p));
    if (l < 0) throw InvalidSpec("angular index l must be >= 0, got " + std::to_string(l));
    if (l == 0 && parity == Parity::sine) throw InvalidSpec("l = 0 modes have cosine parity only");
}

double fundamental_frequency(const PlanoConvexGeometry& geometry) {
    return std::numbers::pi * geometry.material().sound_speed / geometry.thickness();
}

double acoustic_waist_sq(const PlanoConvexGeometry& geometry, int n) {
    const double h0 = geometry.thickness();
    return 2.0 * h0 / (n * std::numbers::pi) * std::sqrt(geometry.radius() * h0);
}

double transverse_splitting(const PlanoConvexGeometry& geometry) {
    return 2.0 / std::numbers::pi * std::sqrt(geometry.thickness() / geometry.radius());
}

double eigenfrequency_sq(const PlanoConvexGeometry& geometry, int n, int transverse_order) {
    const double om = fundamental_frequency(geometry);
    const double dn = n;
    return om * om * (dn * dn + transverse_splitting(geometry) * dn * (transverse_order + 1.0));
}

ModeData mode_data(const PlanoConvexGeometry& geometry, const ModeIndex& index) {
    index.validate();
    ModeData m;
    m.index = index;
    m.waist_sq = acoustic_waist_sq(geometry, index.n);
    m.waist = std::sqrt(m.waist_sq);
    m.fundamental_frequency = fundamental_frequency(geometry);
    m.frequency_sq = eigenfrequency_sq(geometry, index.n, index.transverse_order());
    m.frequency = std::sqrt(m.frequency_sq);

    const long double base = static_cast<long double>(geometry.material().density) * geometry.thickness() *
                             m.waist_sq * std::numbers::pi_v<long double>;
    if (index.l == 0) {
        m.effective_mass = base / 4.0L;
    } else {
        m.effective_mass = base / 8.0L * factorial_ratio(index.p, index.l);
    }
    m.confinement_ratio = m.waist * std::sqrt(index.transverse_order() + 1.0) / (0.5 * geometry.diameter());
    return m;
}

double surface_displacement(const PlanoConvexGeometry& geometry, const ModeIndex& index, double r, double phi) {
    index.validate();
    const double edge = 0.5 * geometry.diameter();
    if (!(r >= 0.0 && r <= edge)) {
        throw DomainError("radial position " + std::to_string(r) + " m is outside the mirror");
    }
    const double wn_sq = acoustic_waist_sq(geometry, index.n);
    const double t = 2.0 * r * r / wn_sq;
    double radial = std::exp(-0.5 * t) * laguerre(index.p, index.l, t);
    if (index.l > 0) radial *= std::pow(std::sqrt(t), index.l);
    const double angular =
        index.parity == Parity::cosine ? std::cos(index.l * phi) : std::sin(index.l * phi);
    return radial * angular;
}

}  // namespace mirnoise
