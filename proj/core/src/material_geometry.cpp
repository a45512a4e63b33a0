#include "mirnoise/material_geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mirnoise/errors.hpp"

namespace mirnoise {

void Material::validate() const {
    if (!(density > 0.0) || !std::isfinite(density)) {
        throw InvalidSpec("density must be positive, got " + std::to_string(density));
    }
    if (!(sound_speed > 0.0) || !std::isfinite(sound_speed)) {
        throw InvalidSpec("sound speed must be positive, got " + std::to_string(sound_speed));
    }
    if (!(loss_angle > 0.0 && loss_angle < 1.0)) {
        throw InvalidSpec("loss angle must lie in (0, 1), got " + std::to_string(loss_angle));
    }
}

PlanoConvexGeometry::PlanoConvexGeometry(double thickness, double radius, const Material& material)
    : thickness_(thickness), radius_(radius), material_(material) {
    // Both closure relations are evaluated directly so that they hold to rounding.
    diameter_ = 2.0 * std::sqrt(thickness * (2.0 * radius - thickness));
    mass_ = std::numbers::pi * material.density * thickness * thickness * (radius - thickness / 3.0);
}

PlanoConvexGeometry PlanoConvexGeometry::from_radius(double thickness, double radius,
                                                     const Material& material) {
    material.validate();
    if (!(thickness > 0.0) || !std::isfinite(thickness)) {
        throw InvalidSpec("thickness must be positive");
    }
    if (!(radius > thickness) || !std::isfinite(radius)) {
        throw InfeasibleGeometry("curvature radius " + std::to_string(radius) +
                                 " m must exceed thickness " + std::to_string(thickness) + " m");
    }
    return PlanoConvexGeometry(thickness, radius, material);
}

PlanoConvexGeometry solve_geometry(double mass, double thickness, const Material& material) {
    material.validate();
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw InvalidSpec("mass must be positive");
    }
    if (!(thickness > 0.0) || !std::isfinite(thickness)) {
        throw InvalidSpec("thickness must be positive");
    }
    const double radius =
        mass / (std::numbers::pi * material.density * thickness * thickness) + thickness / 3.0;
    if (!(radius > thickness)) {
        throw InfeasibleGeometry("thickness " + std::to_string(thickness) + " m is too large for mass " +
                                 std::to_string(mass) + " kg (R = " + std::to_string(radius) + " m)");
    }
    return PlanoConvexGeometry::from_radius(thickness, radius, material);
}

double thickness_profile(const PlanoConvexGeometry& geometry, double r) {
    const double edge = 0.5 * geometry.diameter();
    if (!(r >= 0.0 && r <= edge)) {
        throw DomainError("radial position " + std::to_string(r) + " m is outside [0, " +
                          std::to_string(edge) + "]");
    }
    const double R = geometry.radius();
    const double h = std::sqrt(R * R - r * r) - (R - geometry.thickness());
    return h > 0.0 ? h : 0.0;
}

}  // namespace mirnoise
