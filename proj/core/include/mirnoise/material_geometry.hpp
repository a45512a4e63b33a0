#pragma once

namespace mirnoise {

/// Substrate material. Loss angle is a frequency-independent structural damping value.
struct Material {
    double density = 2200.0;      ///< kg/m^3
    double sound_speed = 5960.0;  ///< longitudinal, m/s
    double loss_angle = 1e-6;

    /// Fused silica with the default loss angle.
    static Material fused_silica() { return {}; }

    /// Throws InvalidSpec unless density > 0, sound_speed > 0 and 0 < loss_angle < 1.
    void validate() const;
};

/// Above this thickness/radius ratio the paraxial mode description is flagged as doubtful.
inline constexpr double kParaxialWarningRatio = 0.25;

/// Segment of a sphere with a sharp circumferential edge; the flat face carries the coating.
///
/// Thickness h0, curvature radius R, diameter D and mass M are tied by
///   M = pi rho h0^2 (R - h0/3),   D = 2 sqrt(h0 (2R - h0)).
class PlanoConvexGeometry {
public:
    /// Builds the geometry from thickness and curvature radius; requires 0 < h0 < R.
    static PlanoConvexGeometry from_radius(double thickness, double radius, const Material& material);

    double thickness() const { return thickness_; }
    double radius() const { return radius_; }
    double diameter() const { return diameter_; }
    double mass() const { return mass_; }
    const Material& material() const { return material_; }

    double paraxiality_ratio() const { return thickness_ / radius_; }
    bool paraxial_warning() const { return paraxiality_ratio() > kParaxialWarningRatio; }

private:
    PlanoConvexGeometry(double thickness, double radius, const Material& material);

    double thickness_;
    double radius_;
    double diameter_;
    double mass_;
    Material material_;
};

/// Solves the mass closure for R (and D) at fixed thickness.
/// Throws InfeasibleGeometry when the resulting R does not exceed h0.
PlanoConvexGeometry solve_geometry(double mass, double thickness, const Material& material);

/// Local thickness h(r) = sqrt(R^2 - r^2) - (R - h0) for 0 <= r <= D/2.
double thickness_profile(const PlanoConvexGeometry& geometry, double r);

}  // namespace mirnoise
