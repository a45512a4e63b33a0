#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mirnoise/errors.hpp"
#include "mirnoise/material_geometry.hpp"

using namespace mirnoise;

namespace {
const Material silica = Material::fused_silica();
constexpr double pi = std::numbers::pi;

double closure_mass(const PlanoConvexGeometry& g) {
    const double h = g.thickness();
    return pi * g.material().density * h * h * (g.radius() - h / 3.0);
}
}  // namespace

TEST_CASE("working point: 20 kg, 7 cm thick") {
    const auto g = solve_geometry(20.0, 0.07, silica);
    // Reference values from tests/oracle/derive_values.py.
    CHECK(g.radius() == doctest::Approx(0.61388970844240694).epsilon(1e-13));
    CHECK(g.diameter() == doctest::Approx(0.56936652231031979).epsilon(1e-13));
    // Rounded values quoted for this working point: R = 61 cm, D = 57 cm.
    CHECK(std::round(100 * g.radius()) == 61);
    CHECK(std::round(100 * g.diameter()) == 57);
    CHECK_FALSE(g.paraxial_warning());
    CHECK(g.paraxiality_ratio() == doctest::Approx(0.114).epsilon(1e-2));
}

TEST_CASE("lighter mirror has a shorter radius") {
    const auto g = solve_geometry(5.0, 0.07, silica);
    CHECK(g.radius() == doctest::Approx(0.17097242711060173).epsilon(1e-13));
}

TEST_CASE("closure relations hold to 1e-12") {
    for (double m : {1.0, 5.0, 20.0, 50.0, 200.0}) {
        for (double h : {0.02, 0.05, 0.07, 0.1}) {
            CAPTURE(m);
            CAPTURE(h);
            const double r = m / (pi * silica.density * h * h) + h / 3.0;
            if (r <= h) {
                CHECK_THROWS_AS(solve_geometry(m, h, silica), InfeasibleGeometry);
                continue;
            }
            const auto g = solve_geometry(m, h, silica);
            CHECK(std::abs(closure_mass(g) / m - 1.0) < 1e-12);
            const double d = 2.0 * std::sqrt(g.thickness() * (2.0 * g.radius() - g.thickness()));
            CHECK(std::abs(g.diameter() / d - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("mass round-trips through the radius") {
    for (double m = 2.0; m < 100.0; m *= 1.37) {
        const auto g = solve_geometry(m, 0.07, silica);
        CHECK(std::abs(closure_mass(g) / m - 1.0) < 1e-12);
        const auto back = PlanoConvexGeometry::from_radius(0.07, g.radius(), silica);
        CHECK(std::abs(back.mass() / m - 1.0) < 1e-12);
    }
}

TEST_CASE("radius is monotone in mass and in thickness") {
    double prev = 0.0;
    for (double m = 5.0; m <= 50.0; m += 2.5) {
        const double r = solve_geometry(m, 0.07, silica).radius();
        CHECK(r > prev);
        prev = r;
    }
    prev = INFINITY;
    for (double h = 0.02; h <= 0.14; h += 0.005) {
        const double r = solve_geometry(20.0, h, silica).radius();
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("infeasible geometry at and beyond R = h0") {
    const double h = 0.07;
    const double boundary = pi * silica.density * h * h * (2.0 * h / 3.0);
    CHECK_THROWS_AS(solve_geometry(boundary, h, silica), InfeasibleGeometry);
    CHECK_THROWS_AS(solve_geometry(0.5 * boundary, h, silica), InfeasibleGeometry);
    CHECK_NOTHROW(solve_geometry(1.01 * boundary, h, silica));
    CHECK_THROWS_AS(PlanoConvexGeometry::from_radius(h, h, silica), InfeasibleGeometry);
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(solve_geometry(-1.0, 0.07, silica), InvalidSpec);
    CHECK_THROWS_AS(solve_geometry(20.0, 0.0, silica), InvalidSpec);
    CHECK_THROWS_AS((Material{-1.0, 5960.0, 1e-6}).validate(), InvalidSpec);
    CHECK_THROWS_AS((Material{2200.0, 0.0, 1e-6}).validate(), InvalidSpec);
    CHECK_THROWS_AS((Material{2200.0, 5960.0, 0.0}).validate(), InvalidSpec);
    CHECK_THROWS_AS((Material{2200.0, 5960.0, 1.0}).validate(), InvalidSpec);
}

TEST_CASE("paraxial warning above h0/R = 0.25") {
    CHECK(solve_geometry(20.0, 0.12, silica).paraxial_warning());
    CHECK_FALSE(PlanoConvexGeometry::from_radius(0.1, 0.41, silica).paraxial_warning());
    CHECK(PlanoConvexGeometry::from_radius(0.1, 0.39, silica).paraxial_warning());
}

TEST_CASE("thickness profile") {
    const auto g = solve_geometry(20.0, 0.07, silica);
    CHECK(thickness_profile(g, 0.0) == doctest::Approx(0.07).epsilon(1e-14));
    CHECK(thickness_profile(g, 0.5 * g.diameter()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(thickness_profile(g, 0.2) == doctest::Approx(0.036507202413865105).epsilon(1e-12));
    double prev = INFINITY;
    for (int i = 0; i <= 200; ++i) {
        const double h = thickness_profile(g, 0.5 * g.diameter() * i / 200.0);
        CHECK(h < prev);
        prev = h;
    }
    CHECK_THROWS_AS(thickness_profile(g, -1e-9), DomainError);
    CHECK_THROWS_AS(thickness_profile(g, 0.5 * g.diameter() * (1 + 1e-9)), DomainError);
}
