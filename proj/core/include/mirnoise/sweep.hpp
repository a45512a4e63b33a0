#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mirnoise/beam_overlap.hpp"
#include "mirnoise/material_geometry.hpp"
#include "mirnoise/susceptibility.hpp"

namespace mirnoise {

enum class SweepParameter { thickness, waist, offset, mass, mode_count };

/// Parses "thickness", "waist", "offset", "mass" or "mode_count"; throws InvalidSpec otherwise.
SweepParameter parse_sweep_parameter(const std::string& name);
std::string to_string(SweepParameter parameter);

/// Working point shared by every row of a sweep; the swept field is overwritten per row.
struct WorkingPoint {
    double mass = 20.0;       ///< kg
    double thickness = 0.07;  ///< m
    double waist = 0.02;      ///< m
    double offset = 0.0;      ///< m
    Material material;
};

struct SweepSpec {
    SweepParameter parameter = SweepParameter::thickness;
    double lo = 0.04;
    double hi = 0.12;
    int points = 30;
    WorkingPoint fixed;
    TruncationPolicy policy;
    int jobs = 1;

    /// Default range for a parameter: thickness [0.04, 0.12] m with 30 points, offset
    /// [0, 0.12] m, waist [0.01, 0.06] m, mass [5, 50] kg, mode_count [1e2, 1e6].
    static SweepSpec defaults(SweepParameter parameter);

    /// Swept values: linear spacing, geometric for mode_count (rounded to integers).
    std::vector<double> values() const;

    /// Throws InvalidSpec (or InfeasibleGeometry) unless lo < hi, points >= 2 and every sweep
    /// point yields a valid geometry and beam.
    void validate() const;
};

struct SweepRow {
    double value = 0.0;  ///< swept parameter
    double radius = 0.0;
    double diameter = 0.0;
    double chi_static = 0.0;  ///< chi_eff[0] (m/N), partial sum if not converged
    std::size_t modes_used = 0;
    double tail_bound = 0.0;
    bool converged = false;
    bool paraxial_warning = false;
    double wall_time = 0.0;  ///< s
    std::string error;       ///< reason when not converged
};

/// One row per sweep point, in sweep order. Rows are computed on up to spec.jobs threads.
/// A row whose budget runs out carries the partial sum and converged = false.
/// Throws InvalidSpec before any computation if the spec is invalid.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct ConvergencePoint {
    std::size_t modes = 0;
    double chi_static = 0.0;  ///< plain partial sum over the first `modes` terms
};

/// Partial sums of chi_eff[0] along the canonical enumeration order, truncated after each
/// checkpoint count. Checkpoints must be strictly increasing and >= 1.
std::vector<ConvergencePoint> convergence_study(const PlanoConvexGeometry& geometry, const BeamSpec& beam,
                                                const std::vector<std::size_t>& checkpoints);

/// Cylindrical-mirror susceptibilities quoted in the literature, at the two waists they were
/// given for. Not recomputed.
struct CylindricalReference {
    double waist;
    double chi_static;
};
inline constexpr CylindricalReference kCylindricalReferences[] = {{0.02, 46e-11}, {0.055, 11e-11}};
inline constexpr const char* kCylindricalLabel = "literature reference (Bondu95)";

struct CompareRecord {
    double waist = 0.0;
    double chi_planoconvex = 0.0;
    double tail_bound = 0.0;
    bool converged = false;
    std::optional<double> chi_cylindrical;
    std::optional<double> improvement;  ///< cylindrical / plano-convex
    std::string label;
};

/// chi_eff[0] of the plano-convex mirror beside the cylindrical reference. Throws InvalidSpec
/// for an off-center beam, or for a waist without a reference unless include_cylindrical is
/// false.
CompareRecord compare_report(const PlanoConvexGeometry& geometry, const BeamSpec& beam,
                             const TruncationPolicy& policy, bool include_cylindrical = true);

/// First line of every CSV file.
inline constexpr const char* kCsvBanner = "# mirnoise v1, one-sided angular-frequency spectra, SI units";

/// Scientific notation with 9 significant digits ("%.8e").
std::string format_float(double value);

/// Writes the banner, a header line and the rows, comma separated.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Flat "key = value" configuration; '#' starts a comment. Keys keep their order of
/// appearance; a repeated key keeps the last value. Throws InvalidSpec on a malformed line.
std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in);

}  // namespace mirnoise
