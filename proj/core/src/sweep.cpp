#include "mirnoise/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <thread>

#include "mirnoise/errors.hpp"

namespace mirnoise {

namespace {

struct PointSetup {
    PlanoConvexGeometry geometry;
    BeamSpec beam;
    std::size_t budget;
};

PointSetup setup_point(const SweepSpec& spec, double value) {
    WorkingPoint wp = spec.fixed;
    std::size_t budget = spec.policy.max_modes;
    switch (spec.parameter) {
        case SweepParameter::thickness: wp.thickness = value; break;
        case SweepParameter::waist: wp.waist = value; break;
        case SweepParameter::offset: wp.offset = value; break;
        case SweepParameter::mass: wp.mass = value; break;
        case SweepParameter::mode_count: budget = static_cast<std::size_t>(value); break;
    }
    PlanoConvexGeometry geom = solve_geometry(wp.mass, wp.thickness, wp.material);
    BeamSpec beam{wp.waist, wp.offset};
    beam.validate(geom);
    return {geom, beam, budget};
}

SweepRow evaluate_row(const SweepSpec& spec, double value) {
    const auto start = std::chrono::steady_clock::now();
    const PointSetup s = setup_point(spec, value);
    SweepRow row;
    row.value = value;
    row.radius = s.geometry.radius();
    row.diameter = s.geometry.diameter();
    row.paraxial_warning = s.geometry.paraxial_warning();
    if (spec.parameter == SweepParameter::mode_count) {
        const auto pts = convergence_study(s.geometry, s.beam, {s.budget});
        row.chi_static = pts.back().chi_static;
        row.modes_used = pts.back().modes;
        row.tail_bound = std::numeric_limits<double>::quiet_NaN();
        row.converged = true;  // a fixed-count truncation has no tolerance to miss
    } else {
        TruncationPolicy policy = spec.policy;
        try {
            const SusceptibilityResult r = chi_eff(s.geometry, s.beam, 0.0, LossAngle(0.0), policy);
            row.chi_static = r.value.real();
            row.modes_used = r.modes_used;
            row.tail_bound = r.tail_bound;
            row.converged = r.converged;
        } catch (const BudgetExceeded& e) {
            row.chi_static = e.partial().value.real();
            row.modes_used = e.partial().modes_used;
            row.tail_bound = e.partial().tail_bound;
            row.converged = false;
            row.error = e.what();
        } catch (const RecurrenceInstability& e) {
            row.chi_static = std::numeric_limits<double>::quiet_NaN();
            row.tail_bound = std::numeric_limits<double>::infinity();
            row.converged = false;
            row.error = e.what();
        }
    }
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

}  // namespace

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "thickness") return SweepParameter::thickness;
    if (name == "waist") return SweepParameter::waist;
    if (name == "offset") return SweepParameter::offset;
    if (name == "mass") return SweepParameter::mass;
    if (name == "mode_count") return SweepParameter::mode_count;
    throw InvalidSpec("unknown sweep parameter '" + name + "'");
}

std::string to_string(SweepParameter parameter) {
    switch (parameter) {
        case SweepParameter::thickness: return "thickness";
        case SweepParameter::waist: return "waist";
        case SweepParameter::offset: return "offset";
        case SweepParameter::mass: return "mass";
        case SweepParameter::mode_count: return "mode_count";
    }
    return "unknown";
}

SweepSpec SweepSpec::defaults(SweepParameter parameter) {
    SweepSpec s;
    s.parameter = parameter;
    switch (parameter) {
        case SweepParameter::thickness: s.lo = 0.04, s.hi = 0.12, s.points = 30; break;
        case SweepParameter::waist: s.lo = 0.01, s.hi = 0.06, s.points = 11; break;
        case SweepParameter::offset: s.lo = 0.0, s.hi = 0.12, s.points = 13; break;
        case SweepParameter::mass: s.lo = 5.0, s.hi = 50.0, s.points = 10; break;
        case SweepParameter::mode_count: s.lo = 1e2, s.hi = 1e6, s.points = 5; break;
    }
    return s;
}

std::vector<double> SweepSpec::values() const {
    std::vector<double> v(static_cast<std::size_t>(std::max(points, 0)));
    for (int i = 0; i < points; ++i) {
        const double t = points > 1 ? static_cast<double>(i) / (points - 1) : 0.0;
        if (parameter == SweepParameter::mode_count) {
            v[static_cast<std::size_t>(i)] = std::round(lo * std::pow(hi / lo, t));
        } else {
            // Endpoints exactly, independent of rounding in the step.
            v[static_cast<std::size_t>(i)] = i == points - 1 ? hi : lo + (hi - lo) * t;
        }
    }
    return v;
}

void SweepSpec::validate() const {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw InvalidSpec("sweep range needs lo < hi");
    if (points < 2) throw InvalidSpec("sweep needs at least 2 points");
    if (jobs < 1) throw InvalidSpec("jobs must be at least 1");
    if (parameter == SweepParameter::mode_count && !(lo >= 1.0)) throw InvalidSpec("mode counts must be >= 1");
    fixed.material.validate();
    policy.validate();
    if (parameter == SweepParameter::mode_count) {
        const auto v = values();
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (!(v[i] > v[i - 1])) throw InvalidSpec("mode-count checkpoints collapse after rounding");
        }
    }
    for (double value : values()) setup_point(*this, value);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> values = spec.values();
    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) rows[i] = evaluate_row(spec, values[i]);
    };
    const int threads = std::min<int>(spec.jobs, static_cast<int>(values.size()));
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    return rows;
}

std::vector<ConvergencePoint> convergence_study(const PlanoConvexGeometry& geometry, const BeamSpec& beam,
                                                const std::vector<std::size_t>& checkpoints) {
    if (checkpoints.empty()) throw InvalidSpec("no checkpoints");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
            throw InvalidSpec("checkpoints must be strictly increasing and >= 1");
        }
    }
    std::vector<ConvergencePoint> out;
    out.reserve(checkpoints.size());
    std::size_t next = 0;
    std::size_t count = 0;
    long double sum = 0.0L;
    // Each family is walked until its bounded remainder is 1e-10 of its partial sum, far below
    // the differences the study resolves.
    enumerate_static_terms(geometry, beam, 1e-10, std::numeric_limits<int>::max() / 4,
                           [&](const ModeTerm& term) {
                               sum += term.value;
                               ++count;
                               if (count == checkpoints[next]) {
                                   out.push_back({count, static_cast<double>(sum)});
                                   ++next;
                               }
                               return next < checkpoints.size();
                           });
    return out;
}

CompareRecord compare_report(const PlanoConvexGeometry& geometry, const BeamSpec& beam,
                             const TruncationPolicy& policy, bool include_cylindrical) {
    if (beam.offset != 0.0) throw InvalidSpec("the comparison report requires a centered beam");
    CompareRecord rec;
    rec.waist = beam.waist;
    if (include_cylindrical) {
        const auto* ref = std::find_if(std::begin(kCylindricalReferences), std::end(kCylindricalReferences),
                                       [&](const CylindricalReference& c) {
                                           return std::abs(c.waist - beam.waist) <= 1e-9 * c.waist;
                                       });
        if (ref == std::end(kCylindricalReferences)) {
            throw InvalidSpec("no cylindrical reference at waist " + format_float(beam.waist) +
                              " m (references exist at 0.02 and 0.055 m); suppress the cylindrical column");
        }
        rec.chi_cylindrical = ref->chi_static;
        rec.label = kCylindricalLabel;
    }
    try {
        const SusceptibilityResult r = chi_eff(geometry, beam, 0.0, LossAngle(0.0), policy);
        rec.chi_planoconvex = r.value.real();
        rec.tail_bound = r.tail_bound;
        rec.converged = r.converged;
    } catch (const BudgetExceeded& e) {
        rec.chi_planoconvex = e.partial().value.real();
        rec.tail_bound = e.partial().tail_bound;
        rec.converged = false;
    }
    if (rec.chi_cylindrical) rec.improvement = *rec.chi_cylindrical / rec.chi_planoconvex;
    return rec;
}

std::string format_float(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", value);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    out << kCsvBanner << '\n';
    line(header);
    for (const auto& r : rows) line(r);
}

std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in) {
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    std::vector<std::pair<std::string, std::string>> out;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (lineno == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
        const std::string text = trim(raw.substr(0, raw.find('#')));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw InvalidSpec("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (key.starts_with("--")) key.erase(0, 2);
        if (key.empty()) throw InvalidSpec("config line " + std::to_string(lineno) + ": empty key");
        const auto it = std::find_if(out.begin(), out.end(), [&](const auto& kv) { return kv.first == key; });
        if (it != out.end()) {
            it->second = std::move(value);
        } else {
            out.emplace_back(std::move(key), std::move(value));
        }
    }
    return out;
}

}  // namespace mirnoise
