// mirnoise: thermal noise of a plano-convex mirror read out by a Gaussian beam.
//
//   mirnoise chi0 --waist 0.055
//   mirnoise sweep --param thickness --output fig2.csv
//   mirnoise sweep --param offset --epsilon 1e-2 --jobs 4
//   mirnoise converge --config run.cfg
//
// Exit codes: 0 success, 2 invalid spec, 3 at least one unconverged row, 1 anything else.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mirnoise/acoustic_modes.hpp"
#include "mirnoise/beam_overlap.hpp"
#include "mirnoise/errors.hpp"
#include "mirnoise/material_geometry.hpp"
#include "mirnoise/susceptibility.hpp"
#include "mirnoise/sweep.hpp"

namespace {

using namespace mirnoise;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUnconverged = 3;

using Table = std::vector<std::vector<std::string>>;

struct Options {
    double mass = 20.0;
    double thickness = 0.07;
    double waist = 0.02;
    std::optional<double> offset;
    std::optional<double> offset_in_waists;
    double temperature = 300.0;
    double loss_angle = 1e-6;
    double density = 2200.0;
    double sound_speed = 5960.0;
    double epsilon = 1e-4;
    double max_modes = 1e6;
    int n_max = 200;
    int jobs = 1;
    std::string output;
    std::string config;

    // sweep
    std::string param = "thickness";
    std::optional<double> lo;
    std::optional<double> hi;
    std::optional<int> points;
    bool timing = false;

    // spectrum
    std::optional<double> omega;
    std::optional<double> omega_min;
    std::optional<double> omega_max;

    // converge
    std::vector<double> checkpoints{1e2, 1e3, 1e4, 1e5, 1e6};

    // compare
    bool no_cylindrical = false;
};

std::string flag(bool b) { return b ? "1" : "0"; }
std::string count(std::size_t n) { return std::to_string(n); }

Material material(const Options& o) {
    Material m{o.density, o.sound_speed, o.loss_angle};
    m.validate();
    return m;
}

double offset(const Options& o) {
    if (o.offset && o.offset_in_waists) throw InvalidSpec("give either --offset or --offset-in-waists, not both");
    if (o.offset_in_waists) return *o.offset_in_waists * o.waist;
    return o.offset.value_or(0.0);
}

TruncationPolicy policy(const Options& o) {
    if (!(o.max_modes >= 1.0) || o.max_modes != std::floor(o.max_modes)) {
        throw InvalidSpec("--max-modes must be a positive integer");
    }
    TruncationPolicy p;
    p.epsilon = o.epsilon;
    p.max_modes = static_cast<std::size_t>(o.max_modes);
    p.n_max = o.n_max;
    p.validate();
    return p;
}

struct Setup {
    PlanoConvexGeometry geometry;
    BeamSpec beam;
};

Setup setup(const Options& o) {
    PlanoConvexGeometry g = solve_geometry(o.mass, o.thickness, material(o));
    BeamSpec b{o.waist, offset(o)};
    b.validate(g);
    return {g, b};
}

void warn_paraxial(const PlanoConvexGeometry& g) {
    if (g.paraxial_warning()) {
        std::fprintf(stderr, "warning: h0/R = %.3f exceeds %.2f, paraxial modes are doubtful\n",
                     g.paraxiality_ratio(), kParaxialWarningRatio);
    }
}

int cmd_geometry(const Options& o, Table& rows, std::vector<std::string>& header) {
    const PlanoConvexGeometry g = solve_geometry(o.mass, o.thickness, material(o));
    warn_paraxial(g);
    header = {"mass_kg", "thickness_m", "radius_m", "diameter_m", "paraxiality_ratio", "paraxial_warning",
              "fundamental_frequency_rad_s", "acoustic_waist_1_m"};
    rows.push_back({format_float(g.mass()), format_float(g.thickness()), format_float(g.radius()),
                    format_float(g.diameter()), format_float(g.paraxiality_ratio()), flag(g.paraxial_warning()),
                    format_float(fundamental_frequency(g)), format_float(std::sqrt(acoustic_waist_sq(g, 1)))});
    return kExitOk;
}

int cmd_chi0(const Options& o, Table& rows, std::vector<std::string>& header) {
    const Setup s = setup(o);
    warn_paraxial(s.geometry);
    header = {"waist_m", "offset_m", "chi0_m_per_N", "modes_used", "longitudinal_orders", "tail_bound",
              "converged", "chi_optical_mass_m_per_N"};
    SusceptibilityResult r;
    try {
        r = chi_eff(s.geometry, s.beam, 0.0, LossAngle(0.0), policy(o));
    } catch (const BudgetExceeded& e) {
        std::fprintf(stderr, "warning: %s\n", e.what());
        r = e.partial();
    }
    const double approx =
        s.beam.offset == 0.0 ? optical_mass_approx(s.geometry, s.beam).chi : std::numeric_limits<double>::quiet_NaN();
    rows.push_back({format_float(s.beam.waist), format_float(s.beam.offset), format_float(r.value.real()),
                    count(r.modes_used), std::to_string(r.longitudinal_orders), format_float(r.tail_bound),
                    flag(r.converged), format_float(approx)});
    return r.converged ? kExitOk : kExitUnconverged;
}

int cmd_spectrum(const Options& o, Table& rows, std::vector<std::string>& header) {
    const Setup s = setup(o);
    warn_paraxial(s.geometry);
    const TruncationPolicy pol = policy(o);
    const double om = fundamental_frequency(s.geometry);
    std::vector<double> grid;
    if (o.omega) {
        grid.push_back(*o.omega);
    } else {
        const double a = o.omega_min.value_or(om / 1e4);
        const double b = o.omega_max.value_or(10.0 * om);
        const int n = o.points.value_or(100);
        if (!(a > 0.0 && b > a) || n < 2) throw InvalidSpec("spectrum grid needs 0 < omega-min < omega-max, points >= 2");
        for (int i = 0; i < n; ++i) grid.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
    }
    if (!(o.temperature >= 0.0)) throw InvalidSpec("temperature must be >= 0");
    header = {"omega_rad_s", "S_T_N2_s", "S_u_m2_s", "S_u_approx_m2_s", "chi_re_m_per_N", "chi_im_m_per_N",
              "chi0_m_per_N", "tail_bound", "converged"};
    int status = kExitOk;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double w : grid) {
        if (!(w > 0.0)) throw InvalidSpec("frequencies must be positive");
        try {
            const SpectrumPoint p = displacement_noise_spectrum(s.geometry, s.beam, w, o.temperature,
                                                                LossAngle(o.loss_angle), pol);
            rows.push_back({format_float(w), format_float(p.force_psd), format_float(p.displacement_psd),
                            format_float(p.displacement_psd_approx), format_float(p.chi.real()),
                            format_float(p.chi.imag()), format_float(p.chi_static), format_float(p.tail_bound),
                            "1"});
        } catch (const BudgetExceeded& e) {
            status = kExitUnconverged;
            rows.push_back({format_float(w), format_float(nan), format_float(nan), format_float(nan),
                            format_float(nan), format_float(nan), format_float(nan),
                            format_float(e.partial().tail_bound), "0"});
        }
    }
    return status;
}

int cmd_sweep(const Options& o, Table& rows, std::vector<std::string>& header) {
    SweepSpec spec = SweepSpec::defaults(parse_sweep_parameter(o.param));
    if (o.lo) spec.lo = *o.lo;
    if (o.hi) spec.hi = *o.hi;
    if (o.points) spec.points = *o.points;
    spec.fixed = {o.mass, o.thickness, o.waist, offset(o), material(o)};
    spec.policy = policy(o);
    spec.jobs = o.jobs;
    const auto result = run_sweep(spec);

    header = {o.param, "radius_m", "diameter_m", "chi0_m_per_N", "modes_used", "tail_bound", "converged",
              "paraxial_warning"};
    if (o.timing) header.push_back("wall_time_s");
    int status = kExitOk;
    bool warned = false;
    for (const SweepRow& r : result) {
        if (!r.converged) status = kExitUnconverged;
        if (r.paraxial_warning && !warned) {
            std::fprintf(stderr, "warning: some sweep points exceed h0/R = %.2f\n", kParaxialWarningRatio);
            warned = true;
        }
        const std::string value =
            spec.parameter == SweepParameter::mode_count ? count(static_cast<std::size_t>(r.value)) : format_float(r.value);
        rows.push_back({value, format_float(r.radius), format_float(r.diameter), format_float(r.chi_static),
                        count(r.modes_used), format_float(r.tail_bound), flag(r.converged),
                        flag(r.paraxial_warning)});
        if (o.timing) rows.back().push_back(format_float(r.wall_time));
    }
    return status;
}

int cmd_converge(const Options& o, Table& rows, std::vector<std::string>& header) {
    const Setup s = setup(o);
    warn_paraxial(s.geometry);
    std::vector<std::size_t> checkpoints;
    for (double c : o.checkpoints) {
        if (!(c >= 1.0) || c != std::floor(c)) throw InvalidSpec("checkpoints must be positive integers");
        checkpoints.push_back(static_cast<std::size_t>(c));
    }
    const auto pts = convergence_study(s.geometry, s.beam, checkpoints);
    header = {"modes", "chi0_m_per_N", "relative_to_last"};
    for (const auto& p : pts) {
        rows.push_back({count(p.modes), format_float(p.chi_static),
                        format_float((p.chi_static - pts.back().chi_static) / pts.back().chi_static)});
    }
    return kExitOk;
}

int cmd_compare(const Options& o, Table& rows, std::vector<std::string>& header) {
    const Setup s = setup(o);
    warn_paraxial(s.geometry);
    const CompareRecord rec = compare_report(s.geometry, s.beam, policy(o), !o.no_cylindrical);
    header = {"waist_m", "chi0_planoconvex_m_per_N", "tail_bound", "converged"};
    std::vector<std::string> row{format_float(rec.waist), format_float(rec.chi_planoconvex),
                                 format_float(rec.tail_bound), flag(rec.converged)};
    if (rec.chi_cylindrical) {
        header.insert(header.end(), {"chi0_cylindrical_m_per_N", "improvement_ratio", "cylindrical_source"});
        row.insert(row.end(), {format_float(*rec.chi_cylindrical), format_float(*rec.improvement), rec.label});
    }
    rows.push_back(row);
    return rec.converged ? kExitOk : kExitUnconverged;
}

/// Prepends "--key=value" for every config entry so that later command-line flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args, CLI::App& app) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].starts_with("--config=")) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw InvalidSpec("cannot open config file '" + path + "'");
    std::vector<std::string> out;
    for (const auto& [key, value] : parse_config(in)) {
        if (key == "config") throw InvalidSpec("config files cannot include other config files");
        CLI::Option* opt = nullptr;
        try {
            opt = app.get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw InvalidSpec("unknown config key '" + key + "'");
        }
        if (opt->get_type_size() == 0) {
            if (value == "true" || value == "1") {
                out.push_back("--" + key);
            } else if (value != "false" && value != "0") {
                throw InvalidSpec("config key '" + key + "' expects true or false");
            }
        } else {
            out.push_back("--" + key + "=" + value);
        }
    }
    out.insert(out.end(), args.begin(), args.end());
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Internal thermal noise of a plano-convex mirror read out by a Gaussian beam"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    Options o;

    app.add_option("--mass", o.mass, "Mirror mass (kg)")->capture_default_str();
    app.add_option("--thickness", o.thickness, "Central thickness h0 (m)")->capture_default_str();
    app.add_option("--waist", o.waist, "Optical waist w0 (m)")->capture_default_str();
    app.add_option("--offset", o.offset, "Beam offset d from the mirror axis (m)");
    app.add_option("--offset-in-waists", o.offset_in_waists, "Beam offset in units of the waist");
    app.add_option("--temperature", o.temperature, "Temperature (K)")->capture_default_str();
    app.add_option("--loss-angle", o.loss_angle, "Structural loss angle")->capture_default_str();
    app.add_option("--density", o.density, "Substrate density (kg/m^3)")->capture_default_str();
    app.add_option("--sound-speed", o.sound_speed, "Longitudinal sound speed (m/s)")->capture_default_str();
    app.add_option("--epsilon", o.epsilon, "Relative tail tolerance")->capture_default_str();
    app.add_option("--max-modes", o.max_modes, "Mode budget per susceptibility")->capture_default_str();
    app.add_option("--n-max", o.n_max, "Highest longitudinal order")->capture_default_str();
    app.add_option("--jobs", o.jobs, "Concurrent sweep points")->capture_default_str();
    app.add_option("--output", o.output, "CSV output path (default: stdout)");
    app.add_option("--config", o.config, "Flat 'key = value' file; command-line flags override it");
    app.add_option("--param", o.param, "Swept parameter: thickness|waist|offset|mass|mode_count")
        ->capture_default_str();
    app.add_option("--lo", o.lo, "Sweep start");
    app.add_option("--hi", o.hi, "Sweep end");
    app.add_option("--points", o.points, "Sweep or spectrum point count");
    app.add_flag("--timing", o.timing, "Add a wall-time column to sweep output (breaks byte-determinism)");
    app.add_option("--omega", o.omega, "Single analysis frequency (rad/s)");
    app.add_option("--omega-min", o.omega_min, "Spectrum grid start (rad/s), default Omega_M/1e4");
    app.add_option("--omega-max", o.omega_max, "Spectrum grid end (rad/s), default 10 Omega_M");
    app.add_option("--checkpoints", o.checkpoints, "Mode counts for the convergence study")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->delimiter(',');
    app.add_flag("--no-cylindrical", o.no_cylindrical, "Omit the cylindrical reference column");

    struct Command {
        const char* name;
        const char* help;
        int (*fn)(const Options&, Table&, std::vector<std::string>&);
    };
    const Command commands[] = {
        {"geometry", "Solve radius and diameter from mass and thickness", cmd_geometry},
        {"chi0", "Zero-frequency effective susceptibility", cmd_chi0},
        {"spectrum", "Force and displacement noise spectra", cmd_spectrum},
        {"sweep", "chi_eff[0] over a parameter range", cmd_sweep},
        {"converge", "Partial sums of chi_eff[0] against the number of modes", cmd_converge},
        {"compare", "Compare with the cylindrical-mirror reference values", cmd_compare},
    };
    for (const auto& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = expand_config(args, app);
        std::reverse(args.begin(), args.end());  // CLI11 consumes the vector from the back
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    } catch (const InvalidSpec& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }

    Table rows;
    std::vector<std::string> header;
    int status = kExitOk;
    try {
        for (const auto& c : commands) {
            if (app.got_subcommand(c.name)) status = c.fn(o, rows, header);
        }
    } catch (const InvalidSpec& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    } catch (const InfeasibleGeometry& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }

    std::ostringstream csv;
    write_csv(csv, header, rows);
    if (o.output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(o.output, std::ios::binary);
        out << csv.str();
        if (!out) {
            std::fprintf(stderr, "error: cannot write '%s'\n", o.output.c_str());
            return kExitFailure;
        }
    }
    if (status == kExitUnconverged) std::fprintf(stderr, "warning: some values did not reach the tail tolerance\n");
    return status;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
