#include "uavcoop/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "uavcoop/coverage.hpp"
#include "uavcoop/geometry.hpp"
#include "uavcoop/montecarlo.hpp"
#include "uavcoop/parallel.hpp"

namespace uavcoop {

namespace {

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Header {
    std::string command;
    SystemParams params;
    std::vector<std::pair<std::string, std::string>> settings;
};

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string cell_text(const Cell& c)
{
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return "";
}

nlohmann::json cell_json(const Cell& c)
{
    if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        if (std::isfinite(v)) return v;
        return format_double(v);
    }
    if (std::holds_alternative<std::int64_t>(c)) return std::get<std::int64_t>(c);
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return nullptr;
}

void write_csv(std::ostream& os, const Header& h, const Table& t)
{
    os << "# uavcoop " << h.command << "\n";
    for (const auto& key : param_keys()) os << "# " << key << " = " << format_double(get_param(h.params, key)) << "\n";
    for (const auto& [k, v] : h.settings) os << "# " << k << " = " << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
        os << "\n";
    }
}

void write_json(std::ostream& os, const Header& h, const Table& t)
{
    nlohmann::json doc;
    doc["command"] = h.command;
    doc["params"] = nlohmann::json::parse(to_config_text(h.params));
    nlohmann::json settings = nlohmann::json::object();
    for (const auto& [k, v] : h.settings) settings[k] = v;
    doc["settings"] = settings;
    doc["columns"] = t.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json r = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
        rows.push_back(r);
    }
    doc["rows"] = rows;
    os << doc.dump(2) << "\n";
}

struct CommonOptions {
    std::string config;
    std::string sweep;
    std::string mode = "analytic";
    std::string scheme = "proposed";
    std::uint64_t seed = 1;
    std::int64_t drops = 0;
    std::string out;
    bool json = false;
    double tolerance = 0.02;
    std::optional<double> r0;
    std::optional<double> epsilon_db;
};

struct Mode {
    bool analytic = true;
    bool simulate = false;
};

Mode parse_mode(const std::string& s)
{
    if (s == "analytic") return {true, false};
    if (s == "simulate") return {false, true};
    if (s == "both") return {true, true};
    throw ConfigError("unknown mode '" + s + "' (expected analytic, simulate or both)");
}

SystemParams resolve_params(const CommonOptions& o)
{
    SystemParams p = o.config.empty() ? SystemParams{} : load_config(o.config);
    if (o.epsilon_db) p.sir_threshold = db_to_linear(*o.epsilon_db);
    if (o.drops > 0) p.sim_drops = o.drops;
    require_valid(p);
    return p;
}

// Grid-point failure with the point named, mapped to exit code 3.
struct PointFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluates fn on every grid index in parallel; rows come back in grid order.
template <class Row, class F>
std::vector<Row> map_grid(const std::string& variable, const std::vector<double>& grid, F&& fn)
{
    std::vector<Row> rows(grid.size());
    std::vector<std::string> errors(grid.size());
    parallel_for(static_cast<std::int64_t>(grid.size()), [&](std::int64_t i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            rows[k] = fn(grid[k]);
        } catch (const IntegrationError& e) {
            errors[k] = e.what();
        }
    });
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (!errors[k].empty())
            throw PointFailure("integration failed at " + variable + " = " + format_double(grid[k]) + ": " + errors[k]);
    return rows;
}

void emit(const CommonOptions& o, const Header& h, const Table& t, std::ostream& out)
{
    if (o.out.empty()) {
        o.json ? write_json(out, h, t) : write_csv(out, h, t);
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file '" + o.out + "'");
    o.json ? write_json(f, h, t) : write_csv(f, h, t);
}

std::vector<std::pair<std::string, std::string>> base_settings(const CommonOptions& o, const SweepSpec* sweep)
{
    std::vector<std::pair<std::string, std::string>> s;
    if (sweep) {
        s.emplace_back("sweep", sweep->variable + ":" + format_double(sweep->start) + ":" +
                                    format_double(sweep->stop) + ":" + std::to_string(sweep->steps) +
                                    (sweep->log_scale ? ":log" : ""));
    }
    s.emplace_back("mode", o.mode);
    s.emplace_back("seed", std::to_string(o.seed));
    return s;
}

void require_variable(const SweepSpec& s, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (s.variable == a) return;
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    throw ConfigError("sweep variable '" + s.variable + "' not supported here (allowed: " + list + ")");
}

// --- coverage ---------------------------------------------------------------

int cmd_coverage(const CommonOptions& o, std::ostream& out)
{
    const auto base = resolve_params(o);
    const auto sweep = parse_sweep(o.sweep);
    require_variable(sweep, {"r0", "H", "R_c", "lambda", "delta", "epsilon_db"});
    const auto mode = parse_mode(o.mode);
    const auto scheme = parse_scheme(o.scheme);
    const double r0_default = o.r0.value_or(200.0);
    const auto grid = sweep_grid(sweep);

    auto point = [&](double v) {
        SystemParams p = base;
        double r0 = r0_default;
        apply_sweep_value(p, r0, sweep.variable, v);
        require_valid(p);
        if (!(r0 >= 0.0 && r0 <= p.radius_rc)) throw ConfigError("r0 = " + format_double(r0) + " lies outside [0, R_c]");
        return std::pair{p, r0};
    };
    for (double v : grid) (void)point(v);

    struct Analytic {
        CoverageBreakdown b;
        double total = 0.0;
    };
    std::vector<Analytic> analytic(grid.size());
    if (mode.analytic) {
        analytic = map_grid<Analytic>(sweep.variable, grid, [&](double v) {
            const auto [p, r0] = point(v);
            Analytic a;
            if (scheme == Scheme::Proposed) {
                a.b = conditional_coverage(p, r0);
                a.total = a.b.total;
            } else {
                a.total = scheme_coverage(p, scheme, r0);
            }
            return a;
        });
    }

    std::vector<CoverageEstimate> sim(grid.size());
    if (mode.simulate) {
        if (sweep.variable == "epsilon_db") {
            std::vector<double> eps;
            for (double v : grid) eps.push_back(db_to_linear(v));
            sim = estimate_coverage_curve(base, r0_default, eps, base.sim_drops, o.seed, scheme);
        } else {
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const auto [p, r0] = point(grid[i]);
                sim[i] = estimate_coverage(p, r0, p.sim_drops, o.seed, scheme);
            }
        }
    }

    Table t;
    t.columns = {sweep.variable, "pc1", "pc2", "pc3", "total", "estimate", "ci_halfwidth", "scheme", "seed"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<Cell> row{grid[i]};
        if (mode.analytic && scheme == Scheme::Proposed) {
            row.insert(row.end(), {analytic[i].b.pc1, analytic[i].b.pc2, analytic[i].b.pc3});
        } else {
            row.insert(row.end(), {Cell{}, Cell{}, Cell{}});
        }
        row.push_back(mode.analytic ? Cell{analytic[i].total} : Cell{});
        if (mode.simulate) row.insert(row.end(), {sim[i].estimate, sim[i].half_width});
        else row.insert(row.end(), {Cell{}, Cell{}});
        row.push_back(std::string(to_string(scheme)));
        row.push_back(static_cast<std::int64_t>(o.seed));
        t.rows.push_back(std::move(row));
    }

    Header h{"coverage", base, base_settings(o, &sweep)};
    h.settings.emplace_back("scheme", std::string(to_string(scheme)));
    h.settings.emplace_back("r0", format_double(r0_default));
    emit(o, h, t, out);
    return kExitOk;
}

// --- area-fractions ------------------------------------------------------------

int cmd_area_fractions(const CommonOptions& o, std::ostream& out)
{
    const auto base = resolve_params(o);
    const auto sweep = parse_sweep(o.sweep);
    require_variable(sweep, {"H", "R_c", "delta", "lambda"});
    const auto mode = parse_mode(o.mode);
    const auto grid = sweep_grid(sweep);

    auto at = [&](double v) {
        SystemParams p = base;
        double unused = 0.0;
        apply_sweep_value(p, unused, sweep.variable, v);
        require_valid(p);
        return p;
    };
    for (double v : grid) (void)at(v);

    std::vector<AreaFractions> analytic(grid.size());
    if (mode.analytic)
        analytic = map_grid<AreaFractions>(sweep.variable, grid, [&](double v) { return area_fractions(at(v)); });
    std::vector<AreaFractions> sim(grid.size());
    if (mode.simulate)
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto p = at(grid[i]);
            sim[i] = estimate_area_fractions(p, p.sim_drops, o.seed);
        }

    Table t;
    t.columns = {sweep.variable, "f1", "f2", "f3", "sim_f1", "sim_f2", "sim_f3", "seed"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<Cell> row{grid[i]};
        if (mode.analytic) row.insert(row.end(), {analytic[i].f1, analytic[i].f2, analytic[i].f3});
        else row.insert(row.end(), {Cell{}, Cell{}, Cell{}});
        if (mode.simulate) row.insert(row.end(), {sim[i].f1, sim[i].f2, sim[i].f3});
        else row.insert(row.end(), {Cell{}, Cell{}, Cell{}});
        row.push_back(static_cast<std::int64_t>(o.seed));
        t.rows.push_back(std::move(row));
    }
    emit(o, {"area-fractions", base, base_settings(o, &sweep)}, t, out);
    return kExitOk;
}

// --- nse ---------------------------------------------------------------------

int cmd_nse(const CommonOptions& o, std::ostream& out)
{
    const auto base = resolve_params(o);
    const auto sweep = parse_sweep(o.sweep);
    require_variable(sweep, {"R_c"});
    const auto mode = parse_mode(o.mode);
    const auto grid = sweep_grid(sweep);
    constexpr Scheme schemes[3] = {Scheme::Proposed, Scheme::UavOnly, Scheme::GroundOnly};

    auto at = [&](double v) {
        SystemParams p = base;
        double unused = 0.0;
        apply_sweep_value(p, unused, sweep.variable, v);
        require_valid(p);
        return p;
    };
    for (double v : grid) (void)at(v);

    using Triple = std::array<double, 3>;
    std::vector<Triple> analytic(grid.size());
    if (mode.analytic)
        analytic = map_grid<Triple>(sweep.variable, grid, [&](double v) {
            const auto p = at(v);
            return Triple{nse(p, schemes[0]), nse(p, schemes[1]), nse(p, schemes[2])};
        });
    std::vector<Triple> sim(grid.size());
    if (mode.simulate)
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto p = at(grid[i]);
            for (std::size_t k = 0; k < 3; ++k) sim[i][k] = estimate_nse(p, p.sim_drops, o.seed, schemes[k]);
        }

    Table t;
    t.columns = {"R_c", "nse_proposed", "nse_uav_only", "nse_ground_only",
                 "sim_nse_proposed", "sim_nse_uav_only", "sim_nse_ground_only"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<Cell> row{grid[i]};
        for (std::size_t k = 0; k < 3; ++k) row.push_back(mode.analytic ? Cell{analytic[i][k]} : Cell{});
        for (std::size_t k = 0; k < 3; ++k) row.push_back(mode.simulate ? Cell{sim[i][k]} : Cell{});
        t.rows.push_back(std::move(row));
    }
    emit(o, {"nse", base, base_settings(o, &sweep)}, t, out);
    return kExitOk;
}

// --- validate ----------------------------------------------------------------

struct Check {
    std::string name;
    std::string point;
    double analytic;
    double empirical;
    double delta;
    double limit;
    bool pass;
};

int cmd_validate(const CommonOptions& o, std::ostream& out, std::ostream& err)
{
    const auto p = resolve_params(o);
    const double tol = o.tolerance;
    std::vector<Check> checks;

    // Coverage grid at the reference UE position.
    constexpr double r0_cov = 200.0;
    const std::vector<double> eps_db = {-10.0, -5.0, 0.0, 5.0, 10.0};
    if (r0_cov <= p.radius_rc) {
        std::vector<double> eps;
        for (double v : eps_db) eps.push_back(db_to_linear(v));
        const auto sim = estimate_coverage_curve(p, r0_cov, eps, p.sim_drops, o.seed);
        for (std::size_t i = 0; i < eps.size(); ++i) {
            SystemParams q = p;
            q.sir_threshold = eps[i];
            const double a = conditional_coverage(q, r0_cov).total;
            const double d = std::abs(a - sim[i].estimate);
            checks.push_back({"coverage", "r0=200 eps_db=" + format_double(eps_db[i]), a, sim[i].estimate, d, tol, d <= tol});
        }
    }

    // Region area fractions.
    {
        constexpr std::int64_t n = 100000;
        const auto a = area_fractions(p);
        const auto e = estimate_area_fractions(p, n, o.seed);
        const double av[3] = {a.f1, a.f2, a.f3};
        const double ev[3] = {e.f1, e.f2, e.f3};
        for (int i = 0; i < 3; ++i) {
            const double d = std::abs(av[i] - ev[i]);
            checks.push_back({"area_fraction", "f" + std::to_string(i + 1), av[i], ev[i], d, tol, d <= tol});
        }
    }

    // Nearest-BS distance law.
    {
        constexpr std::int64_t n = 100000;
        for (double r0 : {0.0, 150.0, 300.0, 450.0}) {
            if (r0 > p.radius_rc) continue;
            const auto g = make_hole_geometry(p, r0);
            const auto sample = sample_nearest_distances(p, r0, n, o.seed);
            const double ks = ks_statistic(sample, [&](double r) { return nearest_bs_cdf(g, r); });
            const double crit = ks_critical_99(n);
            checks.push_back({"nearest_ks", "r0=" + format_double(r0), 0.0, ks, ks, crit, ks <= crit});
        }
    }

    // Conditional Laplace transform of the interference.
    {
        const double r0 = std::min(300.0, p.radius_rc);
        const double r1 = p.radius_rc + 100.0;
        const double s = std::pow(r1, p.alpha_nlos) * 0.02;
        const std::int64_t trials = std::max<std::int64_t>(p.sim_drops / 10, 100);
        const auto ctx = make_context(p, r0, r1);
        const double a = laplace_i2(ctx, s);
        const auto e = estimate_conditional_laplace(p, r0, r1, s, trials, o.seed);
        const double d = std::abs(a - e.mean);
        checks.push_back({"laplace_i2", "r0=" + format_double(r0) + " r1=" + format_double(r1), a, e.mean, d, tol,
                          d <= tol});
    }

    Table t;
    t.columns = {"check", "point", "analytic", "empirical", "delta", "limit", "status"};
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.pass;
        t.rows.push_back({c.name, c.point, c.analytic, c.empirical, c.delta, c.limit, std::string(c.pass ? "pass" : "FAIL")});
    }
    auto settings = base_settings(o, nullptr);
    settings.emplace_back("tolerance", format_double(tol));
    emit(o, {"validate", p, settings}, t, out);
    if (!all) {
        for (const auto& c : checks)
            if (!c.pass)
                err << "validate: " << c.name << " [" << c.point << "] delta " << format_double(c.delta)
                    << " exceeds " << format_double(c.limit) << "\n";
        return kExitGateFailure;
    }
    return kExitOk;
}

}  // namespace

SweepSpec parse_sweep(std::string_view text)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4 && parts.size() != 5)
        throw ConfigError("sweep must look like VAR:START:STOP:STEPS[:log], got '" + std::string(text) + "'");

    static const std::vector<std::string> vars = {"r0", "H", "R_c", "lambda", "delta", "epsilon_db"};
    SweepSpec s;
    s.variable = parts[0];
    if (std::find(vars.begin(), vars.end(), s.variable) == vars.end())
        throw ConfigError("unknown sweep variable '" + s.variable + "'");
    try {
        std::size_t used = 0;
        s.start = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("start");
        s.stop = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("stop");
        s.steps = std::stoi(parts[3], &used);
        if (used != parts[3].size()) throw std::invalid_argument("steps");
    } catch (const std::exception&) {
        throw ConfigError("sweep '" + std::string(text) + "' has a malformed number");
    }
    if (parts.size() == 5) {
        if (parts[4] != "log" && parts[4] != "lin") throw ConfigError("sweep scale must be 'log' or 'lin'");
        s.log_scale = parts[4] == "log";
    }
    if (!(s.start < s.stop)) throw ConfigError("sweep start must be below stop");
    if (s.steps < 2) throw ConfigError("sweep needs at least 2 steps");
    if (s.log_scale && !(s.start > 0.0)) throw ConfigError("logarithmic sweep needs start > 0");
    return s;
}

std::vector<double> sweep_grid(const SweepSpec& spec)
{
    std::vector<double> g(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        const double t = static_cast<double>(i) / (spec.steps - 1);
        g[static_cast<std::size_t>(i)] = spec.log_scale
                                             ? std::exp(std::log(spec.start) + t * (std::log(spec.stop) - std::log(spec.start)))
                                             : spec.start + t * (spec.stop - spec.start);
    }
    g.back() = spec.stop;
    return g;
}

void apply_sweep_value(SystemParams& params, double& r0, const std::string& variable, double value)
{
    if (variable == "r0") r0 = value;
    else if (variable == "H") params.uav_height = value;
    else if (variable == "R_c") params.radius_rc = value;
    else if (variable == "lambda") params.bs_density = value;
    else if (variable == "delta") params.delta = value;
    else if (variable == "epsilon_db") params.sir_threshold = db_to_linear(value);
    else throw ConfigError("unknown sweep variable '" + variable + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"UAV-assisted cellular coverage: analytics and Monte Carlo", "uavcoop"};
    app.require_subcommand(1);

    CommonOptions o;
    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON parameter file (missing keys keep defaults)");
        sub->add_option("--seed", o.seed, "base seed for the simulator");
        sub->add_option("--drops", o.drops, "Monte Carlo drops (overrides sim_drops)");
        sub->add_option("--out", o.out, "output file (default: stdout)");
        sub->add_flag("--json", o.json, "write JSON instead of CSV");
        sub->add_option("--epsilon-db", o.epsilon_db, "SIR threshold in dB (overrides sir_threshold)");
    };

    auto* cov = app.add_subcommand("coverage", "coverage probability versus a swept variable");
    add_common(cov);
    cov->add_option("--sweep", o.sweep, "VAR:START:STOP:STEPS[:log]")->required();
    cov->add_option("--mode", o.mode, "analytic | simulate | both");
    cov->add_option("--scheme", o.scheme, "proposed | uav-only | ground-only");
    cov->add_option("--r0", o.r0, "UE distance from the disc centre in metres (default 200)");

    auto* area = app.add_subcommand("area-fractions", "expected region area fractions");
    add_common(area);
    area->add_option("--sweep", o.sweep, "VAR:START:STOP:STEPS[:log] over H, R_c, delta or lambda")->required();
    area->add_option("--mode", o.mode, "analytic | simulate | both");

    auto* nse_cmd = app.add_subcommand("nse", "normalized spectral efficiency of all schemes");
    add_common(nse_cmd);
    nse_cmd->add_option("--sweep", o.sweep, "R_c:START:STOP:STEPS[:log]")->required();
    nse_cmd->add_option("--mode", o.mode, "analytic | simulate | both");

    auto* val = app.add_subcommand("validate", "analytic versus Monte Carlo gate");
    add_common(val);
    val->add_option("--tolerance", o.tolerance, "absolute tolerance for probability checks");

    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "uavcoop: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (cov->parsed()) return cmd_coverage(o, out);
        if (area->parsed()) return cmd_area_fractions(o, out);
        if (nse_cmd->parsed()) return cmd_nse(o, out);
        if (val->parsed()) return cmd_validate(o, out, err);
    } catch (const ConfigError& e) {
        err << "uavcoop: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DomainError& e) {
        err << "uavcoop: " << e.what() << "\n";
        return kExitInputError;
    } catch (const PointFailure& e) {
        err << "uavcoop: " << e.what() << "\n";
        return kExitNumericalFailure;
    } catch (const IntegrationError& e) {
        err << "uavcoop: numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
    return kExitInputError;
}

int run_cli(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace uavcoop
