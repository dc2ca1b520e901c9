#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <json.hpp>

#include "uavcoop/cli.hpp"

using namespace uavcoop;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "uavcoop");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// Data lines of a CSV body, header comments and column line removed.
std::vector<std::vector<std::string>> csv_rows(const std::string& text, std::vector<std::string>* columns = nullptr)
{
    std::istringstream is(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    bool have_columns = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        if (!have_columns) {
            have_columns = true;
            if (columns) *columns = cells;
            continue;
        }
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column_index(const std::vector<std::string>& cols, const std::string& name)
{
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == name) return i;
    ADD_FAILURE() << "missing column " << name;
    return 0;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("uavcoop_test_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST(Sweep, ParsesLinearAndLogSpecs)
{
    const auto s = parse_sweep("r0:0:500:6");
    EXPECT_EQ(s.variable, "r0");
    EXPECT_EQ(s.steps, 6);
    EXPECT_FALSE(s.log_scale);
    const auto g = sweep_grid(s);
    ASSERT_EQ(g.size(), 6u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 500.0);
    EXPECT_DOUBLE_EQ(g[2], 200.0);

    const auto l = parse_sweep("lambda:1e-6:1e-4:3:log");
    EXPECT_TRUE(l.log_scale);
    const auto lg = sweep_grid(l);
    EXPECT_NEAR(lg[1], 1e-5, 1e-18);
    EXPECT_EQ(lg.back(), 1e-4);
}

TEST(Sweep, RejectsMalformedSpecs)
{
    for (const char* bad : {"r0:0:500", "depth:0:1:3", "r0:a:500:3", "r0:0:500:1", "r0:500:0:3", "H:0:10:3:log",
                            "H:1:10:3:cubic", "r0:0:500:3x"})
        EXPECT_THROW((void)parse_sweep(bad), ConfigError) << bad;
}

TEST(Sweep, AppliesValues)
{
    SystemParams p;
    double r0 = 0.0;
    apply_sweep_value(p, r0, "r0", 120.0);
    apply_sweep_value(p, r0, "H", 150.0);
    apply_sweep_value(p, r0, "epsilon_db", 10.0);
    apply_sweep_value(p, r0, "delta", 0.7);
    EXPECT_EQ(r0, 120.0);
    EXPECT_EQ(p.uav_height, 150.0);
    EXPECT_NEAR(p.sir_threshold, 10.0, 1e-12);
    EXPECT_EQ(p.delta, 0.7);
    EXPECT_THROW(apply_sweep_value(p, r0, "m_los", 2.0), ConfigError);
}

TEST(Cli, CoverageSweepWritesOneRowPerPoint)
{
    const auto r = run({"coverage", "--sweep", "r0:0:500:6"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("# uavcoop coverage", 0), 0u);
    EXPECT_NE(r.out.find("# delta = 0.2"), std::string::npos);
    std::vector<std::string> cols;
    const auto rows = csv_rows(r.out, &cols);
    ASSERT_EQ(rows.size(), 6u);
    const auto it = column_index(cols, "total");
    const auto ie = column_index(cols, "estimate");
    for (const auto& row : rows) {
        const double total = std::stod(row[it]);
        EXPECT_GE(total, 0.0);
        EXPECT_LE(total, 1.0);
        EXPECT_TRUE(row[ie].empty());
    }
}

TEST(Cli, CoverageFallsWithHeightAtCentre)
{
    const auto r = run({"coverage", "--sweep", "H:0:1000:11", "--r0", "0"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::vector<std::string> cols;
    const auto rows = csv_rows(r.out, &cols);
    ASSERT_EQ(rows.size(), 11u);
    const auto it = column_index(cols, "total");
    double prev = 2.0;
    for (const auto& row : rows) {
        const double v = std::stod(row[it]);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(Cli, SimulatedEpsilonSweepSharesDrops)
{
    const auto r = run({"coverage", "--sweep", "epsilon_db:-10:10:3", "--mode", "both", "--drops", "300", "--seed", "5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::vector<std::string> cols;
    const auto rows = csv_rows(r.out, &cols);
    ASSERT_EQ(rows.size(), 3u);
    const auto ie = column_index(cols, "estimate");
    const auto is = column_index(cols, "seed");
    double prev = 2.0;
    for (const auto& row : rows) {
        const double v = std::stod(row[ie]);
        EXPECT_LE(v, prev);
        EXPECT_EQ(row[is], "5");
        prev = v;
    }
}

TEST(Cli, AreaFractionsDeltaSweep)
{
    const auto r = run({"area-fractions", "--sweep", "delta:0.05:0.95:10"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::vector<std::string> cols;
    const auto rows = csv_rows(r.out, &cols);
    ASSERT_EQ(rows.size(), 10u);
    const auto i1 = column_index(cols, "f1");
    const auto i2 = column_index(cols, "f2");
    const auto i3 = column_index(cols, "f3");
    double prev = 2.0;
    for (const auto& row : rows) {
        const double f2 = std::stod(row[i2]);
        EXPECT_LE(f2, prev);
        EXPECT_NEAR(std::stod(row[i1]) + f2 + std::stod(row[i3]), 1.0, 1e-6);
        prev = f2;
    }
}

TEST(Cli, NseJsonOutputParses)
{
    const auto path = std::filesystem::temp_directory_path() / "uavcoop_test_nse.json";
    const auto r = run({"nse", "--sweep", "R_c:100:1000:2", "--json", "--out", path.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream f(path);
    const auto doc = nlohmann::json::parse(f);
    EXPECT_EQ(doc["command"], "nse");
    ASSERT_EQ(doc["rows"].size(), 2u);
    EXPECT_EQ(doc["params"]["delta"], 0.2);
    for (const auto& row : doc["rows"]) {
        EXPECT_GE(row["nse_proposed"].get<double>(), row["nse_uav_only"].get<double>());
        EXPECT_GE(row["nse_proposed"].get<double>(), row["nse_ground_only"].get<double>());
        EXPECT_TRUE(row["sim_nse_proposed"].is_null());
    }
    std::filesystem::remove(path);
}

TEST(Cli, InvalidParameterNamesTheKey)
{
    const auto cfg = temp_file("bad_delta.json", R"({"delta": 1.5})");
    const auto r = run({"coverage", "--config", cfg.string(), "--sweep", "r0:0:500:3"});
    EXPECT_EQ(r.code, kExitInputError);
    EXPECT_NE(r.err.find("delta"), std::string::npos) << r.err;

    const auto unknown = temp_file("unknown.json", R"({"alpha": 3})");
    const auto u = run({"coverage", "--config", unknown.string(), "--sweep", "r0:0:500:3"});
    EXPECT_EQ(u.code, kExitInputError);
    EXPECT_NE(u.err.find("alpha"), std::string::npos) << u.err;
}

TEST(Cli, CorruptedConfigIsAnInputError)
{
    const auto cfg = temp_file("corrupt.json", "{\"delta\": 0.2,,");
    EXPECT_EQ(run({"area-fractions", "--config", cfg.string(), "--sweep", "delta:0.1:0.9:3"}).code, kExitInputError);
    EXPECT_EQ(run({"area-fractions", "--config", "/nonexistent/uavcoop.json", "--sweep", "delta:0.1:0.9:3"}).code,
              kExitInputError);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, kExitInputError);
    EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
    EXPECT_EQ(run({"coverage"}).code, kExitInputError);
    EXPECT_EQ(run({"coverage", "--sweep", "r0:0:900:3"}).code, kExitInputError);
    EXPECT_EQ(run({"coverage", "--sweep", "r0:0:500:3", "--mode", "fast"}).code, kExitInputError);
    EXPECT_EQ(run({"nse", "--sweep", "H:0:500:3"}).code, kExitInputError);
    EXPECT_EQ(run({"coverage", "--sweep", "r0:0:500:3", "--epsilon-db", "nan"}).code, kExitInputError);
    const auto h = run({"--help"});
    EXPECT_EQ(h.code, kExitOk);
    EXPECT_NE(h.out.find("validate"), std::string::npos);
}

TEST(Cli, ValidateGateFailsAtImpossibleTolerance)
{
    const auto r = run({"validate", "--drops", "200", "--tolerance", "1e-6", "--seed", "3"});
    EXPECT_EQ(r.code, kExitGateFailure);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.err.find("exceeds"), std::string::npos);
}

TEST(Cli, BinaryRunsStandalone)
{
    const std::string cmd = std::string(UAVCOOP_CLI_PATH) + " coverage --sweep r0:0:500:2 > /dev/null";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    const std::string bad = std::string(UAVCOOP_CLI_PATH) + " coverage --sweep nope 2> /dev/null";
    const int status = std::system(bad.c_str());
    EXPECT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), kExitInputError);
}

TEST(Cli, ShippedConfigMatchesDefaults)
{
    EXPECT_EQ(load_config(std::string(UAVCOOP_SOURCE_DIR) + "/configs/paper_default.json"), SystemParams{});
}
