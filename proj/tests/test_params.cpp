#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "uavcoop/params.hpp"

using namespace uavcoop;

namespace {

bool mentions(const ValidationReport& r, const std::string& field)
{
    return std::any_of(r.begin(), r.end(), [&](const Violation& v) { return v.field == field; });
}

}  // namespace

TEST(Params, DefaultsMatchTheReferenceSetupAndValidate)
{
    const SystemParams p;
    EXPECT_DOUBLE_EQ(p.env_b, 0.136);
    EXPECT_DOUBLE_EQ(p.env_c, 11.95);
    EXPECT_DOUBLE_EQ(p.radius_rc, 500.0);
    EXPECT_DOUBLE_EQ(p.uav_height, 300.0);
    EXPECT_DOUBLE_EQ(p.alpha_los, 2.5);
    EXPECT_DOUBLE_EQ(p.alpha_nlos, 3.0);
    EXPECT_EQ(p.m_los, 4);
    EXPECT_DOUBLE_EQ(p.bs_density, 2e-5);
    EXPECT_EQ(p.quad_n, 32);
    EXPECT_TRUE(validate(p).empty());
}

TEST(Params, ReportsEveryViolatedField)
{
    SystemParams p;
    p.alpha_nlos = 2.0;
    EXPECT_TRUE(mentions(validate(p), "alpha_nlos"));

    p = {};
    p.delta = 1.5;
    EXPECT_TRUE(mentions(validate(p), "delta"));

    p = {};
    p.radius_rc = -1.0;
    p.sim_radius = 10.0;
    p.m_los = 0;
    p.sir_threshold = 0.0;
    const auto r = validate(p);
    EXPECT_TRUE(mentions(r, "radius_rc"));
    EXPECT_TRUE(mentions(r, "m_los"));
    EXPECT_TRUE(mentions(r, "sir_threshold"));
}

TEST(Params, ValidateIsDeterministic)
{
    SystemParams p;
    p.delta = -0.1;
    p.quad_n = 0;
    const auto a = validate(p);
    const auto b = validate(p);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].field, b[i].field);
}

TEST(Params, SerializeParseRoundTrip)
{
    SystemParams p;
    p.delta = 0.37;
    p.uav_height = 123.456789012345;
    p.bs_density = 3.3e-6;
    p.m_los = 7;
    p.sim_drops = 123456789012;
    EXPECT_EQ(parse_config_text(to_config_text(p)), p);
}

TEST(Params, PartialConfigKeepsDefaults)
{
    const auto p = parse_config_text(R"({"delta": 0.8, "m_los": 2})");
    SystemParams expect;
    expect.delta = 0.8;
    expect.m_los = 2;
    EXPECT_EQ(p, expect);
}

TEST(Params, UnknownKeyIsRejectedByName)
{
    try {
        (void)parse_config_text(R"({"delt": 0.2})");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("delt"), std::string::npos);
    }
}

TEST(Params, IntegerKeysRejectFractions)
{
    EXPECT_THROW((void)parse_config_text(R"({"m_los": 2.5})"), ConfigError);
    EXPECT_THROW((void)parse_config_text(R"({"delta": "x"})"), ConfigError);
    EXPECT_THROW((void)parse_config_text("[1, 2]"), ConfigError);
    EXPECT_THROW((void)parse_config_text("{"), ConfigError);
}

TEST(Params, LoadConfigFromFile)
{
    const auto path = std::filesystem::temp_directory_path() / "uavcoop_params_test.json";
    {
        std::ofstream f(path);
        f << R"({"uav_height": 150})";
    }
    EXPECT_DOUBLE_EQ(load_config(path).uav_height, 150.0);
    std::filesystem::remove(path);
    EXPECT_THROW((void)load_config(path), ConfigError);
}

TEST(Params, RequireValidThrowsWithField)
{
    SystemParams p;
    p.delta = 2.0;
    try {
        require_valid(p);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("delta"), std::string::npos);
    }
}

TEST(Params, DbConversion)
{
    EXPECT_DOUBLE_EQ(db_to_linear(0.0), 1.0);
    EXPECT_NEAR(db_to_linear(10.0), 10.0, 1e-12);
    EXPECT_NEAR(db_to_linear(-3.0), 0.501187233627, 1e-12);
}
