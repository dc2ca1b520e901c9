#include "uavcoop/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace uavcoop {

namespace {

using nlohmann::json;

void check(ValidationReport& report, bool ok, const char* field, const char* message)
{
    if (!ok) report.push_back({field, message});
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

ValidationReport validate(const SystemParams& p)
{
    ValidationReport r;
    check(r, finite(p.env_b) && p.env_b > 0, "env_b", "must be finite and > 0");
    check(r, finite(p.env_c) && p.env_c > 0, "env_c", "must be finite and > 0");
    check(r, finite(p.radius_rc) && p.radius_rc > 0, "radius_rc", "must be > 0");
    check(r, finite(p.uav_height) && p.uav_height >= 0, "uav_height", "must be >= 0");
    check(r, finite(p.bs_density) && p.bs_density > 0, "bs_density", "must be > 0");
    check(r, finite(p.alpha_los) && p.alpha_los > 2, "alpha_los", "must be > 2");
    check(r, finite(p.alpha_nlos) && p.alpha_nlos > 2, "alpha_nlos",
          "must be > 2 for the interference integrals to converge");
    check(r, p.m_los >= 1 && p.m_los <= kMaxNakagamiOrder, "m_los", "must be an integer in [1, 20]");
    check(r, p.delta >= 0 && p.delta <= 1, "delta", "must lie in [0, 1]");
    check(r, finite(p.sir_threshold) && p.sir_threshold > 0, "sir_threshold", "must be finite and > 0");
    check(r, p.quad_n >= 1, "quad_n", "must be >= 1");
    check(r, finite(p.sim_radius) && p.sim_radius > p.radius_rc, "sim_radius", "must exceed radius_rc");
    check(r, p.sim_drops >= 1, "sim_drops", "must be >= 1");
    return r;
}

void require_valid(const SystemParams& params)
{
    const auto report = validate(params);
    if (!report.empty())
        throw ConfigError("invalid parameter '" + report.front().field + "': " + report.front().message);
}

const std::vector<std::string>& param_keys()
{
    static const std::vector<std::string> keys = {
        "env_b", "env_c", "radius_rc", "uav_height", "bs_density", "alpha_los", "alpha_nlos",
        "m_los", "delta", "sir_threshold", "quad_n", "sim_radius", "sim_drops"};
    return keys;
}

namespace {

json to_json(const SystemParams& p)
{
    json j = json::object();
    for (const auto& key : param_keys()) {
        if (key == "m_los") j[key] = p.m_los;
        else if (key == "quad_n") j[key] = p.quad_n;
        else if (key == "sim_drops") j[key] = p.sim_drops;
        else j[key] = get_param(p, key);
    }
    return j;
}

bool is_integer_key(const std::string& key)
{
    return key == "m_los" || key == "quad_n" || key == "sim_drops";
}

}  // namespace

std::string to_config_text(const SystemParams& params)
{
    return to_json(params).dump(2) + "\n";
}

SystemParams parse_config_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a flat key-value object");

    SystemParams p;
    const auto& keys = param_keys();
    for (const auto& [key, value] : j.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError("unknown config key '" + key + "'");
        if (is_integer_key(key)) {
            if (!value.is_number_integer())
                throw ConfigError("config key '" + key + "' must be an integer");
            const auto v = value.get<std::int64_t>();
            if (key == "sim_drops") p.sim_drops = v;
            else if (key == "m_los") p.m_los = static_cast<int>(v);
            else p.quad_n = static_cast<int>(v);
        } else {
            if (!value.is_number())
                throw ConfigError("config key '" + key + "' must be a number");
            set_param(p, key, value.get<double>());
        }
    }
    return p;
}

SystemParams load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void set_param(SystemParams& p, const std::string& key, double v)
{
    if (key == "env_b") p.env_b = v;
    else if (key == "env_c") p.env_c = v;
    else if (key == "radius_rc") p.radius_rc = v;
    else if (key == "uav_height") p.uav_height = v;
    else if (key == "bs_density") p.bs_density = v;
    else if (key == "alpha_los") p.alpha_los = v;
    else if (key == "alpha_nlos") p.alpha_nlos = v;
    else if (key == "m_los") p.m_los = static_cast<int>(std::lround(v));
    else if (key == "delta") p.delta = v;
    else if (key == "sir_threshold") p.sir_threshold = v;
    else if (key == "quad_n") p.quad_n = static_cast<int>(std::lround(v));
    else if (key == "sim_radius") p.sim_radius = v;
    else if (key == "sim_drops") p.sim_drops = std::llround(v);
    else throw ConfigError("unknown parameter '" + key + "'");
}

double get_param(const SystemParams& p, const std::string& key)
{
    if (key == "env_b") return p.env_b;
    if (key == "env_c") return p.env_c;
    if (key == "radius_rc") return p.radius_rc;
    if (key == "uav_height") return p.uav_height;
    if (key == "bs_density") return p.bs_density;
    if (key == "alpha_los") return p.alpha_los;
    if (key == "alpha_nlos") return p.alpha_nlos;
    if (key == "m_los") return p.m_los;
    if (key == "delta") return p.delta;
    if (key == "sir_threshold") return p.sir_threshold;
    if (key == "quad_n") return p.quad_n;
    if (key == "sim_radius") return p.sim_radius;
    if (key == "sim_drops") return static_cast<double>(p.sim_drops);
    throw ConfigError("unknown parameter '" + key + "'");
}

}  // namespace uavcoop
