#ifndef NOVCONF_REPORT_HPP
#define NOVCONF_REPORT_HPP

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace novconf {

struct CheckLine {
    std::string name;
    bool passed = false;
    std::string detail;
};

// One scenario run. Parameters include the seed and every window bound, so a
// failure is replayable byte-for-byte. wall_ms is informational only and is
// deliberately excluded from the canonical renderings.
struct ScenarioReport {
    std::string scenario;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<CheckLine> checks;
    long long wall_ms = 0;

    bool passed() const
    {
        for (const auto& c : checks)
            if (!c.passed)
                return false;
        return true;
    }

    void add(std::string name, bool ok, std::string detail = "")
    {
        checks.push_back({std::move(name), ok, std::move(detail)});
    }

    void param(std::string name, std::string value)
    {
        params.emplace_back(std::move(name), std::move(value));
    }
};

inline std::string render_text(const ScenarioReport& r)
{
    std::ostringstream os;
    os << "scenario " << r.scenario << "\n";
    for (const auto& [k, v] : r.params)
        os << "  param " << k << " = " << v << "\n";
    for (const auto& c : r.checks) {
        os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
        if (!c.detail.empty())
            os << ": " << c.detail;
        os << "\n";
    }
    os << "result " << (r.passed() ? "pass" : "FAIL") << " (" << r.checks.size() << " checks)\n";
    return os.str();
}

inline nlohmann::json render_json(const ScenarioReport& r)
{
    nlohmann::json j;
    j["scenario"] = r.scenario;
    j["params"] = nlohmann::json::array();
    for (const auto& [k, v] : r.params)
        j["params"].push_back({{"name", k}, {"value", v}});
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["status"] = c.passed ? "pass" : "fail";
        if (!c.detail.empty())
            cj["detail"] = c.detail;
        j["checks"].push_back(cj);
    }
    j["passed"] = r.passed();
    return j;
}

} // namespace novconf

#endif
