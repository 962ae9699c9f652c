#pragma once

// Reports: human-readable text and a machine-readable JSON document with the
// same content. Wall-clock times appear only in the text form, on request.

#include <json.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "hermackey/exactalg/abelian_group.hpp"
#include "hermackey/exactalg/report.hpp"

namespace hermackey::cli {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, error };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "PASS";
        case Status::fail: return "FAIL";
        case Status::error: return "ERROR";
    }
    return "";
}

/// "(stable)", "(truncated)" and so on for a presented group.
inline std::string flag_text(const PresentedGroup& g) {
    if (g.stable && *g.stable) return "(stable)";
    if (g.stable) return "(not stable: changed from the previous bound)";
    if (g.truncated) return "(truncated, no stability claim)";
    return "";
}

inline Json group_json(const PresentedGroup& g) {
    Json j;
    j["group"] = g.to_string();
    Json orders = Json::array();
    for (Int o : g.group.orders()) orders.push_back(o);
    j["invariant_factors"] = orders;
    if (g.stable) j["stable"] = *g.stable;
    j["truncated"] = g.truncated;
    j["coefficients"] = g.coefficients;
    return j;
}

struct TaskReport {
    std::string echo;
    std::vector<CheckResult> checks;
    std::vector<std::string> lines;  // human-readable results
    Json results = Json::object();   // the same results, structured
    std::optional<std::uint64_t> seed;
    std::optional<std::string> error;
    double seconds = 0;

    Status status() const {
        if (error) return Status::error;
        for (const auto& c : checks)
            if (!c.passed) return Status::fail;
        return Status::pass;
    }

    void add_checks(const CheckReport& r, const std::string& prefix = "") {
        for (auto c : r.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
        if (r.seed) seed = r.seed;
    }
    void add_group(const std::string& key, const PresentedGroup& g) {
        std::string flag = flag_text(g);
        lines.push_back(key + " = " + g.to_string() + (flag.empty() ? "" : " " + flag));
        results[key] = group_json(g);
    }
};

inline std::string render_text(const TaskReport& t, bool timing) {
    std::string s = "== " + t.echo + "\n";
    for (const auto& l : t.lines) s += l + "\n";
    for (const auto& c : t.checks) {
        s += std::string(c.passed ? "PASS  " : "FAIL  ") + c.name + "  [" + std::to_string(c.cases) + (c.cases == 1 ? " case" : " cases") +
             (c.sampled ? ", sampled" : "") + "]\n";
        if (!c.passed) s += "      witness: " + c.witness + "\n";
    }
    if (t.seed) s += "seed: " + std::to_string(*t.seed) + "\n";
    if (t.error) s += "ERROR " + *t.error + "\n";
    if (timing) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "time: %.3f s\n", t.seconds);
        s += buf;
    }
    s += std::string("status: ") + status_name(t.status()) + "\n";
    return s;
}

inline Json check_json(const CheckResult& c) {
    Json j;
    j["name"] = c.name;
    j["status"] = c.passed ? "PASS" : "FAIL";
    j["cases"] = c.cases;
    j["sampled"] = c.sampled;
    if (!c.passed) j["witness"] = c.witness;
    return j;
}

inline Json task_json(const TaskReport& t) {
    Json j;
    j["command"] = t.echo;
    j["status"] = status_name(t.status());
    Json checks = Json::array();
    for (const auto& c : t.checks) checks.push_back(check_json(c));
    j["checks"] = checks;
    j["results"] = t.results;
    if (t.seed) j["seed"] = *t.seed;
    if (t.error) j["error"] = *t.error;
    return j;
}

/// Overall status: error beats failure beats success.
inline Status overall(const std::vector<TaskReport>& tasks) {
    Status s = Status::pass;
    for (const auto& t : tasks) {
        if (t.status() == Status::error) return Status::error;
        if (t.status() == Status::fail) s = Status::fail;
    }
    return s;
}

inline Json report_json(const std::string& invocation, std::uint64_t seed, const std::vector<TaskReport>& tasks) {
    Json j;
    j["tool"] = "hermackey";
    j["invocation"] = invocation;
    j["seed"] = seed;
    Json arr = Json::array();
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& t : tasks) {
        arr.push_back(task_json(t));
        ++counts[static_cast<int>(t.status())];
    }
    j["tasks"] = arr;
    j["summary"] = {{"tasks", tasks.size()}, {"passed", counts[0]}, {"failed", counts[1]}, {"errors", counts[2]}};
    j["status"] = status_name(overall(tasks));
    return j;
}

}  // namespace hermackey::cli
