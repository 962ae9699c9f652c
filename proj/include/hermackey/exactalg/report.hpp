#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hermackey {

struct CheckResult {
    CheckResult() = default;
    explicit CheckResult(std::string n) : name(std::move(n)) {}

    std::string name;
    bool passed = true;
    std::string witness;  // first counterexample, empty on PASS
    std::uint64_t cases = 0;
    bool sampled = false;
};

struct CheckReport {
    std::string subject;
    std::vector<CheckResult> checks;
    std::optional<std::uint64_t> seed;  // set when any check was sampled

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const CheckResult* first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return &c;
        return nullptr;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    void add(CheckResult c) { checks.push_back(std::move(c)); }
    void merge(const CheckReport& o, const std::string& prefix = "") {
        for (auto c : o.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
        if (o.seed) seed = o.seed;
    }
};

struct SearchPolicy {
    std::uint64_t exhaustive_limit = 100'000'000;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 20240917;
};

/// Runs `test` over the product of index ranges [0,sizes[i]). The test gets
/// the tuple and returns a witness string on failure. Exhaustive below the
/// policy limit, otherwise seeded uniform sampling.
template <std::size_t K, class F>
CheckResult run_tuple_check(std::string name, const std::array<std::uint64_t, K>& sizes, const SearchPolicy& policy,
                            F&& test) {
    CheckResult res(std::move(name));
    long double total = 1;
    for (auto s : sizes) total *= static_cast<long double>(s);
    if (total == 0) return res;
    std::array<std::uint64_t, K> t{};
    if (total <= static_cast<long double>(policy.exhaustive_limit)) {
        const auto n = static_cast<std::uint64_t>(total);
        for (std::uint64_t c = 0; c < n; ++c) {
            ++res.cases;
            if (std::optional<std::string> w = test(t)) {
                res.passed = false;
                res.witness = *w;
                return res;
            }
            for (std::size_t i = K; i-- > 0;) {
                if (++t[i] < sizes[i]) break;
                t[i] = 0;
            }
        }
        return res;
    }
    res.sampled = true;
    std::mt19937_64 rng(policy.seed);
    for (std::uint64_t c = 0; c < policy.samples; ++c) {
        for (std::size_t i = 0; i < K; ++i) t[i] = rng() % sizes[i];
        ++res.cases;
        if (std::optional<std::string> w = test(t)) {
            res.passed = false;
            res.witness = *w;
            return res;
        }
    }
    return res;
}

}  // namespace hermackey
