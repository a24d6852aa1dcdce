#ifndef INVFORGE_REPORT_HPP
#define INVFORGE_REPORT_HPP

#include <chrono>
#include <cstdint>
#include <string>

#include <json.hpp>

namespace invforge {

/// Outcome of one machine-checked claim. Replayable: the same
/// (claim, params, seed) always reproduces the same verdict and witness.
struct VerdictReport {
    std::string claim;
    nlohmann::json params = nlohmann::json::object();
    std::string method;  // "exact" | "probabilistic" | "enumeration"
    std::string verdict; // "pass" | "fail" | "inconclusive"
    nlohmann::json witness; // null unless a counterexample/point was found
    std::uint64_t seed = 0;
    int trials = 0; // probabilistic methods only
    double elapsed_ms = 0.0;
    nlohmann::json extra = nlohmann::json::object();

    bool passed() const { return verdict == "pass"; }
    bool failed() const { return verdict == "fail"; }
    bool inconclusive() const { return verdict == "inconclusive"; }

    /// Timing is run metadata, not part of the replayable artifact; it is
    /// omitted by default so artifact bytes depend only on (config, seed).
    nlohmann::json to_json(bool include_timing = false) const;

    /// One human-readable line ("PASS lemma_27 (exact, 1.2 ms)").
    std::string summary_line() const;
};

class StopWatch {
public:
    StopWatch() : t0_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        auto dt = std::chrono::steady_clock::now() - t0_;
        return std::chrono::duration<double, std::milli>(dt).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

} // namespace invforge

#endif
