#ifndef INVFORGE_CONFIG_HPP
#define INVFORGE_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "invforge/groups.hpp"

namespace invforge::cli {

struct TaskSpec {
    std::string type;         // construct | verify | stabilizer | jacobian | bench
    std::string family;       // construct/jacobian: dickson|steinberg|theorem41
    std::string claim;        // verify
    nlohmann::json params = nlohmann::json::object(); // verify passthrough
    std::vector<int> sizes;   // bench
    int k = 1;                // bench: Frobenius exponent for the l_ij family
};

struct RunConfig {
    std::uint32_t p = 2;
    std::uint32_t e = 1;
    int m = 1;
    int n = 1; // coordinate count (2n for symplectic grids)
    groups::GroupKind group = groups::GroupKind::GL;
    std::string form_text = "standard";
    std::vector<TaskSpec> tasks;
    std::uint64_t seed = 0;
    std::uint64_t enumeration_cap = 1000000;
    std::uint64_t term_count_cap = 1000000;
    std::string out_dir = "artifacts";
};

/// Schema-validated parse; unknown keys are rejected at every level.
/// Throws ConfigInvalid.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

} // namespace invforge::cli

#endif
