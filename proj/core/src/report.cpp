#include "invforge/report.hpp"

#include <cctype>
#include <sstream>

namespace invforge {

nlohmann::json VerdictReport::to_json(bool include_timing) const {
    nlohmann::json j;
    j["claim"] = claim;
    j["params"] = params;
    j["method"] = method;
    j["verdict"] = verdict;
    j["seed"] = seed;
    if (trials > 0) j["trials"] = trials;
    if (!witness.is_null()) j["witness"] = witness;
    if (!extra.empty()) j["extra"] = extra;
    if (include_timing) j["elapsed_ms"] = elapsed_ms;
    return j;
}

std::string VerdictReport::summary_line() const {
    std::ostringstream os;
    std::string v = verdict;
    for (auto& c : v) c = (char)std::toupper((unsigned char)c);
    os << v << " " << claim;
    if (!params.empty()) os << " " << params.dump();
    os << " (" << method;
    if (trials > 0) os << ", trials=" << trials;
    os << ", " << elapsed_ms << " ms)";
    return os.str();
}

} // namespace invforge
