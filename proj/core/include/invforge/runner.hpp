#ifndef INVFORGE_RUNNER_HPP
#define INVFORGE_RUNNER_HPP

#include <iosfwd>
#include <vector>

#include "invforge/config.hpp"
#include "invforge/report.hpp"

namespace invforge::cli {

struct RunResult {
    int exit_code = 0;
    std::vector<VerdictReport> reports;
};

/// Executes the config's tasks in order, writing canonical polynomial files
/// and JSON reports under out_dir. `task_filter` restricts to one task type
/// ("" runs everything); an empty selection is a usage error (exit 2).
/// Exit code: 0 all pass, 1 any fail, 3 inconclusive-only.
/// The INVFORGE_CAP environment variable overrides the enumeration cap.
RunResult run_tasks(const RunConfig& cfg, const std::string& task_filter,
                    const std::string& out_dir, std::ostream& log);

} // namespace invforge::cli

#endif
