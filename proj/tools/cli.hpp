#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "fermat/solutions.hpp"
#include "fermat/verifier.hpp"

namespace fermat::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2, kComputation = 3 };

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const VerificationReport& report);
Json to_json(const Certificate& cert);
Json to_json(const Solution& solution);

/// Runs one invocation. `args` excludes the program name. The JSON document is
/// written to `out` (or to the --out file); usage diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermat::cli
