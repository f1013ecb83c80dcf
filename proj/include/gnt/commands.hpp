#pragma once

#include <string_view>
#include <vector>

#include "gnt/report.hpp"

namespace gnt {

// Subcommand names accepted by run_command.
const std::vector<std::string_view>& command_names();

// Runs one subcommand from its JSON configuration and returns the report,
// with the CSV companion (if any) attached. Unknown keys are rejected with
// ParseError; other failures raise the matching Error subclass.
//
//   identities  randomized algebra suite
//   sigma       sigma_u and T_u of a tuple given inline or by file
//   functional  integral of sigma_u over a catalog immersion
//   variation   first variation: formula against finite differences
//   minimality  sigma_u-minimality residuals
//   check-all   acceptance criteria 1..8
SuiteReport run_command(std::string_view command, const Json& config);

}  // namespace gnt
