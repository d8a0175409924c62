#pragma once

#include <ostream>
#include <string>

namespace phaseflow::cli {

/// Run the named invariant suite ("all" or a module name). Prints one
/// "ok <suite>/<check>" or "FAIL <suite>/<check>" line per check; returns
/// true when every check passed.
bool run_validation(const std::string& suite, unsigned seed, std::ostream& out);

}  // namespace phaseflow::cli
