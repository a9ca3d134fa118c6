#pragma once

#include <string>

namespace dimkit_cli {

/// Run the named invariant checks (all of them when filter is empty,
/// otherwise those whose name contains filter as a substring). Prints one
/// PASS/FAIL line per check plus a summary. `oracle_tol` is the relative
/// tolerance handed to quadrature oracles; identity thresholds are pinned.
/// Returns the number of failed checks.
int run_verify(const std::string& filter, double oracle_tol);

}  // namespace dimkit_cli
