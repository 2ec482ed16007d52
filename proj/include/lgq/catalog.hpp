#pragma once
/// Registry of worked examples: each entry carries ready-made W-data, its
/// natural parameter domain with punctures and test loops, and the expected
/// facts recorded for it (total curvature, exceptional-value counts, target
/// space).  Entry names accept embedded parameters, e.g.
/// "ma-wang-wang-4.34(n=3)"; parameters not given take the documented
/// defaults.

#include <string>
#include <vector>

#include "lgq/wdata.hpp"

namespace lgq {

struct CatalogEntry {
    std::string name;   // resolved name with parameters
    WData data;
    std::string target = "R3,1"; // "R3,1" stationary or "R4" minimal (dual-form data)
    bool has_expected_total_curvature = false;
    double expected_total_curvature = 0;
    int expected_exceptional_values = -1; // of psi1, when recorded
    bool multivalued_on_base = false;     // single-valued only on a covering
    std::string notes;
};

/// Look up an entry; throws UNKNOWN_EXAMPLE for unknown names and
/// PARSE_ERROR for malformed parameter lists.
CatalogEntry catalog(const std::string& name);

/// Base names in the registry.
std::vector<std::string> catalog_names();

/// Human-readable registry: one block per entry with formulas, domain,
/// parameters and expected facts.
std::string catalog_manifest();

} // namespace lgq
