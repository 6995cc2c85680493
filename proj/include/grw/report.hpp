#pragma once
// Serialization of check results: versioned JSON documents with deterministic
// key order (objects serialize alphabetically) and CSV for capacity scans.
// Identical inputs produce byte-identical documents.

#include <string>
#include <vector>

#include "grw/identities.hpp"
#include "grw/parabolic.hpp"

namespace grw {

// {"schema_version": 1, "kind": "verify", ...}; one object per check plus one
// per witness run. all_pass summarizes every entry.
std::string verify_report_json(const std::string& scene_name,
                               const std::vector<ResidualReport>& checks,
                               const std::vector<WitnessReport>& witnesses);

// {"schema_version": 1, "kind": "theorem", ...}; every hypothesis receives a
// verdict, plus the sampled conclusion data.
std::string theorem_report_json(const std::string& scene_name,
                                const HypothesisReport& rep);

// Header r,R,capacity,dofs,residual followed by one row per scan point.
std::string capacity_csv(const std::vector<CapacityResult>& points);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace grw
