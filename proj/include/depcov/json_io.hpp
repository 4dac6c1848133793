#pragma once

#include <string>

#include "json.hpp"

#include "depcov/perm_test.hpp"
#include "depcov/types.hpp"

// JSON forms of the report types. Keys are part of the output contract:
// reports use exactly dcov, dcor, cov_dist, cross_cov_dist, method,
// degenerate. Ordered maps keep emission byte-stable across runs.

namespace depcov {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json report_to_json(const DependenceReport& rep, bool include_sqrt = false);
DependenceReport report_from_json(const Json& j);

Json perm_result_to_json(const PermTestResult& r);
PermTestResult perm_result_from_json(const Json& j);

Json distribution_to_json(const DiscreteBivariate& d);
DiscreteBivariate distribution_from_json(const Json& j);

Method parse_method(const std::string& name);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

}  // namespace depcov
