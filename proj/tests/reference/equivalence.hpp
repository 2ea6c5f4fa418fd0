#pragma once

#include <string>
#include <vector>

#include "geoden/analytics.hpp"

namespace geoden::reference {

/// Runs every kernel on one context and compares it with the naive reference.
/// Returns one line per mismatch; empty when everything agrees exactly.
std::vector<std::string> compare_with_reference(const Snapshot& snapshot, const SelectionContext& context);

/// Checks each trajectory vertex against an independently filtered per-year
/// centroid. Returns the number of vertices checked; mismatches go to `errors`.
std::size_t check_trajectory_vertices(const Snapshot& snapshot, const SelectionContext& context,
                                      std::vector<std::string>& errors);

}  // namespace geoden::reference
