#pragma once

#include <memory>
#include <random>

#include "geoden/selection.hpp"
#include "geoden/snapshot.hpp"

namespace geoden::testing {

/// Random reports over a fixed pool of gazetteer countries spread across all
/// continents, uniform years and uniform non-empty serotype sets.
std::shared_ptr<const Snapshot> synthetic_snapshot(std::mt19937_64& rng, std::size_t report_count,
                                                   DatasetSpan span = {});

/// Mix of continent, subcontinent and ad-hoc country regions (some hidden),
/// a random valid window and a random (possibly empty) serotype filter.
SelectionContext random_context(std::mt19937_64& rng, const Snapshot& snapshot);

/// Countries the generator draws from.
const std::vector<std::string>& synthetic_country_pool();

}  // namespace geoden::testing
