#pragma once

#include "sigtau/ranker.hpp"
#include "sigtau/unranker.hpp"

namespace sigtau {

// Tables for one order n plus rank/unrank over the generation order.
class SigmaTauPath {
public:
    explicit SigmaTauPath(int n) : tables_(n), locator_(make_prefix_locator(tables_)), size_(factorial(n)) {}

    int order() const { return tables_.order(); }
    const LengthTables& tables() const { return tables_; }
    const StableLocator& locator() const { return locator_; }

    // n!
    const Rank& size() const { return size_; }

    Permutation start() const { return path_start(order()); }
    Permutation end() const { return path_end(order()); }

    Rank rank(const Permutation& p) const { return sigtau::rank(tables_, p); }

    Permutation unrank(const Rank& r, SearchMode mode = SearchMode::locator) const {
        return sigtau::unrank(tables_, locator_, r, mode);
    }

private:
    LengthTables tables_;
    StableLocator locator_;
    Rank size_;
};

}  // namespace sigtau
