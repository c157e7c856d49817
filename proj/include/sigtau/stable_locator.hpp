#pragma once

#include "sigtau/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sigtau {

namespace detail {

// log2 of a positive big integer from its bit length and top 53 bits.
inline double approx_log2(const Rank& v) {
    const auto msb = static_cast<std::int64_t>(boost::multiprecision::msb(v));
    const std::int64_t shift = std::max<std::int64_t>(0, msb - 52);
    const double top = static_cast<double>(static_cast<std::uint64_t>(v >> shift));
    return std::log2(top) + static_cast<double>(shift);
}

}  // namespace detail

// Predecessor search over a sequence whose consecutive ratios lie in [2, D].
// Values are bucketed by their log2; a query inspects one bucket, which holds
// at most about log2(D) entries, so the search is O(log log D).
//
// Boundary convention: locate(t) is the j with b[j] <= t < b[j+1]
// (j = size()-1 when t == b.back()).
class StableLocator {
public:
    StableLocator() = default;

    StableLocator(std::vector<Rank> b, const Rank& max_ratio) : b_(std::move(b)) {
        if (b_.empty()) throw std::invalid_argument("empty sequence");
        if (b_[0] <= 0) throw std::invalid_argument("sequence must be positive");
        for (std::size_t i = 1; i < b_.size(); ++i) {
            if (b_[i] < 2 * b_[i - 1]) throw std::invalid_argument("consecutive ratio below 2 at " + std::to_string(i));
            if (b_[i] > max_ratio * b_[i - 1])
                throw std::invalid_argument("consecutive ratio above the bound at " + std::to_string(i));
        }
        if (b_.size() < kMinBucketed) return;
        lo_ = detail::approx_log2(b_.front());
        span_ = detail::approx_log2(b_.back()) - lo_;
        const std::size_t m = b_.size();
        first_.assign(m + 2, m);
        // first_[y] = first index whose bucket is >= y.
        std::size_t y = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t bj = bucket(b_[j]);
            while (y <= bj) first_[y++] = j;
        }
    }

    std::size_t size() const { return b_.size(); }
    const Rank& operator[](std::size_t i) const { return b_[i]; }
    const std::vector<Rank>& values() const { return b_; }

    std::size_t locate(const Rank& t) const {
        check(t);
        if (first_.empty()) return binary_locate(t);
        const std::size_t y = bucket(t);
        // The answer j satisfies bucket(b[j]) <= y <= bucket(b[j+1]); widen by
        // one on each side against rounding in the log estimate.
        std::size_t lo = first_[y] > 0 ? first_[y] - 1 : 0;
        std::size_t hi = std::min(first_[std::min(y + 1, first_.size() - 1)], b_.size() - 1);
        lo = lo > 0 ? lo - 1 : 0;
        hi = std::min(hi + 1, b_.size() - 1);
        if (b_[lo] > t || (hi + 1 < b_.size() && b_[hi + 1] <= t)) return binary_locate(t);
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo + 1) / 2;
            if (b_[mid] <= t) lo = mid;
            else hi = mid - 1;
        }
        return lo;
    }

    // Reference implementation over the whole sequence.
    std::size_t binary_locate(const Rank& t) const {
        check(t);
        auto it = std::upper_bound(b_.begin(), b_.end(), t);
        return static_cast<std::size_t>(it - b_.begin()) - 1;
    }

private:
    static constexpr std::size_t kMinBucketed = 8;

    void check(const Rank& t) const {
        if (t < b_.front() || t > b_.back()) throw std::out_of_range("query outside [b_first, b_last]");
    }

    std::size_t bucket(const Rank& v) const {
        const double m = static_cast<double>(b_.size());
        const double f = span_ > 0 ? (detail::approx_log2(v) - lo_) / span_ : 0.0;
        const double y = std::floor(m * f);
        if (y < 0) return 0;
        return std::min(static_cast<std::size_t>(y), b_.size());
    }

    std::vector<Rank> b_;
    std::vector<std::size_t> first_;
    double lo_ = 0;
    double span_ = 0;
};

}  // namespace sigtau
