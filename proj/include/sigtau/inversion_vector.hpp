#pragma once

#include "sigtau/cyclic_order.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigtau {

namespace detail {

class Fenwick {
public:
    explicit Fenwick(std::size_t size) : tree_(size + 1, 0) {}

    void add(std::size_t i, int delta) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
    }

    // Sum over [0, i).
    std::int64_t prefix(std::size_t i) const {
        std::int64_t s = 0;
        for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

private:
    std::vector<std::int64_t> tree_;
};

}  // namespace detail

// For each element, how many elements to its right are smaller under a
// caller-supplied linear order.
class InversionVector {
public:
    InversionVector() = default;
    InversionVector(std::vector<std::int64_t> by_value, std::int64_t total)
        : by_value_(std::move(by_value)), total_(total) {}

    std::int64_t right_smaller(Element z) const {
        if (z < 0 || static_cast<std::size_t>(z) >= by_value_.size() || by_value_[z] < 0)
            throw std::out_of_range("element " + std::to_string(z) + " not in the sequence");
        return by_value_[z];
    }

    std::int64_t total() const { return total_; }

private:
    std::vector<std::int64_t> by_value_;  // -1 for absent values
    std::int64_t total_ = 0;
};

// `key` maps each element to its rank in [0, key_range) under the order.
template <class Key>
InversionVector inversion_vector(std::span<const Element> seq, Key key, std::size_t key_range) {
    Element max_value = 0;
    for (Element v : seq) {
        if (v < 0) throw std::invalid_argument("negative element");
        max_value = std::max(max_value, v);
    }
    std::vector<std::int64_t> by_value(static_cast<std::size_t>(max_value) + 1, -1);
    std::vector<char> key_seen(key_range, 0);
    detail::Fenwick fw(key_range);
    std::int64_t total = 0;
    for (std::size_t q = seq.size(); q-- > 0;) {
        const Element v = seq[q];
        if (by_value[v] >= 0) throw std::invalid_argument("duplicate element " + std::to_string(v));
        const auto k = static_cast<std::size_t>(key(v));
        if (k >= key_range || key_seen[k]) throw std::invalid_argument("order key collision");
        key_seen[k] = 1;
        by_value[v] = fw.prefix(k);
        total += by_value[v];
        fw.add(k, 1);
    }
    return InversionVector(std::move(by_value), total);
}

// Inversion vector under a2 < a2 (-) 1 < a2 (-) 2 < ... of the given order.
inline InversionVector inversion_vector(std::span<const Element> seq, const CyclicOrder& order, Element a2) {
    return inversion_vector(
        seq, [&](Element z) { return order.descending_key(a2, z); }, order.key_range());
}

}  // namespace sigtau
