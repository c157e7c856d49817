#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigtau {

// Sequence supporting "insert so that exactly k-1 elements follow" in
// O(log m) expected time. Implicit treap keyed by subtree size.
template <class T>
class IndexableList {
public:
    IndexableList() = default;

    explicit IndexableList(std::span<const T> initial) {
        nodes_.reserve(initial.size());
        for (const T& v : initial) insert_from_end(v, 1);
    }

    std::size_t size() const { return root_ == kNil ? 0 : nodes_[root_].size; }

    // 1 <= k <= size()+1; k = 1 appends, k = size()+1 prepends.
    void insert_from_end(const T& value, std::size_t k) {
        const std::size_t m = size();
        if (k < 1 || k > m + 1)
            throw std::out_of_range("position " + std::to_string(k) + " outside 1.." + std::to_string(m + 1));
        const std::size_t before = m + 1 - k;
        auto [left, right] = split(root_, before);
        nodes_.push_back(Node{value, next_priority(), kNil, kNil, 1});
        const auto fresh = static_cast<std::uint32_t>(nodes_.size() - 1);
        root_ = merge(merge(left, fresh), right);
    }

    std::vector<T> to_sequence() const {
        std::vector<T> out;
        out.reserve(size());
        std::vector<std::uint32_t> stack;
        std::uint32_t cur = root_;
        while (cur != kNil || !stack.empty()) {
            while (cur != kNil) {
                stack.push_back(cur);
                cur = nodes_[cur].left;
            }
            cur = stack.back();
            stack.pop_back();
            out.push_back(nodes_[cur].value);
            cur = nodes_[cur].right;
        }
        return out;
    }

private:
    static constexpr std::uint32_t kNil = 0xffffffffu;

    struct Node {
        T value;
        std::uint32_t priority;
        std::uint32_t left;
        std::uint32_t right;
        std::size_t size;
    };

    std::size_t sz(std::uint32_t t) const { return t == kNil ? 0 : nodes_[t].size; }

    void pull(std::uint32_t t) { nodes_[t].size = 1 + sz(nodes_[t].left) + sz(nodes_[t].right); }

    // First `count` elements go left. Iterative to keep the stack flat.
    std::pair<std::uint32_t, std::uint32_t> split(std::uint32_t t, std::size_t count) {
        std::uint32_t left = kNil, right = kNil;
        std::uint32_t* lhook = &left;
        std::uint32_t* rhook = &right;
        std::vector<std::uint32_t> touched;
        while (t != kNil) {
            touched.push_back(t);
            const std::size_t ls = sz(nodes_[t].left);
            if (ls < count) {
                *lhook = t;
                lhook = &nodes_[t].right;
                count -= ls + 1;
                t = nodes_[t].right;
            } else {
                *rhook = t;
                rhook = &nodes_[t].left;
                t = nodes_[t].left;
            }
        }
        *lhook = kNil;
        *rhook = kNil;
        for (auto it = touched.rbegin(); it != touched.rend(); ++it) pull(*it);
        return {left, right};
    }

    std::uint32_t merge(std::uint32_t a, std::uint32_t b) {
        std::uint32_t root = kNil;
        std::uint32_t* hook = &root;
        std::vector<std::uint32_t> touched;
        while (a != kNil && b != kNil) {
            if (nodes_[a].priority > nodes_[b].priority) {
                *hook = a;
                touched.push_back(a);
                hook = &nodes_[a].right;
                a = nodes_[a].right;
            } else {
                *hook = b;
                touched.push_back(b);
                hook = &nodes_[b].left;
                b = nodes_[b].left;
            }
        }
        *hook = a != kNil ? a : b;
        for (auto it = touched.rbegin(); it != touched.rend(); ++it) pull(*it);
        return root;
    }

    std::uint32_t next_priority() {
        rng_ ^= rng_ << 13;
        rng_ ^= rng_ >> 17;
        rng_ ^= rng_ << 5;
        return rng_;
    }

    std::vector<Node> nodes_;
    std::uint32_t root_ = kNil;
    std::uint32_t rng_ = 2463534242u;
};

}  // namespace sigtau
