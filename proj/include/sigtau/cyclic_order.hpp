#pragma once

#include "sigtau/common.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sigtau {

// Cyclic arithmetic on the non-maximal values of an order-n permutation.
//
// plus:   a cycle on {1..n-1}; (n-1) (+) 1 = 1.
// otimes: a cycle on {2..n-1}; (n-1) (x) 1 = 2, and 1 enters the cycle
//         through 1 (x) 1 = 2. 1 has no predecessor.
class CyclicOrder {
public:
    enum class Mode { plus, otimes };

    static CyclicOrder plus(int n) { return CyclicOrder(n, Mode::plus); }
    static CyclicOrder otimes(int n) { return CyclicOrder(n, Mode::otimes); }

    int order() const { return n_; }
    Mode mode() const { return mode_; }
    int modulus() const { return mode_ == Mode::plus ? n_ - 1 : n_ - 2; }

    bool contains(Element a) const { return a >= 1 && a <= n_ - 1; }

    Element add(Element a, std::int64_t k) const {
        check(a);
        if (mode_ == Mode::plus) return static_cast<Element>(wrap(a - 1 + k, n_ - 1) + 1);
        if (a == 1) {
            if (k == 0) return 1;
            if (k < 0) throw std::domain_error("1 has no predecessor under (x)");
            a = 2;
            --k;
        }
        return static_cast<Element>(wrap(a - 2 + k, n_ - 2) + 2);
    }

    Element succ(Element a) const { return add(a, 1); }
    Element pred(Element a) const { return add(a, -1); }

    // Position of z in the descending order a2 < a2 (-) 1 < a2 (-) 2 < ...
    // that the inversion vectors of seeds use. In otimes mode 1 is minimal
    // and the remaining values descend from a2 (from n-1 when a2 = 1).
    std::int64_t descending_key(Element anchor, Element z) const {
        check(anchor);
        check(z);
        if (mode_ == Mode::plus) return wrap(static_cast<std::int64_t>(anchor) - z, n_ - 1);
        if (z == 1) return 0;
        const Element top = anchor == 1 ? n_ - 1 : anchor;
        return 1 + wrap(static_cast<std::int64_t>(top) - z, n_ - 2);
    }

    // Number of distinct keys descending_key can return.
    std::size_t key_range() const { return static_cast<std::size_t>(n_ - 1); }

private:
    CyclicOrder(int n, Mode mode) : n_(n), mode_(mode) {
        if (n < (mode == Mode::plus ? 2 : 3)) throw std::invalid_argument("order too small for cyclic arithmetic");
    }

    void check(Element a) const {
        if (!contains(a))
            throw std::out_of_range("element " + std::to_string(a) + " outside 1.." + std::to_string(n_ - 1));
    }

    static std::int64_t wrap(std::int64_t v, std::int64_t m) {
        v %= m;
        return v < 0 ? v + m : v;
    }

    int n_;
    Mode mode_;
};

inline Element cyc_succ(Element a, const CyclicOrder& o) { return o.succ(a); }
inline Element cyc_pred(Element a, const CyclicOrder& o) { return o.pred(a); }
inline Element cyc_add(Element a, std::int64_t k, const CyclicOrder& o) { return o.add(a, k); }

}  // namespace sigtau
