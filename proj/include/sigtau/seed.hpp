#pragma once

#include "sigtau/cyclic_order.hpp"
#include "sigtau/permutation.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sigtau {

// Identifier of a package: (n, a2, ..., a_{n-1}) with the single absent value
// equal to a2 (+) 1.
class Seed {
public:
    Seed() = default;

    explicit Seed(std::vector<Element> elems) : elems_(std::move(elems)) {
        const int n = static_cast<int>(elems_.size()) + 1;
        require_order(n);
        if (elems_[0] != n) throw std::invalid_argument("seed must start with n = " + std::to_string(n));
        std::vector<char> seen(n + 1, 0);
        for (Element v : elems_) {
            if (v < 1 || v > n) throw std::invalid_argument("seed value " + std::to_string(v) + " out of range");
            if (seen[v]) throw std::invalid_argument("seed value " + std::to_string(v) + " repeated");
            seen[v] = 1;
        }
        const Element missing = CyclicOrder::plus(n).succ(elems_[1]);
        if (seen[missing]) throw std::invalid_argument("absent value is not a2 (+) 1");
    }

    Seed(std::initializer_list<Element> elems) : Seed(std::vector<Element>(elems)) {}

    static Seed unchecked(std::vector<Element> elems) {
        Seed s;
        s.elems_ = std::move(elems);
        return s;
    }

    int order() const { return static_cast<int>(elems_.size()) + 1; }
    Element operator[](std::size_t i) const { return elems_[i]; }
    Element a2() const { return elems_[1]; }
    std::span<const Element> elements() const { return elems_; }
    std::span<const Element> tail() const { return std::span<const Element>(elems_).subspan(1); }

    friend bool operator==(const Seed&, const Seed&) = default;
    friend auto operator<=>(const Seed&, const Seed&) = default;

private:
    std::vector<Element> elems_;
};

inline std::string to_string(const Seed& s) { return join(s.elements()); }

inline std::ostream& operator<<(std::ostream& out, const Seed& s) { return out << "seed(" << to_string(s) << ')'; }

inline Seed parse_seed(std::string_view text) { return Seed(parse_elements(text)); }

inline int delta(int k, int i, int n) { return std::min(k - 1, n - 2 - i); }

inline Element mis(const Seed& s) { return CyclicOrder::plus(s.order()).succ(s.a2()); }

namespace detail {

// Length of the run a2, a3, ... with a_i = a_{i+1} (+) 1.
inline int run_length(const Seed& s) {
    const int n = s.order();
    const auto plus = CyclicOrder::plus(n);
    int k = 1;
    while (k + 1 <= n - 2 && s[k] == plus.succ(s[k + 1])) ++k;
    return k;
}

}  // namespace detail

inline bool is_hub(const Seed& s) { return detail::run_length(s) == s.order() - 2; }

// Hub seeds run through all n-2 entries; their height is reported as n-3, the
// index of the W rule their bunch follows.
inline int height(const Seed& s) { return std::min(detail::run_length(s), s.order() - 3); }

// psi^(i) rotated left by `shift`; psi^(i) = (x, a_{n-i+1..n-1}, n, a_2..a_{n-i}).
inline Permutation package_member(const Seed& s, int i, int shift) {
    const int n = s.order();
    if (i < 1 || i > n - 1) throw std::out_of_range("package class out of range");
    const auto e = s.elements();
    std::vector<Element> out;
    out.reserve(n);
    out.push_back(mis(s));
    out.insert(out.end(), e.begin() + (n - i), e.end());
    out.push_back(n);
    out.insert(out.end(), e.begin() + 1, e.begin() + (n - i));
    const int r = ((shift % n) + n) % n;
    std::rotate(out.begin(), out.begin() + r, out.end());
    return Permutation::unchecked(std::move(out));
}

struct SeedReps {
    Permutation tilde;                   // (n, x, a2, ..., a_{n-1})
    std::vector<Permutation> connecting;  // connecting[i-1] = psi^(i), i = 1..n-1
};

inline SeedReps seed_reps(const Seed& s) {
    const int n = s.order();
    SeedReps r;
    std::vector<Element> t;
    t.reserve(n);
    t.push_back(n);
    t.push_back(mis(s));
    t.insert(t.end(), s.elements().begin() + 1, s.elements().end());
    r.tilde = Permutation::unchecked(std::move(t));
    for (int i = 1; i <= n - 1; ++i) r.connecting.push_back(package_member(s, i, 0));
    return r;
}

// Every member of perms(s): each insertion class i = 1..n-1 under all n rotations.
inline std::vector<Permutation> package_perms(const Seed& s) {
    std::vector<Permutation> out;
    const int n = s.order();
    for (int i = 1; i <= n - 1; ++i)
        for (int r = 0; r < n; ++r) out.push_back(package_member(s, i, r));
    return out;
}

struct PackagePosition {
    int cls;    // insertion class i in 1..n-1
    int shift;  // left rotation applied to psi^(i)
    friend bool operator==(const PackagePosition&, const PackagePosition&) = default;
};

// Where p sits inside perms(s), if it belongs there.
inline std::optional<PackagePosition> package_position(const Permutation& p, const Seed& s) {
    const int n = s.order();
    if (p.size() != n) throw std::invalid_argument("order mismatch");
    const Element x = mis(s);
    const auto l = p.position_of(n);
    std::size_t j = 0;
    for (int q = 0, k = 0; q < n; ++q) {
        const Element v = p[(l + q) % n];
        if (v == x) {
            j = q;
            continue;
        }
        if (s[k++] != v) return std::nullopt;
    }
    const int pos_x = static_cast<int>(p.position_of(x));
    return PackagePosition{n - static_cast<int>(j), (n - pos_x) % n};
}

namespace detail {

inline std::vector<Element> rotation_from_max(const Permutation& p) {
    const int n = p.size();
    const auto l = p.position_of(n);
    std::vector<Element> rho(n);
    for (int q = 0; q < n; ++q) rho[q] = p[(l + q) % n];
    return rho;
}

inline Seed remove_value(const std::vector<Element>& rho, Element y) {
    std::vector<Element> e;
    e.reserve(rho.size() - 1);
    for (Element v : rho)
        if (v != y) e.push_back(v);
    return Seed::unchecked(std::move(e));
}

}  // namespace detail

// The one or two seeds whose package contains p, parent first.
inline std::vector<Seed> seeds_of(const Permutation& p) {
    const int n = p.size();
    require_order(n);
    const auto plus = CyclicOrder::plus(n);
    const auto rho = detail::rotation_from_max(p);
    std::vector<Seed> out;
    out.push_back(detail::remove_value(rho, plus.succ(rho[1])));
    if (rho[1] == plus.succ(rho[2])) out.push_back(detail::remove_value(rho, rho[1]));
    return out;
}

// parent(beta) = (n, x, b2, ..., b_{n-1}) with x (+) 1 removed, x = mis(beta).
inline Seed parent(const Seed& s) {
    const int n = s.order();
    const Element x = mis(s);
    const Element drop = CyclicOrder::plus(n).succ(x);
    std::vector<Element> e;
    e.reserve(n - 1);
    e.push_back(n);
    e.push_back(x);
    for (std::size_t q = 1; q < s.elements().size(); ++q)
        if (s[q] != drop) e.push_back(s[q]);
    return Seed::unchecked(std::move(e));
}

// The i-th son: a2 removed, a2 (+) 1 inserted with i-1 entries after it.
inline Seed son(const Seed& s, int i) {
    const int n = s.order();
    if (i < 1 || i > n - 3) throw std::out_of_range("son index " + std::to_string(i) + " outside 1..n-3");
    if (detail::run_length(s) < 2) throw std::domain_error("a seed of height 1 has no sons");
    std::vector<Element> e(s.elements().begin(), s.elements().end());
    const Element x = mis(s);
    e.erase(e.begin() + 1);
    e.insert(e.end() - (i - 1), x);
    return Seed::unchecked(std::move(e));
}

// Position of mis(s) (+) 1 counted from the right end, 1-based.
inline int ord(const Seed& s) {
    const int n = s.order();
    const Element y = CyclicOrder::plus(n).succ(mis(s));
    const auto e = s.elements();
    const auto q = std::find(e.begin(), e.end(), y) - e.begin();
    return (n - 1) - static_cast<int>(q);
}

// a2, a2 (-) 1, ... as long as each next value appears further right.
inline std::vector<Element> dec_seq(const Seed& s) {
    const int n = s.order();
    const auto plus = CyclicOrder::plus(n);
    const Element x = mis(s);
    std::vector<int> pos(n + 1, -1);
    for (std::size_t q = 0; q < s.elements().size(); ++q) pos[s[q]] = static_cast<int>(q);
    std::vector<Element> out{s.a2()};
    for (Element cur = s.a2();;) {
        const Element nx = plus.pred(cur);
        if (nx == x || pos[nx] < pos[cur]) break;
        out.push_back(nx);
        cur = nx;
    }
    return out;
}

// n - m - 3 where dec_seq has m+1 entries. Hub seeds have level 0, sons of
// hub seeds level 1; a seed's parent chain up to its anchor has level-1 links.
inline int level(const Seed& s) { return s.order() - static_cast<int>(dec_seq(s).size()) - 2; }

inline Seed hub_seed(int n, Element a2) {
    const auto plus = CyclicOrder::plus(n);
    std::vector<Element> e{n};
    for (int q = 0; q < n - 2; ++q) e.push_back(plus.add(a2, -q));
    return Seed::unchecked(std::move(e));
}

// Hub seeds in the order their blocks appear in the generation order:
// block 0 has a2 = n-1, block b >= 1 has a2 = b.
inline std::vector<Seed> hub_seeds(int n) {
    require_order(n);
    std::vector<Seed> out;
    for (int b = 0; b <= n - 2; ++b) out.push_back(hub_seed(n, b == 0 ? n - 1 : b));
    return out;
}

// Hub seed above a non-hub seed: (n, b, b (-) 1, ...), b = a2 (+) level.
inline Seed hub(const Seed& s) {
    if (is_hub(s)) throw std::domain_error("hub() of a hub seed");
    const int n = s.order();
    return hub_seed(n, CyclicOrder::plus(n).add(s.a2(), level(s)));
}

// Highest non-hub ancestor, found by walking parent links.
inline Seed anchor(const Seed& s) {
    if (is_hub(s)) throw std::domain_error("anchor() of a hub seed");
    Seed cur = s;
    for (;;) {
        Seed up = parent(cur);
        if (is_hub(up)) return cur;
        cur = std::move(up);
    }
}

}  // namespace sigtau
