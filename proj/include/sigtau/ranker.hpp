#pragma once

#include "sigtau/inversion_vector.hpp"
#include "sigtau/seed.hpp"
#include "sigtau/slp.hpp"

#include <optional>
#include <vector>

namespace sigtau {

// ord values along a parent chain, stored from the seed itself (psi_0) up to
// its anchor (psi_m): ords[i] = ord(psi_i).
struct Route {
    std::vector<int> ords;

    std::size_t size() const { return ords.size(); }
    std::size_t chain_length() const { return ords.empty() ? 0 : ords.size() - 1; }
    int anchor_ord() const { return ords.back(); }

    // Same route listed from the anchor down to the seed.
    std::vector<int> anchor_first() const { return {ords.rbegin(), ords.rend()}; }

    static Route from_anchor_first(std::vector<int> v) { return Route{{v.rbegin(), v.rend()}}; }

    friend bool operator==(const Route&, const Route&) = default;
};

struct RouteAndAnchor {
    Route route;
    Seed anchor;
};

// Route and anchor from one inversion-vector pass: psi_i's parent has missing
// value a2 (+) (i+2), and ord(psi_i) is one more than the number of values
// right of it that precede it in a2 < a2 (-) 1 < ... .
inline RouteAndAnchor route_and_anchor(const Seed& s) {
    if (is_hub(s)) throw std::domain_error("route of a hub seed");
    const int n = s.order();
    const auto plus = CyclicOrder::plus(n);
    const Element a2 = s.a2();
    const int lvl = level(s);
    const auto inv = inversion_vector(s.tail(), plus, a2);
    Route route;
    route.ords.reserve(lvl);
    for (int q = 0; q < lvl; ++q)
        route.ords.push_back(static_cast<int>(inv.right_smaller(plus.add(a2, q + 2))) + 1);
    Seed top = son(hub_seed(n, plus.add(a2, lvl)), route.anchor_ord());
    return {std::move(route), std::move(top)};
}

// Offset of psi~ from anchor~: sum over the chain of SUM(height(psi_{i+1}), ord(psi_i)),
// heights propagating downwards by height(psi_i) = delta(height(psi_{i+1}), ord(psi_i)).
inline Rank anchor_offset(const LengthTables& t, const Route& route, int anchor_height) {
    const int n = t.order();
    Rank total = 0;
    int h = anchor_height;
    for (std::size_t q = route.size(); q-- > 1;) {
        const int o = route.ords[q - 1];
        if (h < 2 || o < 1 || o > n - 3) throw std::invalid_argument("inconsistent route");
        total += t.sum(h, o);
        h = delta(h, o, n);
    }
    return total;
}

// Offset from psi~ while walking W_k from psi~ (k = height of the seed) to
// the member of class `cls` shifted by `shift`.
inline Rank bunch_offset(const LengthTables& t, int k, int cls, int shift) {
    const int n = t.order();
    if (cls == n - 1) {
        if (shift == n - 1) return 0;
        if (shift == 0) return t.w(k);
        throw std::domain_error("member of the connecting cycle lies outside the bunch");
    }
    const Rank s_i = t.sum(k, cls);
    if (shift <= cls) return s_i - cls + shift;
    return s_i + t.w(delta(k, cls, n)) + (shift - cls - 1);
}

// rank(p) - rank(psi~) for p in bunch(s), walking W_{height(s)}.
inline Rank rank_in_package(const LengthTables& t, const Permutation& p, const Seed& s) {
    auto pos = package_position(p, s);
    if (!pos) throw std::domain_error("permutation is not in the package");
    return bunch_offset(t, height(s), pos->cls, pos->shift);
}

namespace detail {

// Rank on the starting path, if p is one of its 2n-2 permutations.
inline std::optional<Rank> starting_path_rank(const Permutation& p) {
    const int n = p.size();
    const auto l = p.position_of(n);
    if (l > 1) return std::nullopt;
    // The remaining values must be a rotation of (n-1, ..., 1).
    std::vector<Element> rest;
    rest.reserve(n - 1);
    for (Element v : p.elements())
        if (v != n) rest.push_back(v);
    for (int q = 0; q + 1 < n - 1; ++q) {
        const Element want = rest[q] == 1 ? n - 1 : rest[q] - 1;
        if (rest[q + 1] != want) return std::nullopt;
    }
    if (l == 1) return Rank(2 * (n - p[0] - 1));
    const int r = 2 * (n - p[1] - 1) - 1;
    return Rank((r + 2 * n - 2) % (2 * n - 2));
}

// Rank of the hub block's psi~-frame origin: the block for hub a2 starts at
// W_{n-3}-offset 2 + |W_{n-4}|.
inline Rank hub_frame_base(const LengthTables& t, Element hub_a2) {
    const int n = t.order();
    return Rank(2 * n - 2) + Rank(hub_a2 % (n - 1)) * t.block() - 2 - t.w(n - 4);
}

}  // namespace detail

// Rank of a permutation on the starting path or in the package of a hub seed.
inline Rank rank_hub(const LengthTables& t, const Permutation& p) {
    const int n = t.order();
    if (p.size() != n) throw std::invalid_argument("order mismatch");
    if (auto r = detail::starting_path_rank(p)) return *r;
    const Seed s = seeds_of(p).front();
    if (!is_hub(s)) throw std::domain_error("not a hub permutation");
    const auto pos = package_position(p, s);
    return detail::hub_frame_base(t, s.a2()) + bunch_offset(t, n - 3, pos->cls, pos->shift);
}

// Rank of anchor~ for a son of a hub seed.
inline Rank anchor_rank(const LengthTables& t, const Seed& anchor_seed) {
    const int n = t.order();
    const Seed h = parent(anchor_seed);
    if (!is_hub(h)) throw std::domain_error("not a son of a hub seed");
    return detail::hub_frame_base(t, h.a2()) + t.sum(n - 3, ord(anchor_seed));
}

// 0-based position of p in the generation order.
inline Rank rank(const LengthTables& t, const Permutation& p) {
    const int n = t.order();
    if (p.size() != n) throw std::invalid_argument("order mismatch");
    if (auto r = detail::starting_path_rank(p)) return *r;
    const Seed s = seeds_of(p).front();
    const auto pos = package_position(p, s);
    if (is_hub(s)) return detail::hub_frame_base(t, s.a2()) + bunch_offset(t, n - 3, pos->cls, pos->shift);
    const auto ra = route_and_anchor(s);
    const int anchor_height = delta(n - 3, ra.route.anchor_ord(), n);
    int h = anchor_height;
    for (std::size_t q = ra.route.size(); q-- > 1;) h = delta(h, ra.route.ords[q - 1], n);
    return anchor_rank(t, ra.anchor) + anchor_offset(t, ra.route, anchor_height) +
           bunch_offset(t, h, pos->cls, pos->shift);
}

}  // namespace sigtau
