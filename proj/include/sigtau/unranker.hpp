#pragma once

#include "sigtau/indexable_list.hpp"
#include "sigtau/ranker.hpp"
#include "sigtau/stable_locator.hpp"

#include <variant>
#include <vector>

namespace sigtau {

// Locator over b_0..b_{n-4}. Consecutive ratios lie in [2, n].
inline StableLocator make_prefix_locator(const LengthTables& t) {
    return StableLocator(t.prefix_sums(), Rank(t.order()));
}

// Offset w (from psi~ of a height-k seed) lies in the bunch of son j, at
// offset `offset` from that son's psi~.
struct SonStep {
    int j;
    int height;
    Rank offset;
    friend bool operator==(const SonStep&, const SonStep&) = default;
};

// Offset w is the member of class `cls` shifted by `shift` of the seed itself.
struct PackageHit {
    int cls;
    int shift;
    friend bool operator==(const PackageHit&, const PackageHit&) = default;
};

enum class SearchMode { locator, binary };

// Classifies offset w, 1 <= w <= |W_k|, inside the walk of W_k: finds the class
// j with SUM(k,j) - j <= w < SUM(k,j+1) - (j+1) and decides whether w is in
// the package or inside son j's bunch.
inline std::variant<SonStep, PackageHit> descend(const LengthTables& t, const StableLocator& loc, int k,
                                                 const Rank& w, SearchMode mode = SearchMode::locator) {
    const int n = t.order();
    if (k < 1 || k > n - 3) throw std::out_of_range("height out of range");
    if (w < 1 || w > t.w(k)) throw std::out_of_range("offset outside the bunch walk");
    if (w == t.w(k)) return PackageHit{n - 1, 0};
    int j;
    const Rank step = t.w(k - 1) + (n - 1);
    // For j <= n-k-1 the slots before j all hold W_{k-1}: S_j - j = 1 + (j-1) step.
    const Rank q = (w - 1) / step;
    if (q < n - k - 1) {
        j = static_cast<int>(q) + 1;
    } else {
        // Otherwise S_j - j = |W_k| - b_{n-2-j}; take the smallest q' with
        // b_{q'} >= |W_k| - w and j = n-2-q'.
        const Rank s = t.w(k) - w;
        std::size_t qq = 0;
        if (s > loc[0]) {
            qq = mode == SearchMode::locator ? loc.locate(s) : loc.binary_locate(s);
            if (loc[qq] != s) ++qq;
        }
        j = n - 2 - static_cast<int>(qq);
    }
    const Rank s_j = t.sum(k, j);
    const Rank into = w - (s_j - j);
    if (into <= j) return PackageHit{j, static_cast<int>(into)};
    const int d = delta(k, j, n);
    if (w < s_j + t.w(d)) return SonStep{j, d, w - s_j};
    return PackageHit{j, static_cast<int>(j + 1 + (w - s_j - t.w(d)))};
}

// Where hub_step leaves off: anchor~ sits `offset` letters before Perm(t).
struct AnchorStep {
    Seed anchor;
    int height;
    Rank offset;
};

// Perm(t) itself when it lies on the starting path or in a hub package,
// otherwise the anchor whose bunch holds it.
inline std::variant<Permutation, AnchorStep> hub_step(const LengthTables& t, const StableLocator& loc,
                                                      const Rank& r, SearchMode mode = SearchMode::locator) {
    const int n = t.order();
    if (r < 0 || r > t.seq()) throw std::out_of_range("rank outside [0, n!)");
    if (r < 2 * n - 2) {
        const int ti = static_cast<int>(r);
        const int shift = ((ti + 1) / 2) % (n - 1);
        std::vector<Element> b(n - 1);
        for (int q = 0; q < n - 1; ++q) b[q] = n - 1 - ((q + shift) % (n - 1));
        std::vector<Element> e;
        e.reserve(n);
        if (ti % 2) {
            e.push_back(n);
            e.insert(e.end(), b.begin(), b.end());
        } else {
            e.push_back(b[0]);
            e.push_back(n);
            e.insert(e.end(), b.begin() + 1, b.end());
        }
        return Permutation::unchecked(std::move(e));
    }
    Rank t1, t2;
    boost::multiprecision::divide_qr(Rank(r - (2 * n - 2)), t.block(), t1, t2);
    const int block = static_cast<int>(t1);
    const Seed h = hub_seed(n, block == 0 ? n - 1 : block);
    const Rank w = t2 + 2 + t.w(n - 4);
    auto step = descend(t, loc, n - 3, w, mode);
    if (auto* hit = std::get_if<PackageHit>(&step)) return package_member(h, hit->cls, hit->shift);
    auto& son_step = std::get<SonStep>(step);
    return AnchorStep{son(h, son_step.j), son_step.height, son_step.offset};
}

// The seed with the given anchor and route. Rebuilds the chain top-down:
// start from the decreasing run a2, a2 (-) 1, ... and insert a2 (+) (q+2) with
// ord(psi_q) - 1 values after it, for q = m down to 0.
inline Seed seed_from_route(const Seed& anchor_seed, const Route& route) {
    const int n = anchor_seed.order();
    if (route.size() == 0) throw std::invalid_argument("empty route");
    if (route.size() == 1) return anchor_seed;
    const auto plus = CyclicOrder::plus(n);
    const int r = static_cast<int>(route.size()) - 1;
    const Element a2 = plus.add(anchor_seed.a2(), -r);
    const int run = n - r - 3;
    if (run < 1) throw std::invalid_argument("route too long for this order");
    std::vector<Element> start(run);
    for (int q = 0; q < run; ++q) start[q] = plus.add(a2, -q);
    IndexableList<Element> list{std::span<const Element>(start)};
    for (int q = r; q >= 0; --q) {
        const int o = route.ords[q];
        if (o < 1 || static_cast<std::size_t>(o) > list.size() + 1) throw std::invalid_argument("inconsistent route");
        list.insert_from_end(plus.add(a2, q + 2), o);
    }
    std::vector<Element> e{n};
    auto body = list.to_sequence();
    e.insert(e.end(), body.begin(), body.end());
    return Seed(std::move(e));
}

// Member of bunch(s) at offset w from psi~, w in [0, |W_height(s)|].
inline Permutation perm_in_package(const LengthTables& t, const StableLocator& loc, const Seed& s, const Rank& w) {
    if (w == 0) return seed_reps(s).tilde;
    auto step = descend(t, loc, height(s), w);
    if (std::holds_alternative<SonStep>(step)) throw std::domain_error("offset lies inside a son's bunch");
    const auto hit = std::get<PackageHit>(step);
    return package_member(s, hit.cls, hit.shift);
}

// Permutation at 0-based position r of the generation order.
inline Permutation unrank(const LengthTables& t, const StableLocator& loc, const Rank& r,
                          SearchMode mode = SearchMode::locator) {
    auto first = hub_step(t, loc, r, mode);
    if (auto* p = std::get_if<Permutation>(&first)) return std::move(*p);
    auto& a = std::get<AnchorStep>(first);
    std::vector<int> anchor_first{ord(a.anchor)};
    int k = a.height;
    Rank w = std::move(a.offset);
    for (;;) {
        auto step = descend(t, loc, k, w, mode);
        if (auto* hit = std::get_if<PackageHit>(&step)) {
            const Seed s = seed_from_route(a.anchor, Route::from_anchor_first(std::move(anchor_first)));
            return package_member(s, hit->cls, hit->shift);
        }
        auto& down = std::get<SonStep>(step);
        anchor_first.push_back(down.j);
        k = down.height;
        w = std::move(down.offset);
    }
}

}  // namespace sigtau
