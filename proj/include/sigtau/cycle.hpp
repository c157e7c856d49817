#pragma once

#include "sigtau/oracle.hpp"
#include "sigtau/path.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace sigtau {

inline void require_cycle_order(int n) {
    if (n < 5) throw std::invalid_argument("the cycle construction needs n >= 5");
}

// Rules of the two-cycle cover on top of the path grammar (with W_{n-3}):
//   OUTER = SEGA SEGB^{n-3}        SEGA = s1 W_{n-3} g_{n-3} g2
//   INNER = U^{n-2}                SEGB = s1 W_{n-4} g_{n-3} g2
//   U     = g_{n-4} . prod_{i=3..n-3} s^i W_{delta(n-3,i)} g_{n-2-i} . g_{n-1}
//   ALT   = OUTER and INNER with their closing t dropped, joined by s1.
// OUTER starts at tau(n, ..., 1); INNER starts where OUTER's walk, minus its
// closing t, ends, followed by one sigma.
struct CycleWords {
    Program program;
    std::size_t outer;
    std::size_t inner;
    std::size_t alt;
};

inline CycleWords two_cycle_words(int n) {
    require_cycle_order(n);
    Program p = build_program(n, true);
    std::vector<std::size_t> w;
    for (int k = 0; k <= n - 3; ++k) w.push_back(p.index(w_name(k)));

    const auto seg_a = p.add_rule("SEGA", {Symbol::s(1), Symbol::ref(w[n - 3]), Symbol::g(n - 3), Symbol::g(2)});
    const auto seg_b = p.add_rule("SEGB", {Symbol::s(1), Symbol::ref(w[n - 4]), Symbol::g(n - 3), Symbol::g(2)});
    std::vector<Symbol> outer{Symbol::ref(seg_a)};
    for (int q = 0; q < n - 3; ++q) outer.push_back(Symbol::ref(seg_b));
    const auto outer_i = p.add_rule("OUTER", std::move(outer));

    std::vector<Symbol> u{Symbol::g(n - 4)};
    detail::append_slots(u, w, n, n - 3, 3, n - 3);
    auto u_end = u;
    u.push_back(Symbol::g(n - 1));
    u_end.push_back(Symbol::s(n - 1));
    const auto u_i = p.add_rule("U", std::move(u));
    const auto u_end_i = p.add_rule("UEND", std::move(u_end));
    std::vector<Symbol> inner;
    for (int q = 0; q < n - 2; ++q) inner.push_back(Symbol::ref(u_i));
    const auto inner_i = p.add_rule("INNER", std::move(inner));

    const auto seg_last = p.add_rule("SEGZ", {Symbol::s(1), Symbol::ref(w[n - 4]), Symbol::g(n - 3), Symbol::s(3)});
    std::vector<Symbol> alt{Symbol::ref(seg_a)};
    for (int q = 0; q < n - 4; ++q) alt.push_back(Symbol::ref(seg_b));
    alt.push_back(Symbol::ref(seg_last));
    for (int q = 0; q < n - 3; ++q) alt.push_back(Symbol::ref(u_i));
    alt.push_back(Symbol::ref(u_end_i));
    const auto alt_i = p.add_rule("ALT", std::move(alt));
    p.set_start(alt_i);
    return {std::move(p), outer_i, inner_i, alt_i};
}

// Word of the alternative Hamiltonian path (the ALT rule).
inline CycleWords alt_path_word(int n) { return two_cycle_words(n); }

inline Permutation alt_path_start(int n) { return path_start(n); }

// Switch x: (x, n, x (+) 1, ..., x (-) 1).
inline Permutation switch_perm(int n, Element x) {
    if (x < 1 || x > n - 1) throw std::out_of_range("switch index outside 1..n-1");
    std::vector<Element> e{x, n};
    for (int q = 1; q < n - 1; ++q) e.push_back((x - 1 + q) % (n - 1) + 1);
    return Permutation::unchecked(std::move(e));
}

inline bool is_switch(const Permutation& p) {
    const int n = p.size();
    if (n < 3 || p[1] != n) return false;
    for (int q = 2; q < n; ++q) {
        const Element prev = q == 2 ? p[0] : p[q - 1];
        if (p[q] != prev % (n - 1) + 1) return false;
    }
    return true;
}

// Rank and unrank along the alternative path. The word is cut into short
// power runs (sigma^a, optionally followed by t) and long factors that occur
// verbatim inside the generation order at a known rank. A factor walked from
// q is the canonical walk relabelled by the value map c[i] -> q[i], since
// sigma and tau commute with relabelling; ranking inverts the relabelling
// and reuses the path ranker.
class AltPath {
public:
    explicit AltPath(int n) : path_(n) {
        require_cycle_order(n);
        build_runs();
    }

    int order() const { return path_.order(); }
    const SigmaTauPath& path() const { return path_; }
    const Rank& size() const { return path_.size(); }

    Permutation start() const { return runs_.front().start; }
    const Permutation& end() const { return end_; }

    // Positions [0, outer_size()) are the outer cycle C'' minus its closing edge.
    const Rank& outer_size() const { return outer_size_; }

    std::optional<Rank> try_rank(const Permutation& p) const {
        if (p.size() != order()) throw std::invalid_argument("order mismatch");
        if (p == end_) return path_.size() - 1;
        for (const Run& run : runs_) {
            if (run.kind == Run::Kind::power) {
                const auto s = static_cast<long>(run.start.position_of(p[0]));
                if (s < run.letters && run.start.rotated_left(static_cast<std::size_t>(s)) == p) return run.pos + s;
                continue;
            }
            std::vector<Element> c(order());
            for (int i = 0; i < order(); ++i) c[i] = run.canon[run.start_pos[p[i]]];
            const Rank r = path_.rank(Permutation::unchecked(std::move(c)));
            if (r >= run.canon_rank && r < run.canon_rank + run.length) return run.pos + (r - run.canon_rank);
        }
        return std::nullopt;
    }

    Rank rank(const Permutation& p) const {
        auto r = try_rank(p);
        if (!r) throw std::logic_error("permutation missing from the alternative path: " + to_string(p));
        return *r;
    }

    Permutation unrank(const Rank& t) const {
        if (t < 0 || t >= path_.size()) throw std::out_of_range("rank outside [0, n!)");
        if (t == path_.size() - 1) return end_;
        auto it = std::upper_bound(runs_.begin(), runs_.end(), t, [](const Rank& v, const Run& r) { return v < r.pos; });
        const Run& run = *std::prev(it);
        const Rank off = t - run.pos;
        if (run.kind == Run::Kind::power) return run.start.rotated_left(static_cast<std::size_t>(off));
        return relabel(path_.unrank(run.canon_rank + off), run);
    }

private:
    struct Run {
        enum class Kind { power, factor } kind;
        long letters = 0;    // power runs: letters (and permutations covered)
        Rank pos;            // path position of `start`
        Permutation start;
        // factor runs
        Rank canon_rank;
        Rank length;
        Permutation canon;                // canonical start
        std::vector<std::size_t> start_pos;  // value -> index in `start`
    };

    Permutation relabel(const Permutation& p, const Run& run) const {
        // value c[i] maps to start[i]
        std::vector<Element> map(order() + 1);
        for (int i = 0; i < order(); ++i) map[run.canon[i]] = run.start[i];
        std::vector<Element> out(order());
        for (int i = 0; i < order(); ++i) out[i] = map[p[i]];
        return Permutation::unchecked(std::move(out));
    }

    void push_power(int a, bool tau, Permutation& cur, Rank& pos) {
        Run r{Run::Kind::power, a + (tau ? 1 : 0), pos, cur, {}, {}, {}, {}};
        for (int q = 0; q < a; ++q) cur.sigma_in_place();
        if (tau) cur.tau_in_place();
        pos += r.letters;
        if (r.letters > 0) runs_.push_back(std::move(r));
    }

    void push_factor(const Rank& canon_rank, const Rank& length, Permutation& cur, Rank& pos) {
        if (length == 0) return;
        Run r{Run::Kind::factor, 0, pos, cur, canon_rank, length, path_.unrank(canon_rank), {}};
        r.start_pos.assign(order() + 1, 0);
        for (int i = 0; i < order(); ++i) r.start_pos[cur[i]] = static_cast<std::size_t>(i);
        cur = relabel(path_.unrank(canon_rank + length), r);
        pos += length;
        runs_.push_back(std::move(r));
    }

    void build_runs() {
        const int n = order();
        const LengthTables& t = path_.tables();
        // Hub block 0 (a2 = n-1) holds one W_{n-4} bunch at slot 2 and the
        // slot products used by W_{n-3} and U.
        const Rank base = detail::hub_frame_base(t, n - 1);
        const Rank w4_rank = base + t.sum(n - 3, 2);
        const Rank& w4_len = t.w(n - 4);
        const Rank last_slot = t.sum(n - 3, n - 2) - (n - 2);
        const Rank mid2_rank = base + t.sum(n - 3, 2) - 2;
        const Rank mid2_len = last_slot - (t.sum(n - 3, 2) - 2);
        const Rank mid3_rank = base + t.sum(n - 3, 3) - 3;
        const Rank mid3_len = last_slot - (t.sum(n - 3, 3) - 3);

        Permutation cur = alt_path_start(n);
        Rank pos = 0;
        auto seg_w4_tail = [&](bool last) {
            push_power(1, false, cur, pos);
            push_factor(w4_rank, w4_len, cur, pos);
            push_power(n - 3, true, cur, pos);
            if (last) push_power(3, false, cur, pos);
            else push_power(2, true, cur, pos);
        };
        // SEGA = s1 t s1 W_{n-4} g_{n-3} [slots 2..n-3] g_{n-1} g_{n-3} g2
        push_power(1, true, cur, pos);
        push_power(1, false, cur, pos);
        push_factor(w4_rank, w4_len, cur, pos);
        push_power(n - 3, true, cur, pos);
        push_factor(mid2_rank, mid2_len, cur, pos);
        push_power(n - 1, true, cur, pos);
        push_power(n - 3, true, cur, pos);
        push_power(2, true, cur, pos);
        for (int q = 0; q < n - 4; ++q) seg_w4_tail(false);
        seg_w4_tail(true);
        // The final s3 is g2 without its t plus the joining s1, so the inner
        // cycle starts here.
        outer_size_ = pos;
        for (int q = 0; q < n - 2; ++q) {
            push_power(n - 4, true, cur, pos);
            push_factor(mid3_rank, mid3_len, cur, pos);
            push_power(n - 1, q + 1 < n - 2, cur, pos);
        }
        if (pos != path_.size() - 1) throw std::logic_error("alternative path word has the wrong length");
        end_ = cur;
    }

    SigmaTauPath path_;
    std::vector<Run> runs_;
    Permutation end_;
    Rank outer_size_;
};

struct SwitchEntry {
    Element x;
    Permutation perm;
    Rank path_rank;
    std::optional<Rank> cycle_rank;
    bool inner = false;
};

// Switches in the order x = 1, ..., n-1; x is redirected to sigma(switch x-1)
// (cyclically), i.e. it takes its outgoing tau edge.
struct SwitchTable {
    std::vector<SwitchEntry> entries;

    std::size_t inner_count() const {
        return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.inner; }));
    }
    std::size_t outer_count() const { return entries.size() - inner_count(); }
};

// Path ranks of the switches, one alternative-path rank per switch.
inline std::vector<Rank> switch_path_ranks_slow(const AltPath& alt) {
    std::vector<Rank> out;
    for (Element x = 1; x <= alt.order() - 1; ++x) out.push_back(alt.rank(switch_perm(alt.order(), x)));
    return out;
}

// Closed form for n >= 7: each switch lies in the bunch of a seed whose
// parent chain climbs one height per step, so its offset from the segment's
// W start is a sum of SUM(i+2, route[i]) plus 1 + c(n+1) inside its own
// package. Consecutive x differ in one route entry, which makes the whole
// table O(n) big-integer operations.
inline std::optional<std::vector<Rank>> switch_path_ranks_fast(const LengthTables& t) {
    const int n = t.order();
    if (n < 7) return std::nullopt;
    const Rank seg_a = t.w(n - 3) + (n + 2);
    const Rank seg_b = t.w(n - 4) + (n + 2);
    auto seg_start = [&](int s) { return s == 0 ? Rank(0) : seg_a + Rank(s - 1) * seg_b; };
    auto tail = [&](int c) { return Rank(1 + c * (n + 1)); };
    // sum_{i=0}^{count-1} SUM(i+2, top-i)
    auto chain = [&](int top, int count) {
        Rank s = 0;
        for (int i = 0; i < count; ++i) s += t.sum(i + 2, top - i);
        return s;
    };
    std::vector<Rank> out(n - 1);
    out[n - 2] = 1 + chain(n - 3, n - 4) + tail(n - 3);
    out[n - 3] = seg_start(1) + 1 + chain(n - 4, n - 5) + tail(n - 4);
    Rank sig = chain(n - 3, n - 5);  // x = 2: route (n-3, ..., 3, 1)
    for (int x = 2; x <= n - 3; ++x) {
        out[x - 1] = seg_start(n - 1 - x) + 1 + sig + tail(n - 3);
        if (x <= n - 4) sig -= t.w(n - x - 3) + n;
    }
    const Rank last_slot = t.sum(n - 3, n - 2) - (n - 2);
    const Rank u_len = Rank(n - 3) + (last_slot - (t.sum(n - 3, 3) - 3)) + n;
    const Rank outer = seg_a + Rank(n - 3) * seg_b;
    out[0] = outer + Rank(n - 4) * u_len + (n - 3) + 3 + chain(n - 3, n - 6) + tail(n - 3);
    return out;
}

// One stretch of the cycle: path positions [first, last] walked forward,
// followed by a tau edge out of `last`.
struct CyclePiece {
    Rank first;
    Rank last;
    Rank cycle_pos;
};

// Hamiltonian cycle obtained from the two-cycle cover by sending every switch
// along its tau edge. Cycle rank 0 is the alternative path's first permutation.
// The construction closes into a single cycle only for odd n; for even n the
// redirected successor returns to the start early and the constructor throws.
class HamiltonCycle {
public:
    explicit HamiltonCycle(int n) : alt_(n) {
        const Rank total = alt_.size();
        const auto slow = switch_path_ranks_slow(alt_);
        for (Element x = 1; x <= n - 1; ++x)
            table_.entries.push_back({x, switch_perm(n, x), slow[x - 1], std::nullopt, slow[x - 1] >= alt_.outer_size()});
        std::vector<Rank> breaks;
        for (const auto& e : table_.entries) breaks.push_back(e.path_rank);
        breaks.push_back(alt_.outer_size() - 1);
        breaks.push_back(total - 1);
        std::sort(breaks.begin(), breaks.end());

        Rank a = 0, c = 0;
        for (std::size_t guard = 0; guard <= breaks.size(); ++guard) {
            const Rank b = *std::lower_bound(breaks.begin(), breaks.end(), a);
            pieces_.push_back({a, b, c});
            c += b - a + 1;
            a = alt_.rank(apply_tau(alt_.unrank(b)));
            if (a == 0) break;
        }
        if (a != 0 || c != total)
            throw std::domain_error("redirecting the switches closes a cycle of " + c.str() + " permutations, not " +
                                    total.str() + " (n = " + std::to_string(n) + ")");
        by_path_ = pieces_;
        std::sort(by_path_.begin(), by_path_.end(), [](const CyclePiece& l, const CyclePiece& r) { return l.first < r.first; });
        for (auto& e : table_.entries) e.cycle_rank = to_cycle(e.path_rank);
    }

    int order() const { return alt_.order(); }
    const AltPath& alt() const { return alt_; }
    const SwitchTable& switches() const { return table_; }
    const std::vector<CyclePiece>& pieces() const { return pieces_; }
    Permutation start() const { return alt_.start(); }

    Rank rank(const Permutation& p) const { return to_cycle(alt_.rank(p)); }

    Permutation unrank(const Rank& t) const {
        if (t < 0 || t >= alt_.size()) throw std::out_of_range("rank outside [0, n!)");
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                                   [](const Rank& v, const CyclePiece& pc) { return v < pc.cycle_pos; });
        const CyclePiece& pc = *std::prev(it);
        return alt_.unrank(pc.first + (t - pc.cycle_pos));
    }

    // The closed tour as letters, n! of them, starting from start().
    // Materializes the alternative path word; desk-scale n only.
    std::vector<Letter> letters() const {
        if (order() > 11) throw std::out_of_range("cycle word materialization is limited to n <= 11");
        const auto words = two_cycle_words(order());
        const auto path_letters = expand(words.program, words.alt);
        std::vector<Letter> out;
        out.reserve(path_letters.size() + 1);
        for (const auto& pc : pieces_) {
            const auto lo = static_cast<std::size_t>(pc.first), hi = static_cast<std::size_t>(pc.last);
            out.insert(out.end(), path_letters.begin() + static_cast<std::ptrdiff_t>(lo),
                       path_letters.begin() + static_cast<std::ptrdiff_t>(hi));
            out.push_back(Letter::tau);
        }
        return out;
    }

private:
    Rank to_cycle(const Rank& path_rank) const {
        auto it = std::upper_bound(by_path_.begin(), by_path_.end(), path_rank,
                                   [](const Rank& v, const CyclePiece& pc) { return v < pc.first; });
        const CyclePiece& pc = *std::prev(it);
        return pc.cycle_pos + (path_rank - pc.first);
    }

    AltPath alt_;
    SwitchTable table_;
    std::vector<CyclePiece> pieces_;   // in cycle order
    std::vector<CyclePiece> by_path_;  // sorted by first path position
};

inline SwitchTable switch_ranks(int n) {
    require_cycle_order(n);
    if (n % 2 == 1) return HamiltonCycle(n).switches();
    AltPath alt(n);
    SwitchTable table;
    const auto slow = switch_path_ranks_slow(alt);
    for (Element x = 1; x <= n - 1; ++x)
        table.entries.push_back({x, switch_perm(n, x), slow[x - 1], std::nullopt, slow[x - 1] >= alt.outer_size()});
    return table;
}

inline std::vector<Letter> cycle_word(int n) { return HamiltonCycle(n).letters(); }

namespace oracle {

// Every permutation of the walk of `word` from `start`, in order.
inline std::vector<Permutation> walk(const Permutation& start, const std::vector<Letter>& word) {
    return apply_word(start, word);
}

inline Report verify_cycle(int n) {
    require_cycle_order(n);
    check_desk_order(n);
    Report rep{"cycle", n, {}};
    const auto total = static_cast<std::size_t>(factorial(n));
    const auto words = two_cycle_words(n);
    const auto outer_w = expand(words.program, words.outer);
    const auto inner_w = expand(words.program, words.inner);
    const auto alt_w = expand(words.program, words.alt);
    const Permutation p0 = alt_path_start(n);

    {
        Check c{"outer and inner cycle words close and partition all permutations", true, {}};
        const auto outer = walk(p0, outer_w);
        Permutation inner_start = outer[outer.size() - 2];
        inner_start.sigma_in_place();
        const auto inner = walk(inner_start, inner_w);
        if (outer.back() != p0) c.detail = "outer word does not return to its start";
        else if (inner.back() != inner_start) c.detail = "inner word does not return to its start";
        else if (outer_w.size() + inner_w.size() != total) c.detail = "word lengths do not sum to n!";
        else {
            std::unordered_set<std::uint64_t> seen;
            for (std::size_t i = 0; i + 1 < outer.size(); ++i)
                if (!seen.insert(pack(outer[i])).second) c.detail = "outer cycle repeats " + to_string(outer[i]);
            for (std::size_t i = 0; i + 1 < inner.size(); ++i)
                if (!seen.insert(pack(inner[i])).second) c.detail = "inner cycle meets " + to_string(inner[i]);
            if (c.detail.empty() && seen.size() != total) c.detail = "cover misses permutations";
        }
        c.passed = c.detail.empty();
        rep.checks.push_back(c);
    }
    {
        Check c{"alternative path word joins the cycle words", true, {}};
        std::vector<Letter> joined(outer_w.begin(), outer_w.end() - 1);
        joined.push_back(Letter::sigma);
        joined.insert(joined.end(), inner_w.begin(), inner_w.end() - 1);
        if (joined != alt_w) {
            c.passed = false;
            c.detail = "mismatch";
        }
        rep.checks.push_back(c);
    }
    AltPath alt(n);
    {
        Check c{"alternative path visits all n! permutations", true, {}};
        const auto perms = walk(p0, alt_w);
        std::unordered_set<std::uint64_t> seen;
        for (const auto& p : perms) seen.insert(pack(p));
        if (alt_w.size() + 1 != total || seen.size() != total) {
            c.passed = false;
            c.detail = std::to_string(seen.size()) + " distinct of " + std::to_string(total);
        }
        for (std::size_t i = 0; i < perms.size() && c.passed; ++i) {
            const auto r = alt.try_rank(perms[i]);
            if (!r || *r != i) {
                c.passed = false;
                c.detail = "alternative-path rank of " + to_string(perms[i]) + " wrong at position " + std::to_string(i);
            } else if (alt.unrank(Rank(i)) != perms[i]) {
                c.passed = false;
                c.detail = "alternative-path unrank wrong at position " + std::to_string(i);
            }
        }
        rep.checks.push_back(c);
    }
    const auto slow = switch_path_ranks_slow(alt);
    {
        std::size_t inner = 0;
        for (const auto& r : slow) inner += r >= alt.outer_size();
        Check c{"one switch on the inner cycle, n-2 on the outer", inner == 1, {}};
        if (!c.passed) c.detail = std::to_string(inner) + " inner switches";
        rep.checks.push_back(c);
    }
    if (auto fast = switch_path_ranks_fast(alt.path().tables())) {
        Check c{"closed-form switch ranks agree with direct ranking", *fast == slow, {}};
        if (!c.passed) c.detail = "tables differ";
        rep.checks.push_back(c);
    }
    {
        Check c{"switch redirection gives a Hamiltonian cycle with exact cycle ranks", true, {}};
        try {
            const HamiltonCycle cyc(n);
            const auto word = cyc.letters();
            Permutation p = cyc.start();
            std::unordered_set<std::uint64_t> seen;
            for (std::size_t i = 0; i < word.size() && c.passed; ++i) {
                if (!seen.insert(pack(p)).second) {
                    c.passed = false;
                    c.detail = "tour revisits " + to_string(p);
                } else if (cyc.rank(p) != i || cyc.unrank(Rank(i)) != p) {
                    c.passed = false;
                    c.detail = "cycle rank/unrank wrong at " + std::to_string(i);
                }
                p.apply_in_place(word[i]);
            }
            if (c.passed && (word.size() != total || p != cyc.start())) {
                c.passed = false;
                c.detail = "tour does not close after n! letters";
            }
        } catch (const std::domain_error& e) {
            c.passed = false;
            c.detail = e.what();
        }
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace oracle

}  // namespace sigtau
