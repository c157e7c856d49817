// Acceptance runner: `acceptance <k>` checks criterion k (1..9), or all of
// them with no argument. One PASS/FAIL line per criterion.

#include "sigtau/cycle.hpp"
#include "sigtau/oracle.hpp"
#include "sigtau/path.hpp"

#include <chrono>
#include <cmath>
#include <algorithm>
#include <functional>
#include <numeric>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace {

using namespace sigtau;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void fail(const std::string& why) {
        if (ok) note << why;
        ok = false;
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Rank random_rank(std::mt19937_64& rng, const Rank& bound) {
    Rank r = 0;
    const auto bits = boost::multiprecision::msb(bound) + 65;
    for (std::size_t b = 0; b < bits; b += 64) r = (r << 64) | Rank(rng());
    return r % bound;
}

void length_law(Outcome& o) {
    for (int n = 4; n <= 9; ++n) {
        const auto prog = build_program(n);
        std::size_t letters = 0;
        LetterStream s(prog);
        while (s.next()) ++letters;
        if (Rank(letters) != factorial(n) - 1) o.fail("n=" + std::to_string(n) + " letter count " + std::to_string(letters));
        std::unordered_set<std::uint64_t> seen;
        auto walk = permutations(prog);
        Permutation first, last;
        while (walk.next()) {
            if (seen.empty()) first = walk.current();
            seen.insert(pack(walk.current()));
            last = walk.current();
        }
        if (Rank(seen.size()) != factorial(n)) o.fail("n=" + std::to_string(n) + " distinct " + std::to_string(seen.size()));
        if (first != path_start(n) || last != path_end(n)) o.fail("n=" + std::to_string(n) + " endpoints");
    }
}

void oracle_equivalence(Outcome& o) {
    for (int n = 4; n <= 9; ++n) {
        const auto prog = build_program(n);
        LetterStream s(prog);
        Permutation p = path_start(n);
        std::size_t i = 0;
        for (; auto l = s.next(); ++i) {
            if (*l != oracle::sw_next(p)) {
                o.fail("n=" + std::to_string(n) + " letter " + std::to_string(i));
                break;
            }
            p.apply_in_place(*l);
        }
        if (o.ok && Rank(i) != factorial(n) - 1) o.fail("n=" + std::to_string(n) + " stream length");
    }
}

void golden(Outcome& o) {
    const auto t0 = Clock::now();
    const SigmaTauPath path(10);
    const LengthTables& t = path.tables();
    const Permutation g{7, 2, 4, 1, 6, 5, 10, 9, 8, 3};
    if (path.rank(g) != 1584702) o.fail("rank " + path.rank(g).str());
    if (path.unrank(Rank(1584702)) != g) o.fail("unrank");
    if (t.sum(3, 4) != 1955) o.fail("SUM(3,4)");
    if (t.sum(5, 5) != 83246) o.fail("SUM(5,5)");
    if (t.sum(7, 3) - t.w(6) - 2 != 289621) o.fail("SUM(7,3)-|W6|-2");
    if (Rank(2 * 10 - 2) + 3 * t.block() != 1209612) o.fail("hub block offset");
    if (route_and_anchor(Seed{10, 9, 8, 3, 7, 2, 4, 6, 5}).route.anchor_first() != std::vector<int>{3, 5, 4})
        o.fail("route");
    const double s = seconds_since(t0);
    if (s >= 1.0) o.fail("took " + std::to_string(s) + " s");
}

void hub_ranks(Outcome& o) {
    const SigmaTauPath path(6);
    const std::vector<std::pair<Permutation, int>> want{{{6, 4, 3, 2, 1, 5}, 1},
                                                        {{6, 3, 2, 1, 5, 4}, 3},
                                                        {{6, 2, 1, 5, 4, 3}, 5},
                                                        {{6, 1, 5, 4, 3, 2}, 7},
                                                        {{6, 5, 4, 3, 2, 1}, 9}};
    for (const auto& [p, r] : want)
        if (path.rank(p) != r) o.fail("rank(" + to_string(p) + ") = " + path.rank(p).str());
}

void round_trips(Outcome& o) {
    for (int n : {6, 7}) {
        const SigmaTauPath path(n);
        const auto total = static_cast<std::size_t>(path.size());
        std::unordered_set<std::uint64_t> seen;
        for (std::size_t r = 0; r < total; ++r) {
            const auto p = path.unrank(Rank(r));
            seen.insert(pack(p));
            if (path.rank(p) != r) {
                o.fail("n=" + std::to_string(n) + " rank(unrank(" + std::to_string(r) + "))");
                return;
            }
        }
        // unrank is onto, so rank(unrank) = id also covers unrank(rank(p)) = p for every p.
        if (seen.size() != total) o.fail("n=" + std::to_string(n) + " unrank not onto");
    }
    std::mt19937_64 rng(2024);
    for (int n : {8, 9}) {
        const SigmaTauPath path(n);
        std::vector<Element> e(n);
        for (int i = 0; i < 100000; ++i) {
            const Rank r = random_rank(rng, path.size());
            if (path.rank(path.unrank(r)) != r) {
                o.fail("n=" + std::to_string(n) + " rank(unrank(" + r.str() + "))");
                return;
            }
            std::iota(e.begin(), e.end(), 1);
            std::shuffle(e.begin(), e.end(), rng);
            const Permutation p(e);
            if (path.unrank(path.rank(p)) != p) {
                o.fail("n=" + std::to_string(n) + " unrank(rank(" + to_string(p) + "))");
                return;
            }
        }
    }
}

void stably_increasing(Outcome& o) {
    for (int n = 5; n <= 64; ++n) {
        const LengthTables t(n);
        const auto& b = t.prefix_sums();
        for (std::size_t i = 1; i < b.size(); ++i)
            if (b[i] < 2 * b[i - 1] || b[i] > n * b[i - 1])
                o.fail("n=" + std::to_string(n) + " ratio at " + std::to_string(i));
    }
}

void compression(Outcome& o) {
    // Fixed constants; the measured ratios approach 3 and peak near 15.5.
    constexpr double c = 3.0, c_bits = 16.0;
    double worst = 0, worst_bits = 0;
    for (int n = 4; n <= 64; ++n) {
        const auto prog = build_program(n);
        const double sym = static_cast<double>(prog.symbol_count()) / (n * n);
        const double bits = 8.0 * static_cast<double>(prog.to_text().size()) / (n * n * std::log2(n));
        worst = std::max(worst, sym);
        worst_bits = std::max(worst_bits, bits);
        if (sym > c) o.fail("symbols/n^2 = " + std::to_string(sym) + " at n=" + std::to_string(n));
        if (bits > c_bits) o.fail("bits/(n^2 log n) = " + std::to_string(bits) + " at n=" + std::to_string(n));
    }
    o.note << (o.note.tellp() > 0 ? "; " : "") << "max symbols/n^2 " << worst << ", max bits/(n^2 log2 n) " << worst_bits;
}

void cycle_variant(Outcome& o) {
    for (int n : {6, 7}) {
        const auto rep = oracle::verify_cycle(n);
        for (const auto& ch : rep.checks)
            if (!ch.passed) o.fail("n=" + std::to_string(n) + ": " + ch.name + " -- " + ch.detail);
    }
}

void performance(Outcome& o) {
    std::mt19937_64 rng(99);
    for (auto [n, budget] : {std::pair{1000, 0.1}, std::pair{10000, 5.0}}) {
        auto t0 = Clock::now();
        const SigmaTauPath path(n);
        const Rank r = random_rank(rng, path.size());
        const Permutation p = path.unrank(r);
        const double unrank_s = seconds_since(t0);
        t0 = Clock::now();
        const SigmaTauPath cold(n);
        const Rank back = cold.rank(p);
        const double rank_s = seconds_since(t0);
        if (back != r) o.fail("n=" + std::to_string(n) + " round trip");
        if (unrank_s >= budget || rank_s >= budget)
            o.fail("n=" + std::to_string(n) + " over budget");
        o.note << (o.note.tellp() > 0 ? "; " : "") << "n=" << n << " unrank " << unrank_s * 1e3 << " ms, rank "
               << rank_s * 1e3 << " ms (cold, tables included)";
    }
}

const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> kCriteria{
    {"length law, n=4..9", length_law},
    {"successor rule equals grammar stream, n=4..9", oracle_equivalence},
    {"golden values at n=10", golden},
    {"hub ranks at n=6", hub_ranks},
    {"round trips (exhaustive n=6,7; sampled n=8,9)", round_trips},
    {"prefix-sum ratios in [2, n] for n=5..64", stably_increasing},
    {"grammar size O(n^2) symbols, O(n^2 log n) bits", compression},
    {"cycle variant at n=6,7", cycle_variant},
    {"rank/unrank latency at n=1000 and n=10000", performance},
};

bool run(std::size_t k) {
    const auto& [name, fn] = kCriteria.at(k - 1);
    Outcome o;
    const auto t0 = Clock::now();
    try {
        fn(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << k << ": " << name << " (" << seconds_since(t0) << " s)";
    if (!o.note.str().empty()) std::cout << " -- " << o.note.str();
    std::cout << std::endl;
    return o.ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 2) {
        std::cerr << "usage: acceptance [criterion 1-9]\n";
        return 2;
    }
    if (argc == 2) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > static_cast<int>(kCriteria.size())) {
            std::cerr << "criterion must be 1.." << kCriteria.size() << '\n';
            return 2;
        }
        return run(static_cast<std::size_t>(k)) ? 0 : 1;
    }
    bool all = true;
    for (std::size_t k = 1; k <= kCriteria.size(); ++k) all = run(k) && all;
    return all ? 0 : 1;
}
