#pragma once

#include "sigtau/path.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

namespace sigtau::oracle {

// Successor rule: tau iff p2 = r (+) 1, where r is the first entry after n
// (cyclically) that is not p2; sigma at (n, n-1, ..., 1) and whenever p2 = n.
inline Letter sw_next(const Permutation& p) {
    const int n = p.size();
    if (p[1] == n) return Letter::sigma;
    bool decreasing = true;
    for (int q = 0; q < n && decreasing; ++q) decreasing = p[q] == n - q;
    if (decreasing) return Letter::sigma;
    const auto l = p.position_of(n);
    std::size_t q = (l + 1) % n;
    if (q == 1) q = 2;
    const Element r = p[q];
    const Element r_succ = r == n - 1 ? 1 : r + 1;
    return p[1] == r_succ ? Letter::tau : Letter::sigma;
}

inline void check_desk_order(int n) {
    if (n < kMinOrder || n > 10) throw std::out_of_range("oracle supports 4 <= n <= 10");
}

// The whole path by iterating sw_next from tau(n, ..., 1).
inline std::vector<Permutation> enumerate_naive(int n) {
    check_desk_order(n);
    const auto total = static_cast<std::size_t>(factorial(n));
    std::vector<Permutation> out;
    out.reserve(total);
    Permutation p = path_start(n);
    out.push_back(p);
    for (std::size_t t = 1; t < total; ++t) {
        p.apply_in_place(sw_next(p));
        out.push_back(p);
    }
    return out;
}

// Linear-scan reference rank/unrank over the naive enumeration.
inline std::optional<std::size_t> naive_rank(const std::vector<Permutation>& path, const Permutation& p) {
    auto it = std::find(path.begin(), path.end(), p);
    if (it == path.end()) return std::nullopt;
    return static_cast<std::size_t>(it - path.begin());
}

struct Check {
    std::string name;
    bool passed = true;
    std::string detail;  // first counterexample when failed
};

struct Report {
    std::string subject;
    int n = 0;
    std::vector<Check> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }

    std::string to_text() const {
        std::ostringstream out;
        out << subject << " n=" << n << ": " << (passed() ? "PASS" : "FAIL") << '\n';
        for (const auto& c : checks) {
            out << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
            if (!c.detail.empty()) out << " -- " << c.detail;
            out << '\n';
        }
        return out.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["subject"] = subject;
        j["n"] = n;
        j["passed"] = passed();
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks)
            j["checks"].push_back({{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"counterexample", c.detail}});
        return j;
    }
};

namespace detail {

inline Check stream_checks_letters(const Program& prog) {
    const int n = prog.order();
    Check c{"slp letters equal successor-rule letters", true, {}};
    LetterStream slp(prog);
    Permutation p = path_start(n);
    const auto total = static_cast<std::size_t>(factorial(n)) - 1;
    for (std::size_t i = 0;; ++i) {
        auto got = slp.next();
        if (i == total) {
            if (got) {
                c.passed = false;
                c.detail = "grammar emits more than n!-1 letters";
            }
            return c;
        }
        const Letter want = sw_next(p);
        if (!got || *got != want) {
            c.passed = false;
            c.detail = "first mismatch at letter index " + std::to_string(i) + ": grammar " +
                       (got ? std::string(1, to_char(*got)) : std::string("<end>")) + ", successor rule " +
                       to_char(want) + " at " + to_string(p);
            return c;
        }
        p.apply_in_place(want);
    }
}

// Walks [lo, hi) of the path from unrank(lo), checking both directions.
inline std::optional<std::string> round_trip_shard(const SigmaTauPath& path, std::size_t lo, std::size_t hi) {
    Permutation p = path.unrank(Rank(lo));
    for (std::size_t t = lo; t < hi; ++t) {
        if (t > lo) p.apply_in_place(sw_next(p));
        const Rank r = path.rank(p);
        if (r != t) return "rank(" + to_string(p) + ") = " + r.str() + ", expected " + std::to_string(t);
        const Permutation q = path.unrank(Rank(t));
        if (q != p) return "unrank(" + std::to_string(t) + ") = " + to_string(q) + ", expected " + to_string(p);
    }
    return std::nullopt;
}

}  // namespace detail

// Round trips over every position, sharded across threads by rank range.
inline Check round_trip_check(const SigmaTauPath& path, unsigned threads = 0) {
    Check c{"rank/unrank round trips on every position", true, {}};
    const auto total = static_cast<std::size_t>(path.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, total / 1024)));
    std::vector<std::optional<std::string>> failures(threads);
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < threads; ++s) {
        const std::size_t lo = total * s / threads, hi = total * (s + 1) / threads;
        pool.emplace_back([&, s, lo, hi] { failures[s] = detail::round_trip_shard(path, lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures)
        if (f) {
            c.passed = false;
            c.detail = *f;
            break;
        }
    return c;
}

// Full oracle suite against the given program (normally build_program(n)).
inline Report verify(const Program& prog, unsigned threads = 0) {
    const int n = prog.order();
    check_desk_order(n);
    Report rep{"path", n, {}};
    const auto total = static_cast<std::size_t>(factorial(n));

    Check count{"n! distinct permutations", true, {}};
    Check ends{"starts at tau(n..1), ends at tau(sigma(n..1))", true, {}};
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(total);
    auto walk = permutations(prog);
    std::size_t visited = 0;
    Permutation last;
    while (walk.next()) {
        if (visited == 0 && walk.current() != path_start(n)) {
            ends.passed = false;
            ends.detail = "first permutation " + to_string(walk.current());
        }
        if (!seen.insert(pack(walk.current())).second && count.passed) {
            count.passed = false;
            count.detail = "repeat of " + to_string(walk.current()) + " at position " + std::to_string(visited);
        }
        last = walk.current();
        ++visited;
    }
    if (visited != total && count.passed) {
        count.passed = false;
        count.detail = "visited " + std::to_string(visited) + " permutations";
    }
    if (ends.passed && last != path_end(n)) {
        ends.passed = false;
        ends.detail = "last permutation " + to_string(last);
    }
    rep.checks.push_back(count);
    rep.checks.push_back(ends);

    const auto lengths = prog.expanded_lengths();
    Check len{"letter count n!-1", lengths[prog.start()] == total - 1, {}};
    if (!len.passed) len.detail = "grammar expands to " + lengths[prog.start()].str() + " letters";
    rep.checks.push_back(len);

    rep.checks.push_back(detail::stream_checks_letters(prog));

    const SigmaTauPath path(n);
    const LengthTables& t = path.tables();
    Check tables{"length tables match the grammar", true, {}};
    const auto top = prog.find("SEQ");
    if (top && lengths[*top] != t.seq()) {
        tables.passed = false;
        tables.detail = "SEQ length " + lengths[*top].str() + " vs table " + t.seq().str();
    }
    for (int k = 0; k <= n - 4 && tables.passed; ++k)
        if (auto wi = prog.find(w_name(k)); wi && lengths[*wi] != t.w(k)) {
            tables.passed = false;
            tables.detail = w_name(k) + " length " + lengths[*wi].str() + " vs table " + t.w(k).str();
        }
    rep.checks.push_back(tables);

    rep.checks.push_back(round_trip_check(path, threads));
    return rep;
}

inline Report verify(int n, unsigned threads = 0) {
    check_desk_order(n);
    return verify(build_program(n), threads);
}

}  // namespace sigtau::oracle
