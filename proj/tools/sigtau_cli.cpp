// Command-line front end for the sigma-tau generation order.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error.

#include "sigtau/cycle.hpp"
#include "sigtau/oracle.hpp"
#include "sigtau/path.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <iostream>
#include <random>
#include <string>

namespace {

using namespace sigtau;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Permutation read_perm(const std::string& text, int n) {
    Permutation p = parse_permutation(text);
    if (p.size() != n) throw UsageError("permutation has " + std::to_string(p.size()) + " entries, expected " + std::to_string(n));
    return p;
}

Rank read_rank(const std::string& text, const Rank& limit) {
    Rank r = parse_rank(text);
    if (r >= limit) throw UsageError("rank " + text + " outside [0, " + limit.str() + ")");
    return r;
}

json perm_json(const Permutation& p) { return json(std::vector<Element>(p.elements().begin(), p.elements().end())); }

void emit_report(const oracle::Report& rep, bool as_json, json& sink) {
    if (as_json) sink.push_back(rep.to_json());
    else std::cout << rep.to_text();
}

Rank random_rank(std::mt19937_64& rng, const Rank& bound) {
    const auto bits = boost::multiprecision::msb(bound) + 65;
    Rank r = 0;
    for (std::size_t b = 0; b < bits; b += 64) r = (r << 64) | Rank(rng());
    return r % bound;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sigma-tau permutation generation: streaming, ranking, unranking, verification"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable JSON output");

    int n = 0;
    auto add_n = [&](CLI::App* sub) { sub->add_option("--n", n, "Order n (>= 4)")->required(); };

    // gen
    auto* gen = app.add_subcommand("gen", "Stream the first K letters or permutations");
    add_n(gen);
    long long limit = -1;
    bool want_letters = false, want_perms = false;
    gen->add_option("--limit", limit, "How many items to print (default: all)");
    auto* letters_flag = gen->add_flag("--letters", want_letters, "Print letters, one character each");
    gen->add_flag("--perms", want_perms, "Print permutations, one per line (default)")->excludes(letters_flag);

    // rank / unrank
    std::string perm_text, rank_text;
    auto* rank_cmd = app.add_subcommand("rank", "Rank of a permutation");
    add_n(rank_cmd);
    rank_cmd->add_option("--perm", perm_text, "Permutation, e.g. \"6 5 4 3 2 1\"")->required();
    auto* unrank_cmd = app.add_subcommand("unrank", "Permutation at a rank");
    add_n(unrank_cmd);
    unrank_cmd->add_option("--rank", rank_text, "Decimal rank in [0, n!)")->required();

    // slp
    auto* slp_cmd = app.add_subcommand("slp", "Print the grammar");
    add_n(slp_cmd);
    bool stats = false, slp_cycle = false;
    slp_cmd->add_flag("--stats", stats, "Print rule count, symbol count and serialized size instead");
    slp_cmd->add_flag("--cycle", slp_cycle, "Include the cycle-cover and alternative-path rules");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run the oracle suite (4 <= n <= 10)");
    add_n(verify_cmd);
    bool verify_cycle = false;
    unsigned threads = 0;
    verify_cmd->add_flag("--cycle", verify_cycle, "Also verify the cycle variant");
    verify_cmd->add_option("--threads", threads, "Worker threads for round trips (default: all cores)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time random rank+unrank round trips");
    add_n(bench_cmd);
    long long ops = 1000;
    std::uint64_t seed = 1;
    bench_cmd->add_option("--ops", ops, "Number of round trips")->required();
    bench_cmd->add_option("--seed", seed, "PRNG seed");

    // cycle
    auto* cycle_cmd = app.add_subcommand("cycle", "Hamiltonian-cycle variant");
    cycle_cmd->require_subcommand(1);
    auto* crank = cycle_cmd->add_subcommand("rank", "Cycle rank of a permutation");
    add_n(crank);
    crank->add_option("--perm", perm_text, "Permutation")->required();
    auto* cunrank = cycle_cmd->add_subcommand("unrank", "Permutation at a cycle rank");
    add_n(cunrank);
    cunrank->add_option("--rank", rank_text, "Decimal rank in [0, n!)")->required();
    auto* cverify = cycle_cmd->add_subcommand("verify", "Verify the cycle variant (5 <= n <= 10)");
    add_n(cverify);
    auto* cswitch = cycle_cmd->add_subcommand("switches", "Print the switch table");
    add_n(cswitch);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    json out;
    try {
        require_order(n);
        if (gen->parsed()) {
            const auto prog = build_program(n);
            const bool letters_mode = want_letters;
            std::string word;
            json perms = json::array();
            if (letters_mode) {
                LetterStream s(prog);
                for (long long i = 0; limit < 0 || i < limit; ++i) {
                    auto l = s.next();
                    if (!l) break;
                    word.push_back(to_char(*l));
                }
                if (as_json) out = {{"n", n}, {"letters", word}};
                else std::cout << word << '\n';
            } else {
                auto walk = permutations(prog);
                for (long long i = 0; (limit < 0 || i < limit) && walk.next(); ++i) {
                    if (as_json) perms.push_back(perm_json(walk.current()));
                    else std::cout << to_string(walk.current()) << '\n';
                }
                if (as_json) out = {{"n", n}, {"permutations", perms}};
            }
        } else if (rank_cmd->parsed()) {
            const SigmaTauPath path(n);
            const Rank r = path.rank(read_perm(perm_text, n));
            if (as_json) out = {{"n", n}, {"rank", r.str()}};
            else std::cout << r << '\n';
        } else if (unrank_cmd->parsed()) {
            const SigmaTauPath path(n);
            const Permutation p = path.unrank(read_rank(rank_text, path.size()));
            if (as_json) out = {{"n", n}, {"permutation", perm_json(p)}};
            else std::cout << to_string(p) << '\n';
        } else if (slp_cmd->parsed()) {
            const Program prog = slp_cycle ? two_cycle_words(n).program : build_program(n);
            const std::string text = prog.to_text();
            if (stats) {
                const std::size_t bits = 8 * text.size();
                if (as_json) out = {{"n", n}, {"rules", prog.rules().size()}, {"symbols", prog.symbol_count()}, {"bits", bits}};
                else
                    std::cout << "rules " << prog.rules().size() << "\nsymbols " << prog.symbol_count() << "\nbits " << bits
                              << '\n';
            } else if (as_json) {
                json rules = json::array();
                for (const auto& r : prog.rules()) {
                    json rhs = json::array();
                    for (const auto& s : r.rhs) rhs.push_back(prog.symbol_text(s));
                    rules.push_back({{"name", r.name}, {"rhs", rhs}});
                }
                out = {{"n", n}, {"rules", rules}};
            } else {
                std::cout << text;
            }
        } else if (verify_cmd->parsed()) {
            if (n > 10) throw UsageError("verify supports 4 <= n <= 10");
            out = json::array();
            bool ok = true;
            const auto rep = oracle::verify(n, threads);
            ok = ok && rep.passed();
            emit_report(rep, as_json, out);
            if (verify_cycle) {
                if (n < 5) throw UsageError("the cycle variant needs n >= 5");
                const auto crep = oracle::verify_cycle(n);
                ok = ok && crep.passed();
                emit_report(crep, as_json, out);
            }
            if (as_json) std::cout << out.dump(2) << '\n';
            return ok ? kOk : kVerifyFailed;
        } else if (bench_cmd->parsed()) {
            if (ops <= 0) throw UsageError("--ops must be positive");
            const auto t0 = std::chrono::steady_clock::now();
            const SigmaTauPath path(n);
            const auto t1 = std::chrono::steady_clock::now();
            std::mt19937_64 rng(seed);
            std::vector<Rank> ranks;
            for (long long i = 0; i < ops; ++i) ranks.push_back(random_rank(rng, path.size()));
            double unrank_s = 0, rank_s = 0;
            long long bad = 0;
            for (const Rank& r : ranks) {
                const auto a = std::chrono::steady_clock::now();
                const Permutation p = path.unrank(r);
                const auto b = std::chrono::steady_clock::now();
                const Rank back = path.rank(p);
                const auto c = std::chrono::steady_clock::now();
                unrank_s += std::chrono::duration<double>(b - a).count();
                rank_s += std::chrono::duration<double>(c - b).count();
                bad += back != r;
            }
            const double setup = std::chrono::duration<double>(t1 - t0).count();
            const double per_trip = (unrank_s + rank_s) / static_cast<double>(ops);
            if (as_json)
                out = {{"n", n},          {"ops", ops},
                       {"seed", seed},    {"table_build_seconds", setup},
                       {"ops_per_second", 1.0 / per_trip}, {"unrank_microseconds", 1e6 * unrank_s / ops},
                       {"rank_microseconds", 1e6 * rank_s / ops}, {"mismatches", bad}};
            else
                std::cout << "n " << n << "\nops " << ops << "\ntable build " << setup * 1e3 << " ms\nround trips/s "
                          << 1.0 / per_trip << "\nunrank " << 1e6 * unrank_s / ops << " us/op\nrank "
                          << 1e6 * rank_s / ops << " us/op\nmismatches " << bad << '\n';
            if (bad) {
                if (as_json) std::cout << out.dump(2) << '\n';
                return kVerifyFailed;
            }
        } else if (cycle_cmd->parsed()) {
            require_cycle_order(n);
            if (cverify->parsed()) {
                if (n > 10) throw UsageError("cycle verify supports 5 <= n <= 10");
                const auto rep = oracle::verify_cycle(n);
                if (as_json) std::cout << rep.to_json().dump(2) << '\n';
                else std::cout << rep.to_text();
                return rep.passed() ? kOk : kVerifyFailed;
            }
            if (cswitch->parsed()) {
                const SwitchTable table = switch_ranks(n);
                json rows = json::array();
                for (const auto& e : table.entries) {
                    const std::string cyc = e.cycle_rank ? e.cycle_rank->str() : std::string("-");
                    if (as_json)
                        rows.push_back({{"x", e.x}, {"permutation", perm_json(e.perm)}, {"path_rank", e.path_rank.str()},
                                        {"cycle_rank", e.cycle_rank ? json(cyc) : json(nullptr)},
                                        {"cycle", e.inner ? "inner" : "outer"}});
                    else
                        std::cout << e.x << '\t' << to_string(e.perm) << '\t' << e.path_rank << '\t' << cyc << '\t'
                                  << (e.inner ? "inner" : "outer") << '\n';
                }
                if (as_json) out = {{"n", n}, {"switches", rows}};
            } else {
                const HamiltonCycle cyc(n);
                if (crank->parsed()) {
                    const Rank r = cyc.rank(read_perm(perm_text, n));
                    if (as_json) out = {{"n", n}, {"cycle_rank", r.str()}};
                    else std::cout << r << '\n';
                } else {
                    const Permutation p = cyc.unrank(read_rank(rank_text, cyc.alt().size()));
                    if (as_json) out = {{"n", n}, {"permutation", perm_json(p)}};
                    else std::cout << to_string(p) << '\n';
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    if (as_json && !out.is_null()) std::cout << out.dump() << '\n';
    return kOk;
}
