#pragma once

#include "sigtau/permutation.hpp"
#include "sigtau/seed.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sigtau {

// Right-hand-side symbol. Powers stay atomic; the letter stream expands them.
struct Symbol {
    enum class Kind : std::uint8_t { tau, sigma_power, gamma, rule };
    Kind kind;
    std::uint32_t arg;  // power for sigma_power/gamma, rule index for rule

    static Symbol t() { return {Kind::tau, 0}; }
    static Symbol s(std::uint32_t k) { return {Kind::sigma_power, k}; }
    static Symbol g(std::uint32_t k) { return {Kind::gamma, k}; }
    static Symbol ref(std::size_t rule) { return {Kind::rule, static_cast<std::uint32_t>(rule)}; }

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Rule {
    std::string name;
    std::vector<Symbol> rhs;
};

// Straight-line program over {sigma, tau}. A rule may only reference rules
// added before it, so the grammar is acyclic by construction.
class Program {
public:
    explicit Program(int n) : n_(n) {}

    int order() const { return n_; }

    std::size_t add_rule(std::string name, std::vector<Symbol> rhs) {
        if (find(name)) throw std::invalid_argument("duplicate rule " + name);
        check_rhs(rhs, rules_.size());
        rules_.push_back({std::move(name), std::move(rhs)});
        start_ = rules_.size() - 1;
        return start_;
    }

    // Replaces a right-hand side in place; references must still point backwards.
    void set_rhs(std::size_t rule, std::vector<Symbol> rhs) {
        check_rhs(rhs, rule);
        rules_.at(rule).rhs = std::move(rhs);
    }

    std::span<const Rule> rules() const { return rules_; }
    const Rule& rule(std::size_t i) const { return rules_.at(i); }

    std::optional<std::size_t> find(std::string_view name) const {
        for (std::size_t i = 0; i < rules_.size(); ++i)
            if (rules_[i].name == name) return i;
        return std::nullopt;
    }

    std::size_t index(std::string_view name) const {
        auto i = find(name);
        if (!i) throw std::out_of_range("no rule named " + std::string(name));
        return *i;
    }

    std::size_t start() const { return start_; }
    void set_start(std::size_t rule) {
        if (rule >= rules_.size()) throw std::out_of_range("no such rule");
        start_ = rule;
    }

    std::size_t symbol_count() const {
        std::size_t c = 0;
        for (const auto& r : rules_) c += r.rhs.size();
        return c;
    }

    // Expanded letter count of every rule.
    std::vector<Rank> expanded_lengths() const {
        std::vector<Rank> len(rules_.size());
        for (std::size_t i = 0; i < rules_.size(); ++i)
            for (const Symbol& s : rules_[i].rhs) len[i] += symbol_length(s, len);
        return len;
    }

    std::string to_text() const {
        std::string out;
        for (const auto& r : rules_) {
            out += r.name;
            out += " ->";
            for (const Symbol& s : r.rhs) {
                out.push_back(' ');
                out += symbol_text(s);
            }
            out.push_back('\n');
        }
        return out;
    }

    std::string symbol_text(const Symbol& s) const {
        switch (s.kind) {
            case Symbol::Kind::tau: return "t";
            case Symbol::Kind::sigma_power: return "s" + std::to_string(s.arg);
            case Symbol::Kind::gamma: return "g" + std::to_string(s.arg);
            case Symbol::Kind::rule: return rules_[s.arg].name;
        }
        return {};
    }

    static Rank symbol_length(const Symbol& s, const std::vector<Rank>& rule_lengths) {
        switch (s.kind) {
            case Symbol::Kind::tau: return 1;
            case Symbol::Kind::sigma_power: return s.arg;
            case Symbol::Kind::gamma: return Rank(s.arg) + 1;
            case Symbol::Kind::rule: return rule_lengths[s.arg];
        }
        return 0;
    }

private:
    static void check_rhs(const std::vector<Symbol>& rhs, std::size_t limit) {
        for (const Symbol& s : rhs)
            if (s.kind == Symbol::Kind::rule && s.arg >= limit)
                throw std::invalid_argument("rule reference must point to an earlier rule");
    }

    int n_;
    std::vector<Rule> rules_;
    std::size_t start_ = 0;
};

inline std::string w_name(int k) { return "W" + std::to_string(k); }

namespace detail {

// sigma^i W_{delta(k,i)} gamma_{n-2-i} for i in [from, to].
inline void append_slots(std::vector<Symbol>& rhs, const std::vector<std::size_t>& w, int n, int k, int from, int to) {
    for (int i = from; i <= to; ++i) {
        rhs.push_back(Symbol::s(i));
        rhs.push_back(Symbol::ref(w[delta(k, i, n)]));
        rhs.push_back(Symbol::g(n - 2 - i));
    }
}

}  // namespace detail

// Rules W0..W_{n-4}, optionally W_{n-3}, then V and SEQ (the start rule).
//   W0  = s1
//   Wk  = t . prod_{i=1..n-2} s^i W_{delta(k,i)} g_{n-2-i}
//   V   = g_{n-3} . prod_{i=2..n-3} s^i W_{delta(n-3,i)} g_{n-2-i} . s^{n-1}
//   SEQ = g1^{n-2} s2 (V t)^{n-2} V
inline Program build_program(int n, bool with_top_w = false) {
    require_order(n);
    Program p(n);
    std::vector<std::size_t> w;
    w.push_back(p.add_rule(w_name(0), {Symbol::s(1)}));
    const int top = with_top_w ? n - 3 : n - 4;
    for (int k = 1; k <= top; ++k) {
        std::vector<Symbol> rhs{Symbol::t()};
        detail::append_slots(rhs, w, n, k, 1, n - 2);
        w.push_back(p.add_rule(w_name(k), std::move(rhs)));
    }
    std::vector<Symbol> v{Symbol::g(n - 3)};
    detail::append_slots(v, w, n, n - 3, 2, n - 3);
    v.push_back(Symbol::s(n - 1));
    const auto vi = p.add_rule("V", std::move(v));
    std::vector<Symbol> seq;
    for (int q = 0; q < n - 2; ++q) seq.push_back(Symbol::g(1));
    seq.push_back(Symbol::s(2));
    for (int q = 0; q < n - 2; ++q) {
        seq.push_back(Symbol::ref(vi));
        seq.push_back(Symbol::t());
    }
    seq.push_back(Symbol::ref(vi));
    p.add_rule("SEQ", std::move(seq));
    return p;
}

// Word lengths of the grammar, computed from the recurrences in O(n)
// big-integer operations.
//   w(k)      = |W_k| for 0 <= k <= n-3
//   prefix(q) = b_q = sum_{i<=q} (|W_i| + n - 1) for 0 <= q <= n-4
class LengthTables {
public:
    explicit LengthTables(int n) : n_(n) {
        require_order(n);
        wlen_.reserve(n - 2);
        wlen_.emplace_back(1);
        // |W_k| = 1 + (n-2)(n-1) + (n-1-k)|W_{k-1}| + sum_{q<=k-2} |W_q|
        Rank partial = 0;  // sum_{q<=k-2} |W_q|
        const Rank base = Rank(1) + Rank(n - 2) * (n - 1);
        for (int k = 1; k <= n - 3; ++k) {
            if (k >= 2) partial += wlen_[k - 2];
            wlen_.push_back(base + Rank(n - 1 - k) * wlen_[k - 1] + partial);
        }
        bsum_.reserve(n - 3);
        Rank acc = 0;
        for (int q = 0; q <= n - 4; ++q) {
            acc += wlen_[q] + (n - 1);
            bsum_.push_back(acc);
        }
        // V t is W_{n-3} without its leading t s1 W_{n-4}.
        block_ = wlen_[n - 3] - wlen_[n - 4] - 2;
        vlen_ = block_ - 1;
        seqlen_ = Rank(2 * (n - 2) + 2) + Rank(n - 2) * block_ + vlen_;
    }

    int order() const { return n_; }

    const Rank& w(int k) const { return wlen_.at(k); }
    std::span<const Rank> wlens() const { return wlen_; }

    // b_q with b_{-1} = 0.
    Rank prefix(int q) const { return q < 0 ? Rank(0) : bsum_.at(q); }
    const std::vector<Rank>& prefix_sums() const { return bsum_; }

    const Rank& v() const { return vlen_; }
    // |V t| = n (n-2)! - 2: the rank distance between consecutive hub blocks.
    const Rank& block() const { return block_; }
    const Rank& seq() const { return seqlen_; }

    // SUM(k, j) = 1 + sum_{i=1}^{j-1} (n-1 + |W_{delta(k,i)}|) + j,
    // for 1 <= k <= n-3 and 1 <= j <= n-1.
    Rank sum(int k, int j) const {
        const int n = n_;
        if (k < 1 || k > n - 3) throw std::out_of_range("SUM height out of range");
        if (j < 1 || j > n - 1) throw std::out_of_range("SUM index out of range");
        return Rank(1 + j) + slot_prefix(k, j - 1);
    }

    // sum_{i=1}^{c} (n-1 + |W_{delta(k,i)}|).
    Rank slot_prefix(int k, int c) const {
        const int n = n_;
        const int flat = n - 1 - k;  // slots i <= flat use W_{k-1}
        if (c <= flat) return Rank(c) * (wlen_[k - 1] + (n - 1));
        // Slots i in (flat, c] use W_{n-2-i}, i.e. W_q for q in [n-2-c, k-2].
        return Rank(flat) * (wlen_[k - 1] + (n - 1)) + prefix(k - 2) - prefix(n - 3 - c);
    }

private:
    int n_;
    std::vector<Rank> wlen_;
    std::vector<Rank> bsum_;
    Rank block_;
    Rank vlen_;
    Rank seqlen_;
};

// Lazy left-to-right expansion of one rule with an explicit stack.
// The program must outlive the stream.
class LetterStream {
public:
    explicit LetterStream(const Program& p) : LetterStream(p, p.start()) {}

    LetterStream(const Program& p, std::size_t rule) : prog_(&p) { push(rule); }
    explicit LetterStream(Program&&) = delete;
    LetterStream(Program&&, std::size_t) = delete;

    std::optional<Letter> next() {
        for (;;) {
            if (pending_sigma_ > 0) {
                --pending_sigma_;
                return Letter::sigma;
            }
            if (pending_tau_) {
                pending_tau_ = false;
                return Letter::tau;
            }
            if (stack_.empty()) return std::nullopt;
            Frame& f = stack_.back();
            if (f.pos == f.end) {
                stack_.pop_back();
                continue;
            }
            const Symbol s = *f.pos++;
            switch (s.kind) {
                case Symbol::Kind::tau: return Letter::tau;
                case Symbol::Kind::sigma_power: pending_sigma_ = s.arg; break;
                case Symbol::Kind::gamma:
                    pending_sigma_ = s.arg;
                    pending_tau_ = true;
                    break;
                case Symbol::Kind::rule: push(s.arg); break;
            }
        }
    }

private:
    struct Frame {
        const Symbol* pos;
        const Symbol* end;
    };

    void push(std::size_t rule) {
        const auto& rhs = prog_->rule(rule).rhs;
        stack_.push_back({rhs.data(), rhs.data() + rhs.size()});
    }

    const Program* prog_;
    std::vector<Frame> stack_;
    std::uint32_t pending_sigma_ = 0;
    bool pending_tau_ = false;
};

inline LetterStream letters(const Program& p) { return LetterStream(p); }
LetterStream letters(Program&&) = delete;

// The generation order as a permutation stream starting at tau(n, ..., 1).
inline PermutationWalk<LetterStream> permutations(const Program& p) {
    return PermutationWalk<LetterStream>(path_start(p.order()), LetterStream(p));
}
PermutationWalk<LetterStream> permutations(Program&&) = delete;

inline std::vector<Letter> expand(const Program& p, std::size_t rule) {
    std::vector<Letter> out;
    LetterStream s(p, rule);
    while (auto l = s.next()) out.push_back(*l);
    return out;
}

inline std::vector<Letter> expand(const Program& p) { return expand(p, p.start()); }

}  // namespace sigtau
