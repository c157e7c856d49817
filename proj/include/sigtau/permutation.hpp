#pragma once

#include "sigtau/common.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sigtau {

// A permutation of {1..n}, stored 0-based. Text form is 1-based values
// separated by spaces, e.g. "7 2 4 1 6 5 10 9 8 3".
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<Element> elems) : elems_(std::move(elems)) {
        const auto n = elems_.size();
        if (n == 0) throw std::invalid_argument("empty permutation");
        std::vector<char> seen(n + 1, 0);
        for (Element v : elems_) {
            if (v < 1 || static_cast<std::size_t>(v) > n)
                throw std::invalid_argument("value " + std::to_string(v) + " outside 1.." + std::to_string(n));
            if (seen[v]) throw std::invalid_argument("value " + std::to_string(v) + " repeated");
            seen[v] = 1;
        }
    }

    Permutation(std::initializer_list<Element> elems) : Permutation(std::vector<Element>(elems)) {}

    // Caller guarantees the bijection; used on hot paths.
    static Permutation unchecked(std::vector<Element> elems) {
        Permutation p;
        p.elems_ = std::move(elems);
        return p;
    }

    static Permutation decreasing(int n) {
        std::vector<Element> e(n);
        for (int i = 0; i < n; ++i) e[i] = n - i;
        return unchecked(std::move(e));
    }

    static Permutation identity(int n) {
        std::vector<Element> e(n);
        for (int i = 0; i < n; ++i) e[i] = i + 1;
        return unchecked(std::move(e));
    }

    int size() const { return static_cast<int>(elems_.size()); }
    Element operator[](std::size_t i) const { return elems_[i]; }
    std::span<const Element> elements() const { return elems_; }

    std::size_t position_of(Element v) const {
        auto it = std::find(elems_.begin(), elems_.end(), v);
        if (it == elems_.end()) throw std::out_of_range("value not present");
        return static_cast<std::size_t>(it - elems_.begin());
    }

    Permutation rotated_left(std::size_t k) const {
        auto e = elems_;
        if (!e.empty()) std::rotate(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(k % e.size()), e.end());
        return unchecked(std::move(e));
    }

    void sigma_in_place() { std::rotate(elems_.begin(), elems_.begin() + 1, elems_.end()); }
    void tau_in_place() { std::swap(elems_[0], elems_[1]); }
    void apply_in_place(Letter l) { l == Letter::sigma ? sigma_in_place() : tau_in_place(); }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<Element> elems_;
};

inline Permutation apply_sigma(const Permutation& p) { return p.rotated_left(1); }

inline Permutation apply_tau(const Permutation& p) {
    if (p.size() < 2) throw std::invalid_argument("tau needs at least two entries");
    auto q = p;
    q.tau_in_place();
    return q;
}

inline Permutation apply_letter(const Permutation& p, Letter l) {
    return l == Letter::sigma ? apply_sigma(p) : apply_tau(p);
}

// Lazily applies letters drawn from `Source` (anything with
// std::optional<Letter> next()). The first call to next() yields the start.
template <class Source>
class PermutationWalk {
public:
    PermutationWalk(Permutation start, Source letters)
        : current_(std::move(start)), letters_(std::move(letters)) {}

    bool next() {
        if (!started_) {
            started_ = true;
            return true;
        }
        auto l = letters_.next();
        if (!l) return false;
        current_.apply_in_place(*l);
        return true;
    }

    const Permutation& current() const { return current_; }

private:
    Permutation current_;
    Source letters_;
    bool started_ = false;
};

// Letter source over an in-memory word.
class WordSource {
public:
    explicit WordSource(std::span<const Letter> word) : word_(word) {}
    std::optional<Letter> next() {
        if (pos_ == word_.size()) return std::nullopt;
        return word_[pos_++];
    }

private:
    std::span<const Letter> word_;
    std::size_t pos_ = 0;
};

// p followed by every successive image under w.
inline std::vector<Permutation> apply_word(const Permutation& p, std::span<const Letter> w) {
    std::vector<Permutation> out;
    out.reserve(w.size() + 1);
    PermutationWalk walk(p, WordSource(w));
    while (walk.next()) out.push_back(walk.current());
    return out;
}

inline std::vector<Letter> parse_word(std::string_view text) {
    std::vector<Letter> w;
    for (char c : text) {
        if (c == 's') w.push_back(Letter::sigma);
        else if (c == 't') w.push_back(Letter::tau);
        else if (c != ' ') throw std::invalid_argument(std::string("bad letter '") + c + "'");
    }
    return w;
}

inline std::string to_string(std::span<const Letter> w) {
    std::string s;
    s.reserve(w.size());
    for (Letter l : w) s.push_back(to_char(l));
    return s;
}

inline std::vector<Element> parse_elements(std::string_view text) {
    std::vector<Element> out;
    std::string buf(text);
    for (char& c : buf)
        if (c == ',' || c == '(' || c == ')') c = ' ';
    std::istringstream in(buf);
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not an integer: " + tok);
        }
        if (used != tok.size()) throw std::invalid_argument("not an integer: " + tok);
        out.push_back(static_cast<Element>(v));
    }
    return out;
}

inline Permutation parse_permutation(std::string_view text) { return Permutation(parse_elements(text)); }

inline std::string join(std::span<const Element> elems) {
    std::string s;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) s.push_back(' ');
        s += std::to_string(elems[i]);
    }
    return s;
}

inline std::string to_string(const Permutation& p) { return join(p.elements()); }

inline std::ostream& operator<<(std::ostream& out, const Permutation& p) { return out << '(' << to_string(p) << ')'; }

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (Element v : p.elements()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
        return h;
    }
};

// Packs a permutation of order <= 16 into 64 bits, 4 bits per entry.
inline std::uint64_t pack(const Permutation& p) {
    std::uint64_t key = 0;
    for (Element v : p.elements()) key = (key << 4) | static_cast<std::uint64_t>(v - 1);
    return key;
}

// First permutation of the generation order, tau(n, n-1, ..., 1).
inline Permutation path_start(int n) { return apply_tau(Permutation::decreasing(n)); }

// Last permutation, tau(sigma(n, n-1, ..., 1)).
inline Permutation path_end(int n) { return apply_tau(apply_sigma(Permutation::decreasing(n))); }

}  // namespace sigtau
