#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fitscore/dfa.hpp"
#include "fitscore/error.hpp"
#include "fitscore/lts.hpp"
#include "fitscore/numeric.hpp"
#include "fitscore/product.hpp"

// Brute-force reference semantics. Everything here enumerates paths one by
// one and never touches the recurrence matrices.
namespace fitscore::oracle {

using Word = std::vector<std::size_t>;
using FitnessVector = std::vector<std::uint64_t>;

inline constexpr std::size_t default_cap = 14;

struct TraceMultiset {
    std::size_t length = 0;
    std::map<Word, std::uint64_t> entries;

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto &[w, c] : entries)
            t += c;
        return t;
    }
    std::uint64_t multiplicity(const Word &w) const {
        auto it = entries.find(w);
        return it == entries.end() ? 0 : it->second;
    }
};

struct FitnessImage {
    std::map<FitnessVector, std::uint64_t> entries;

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto &[x, c] : entries)
            t += c;
        return t;
    }
};

inline void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap)
        throw Error("unfold depth " + std::to_string(n) + " exceeds the cap of " +
                    std::to_string(cap));
}

// M_n: every word of length n weighted by the number of paths from Q0 that produce it.
inline TraceMultiset unfold_paths(const Lts &m, std::size_t n, std::size_t cap = default_cap) {
    check_cap(n, cap);
    TraceMultiset out;
    out.length = n;
    Word w;
    auto walk = [&](auto &&self, std::size_t q) -> void {
        if (w.size() == n) {
            ++out.entries[w];
            return;
        }
        for (const auto &t : m.successors(q)) {
            w.push_back(t.label);
            self(self, t.dst);
            w.pop_back();
        }
    };
    for (std::size_t q : m.initial())
        walk(walk, q);
    return out;
}

inline FitnessVector apply_fitness(const FitnessTuple &f, const Word &w) {
    FitnessVector x;
    for (const auto &c : f.components())
        x.push_back(c.count(w));
    return x;
}

inline FitnessVector apply_fitness(const FitnessTuple &f, const std::vector<std::string> &w) {
    FitnessVector x;
    for (const auto &c : f.components())
        x.push_back(c.count(w));
    return x;
}

inline FitnessImage image_fitness(const FitnessTuple &f, const TraceMultiset &traces) {
    FitnessImage img;
    for (const auto &[w, c] : traces.entries)
        img.entries[apply_fitness(f, w)] += c;
    return img;
}

// Pushforward of a multiset through fn; multiplicities add on collisions.
template <class K, class Fn>
auto image(const std::map<K, std::uint64_t> &x, Fn fn) {
    std::map<decltype(fn(std::declval<const K &>())), std::uint64_t> out;
    for (const auto &[k, c] : x)
        out[fn(k)] += c;
    return out;
}

// Sum over the image of c * x_i, with i 1-based.
inline BigInt xsum(const FitnessImage &x, std::size_t i) {
    BigInt s = 0;
    for (const auto &[v, c] : x.entries) {
        if (i < 1 || i > v.size())
            throw Error("component index " + std::to_string(i) + " out of range");
        s += BigInt(c) * v[i - 1];
    }
    if (i < 1)
        throw Error("component index 0 out of range");
    return s;
}

namespace detail {

inline void check_rate_image(const FitnessImage &x) {
    if (x.entries.empty())
        throw Error("rate of an empty multiset");
    for (const auto &[v, c] : x.entries) {
        if (v.size() != 2)
            throw Error("rate needs two fitness components");
        if (v[1] == 0)
            throw Error("rate with a zero denominator");
    }
}

} // namespace detail

// (1/|X|) * sum of c * p/q.
inline Rational avgrate_direct(const FitnessImage &x) {
    detail::check_rate_image(x);
    Rational s = 0;
    for (const auto &[v, c] : x.entries)
        s += Rational(BigInt(c) * v[0], BigInt(v[1]));
    return s / Rational(BigInt(x.total()));
}

inline Rational maxrate_direct(const FitnessImage &x) {
    detail::check_rate_image(x);
    Rational best = -1;
    for (const auto &[v, c] : x.entries)
        best = std::max(best, Rational(BigInt(v[0]), BigInt(v[1])));
    return best;
}

// All second components equal.
inline bool psi_rate_check(const FitnessImage &x) {
    const FitnessVector *first = nullptr;
    for (const auto &[v, c] : x.entries) {
        if (v.size() < 2)
            return false;
        if (!first)
            first = &v;
        else if (v[1] != (*first)[1])
            return false;
    }
    return true;
}

// Per-state path counts (beta) and accepting-visit counts (alpha) over all
// n-length paths of a product automaton.
struct AlphaBeta {
    std::uint64_t alpha = 0;
    std::vector<std::uint64_t> alpha_state;
    std::vector<std::uint64_t> beta_state;
};

inline AlphaBeta alpha_beta_bruteforce(const ProductAutomaton &p, std::size_t n,
                                       std::size_t cap = default_cap) {
    check_cap(n, cap);
    std::vector<std::vector<std::size_t>> succ(p.size());
    for (const auto &t : p.transitions)
        succ[t.src].push_back(t.dst);
    AlphaBeta r;
    r.alpha_state.assign(p.size(), 0);
    r.beta_state.assign(p.size(), 0);
    auto walk = [&](auto &&self, std::size_t q, std::size_t depth, std::uint64_t visits) -> void {
        visits += p.accepting[q] ? 1 : 0;
        if (depth == n) {
            ++r.beta_state[q];
            r.alpha_state[q] += visits;
            r.alpha += visits;
            return;
        }
        for (std::size_t next : succ[q])
            self(self, next, depth + 1, visits);
    };
    for (std::size_t q = 0; q < p.size(); ++q)
        if (p.initial[q])
            walk(walk, q, 0, 0);
    return r;
}

// Streams every path of M of length <= max_n, running the DFAs along the
// way. sums[n][i] is the sum over img_f(M_n) of component i; paths[n] is |M_n|.
struct PathSums {
    std::vector<std::vector<std::uint64_t>> sums;
    std::vector<std::uint64_t> paths;
};

inline PathSums path_sums(const Lts &m, const FitnessTuple &f, std::size_t max_n) {
    if (!(m.alphabet() == f.alphabet()))
        throw Error("model and fitness use different alphabets");
    std::size_t d = f.size();
    PathSums r;
    r.sums.assign(max_n + 1, std::vector<std::uint64_t>(d, 0));
    r.paths.assign(max_n + 1, 0);
    // Row k holds the DFA states and visit counts after k steps.
    std::vector<std::size_t> dfa((max_n + 1) * d);
    std::vector<std::uint64_t> count((max_n + 1) * d);
    auto walk = [&](auto &&self, std::size_t q, std::size_t depth) -> void {
        ++r.paths[depth];
        const std::size_t *state = &dfa[depth * d];
        const std::uint64_t *seen = &count[depth * d];
        for (std::size_t i = 0; i < d; ++i)
            r.sums[depth][i] += seen[i];
        if (depth == max_n)
            return;
        std::size_t *next_state = &dfa[(depth + 1) * d];
        std::uint64_t *next_seen = &count[(depth + 1) * d];
        for (const auto &t : m.successors(q)) {
            for (std::size_t i = 0; i < d; ++i) {
                next_state[i] = f[i].step(state[i], t.label);
                next_seen[i] = seen[i] + (f[i].accepting(next_state[i]) ? 1 : 0);
            }
            self(self, t.dst, depth + 1);
        }
    };
    for (std::size_t q : m.initial()) {
        for (std::size_t i = 0; i < d; ++i) {
            dfa[i] = f[i].initial();
            count[i] = f[i].accepting(dfa[i]) ? 1 : 0;
        }
        walk(walk, q, 0);
    }
    return r;
}

} // namespace fitscore::oracle
