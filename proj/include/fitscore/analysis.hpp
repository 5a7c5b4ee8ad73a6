#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fitscore/aggregate.hpp"
#include "fitscore/big_matrix.hpp"
#include "fitscore/dfa.hpp"
#include "fitscore/error.hpp"
#include "fitscore/lts.hpp"
#include "fitscore/numeric.hpp"
#include "fitscore/product.hpp"
#include "fitscore/recurrence.hpp"
#include "fitscore/scaled.hpp"
#include "fitscore/score.hpp"

namespace fitscore {

enum class Backend { exact, scaled };

inline Backend parse_backend(const std::string &s) {
    if (s == "exact")
        return Backend::exact;
    if (s == "scaled")
        return Backend::scaled;
    throw Error("unknown backend '" + s + "'");
}

// Minimum agreed digits for a component to count as converged.
inline constexpr int convergence_digits = 3;

// g(n) = (xi^(n+1) v)_0 = alpha_n, the accepting visits over all n-length paths.
inline BigInt g_value(const RecurrenceSystem &sys, std::uint64_t n) {
    PowerLadder ladder{BigMatrix(sys.xi)};
    return ladder.apply(n + 1, to_big(sys.v))[0];
}

namespace detail {

// Rough operation counts: the ladder needs about log2(K) dense products of
// dim^3, plain iteration K sparse products of nnz.
inline bool prefer_iteration(const CountMatrix &xi, std::uint64_t k) {
    double dim = static_cast<double>(xi.dim());
    double nnz = 0;
    for (std::size_t i = 0; i < xi.dim(); ++i)
        for (std::size_t j = 0; j < xi.dim(); ++j)
            nnz += xi(i, j) != 0;
    double ladder = std::log2(static_cast<double>(k) + 1) * dim * dim * dim;
    return static_cast<double>(k) * nnz < ladder;
}

} // namespace detail

// (xi^k v)_0 for every k in ks. The exact backend either shares one squaring
// ladder across all k or, for large sparse xi, iterates exactly once up to the
// largest k; the scaled backend iterates in floating point.
inline std::vector<Rational> leading_terms(const RecurrenceSystem &sys,
                                           const std::vector<std::uint64_t> &ks, Backend backend) {
    std::vector<Rational> out(ks.size());
    if (ks.empty())
        return out;
    std::vector<std::size_t> order(ks.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ks[a] < ks[b]; });
    std::vector<std::uint64_t> sorted;
    for (auto i : order)
        sorted.push_back(ks[i]);

    if (backend == Backend::scaled) {
        auto vals = ScaledIterator(sys.xi).first_coordinate(sys.v, sorted);
        for (std::size_t i = 0; i < order.size(); ++i)
            out[order[i]] = vals[i].to_rational();
        return out;
    }
    if (detail::prefer_iteration(sys.xi, sorted.back())) {
        auto vals = SparseBigIterator(sys.xi).first_coordinate(to_big(sys.v), sorted);
        for (std::size_t i = 0; i < order.size(); ++i)
            out[order[i]] = Rational(vals[i]);
        return out;
    }
    PowerLadder ladder{BigMatrix(sys.xi)};
    auto v = to_big(sys.v);
    for (std::size_t i = 0; i < ks.size(); ++i)
        out[i] = Rational(ladder.apply(ks[i], v)[0]);
    return out;
}

inline std::vector<RecurrenceSystem> build_systems(const Lts &m, const FitnessTuple &f) {
    if (!(m.alphabet() == f.alphabet()))
        throw Error("model and fitness use different alphabets");
    std::vector<RecurrenceSystem> out;
    for (const auto &c : f.components())
        out.push_back(build_recurrence(build_product(m, c)));
    return out;
}

// K-approximations h((xi_1^K v_1)_0, ..., (xi_d^K v_d)_0), one Score per K.
// K is the matrix exponent, so the inputs are the alpha_(K-1) values.
inline std::vector<Score> k_approximations(const std::vector<RecurrenceSystem> &systems,
                                           const AggregateExpr &h,
                                           const std::vector<std::uint64_t> &ks,
                                           Backend backend = Backend::exact) {
    if (systems.size() != h.arity)
        throw Error("aggregate arity " + std::to_string(h.arity) + " does not match " +
                    std::to_string(systems.size()) + " fitness components");
    for (auto k : ks)
        if (k == 0)
            throw Error("K must be positive");
    std::vector<std::vector<Rational>> per_component;
    for (const auto &sys : systems)
        per_component.push_back(leading_terms(sys, ks, backend));
    std::vector<Score> out;
    for (std::size_t j = 0; j < ks.size(); ++j) {
        std::vector<Rational> x;
        for (const auto &c : per_component)
            x.push_back(c[j]);
        out.push_back(make_score(evaluate_aggregate(h, x)));
    }
    return out;
}

inline Score k_approximation(const Lts &m, const FitnessTuple &f, const AggregateExpr &h,
                             std::uint64_t k, Backend backend = Backend::exact) {
    return k_approximations(build_systems(m, f), h, {k}, backend).front();
}

struct ConvergenceReport {
    std::uint64_t k1 = 0, k2 = 0;
    Score score1, score2;
    std::vector<int> agreed_digits;
    Status status = Status::converged;
};

inline ConvergenceReport convergence_report(const std::vector<RecurrenceSystem> &systems,
                                            const AggregateExpr &h, std::uint64_t k1,
                                            std::uint64_t k2, Backend backend = Backend::exact) {
    if (k1 >= k2)
        throw Error("convergence checkpoints must satisfy k1 < k2");
    auto scores = k_approximations(systems, h, {k1, k2}, backend);
    ConvergenceReport r{k1, k2, scores[0], scores[1], {}, Status::converged};
    if (r.score1.status == Status::undefined || r.score2.status == Status::undefined) {
        r.status = Status::undefined;
    } else {
        int lowest = 1 << 30;
        for (std::size_t i = 0; i < r.score1.values.size(); ++i) {
            int d = agreed_digits(*r.score1.values[i], *r.score2.values[i]);
            r.agreed_digits.push_back(d);
            lowest = std::min(lowest, d);
        }
        r.status = lowest >= convergence_digits ? Status::converged : Status::unstable;
        r.score1.digits = r.score2.digits = lowest;
    }
    r.score1.status = r.score2.status = r.status;
    return r;
}

inline ConvergenceReport convergence_report(const Lts &m, const FitnessTuple &f,
                                            const AggregateExpr &h, std::uint64_t k1,
                                            std::uint64_t k2, Backend backend = Backend::exact) {
    return convergence_report(build_systems(m, f), h, k1, k2, backend);
}

inline std::vector<std::pair<std::uint64_t, Score>>
series(const std::vector<RecurrenceSystem> &systems, const AggregateExpr &h,
       const std::vector<std::uint64_t> &ks, Backend backend = Backend::exact) {
    if (ks.empty())
        throw Error("series needs at least one K");
    if (!std::is_sorted(ks.begin(), ks.end()))
        throw Error("series K values must be ascending");
    auto scores = k_approximations(systems, h, ks, backend);
    std::vector<std::pair<std::uint64_t, Score>> out;
    for (std::size_t i = 0; i < ks.size(); ++i)
        out.emplace_back(ks[i], std::move(scores[i]));
    return out;
}

inline std::vector<std::pair<std::uint64_t, Score>>
series(const Lts &m, const FitnessTuple &f, const AggregateExpr &h,
       const std::vector<std::uint64_t> &ks, Backend backend = Backend::exact) {
    return series(build_systems(m, f), h, ks, backend);
}

// (xi^K v)_0 / (xi^(K+1) v)_0, i.e. the rate h = x1/x2 for the pair
// g_1(n) = g(n), g_2(n) = g(n+1). Empty when the denominator vanishes.
inline std::optional<Rational> shifted_ratio_score(const RecurrenceSystem &sys, std::uint64_t k) {
    if (k == 0)
        throw Error("K must be positive");
    auto t = leading_terms(sys, {k, k + 1}, Backend::exact);
    if (t[1] == 0)
        return std::nullopt;
    return t[0] / t[1];
}

} // namespace fitscore
