#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fitscore/error.hpp"
#include "fitscore/numeric.hpp"

namespace fitscore {

enum class Status { converged, unstable, undefined };

inline const char *to_string(Status s) {
    switch (s) {
    case Status::converged:
        return "converged";
    case Status::unstable:
        return "unstable";
    default:
        return "undefined";
    }
}

// Minimum agreed decimal digits across components, when a convergence check ran.
struct Score {
    std::vector<std::optional<Rational>> values;
    Status status = Status::converged;
    std::optional<int> digits;

    std::vector<std::size_t> undefined_components() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!values[i])
                out.push_back(i);
        return out;
    }
};

inline Score make_score(std::vector<std::optional<Rational>> values) {
    Score s;
    s.values = std::move(values);
    if (!s.undefined_components().empty())
        s.status = Status::undefined;
    return s;
}

inline std::string render_value(const std::optional<Rational> &v, unsigned places) {
    return v ? render_decimal(*v, places) : "undefined";
}

enum class Comparator { geq, leq, lex };

inline Comparator parse_comparator(const std::string &s) {
    if (s == "geq")
        return Comparator::geq;
    if (s == "leq")
        return Comparator::leq;
    if (s == "lex")
        return Comparator::lex;
    throw Error("unknown comparator '" + s + "'");
}

enum class Verdict { prefer_a, prefer_b, equal, incomparable };

inline const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::prefer_a:
        return "Preferred(A)";
    case Verdict::prefer_b:
        return "Preferred(B)";
    case Verdict::equal:
        return "Equal";
    default:
        return "Incomparable";
    }
}

// geq/leq compare componentwise (a Pareto order when d' > 1), lex compares
// left to right preferring larger values.
inline Verdict compare_scores(const Score &a, const Score &b, Comparator c) {
    if (a.values.size() != b.values.size())
        throw Error("cannot compare scores of arity " + std::to_string(a.values.size()) + " and " +
                    std::to_string(b.values.size()));
    if (a.status != Status::converged || b.status != Status::converged)
        return Verdict::incomparable;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (!a.values[i] || !b.values[i])
            return Verdict::incomparable;

    if (c == Comparator::lex) {
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            if (*a.values[i] > *b.values[i])
                return Verdict::prefer_a;
            if (*a.values[i] < *b.values[i])
                return Verdict::prefer_b;
        }
        return Verdict::equal;
    }

    bool a_better = false, b_better = false;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        int cmp = *a.values[i] < *b.values[i] ? -1 : (*a.values[i] > *b.values[i] ? 1 : 0);
        if (c == Comparator::leq)
            cmp = -cmp;
        a_better = a_better || cmp > 0;
        b_better = b_better || cmp < 0;
    }
    if (a_better && b_better)
        return Verdict::incomparable;
    if (a_better)
        return Verdict::prefer_a;
    if (b_better)
        return Verdict::prefer_b;
    return Verdict::equal;
}

} // namespace fitscore
