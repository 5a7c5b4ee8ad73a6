#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "fitscore/error.hpp"
#include "fitscore/lts.hpp"

namespace fitscore {

// Total DFA. Its value on a word is the number of accepting states in the
// run q0 q1 ... qm, so an accepting initial state counts once for every word.
class Dfa {
public:
    using Edge = std::tuple<std::string, std::string, std::string>;

    Dfa() = default;

    Dfa(Alphabet alphabet, const std::vector<std::string> &states, std::string_view initial,
        const std::vector<std::string> &accepting, const std::vector<Edge> &delta)
        : alphabet_(std::move(alphabet)) {
        if (alphabet_.empty())
            throw Error("DFA over an empty alphabet");
        if (states.empty())
            throw Error("DFA without states");
        for (const auto &s : states)
            states_.add(s);
        accepting_.assign(states_.size(), false);
        initial_ = states_.index(initial);
        for (const auto &s : accepting)
            accepting_[states_.index(s)] = true;

        std::vector<std::optional<std::size_t>> table(states_.size() * alphabet_.size());
        for (const auto &[from, label, to] : delta) {
            std::size_t q = states_.index(from), a = alphabet_.index(label), r = states_.index(to);
            auto &cell = table[q * alphabet_.size() + a];
            if (cell && *cell != r)
                throw Error("nondeterministic DFA: state '" + from + "' has two successors on '" +
                            label + "'");
            cell = r;
        }
        delta_.reserve(table.size());
        for (std::size_t q = 0; q < states_.size(); ++q) {
            for (std::size_t a = 0; a < alphabet_.size(); ++a) {
                const auto &cell = table[q * alphabet_.size() + a];
                if (!cell)
                    throw Error("non-total DFA: no transition from '" + states_[q] + "' on '" +
                                alphabet_[a] + "'");
                delta_.push_back(*cell);
            }
        }
    }

    const Alphabet &alphabet() const { return alphabet_; }
    std::size_t state_count() const { return states_.size(); }
    const std::string &state_name(std::size_t i) const { return states_[i]; }
    std::size_t initial() const { return initial_; }
    bool accepting(std::size_t q) const { return accepting_[q]; }
    std::size_t step(std::size_t q, std::size_t label) const {
        return delta_[q * alphabet_.size() + label];
    }

    std::uint64_t count(const std::vector<std::size_t> &word) const {
        std::size_t q = initial_;
        std::uint64_t c = accepting_[q] ? 1 : 0;
        for (std::size_t a : word) {
            if (a >= alphabet_.size())
                throw Error("symbol index out of range");
            q = step(q, a);
            c += accepting_[q] ? 1 : 0;
        }
        return c;
    }

    std::uint64_t count(const std::vector<std::string> &word) const {
        std::vector<std::size_t> w;
        w.reserve(word.size());
        for (const auto &l : word)
            w.push_back(alphabet_.index(l));
        return count(w);
    }

private:
    Alphabet alphabet_;
    StateTable states_;
    std::size_t initial_ = 0;
    std::vector<bool> accepting_;
    std::vector<std::size_t> delta_;
};

class FitnessTuple {
public:
    FitnessTuple() = default;

    explicit FitnessTuple(std::vector<Dfa> components) : components_(std::move(components)) {
        if (components_.empty())
            throw Error("fitness tuple needs at least one component");
        for (const auto &c : components_)
            if (!(c.alphabet() == components_.front().alphabet()))
                throw Error("fitness components use different alphabets");
    }

    std::size_t size() const { return components_.size(); }
    const Dfa &operator[](std::size_t i) const { return components_[i]; }
    const std::vector<Dfa> &components() const { return components_; }
    const Alphabet &alphabet() const { return components_.front().alphabet(); }

private:
    std::vector<Dfa> components_;
};

namespace detail {

inline std::vector<bool> label_mask(const Alphabet &alphabet, const std::vector<std::string> &set,
                                    const char *what) {
    if (set.empty())
        throw Error(std::string("empty ") + what + " label set");
    std::vector<bool> mask(alphabet.size(), false);
    for (const auto &l : set) {
        auto i = alphabet.find(l);
        if (!i)
            throw Error(std::string(what) + " label '" + l + "' is not in the alphabet");
        mask[*i] = true;
    }
    return mask;
}

} // namespace detail

// Counts completed L ... R sequences: q1 waits for L, q2 waits for R,
// q3 (accepting) is entered on R and behaves like q1 afterwards.
inline Dfa make_sequence_counter(const Alphabet &alphabet, const std::vector<std::string> &left,
                                 const std::vector<std::string> &right) {
    auto in_l = detail::label_mask(alphabet, left, "left");
    auto in_r = detail::label_mask(alphabet, right, "right");
    std::vector<Dfa::Edge> delta;
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
        const auto &l = alphabet[a];
        delta.emplace_back("q1", l, in_l[a] ? "q2" : "q1");
        delta.emplace_back("q2", l, in_r[a] ? "q3" : "q2");
        delta.emplace_back("q3", l, in_l[a] ? "q2" : "q1");
    }
    return Dfa(alphabet, {"q1", "q2", "q3"}, "q1", {"q3"}, delta);
}

inline Dfa make_length_counter(const Alphabet &alphabet) {
    if (alphabet.empty())
        throw Error("length counter over an empty alphabet");
    std::vector<Dfa::Edge> delta;
    for (const auto &l : alphabet.labels()) {
        delta.emplace_back("q1", l, "q2");
        delta.emplace_back("q2", l, "q2");
    }
    return Dfa(alphabet, {"q1", "q2"}, "q1", {"q2"}, delta);
}

} // namespace fitscore
