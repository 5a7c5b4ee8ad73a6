#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fitscore/fitscore.hpp"

namespace support {

using namespace fitscore;

inline Lts builtin_lts(const std::string &name) {
    return model_lts(parse_model_file(fixtures::model(name).text));
}

inline FitnessFile builtin_fitness(const std::string &model_name) {
    auto mf = parse_model_file(fixtures::model(model_name).text);
    return parse_fitness_file(fixtures::fitness(fixtures::model(model_name).fitness).text,
                              mf.alphabet);
}

inline ModelFile simple_comm() { return parse_model_file(fixtures::good_model); }

inline const ProcessLts &process(const ModelFile &mf, const std::string &name) {
    for (const auto &p : mf.processes)
        if (p.name() == name)
            return p;
    throw Error("no process " + name);
}

inline std::vector<std::string> split_word(const std::string &w) {
    std::vector<std::string> out;
    for (char c : w)
        if (c != ' ')
            out.emplace_back(1, c);
    return out;
}

// Random LTS with labels drawn from a small alphabet. Duplicate triples are skipped.
inline Lts random_lts(std::mt19937_64 &rng, std::size_t max_states, const Alphabet &sigma,
                      double density = 0.35) {
    std::uniform_int_distribution<std::size_t> n_dist(1, max_states);
    std::bernoulli_distribution edge(density), init(0.3);
    Lts m(sigma);
    std::size_t n = n_dist(rng);
    for (std::size_t i = 0; i < n; ++i)
        m.add_state("q" + std::to_string(i));
    m.mark_initial(0);
    for (std::size_t i = 1; i < n; ++i)
        if (init(rng))
            m.mark_initial(i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < sigma.size(); ++a)
            for (std::size_t j = 0; j < n; ++j)
                if (edge(rng))
                    m.add_transition(i, a, j);
    return m;
}

inline Dfa random_dfa(std::mt19937_64 &rng, const Alphabet &sigma, std::size_t max_states = 4) {
    std::uniform_int_distribution<std::size_t> n_dist(1, max_states);
    std::size_t n = n_dist(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::bernoulli_distribution acc(0.4);
    std::vector<std::string> states, accepting;
    for (std::size_t i = 0; i < n; ++i) {
        states.push_back("d" + std::to_string(i));
        if (acc(rng))
            accepting.push_back(states.back());
    }
    std::vector<Dfa::Edge> delta;
    for (const auto &s : states)
        for (const auto &l : sigma.labels())
            delta.emplace_back(s, l, states[pick(rng)]);
    return Dfa(sigma, states, states[pick(rng)], accepting, delta);
}

// Number of n-length paths from Q0, counted by plain recursion.
inline std::uint64_t count_paths(const Lts &m, std::size_t n) {
    std::uint64_t total = 0;
    auto walk = [&](auto &&self, std::size_t q, std::size_t depth) -> void {
        if (depth == n) {
            ++total;
            return;
        }
        for (const auto &t : m.successors(q))
            self(self, t.dst, depth + 1);
    };
    for (auto q : m.initial())
        walk(walk, q, 0);
    return total;
}

inline std::uint64_t count_paths(const ProductAutomaton &p, std::size_t n) {
    std::vector<std::vector<std::size_t>> succ(p.size());
    for (const auto &t : p.transitions)
        succ[t.src].push_back(t.dst);
    std::uint64_t total = 0;
    auto walk = [&](auto &&self, std::size_t q, std::size_t depth) -> void {
        if (depth == n) {
            ++total;
            return;
        }
        for (auto next : succ[q])
            self(self, next, depth + 1);
    };
    for (std::size_t q = 0; q < p.size(); ++q)
        if (p.initial[q])
            walk(walk, q, 0);
    return total;
}

} // namespace support
