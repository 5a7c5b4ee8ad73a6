#pragma once

#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fitscore/dfa.hpp"
#include "fitscore/error.hpp"
#include "fitscore/lts.hpp"

namespace fitscore {

// Reachable part of M || f. Indices are 0-based here; dumps print 1-based.
struct ProductAutomaton {
    Alphabet alphabet;
    std::vector<std::pair<std::size_t, std::size_t>> pairs; // (lts state, dfa state)
    std::vector<std::string> names;
    std::vector<bool> initial;
    std::vector<bool> accepting;
    std::vector<Transition> transitions;

    std::size_t size() const { return pairs.size(); }
};

inline ProductAutomaton build_product(const Lts &m, const Dfa &f) {
    if (!(m.alphabet() == f.alphabet()))
        throw Error("LTS and DFA use different alphabets");

    ProductAutomaton p;
    p.alphabet = m.alphabet();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    std::deque<std::size_t> queue;

    auto intern = [&](std::size_t q, std::size_t s) {
        auto [it, fresh] = index.emplace(std::pair(q, s), p.pairs.size());
        if (fresh) {
            p.pairs.emplace_back(q, s);
            p.names.push_back(m.state_name(q) + "." + f.state_name(s));
            p.initial.push_back(m.is_initial(q) && s == f.initial());
            p.accepting.push_back(f.accepting(s));
            queue.push_back(it->second);
        }
        return it->second;
    };

    for (std::size_t q : m.initial())
        intern(q, f.initial());
    while (!queue.empty()) {
        std::size_t id = queue.front();
        queue.pop_front();
        auto [q, s] = p.pairs[id];
        for (const auto &t : m.successors(q)) {
            std::size_t next = intern(t.dst, f.step(s, t.label));
            p.transitions.push_back({id, t.label, next});
        }
    }
    return p;
}

} // namespace fitscore
