#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "fitscore/error.hpp"
#include "fitscore/lts.hpp"

namespace fitscore {

enum class Synchronization {
    rendezvous, // a! in one process fires together with a? in exactly one other
    none,       // tags are ignored and every move interleaves
};

// Reachable part of the parallel composition. Global states are named by
// joining the local names with '.', in process order, and numbered in BFS
// order with successors visited by (label, target).
inline Lts compose(const std::vector<ProcessLts> &procs,
                   Synchronization sync = Synchronization::rendezvous) {
    if (procs.empty())
        throw Error("compose needs at least one process");
    const Alphabet &sigma = procs.front().alphabet();
    for (const auto &p : procs)
        if (!(p.alphabet() == sigma))
            throw Error("process '" + p.name() + "' uses a different alphabet");

    using Global = std::vector<std::size_t>;
    Lts out(sigma);
    std::map<Global, std::size_t> index;
    std::vector<Global> order;
    std::deque<std::size_t> queue;

    auto intern = [&](const Global &g) {
        auto it = index.find(g);
        if (it != index.end())
            return it->second;
        std::string name;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i)
                name += '.';
            name += procs[i].state_name(g[i]);
        }
        std::size_t id = out.add_state(std::move(name));
        index.emplace(g, id);
        order.push_back(g);
        queue.push_back(id);
        return id;
    };

    // Cartesian product of the initial sets, in lexicographic order.
    Global g(procs.size());
    bool any_initial = true;
    for (const auto &p : procs)
        any_initial = any_initial && !p.initial().empty();
    std::vector<std::size_t> pos(procs.size(), 0);
    while (any_initial) {
        for (std::size_t i = 0; i < procs.size(); ++i)
            g[i] = procs[i].initial()[pos[i]];
        out.mark_initial(intern(g));
        std::size_t k = procs.size();
        any_initial = false;
        while (k-- > 0) {
            if (++pos[k] < procs[k].initial().size()) {
                any_initial = true;
                break;
            }
            pos[k] = 0;
        }
    }

    while (!queue.empty()) {
        std::size_t id = queue.front();
        queue.pop_front();
        const Global cur = order[id];
        std::vector<std::pair<std::size_t, Global>> moves;

        for (std::size_t i = 0; i < procs.size(); ++i) {
            for (const auto &t : procs[i].successors(cur[i])) {
                if (sync == Synchronization::none || t.label.tag == Tag::plain) {
                    Global next = cur;
                    next[i] = t.dst;
                    moves.emplace_back(t.label.label, std::move(next));
                    continue;
                }
                if (t.label.tag != Tag::send)
                    continue;
                // Pair this send with every enabled matching receive elsewhere.
                for (std::size_t j = 0; j < procs.size(); ++j) {
                    if (j == i)
                        continue;
                    for (const auto &u : procs[j].successors(cur[j])) {
                        if (u.label.label != t.label.label || u.label.tag != Tag::receive)
                            continue;
                        Global next = cur;
                        next[i] = t.dst;
                        next[j] = u.dst;
                        moves.emplace_back(t.label.label, std::move(next));
                    }
                }
            }
        }

        std::sort(moves.begin(), moves.end());
        moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
        for (const auto &[label, next] : moves)
            out.add_transition(id, label, intern(next));
    }
    return out;
}

// A single process viewed as a closed system with its tags dropped.
inline Lts open_system(const ProcessLts &p) {
    return compose({p}, Synchronization::none);
}

} // namespace fitscore
