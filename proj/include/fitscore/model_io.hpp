#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fitscore/aggregate.hpp"
#include "fitscore/compose.hpp"
#include "fitscore/dfa.hpp"
#include "fitscore/error.hpp"
#include "fitscore/lts.hpp"
#include "fitscore/score.hpp"

namespace fitscore {

struct ModelFile {
    Alphabet alphabet;
    std::vector<ProcessLts> processes;
    Synchronization synchronization = Synchronization::rendezvous;
    std::vector<std::string> compose; // processes to compose; empty means all
};

struct FitnessFile {
    FitnessTuple fitness;
    AggregateExpr aggregate;
    Comparator compare = Comparator::geq;
};

namespace detail {

using json = nlohmann::json;

inline json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t end = std::min<std::size_t>(e.byte, text.size());
        std::size_t line = 1 + std::count(text.begin(), text.begin() + end, '\n');
        std::string msg = e.what();
        if (auto p = msg.find("syntax error"); p != std::string::npos)
            msg = msg.substr(p);
        throw ParseError(msg, line);
    }
}

inline const json &field(const json &obj, const char *key, const std::string &where) {
    if (!obj.is_object())
        throw ParseError(where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(where + " is missing \"" + key + "\"");
    return *it;
}

inline std::string as_string(const json &j, const std::string &where) {
    if (!j.is_string())
        throw ParseError(where + " must be a string");
    return j.get<std::string>();
}

inline std::vector<std::string> as_strings(const json &j, const std::string &where) {
    if (!j.is_array())
        throw ParseError(where + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto &x : j)
        out.push_back(as_string(x, where + " entry"));
    return out;
}

inline std::vector<std::vector<std::string>> as_triples(const json &j, const std::string &where) {
    if (!j.is_array())
        throw ParseError(where + " must be an array of [source, label, target] triples");
    std::vector<std::vector<std::string>> out;
    for (const auto &t : j) {
        auto v = as_strings(t, where + " entry");
        if (v.size() != 3)
            throw ParseError(where + " entries must have three elements");
        out.push_back(std::move(v));
    }
    return out;
}

// Rethrows library errors as ParseError with context.
template <class Fn>
auto in_context(const std::string &where, Fn fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError &) {
        throw;
    } catch (const Error &e) {
        throw ParseError(where + ": " + e.what());
    }
}

} // namespace detail

inline ModelFile parse_model_file(std::string_view text) {
    using namespace detail;
    json root = parse_json(text);
    ModelFile out;
    auto labels = as_strings(field(root, "alphabet", "model"), "alphabet");
    if (labels.empty())
        throw ParseError("empty alphabet");
    out.alphabet = in_context("alphabet", [&] { return Alphabet(labels); });

    if (auto it = root.find("synchronization"); it != root.end()) {
        std::string s = as_string(*it, "synchronization");
        if (s == "rendezvous")
            out.synchronization = Synchronization::rendezvous;
        else if (s == "none")
            out.synchronization = Synchronization::none;
        else
            throw ParseError("unknown synchronization '" + s + "'");
    }

    const json &procs = field(root, "processes", "model");
    if (!procs.is_array())
        throw ParseError("processes must be an array");
    if (procs.empty())
        throw ParseError("no processes");
    for (const auto &pj : procs) {
        std::string name = as_string(field(pj, "name", "process"), "process name");
        std::string where = "process '" + name + "'";
        for (const auto &p : out.processes)
            if (p.name() == name)
                throw ParseError("duplicate process '" + name + "'");
        ProcessLts p(name, out.alphabet);
        in_context(where, [&] {
            for (const auto &s : as_strings(field(pj, "states", where), where + " states"))
                p.add_state(s);
            for (const auto &s : as_strings(field(pj, "initial", where), where + " initial"))
                p.mark_initial(p.states().index(s));
            for (const auto &t : as_triples(field(pj, "transitions", where), where + " transitions"))
                p.add_transition(t[0], t[1], t[2]);
        });
        out.processes.push_back(std::move(p));
    }

    if (auto it = root.find("compose"); it != root.end())
        out.compose = as_strings(*it, "compose");
    return out;
}

// The system under evaluation: the selected processes composed together.
inline Lts model_lts(const ModelFile &file, const std::vector<std::string> &selection = {}) {
    const auto &names = selection.empty() ? file.compose : selection;
    std::vector<ProcessLts> procs;
    if (names.empty()) {
        procs = file.processes;
    } else {
        for (const auto &n : names) {
            auto it = std::find_if(file.processes.begin(), file.processes.end(),
                                   [&](const ProcessLts &p) { return p.name() == n; });
            if (it == file.processes.end())
                throw Error("unknown process '" + n + "'");
            procs.push_back(*it);
        }
    }
    return compose(procs, file.synchronization);
}

inline FitnessFile parse_fitness_file(std::string_view text, const Alphabet &alphabet) {
    using namespace detail;
    json root = parse_json(text);
    const json &comps = field(root, "fitness", "fitness file");
    if (!comps.is_array() || comps.empty())
        throw ParseError("fitness must be a non-empty array");

    std::vector<Dfa> dfas;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const json &c = comps[i];
        std::string where = "fitness component " + std::to_string(i + 1);
        std::string type = as_string(field(c, "type", where), where + " type");
        dfas.push_back(in_context(where, [&]() -> Dfa {
            if (type == "sequence_counter")
                return make_sequence_counter(alphabet, as_strings(field(c, "left", where), "left"),
                                             as_strings(field(c, "right", where), "right"));
            if (type == "length_counter")
                return make_length_counter(alphabet);
            if (type == "dfa") {
                std::vector<Dfa::Edge> delta;
                for (const auto &t : as_triples(field(c, "delta", where), where + " delta"))
                    delta.emplace_back(t[0], t[1], t[2]);
                return Dfa(alphabet, as_strings(field(c, "states", where), where + " states"),
                           as_string(field(c, "initial", where), where + " initial"),
                           as_strings(field(c, "accepting", where), where + " accepting"), delta);
            }
            throw ParseError(where + ": unknown type '" + type + "'");
        }));
    }

    FitnessFile out;
    out.fitness = FitnessTuple(std::move(dfas));
    std::string agg = as_string(field(root, "aggregate", "fitness file"), "aggregate");
    out.aggregate = in_context("aggregate", [&] { return parse_aggregate(agg, out.fitness.size()); });
    if (auto it = root.find("compare"); it != root.end())
        out.compare = in_context("compare", [&] { return parse_comparator(as_string(*it, "compare")); });
    return out;
}

} // namespace fitscore
