#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fitscore/error.hpp"
#include "fitscore/recurrence.hpp"

// Models and fitness files shipped with the library, addressable from the CLI
// as builtin:NAME.
namespace fitscore::fixtures {

// Toy system: s0 -a-> s0, s0 -b-> s1, s1 -a-> s0, scored by visits to s1.
inline constexpr std::string_view toy_model = R"({
  "alphabet": ["a", "b"],
  "processes": [
    { "name": "P", "states": ["s0", "s1"], "initial": ["s0"],
      "transitions": [["s0","a","s0"], ["s0","b","s1"], ["s1","a","s0"]] } ]
})";

inline constexpr std::string_view toy_fitness = R"({
  "fitness": [
    { "type": "dfa", "states": ["q0", "q1"], "initial": "q0", "accepting": ["q1"],
      "delta": [["q0","a","q0"], ["q0","b","q1"], ["q1","a","q0"], ["q1","b","q1"]] } ],
  "aggregate": "x1",
  "compare": "geq"
})";

// Sender E and the two receivers G (good) and B (bad).
inline constexpr std::string_view good_model = R"({
  "alphabet": ["s", "t", "a"],
  "processes": [
    { "name": "E", "states": ["s0","s1","s2"], "initial": ["s0"],
      "transitions": [["s0","s!","s1"], ["s1","a?","s0"], ["s1","t","s2"], ["s2","s!","s1"]] },
    { "name": "G", "states": ["g0","g1"], "initial": ["g0"],
      "transitions": [["g0","s?","g1"], ["g1","a!","g0"], ["g1","s?","g1"]] },
    { "name": "B", "states": ["b0","b1","b2"], "initial": ["b0"],
      "transitions": [["b0","s?","b1"], ["b1","s?","b2"], ["b2","a!","b0"], ["b2","s?","b2"]] } ],
  "compose": ["E", "G"]
})";

inline constexpr std::string_view bad_model = R"({
  "alphabet": ["s", "t", "a"],
  "processes": [
    { "name": "E", "states": ["s0","s1","s2"], "initial": ["s0"],
      "transitions": [["s0","s!","s1"], ["s1","a?","s0"], ["s1","t","s2"], ["s2","s!","s1"]] },
    { "name": "G", "states": ["g0","g1"], "initial": ["g0"],
      "transitions": [["g0","s?","g1"], ["g1","a!","g0"], ["g1","s?","g1"]] },
    { "name": "B", "states": ["b0","b1","b2"], "initial": ["b0"],
      "transitions": [["b0","s?","b1"], ["b1","s?","b2"], ["b2","a!","b0"], ["b2","s?","b2"]] } ],
  "compose": ["E", "B"]
})";

// Completed s t* a sequences per step.
inline constexpr std::string_view rate_fitness = R"({
  "fitness": [
    { "type": "sequence_counter", "left": ["s"], "right": ["a"] },
    { "type": "length_counter" } ],
  "aggregate": "x1 / x2",
  "compare": "geq"
})";

// One state looping on $: every step earns one $.
inline constexpr std::string_view dollar_loop_model = R"({
  "alphabet": ["0", "$"],
  "processes": [
    { "name": "M1", "states": ["p"], "initial": ["p"], "transitions": [["p","$","p"]] } ]
})";

// Number of $ over the length of the word.
inline constexpr std::string_view dollar_rate_fitness = R"({
  "fitness": [
    { "type": "dfa", "states": ["f0", "f1"], "initial": "f0", "accepting": ["f1"],
      "delta": [["f0","0","f0"], ["f0","$","f1"], ["f1","$","f1"], ["f1","0","f0"]] },
    { "type": "length_counter" } ],
  "aggregate": "x1 / x2",
  "compare": "geq"
})";

// Two-phase commit transaction managers. Used as open systems: their
// environment is not part of the fixture, so tags are ignored.
inline constexpr std::string_view tpc_h_model = R"({
  "alphabet": ["x","x1","x2","yes1","yes2","no1","no2","cm1","cm2","ab1","ab2","succ","fail"],
  "synchronization": "none",
  "processes": [
    { "name": "H", "states": ["m0","m1","m2","m3","m4","m5","m6","m7","m8","m9","m10","m11"], "initial": ["m0"],
      "transitions": [
        ["m0","x?","m1"], ["m1","x1!","m2"], ["m2","x2!","m3"],
        ["m3","yes1?","m4"], ["m3","yes2?","m4"], ["m3","no1?","m8"], ["m3","no2?","m8"],
        ["m4","yes1?","m5"], ["m4","yes2?","m5"], ["m4","no1?","m8"], ["m4","no2?","m8"],
        ["m8","yes1?","m9"], ["m8","yes2?","m9"], ["m8","no1?","m9"], ["m8","no2?","m9"],
        ["m3","x?","m3"], ["m4","x?","m4"],
        ["m5","cm1!","m6"], ["m6","cm2!","m7"], ["m7","succ!","m0"],
        ["m9","ab1!","m10"], ["m10","ab2!","m11"], ["m11","fail!","m0"],
        ["m0","yes1?","m0"], ["m0","yes2?","m0"], ["m0","no1?","m0"], ["m0","no2?","m0"] ] } ]
})";

inline constexpr std::string_view tpc_a1_model = R"({
  "alphabet": ["x","x1","x2","yes1","yes2","no1","no2","cm1","cm2","ab1","ab2","succ","fail"],
  "synchronization": "none",
  "processes": [
    { "name": "A", "states": ["m0","m1","m2","m3","m4","m5","m6","m7","m8","m9","m10","m11"], "initial": ["m0"],
      "transitions": [
        ["m0","x?","m1"], ["m1","x1!","m2"], ["m2","x?","m2"],
        ["m2","yes1?","m4"], ["m2","no1?","m3"], ["m2","yes2?","m5"], ["m2","no2?","m9"],
        ["m3","x2!","m8"], ["m4","x2!","m1"],
        ["m8","yes1?","m9"], ["m8","yes2?","m9"], ["m8","no1?","m9"], ["m8","no2?","m9"],
        ["m8","x?","m8"],
        ["m5","cm1!","m6"], ["m6","cm2!","m7"], ["m7","succ!","m0"],
        ["m9","ab1!","m10"], ["m10","ab2!","m11"], ["m11","fail!","m0"],
        ["m0","yes1?","m0"], ["m0","yes2?","m0"], ["m0","no1?","m0"], ["m0","no2?","m0"] ] } ]
})";
inline constexpr std::string_view tpc_a2_model = R"({
  "alphabet": ["x","x1","x2","yes1","yes2","no1","no2","cm1","cm2","ab1","ab2","succ","fail"],
  "synchronization": "none",
  "processes": [
    { "name": "A", "states": ["m0","m1","m2","m3","m4","m5","m6","m7","m8","m9","m10","m11"], "initial": ["m0"],
      "transitions": [
        ["m0","x?","m1"], ["m1","x1!","m2"], ["m2","x?","m2"],
        ["m2","yes1?","m4"], ["m2","no1?","m3"], ["m2","yes2?","m5"], ["m2","no2?","m9"],
        ["m3","x2!","m8"], ["m4","x2!","m2"],
        ["m8","yes1?","m9"], ["m8","yes2?","m9"], ["m8","no1?","m9"], ["m8","no2?","m9"],
        ["m8","x?","m8"],
        ["m5","cm1!","m6"], ["m6","cm2!","m7"], ["m7","succ!","m0"],
        ["m9","ab1!","m10"], ["m10","ab2!","m11"], ["m11","fail!","m0"],
        ["m0","yes1?","m0"], ["m0","yes2?","m0"], ["m0","no1?","m0"], ["m0","no2?","m0"] ] } ]
})";

inline constexpr std::string_view tpc_fitness = R"({
  "fitness": [
    { "type": "sequence_counter", "left": ["x"], "right": ["succ", "fail"] },
    { "type": "length_counter" } ],
  "aggregate": "x1 / x2",
  "compare": "geq"
})";

// Alternating bit protocol senders and receivers, also as open systems.
inline constexpr std::string_view abp_receiver_h_model = R"({
  "alphabet": ["send","done","p0","p1","p0'","p1'","a0","a1","a0'","a1'","timeout","deliver"],
  "synchronization": "none",
  "processes": [
    { "name": "RecH", "states": ["r0","r1","r2","r3","r4","r5"], "initial": ["r0"],
      "transitions": [
        ["r0","p0'?","r1"], ["r1","deliver!","r2"], ["r2","a0!","r3"],
        ["r3","p1'?","r4"], ["r4","deliver!","r5"], ["r5","a1!","r0"],
        ["r0","p1'?","r5"], ["r3","p0'?","r2"] ] } ]
})";

inline constexpr std::string_view abp_receiver_a_model = R"({
  "alphabet": ["send","done","p0","p1","p0'","p1'","a0","a1","a0'","a1'","timeout","deliver"],
  "synchronization": "none",
  "processes": [
    { "name": "RecA", "states": ["r0","r1","r2","r3","r4","r5"], "initial": ["r0"],
      "transitions": [
        ["r0","p0'?","r1"], ["r1","deliver!","r2"], ["r2","a0!","r3"],
        ["r3","p1'?","r4"], ["r4","deliver!","r0"], ["r5","a1!","r0"],
        ["r0","p1'?","r5"], ["r3","p0'?","r2"] ] } ]
})";

inline constexpr std::string_view abp_sender_h_model = R"({
  "alphabet": ["send","done","p0","p1","p0'","p1'","a0","a1","a0'","a1'","timeout","deliver"],
  "synchronization": "none",
  "processes": [
    { "name": "SndrH", "states": ["s0","s1","s2","s3","s4","s5","s6","s7"], "initial": ["s0"],
      "transitions": [
        ["s0","a0'?","s0"], ["s0","a1'?","s0"], ["s0","timeout?","s0"],
        ["s0","send?","s1"], ["s1","p0!","s2"], ["s2","a0'?","s3"], ["s3","done!","s4"],
        ["s2","timeout?","s1"], ["s2","a1'?","s2"], ["s2","send?","s2"],
        ["s4","timeout?","s4"], ["s4","a0'?","s4"], ["s4","a1'?","s4"],
        ["s4","send?","s5"], ["s5","p1!","s6"], ["s6","a1'?","s7"], ["s7","done!","s0"],
        ["s6","timeout?","s5"], ["s6","send?","s6"], ["s6","a0'?","s6"] ] } ]
})";

inline constexpr std::string_view abp_sender_a_model = R"({
  "alphabet": ["send","done","p0","p1","p0'","p1'","a0","a1","a0'","a1'","timeout","deliver"],
  "synchronization": "none",
  "processes": [
    { "name": "SndrA", "states": ["s0","s1","s2","s3","s4","s5","s6","s7"], "initial": ["s0"],
      "transitions": [
        ["s0","a0'?","s0"], ["s0","a1'?","s0"], ["s0","timeout?","s0"], ["s0","send?","s4"],
        ["s4","a0'?","s1"], ["s1","done!","s2"],
        ["s2","send?","s5"], ["s2","a1'?","s5"], ["s2","a0'?","s2"], ["s2","timeout?","s2"],
        ["s5","p1!","s6"], ["s6","a1'?","s7"], ["s7","done!","s0"], ["s6","send?","s0"],
        ["s6","a0'?","s5"], ["s6","timeout?","s5"],
        ["s4","timeout?","s3"], ["s3","p0!","s4"], ["s4","send?","s4"], ["s4","a1'?","s4"] ] } ]
})";

inline constexpr std::string_view abp_fitness = R"({
  "fitness": [
    { "type": "sequence_counter", "left": ["send"], "right": ["done"] },
    { "type": "length_counter" } ],
  "aggregate": "x1 / x2",
  "compare": "geq"
})";

struct Builtin {
    std::string_view name;
    std::string_view text;
    std::string_view fitness; // name of the fitness fixture that fits the model
};

inline const std::vector<Builtin> &models() {
    static const std::vector<Builtin> all = {
        {"toy", toy_model, "toy"},
        {"good", good_model, "rate"},
        {"bad", bad_model, "rate"},
        {"dollar-loop", dollar_loop_model, "dollar-rate"},
        {"2pc-H", tpc_h_model, "2pc"},
        {"2pc-A1", tpc_a1_model, "2pc"},
        {"2pc-A2", tpc_a2_model, "2pc"},
        {"abp-sender-H", abp_sender_h_model, "abp"},
        {"abp-sender-A", abp_sender_a_model, "abp"},
        {"abp-receiver-H", abp_receiver_h_model, "abp"},
        {"abp-receiver-A", abp_receiver_a_model, "abp"},
    };
    return all;
}

inline const std::vector<Builtin> &fitness_files() {
    static const std::vector<Builtin> all = {
        {"toy", toy_fitness, ""},
        {"rate", rate_fitness, ""},
        {"dollar-rate", dollar_rate_fitness, ""},
        {"2pc", tpc_fitness, ""},
        {"abp", abp_fitness, ""},
    };
    return all;
}

inline const Builtin &find(const std::vector<Builtin> &table, std::string_view name) {
    for (const auto &b : table)
        if (b.name == name)
            return b;
    std::string known;
    for (const auto &b : table)
        known += (known.empty() ? "" : ", ") + std::string(b.name);
    throw Error("no built-in named '" + std::string(name) + "' (known: " + known + ")");
}

inline const Builtin &model(std::string_view name) { return find(models(), name); }
inline const Builtin &fitness(std::string_view name) { return find(fitness_files(), name); }

// The toy recurrence matrix with v = (0, 0, 1, 0, 0): its leading terms
// (xi^K v)_0 run through the Fibonacci numbers, so consecutive ratios
// approach 2 / (1 + sqrt 5).
inline RecurrenceSystem golden_system() {
    return {CountMatrix{{0, 1, 1, 0, 0},
                        {0, 1, 1, 0, 0},
                        {0, 1, 0, 1, 0},
                        {0, 0, 0, 1, 1},
                        {0, 0, 0, 1, 0}},
            {0, 0, 1, 0, 0},
            {"s0", "s1"}};
}

} // namespace fitscore::fixtures
