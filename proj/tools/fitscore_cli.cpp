#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fitscore/commands.hpp"

namespace {

struct Options {
    fitscore::RunConfig cfg;
    std::string backend = "exact";
    // Sentinels for "not given on the command line".
    std::uint64_t check_k = unset;
    unsigned precision = unset_places;

    static constexpr std::uint64_t unset = ~std::uint64_t{0};
    static constexpr unsigned unset_places = ~0u;
};

void add_common(CLI::App *cmd, Options &o, bool many_models) {
    auto *m = cmd->add_option("--model", o.cfg.models,
                              "model file, or builtin:NAME for a shipped fixture")
                  ->required();
    if (!many_models)
        m->expected(1);
    cmd->add_option("--fitness", o.cfg.fitness,
                    "fitness file or builtin:NAME (defaults to the fixture's own fitness)");
    cmd->add_option("--compose", o.cfg.compose, "processes to compose (default: all)")
        ->delimiter(',');
}

void add_scoring(CLI::App *cmd, Options &o) {
    cmd->add_option("--k", o.cfg.k, "K of the K-approximation")->check(CLI::PositiveNumber);
    cmd->add_option("--check-k", o.check_k,
                    "second checkpoint for the convergence check (0 disables)");
    cmd->add_option("--backend", o.backend, "exact or scaled")
        ->check(CLI::IsMember({"exact", "scaled"}));
    cmd->add_option("--precision", o.precision, "decimal places (default 6)");
    cmd->add_flag("--no-timing", o.cfg.no_timing, "omit the wall-clock line");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fitness scores for labeled transition systems"};
    app.require_subcommand(1);
    Options o;

    auto *evaluate = app.add_subcommand("evaluate", "K-approximation with a convergence check");
    add_common(evaluate, o, false);
    add_scoring(evaluate, o);

    auto *compare = app.add_subcommand("compare", "score two models and compare them");
    add_common(compare, o, true);
    add_scoring(compare, o);

    auto *validate = app.add_subcommand("validate", "check the recurrence against path enumeration");
    add_common(validate, o, true);
    validate->add_option("--max-n", o.cfg.max_n, "largest path length to enumerate");
    validate->add_option("--oracle-cap", o.cfg.oracle_cap, "upper bound accepted for --max-n");

    auto *inspect = app.add_subcommand("inspect", "print the composed system and its matrices");
    add_common(inspect, o, false);

    auto *series = app.add_subcommand("series", "K-approximations for a list of K as CSV");
    add_common(series, o, false);
    series->add_option("--ks", o.cfg.ks, "ascending K values")->delimiter(',');
    series->add_option("--out", o.cfg.out, "CSV output path (default: stdout)");
    series->add_option("--backend", o.backend, "exact or scaled")
        ->check(CLI::IsMember({"exact", "scaled"}));
    series->add_option("--precision", o.precision, "decimal places (default 7)");

    CLI11_PARSE(app, argc, argv);

    o.cfg.backend = fitscore::parse_backend(o.backend);
    if (o.check_k != Options::unset)
        o.cfg.check_k = o.check_k;
    if (o.precision != Options::unset_places)
        o.cfg.precision = o.precision;

    if (*evaluate)
        return fitscore::cmd_evaluate(o.cfg, std::cout, std::cerr);
    if (*compare)
        return fitscore::cmd_compare(o.cfg, std::cout, std::cerr);
    if (*validate)
        return fitscore::cmd_validate(o.cfg, std::cout, std::cerr);
    if (*inspect)
        return fitscore::cmd_inspect(o.cfg, std::cout, std::cerr);
    return fitscore::cmd_series(o.cfg, std::cout, std::cerr);
}
