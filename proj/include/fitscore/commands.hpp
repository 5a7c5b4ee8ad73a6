#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fitscore/analysis.hpp"
#include "fitscore/error.hpp"
#include "fitscore/fixtures.hpp"
#include "fitscore/model_io.hpp"
#include "fitscore/oracle.hpp"

namespace fitscore {

struct RunConfig {
    std::vector<std::string> models;
    std::string fitness; // empty: the fixture paired with a builtin model
    std::uint64_t k = 9000;
    std::optional<std::uint64_t> check_k;
    Backend backend = Backend::exact;
    std::vector<std::uint64_t> ks;
    std::string out;
    std::optional<unsigned> precision;
    std::size_t max_n = 12;
    std::size_t oracle_cap = oracle::default_cap;
    bool no_timing = false;
    std::vector<std::string> compose;

    // Test hook: applied to every recurrence system before validation.
    std::function<void(RecurrenceSystem &)> corrupt;

    unsigned places(unsigned fallback = 6) const { return precision.value_or(fallback); }
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int error = 1;
inline constexpr int not_converged = 2;
} // namespace exit_code

inline constexpr std::string_view builtin_prefix = "builtin:";

inline std::string read_text(const std::string &path) {
    if (path.rfind(builtin_prefix, 0) == 0)
        return std::string(fixtures::model(path.substr(builtin_prefix.size())).text);
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_fitness_text(const std::string &fitness, const std::string &model) {
    std::string path = fitness;
    if (path.empty()) {
        if (model.rfind(builtin_prefix, 0) != 0)
            throw Error("--fitness is required for model files");
        path = std::string(builtin_prefix) +
               std::string(fixtures::model(model.substr(builtin_prefix.size())).fitness);
    }
    if (path.rfind(builtin_prefix, 0) == 0)
        return std::string(fixtures::fitness(path.substr(builtin_prefix.size())).text);
    return read_text(path);
}

struct LoadedProblem {
    std::string source;
    Lts model;
    FitnessFile fitness;
    std::vector<RecurrenceSystem> systems;
};

inline LoadedProblem load_problem(const RunConfig &cfg, const std::string &model_path) {
    LoadedProblem p;
    p.source = model_path;
    ModelFile mf = parse_model_file(read_text(model_path));
    p.model = model_lts(mf, cfg.compose);
    p.fitness = parse_fitness_file(read_fitness_text(cfg.fitness, model_path), mf.alphabet);
    p.systems = build_systems(p.model, p.fitness.fitness);
    return p;
}

// 8192 when K exceeds it, otherwise the largest power of two below K.
inline std::optional<std::uint64_t> default_check_k(std::uint64_t k) {
    if (k > 8192)
        return 8192;
    if (k <= 1)
        return std::nullopt;
    std::uint64_t c = 1;
    while (c * 2 < k)
        c *= 2;
    return c;
}

inline std::optional<std::uint64_t> resolve_check_k(const RunConfig &cfg) {
    if (cfg.k < 1)
        throw Error("K must be at least 1");
    if (!cfg.check_k)
        return default_check_k(cfg.k);
    if (*cfg.check_k == 0)
        return std::nullopt;
    if (*cfg.check_k >= cfg.k)
        throw Error("--check-k must be smaller than --k");
    return cfg.check_k;
}

namespace detail {

template <class Fn>
int guarded(std::ostream &err, Fn fn) {
    try {
        return fn();
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_code::error;
    }
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string join_values(const Score &s, unsigned places) {
    std::string out;
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out += (i ? ", " : "") + render_value(s.values[i], places);
    return s.values.size() == 1 ? out : "(" + out + ")";
}

inline std::string describe_status(const Score &s) {
    std::string out = to_string(s.status);
    if (s.status == Status::undefined) {
        out += " (component";
        for (auto i : s.undefined_components())
            out += " " + std::to_string(i + 1);
        out += ")";
    } else if (s.digits) {
        out += " (" + std::to_string(*s.digits) + " agreed digits)";
    } else {
        out += " (unchecked)";
    }
    return out;
}

// Score at K, with status from the check checkpoint when there is one.
struct Evaluation {
    Score score;
    std::optional<ConvergenceReport> report;
};

inline Evaluation evaluate_problem(const LoadedProblem &p, const RunConfig &cfg) {
    auto check = resolve_check_k(cfg);
    if (!check)
        return {k_approximations(p.systems, p.fitness.aggregate, {cfg.k}, cfg.backend).front(), {}};
    auto r = convergence_report(p.systems, p.fitness.aggregate, *check, cfg.k, cfg.backend);
    return {r.score2, r};
}

inline void print_evaluation(std::ostream &os, const LoadedProblem &p, const Evaluation &e,
                             const RunConfig &cfg, const std::string &tag = "") {
    unsigned places = cfg.places();
    os << tag << "model: " << p.source << '\n';
    os << tag << "|M|: " << p.model.state_count() << '\n';
    os << tag << "K: " << cfg.k;
    if (e.report)
        os << " (check " << e.report->k1 << ")";
    os << '\n';
    for (std::size_t i = 0; i < e.score.values.size(); ++i) {
        os << tag << "score[" << i + 1 << "]: " << render_value(e.score.values[i], places);
        if (e.report && e.report->score1.values[i])
            os << " (at " << e.report->k1 << ": "
               << render_value(e.report->score1.values[i], places) << ")";
        os << '\n';
    }
    os << tag << "status: " << describe_status(e.score) << '\n';
}

} // namespace detail

inline int cmd_evaluate(const RunConfig &cfg, std::ostream &os, std::ostream &err) {
    return detail::guarded(err, [&] {
        if (cfg.models.size() != 1)
            throw Error("evaluate takes exactly one --model");
        detail::Stopwatch clock;
        LoadedProblem p = load_problem(cfg, cfg.models.front());
        auto e = detail::evaluate_problem(p, cfg);
        detail::print_evaluation(os, p, e, cfg);
        if (!cfg.no_timing)
            os << "time: " << std::fixed << std::setprecision(3) << clock.seconds() << " s\n";
        return e.score.status == Status::converged ? exit_code::ok : exit_code::not_converged;
    });
}

inline int cmd_compare(const RunConfig &cfg, std::ostream &os, std::ostream &err) {
    return detail::guarded(err, [&] {
        if (cfg.models.size() != 2)
            throw Error("compare takes exactly two --model options");
        detail::Stopwatch clock;
        LoadedProblem a = load_problem(cfg, cfg.models[0]);
        LoadedProblem b = load_problem(cfg, cfg.models[1]);
        auto ea = detail::evaluate_problem(a, cfg);
        auto eb = detail::evaluate_problem(b, cfg);
        detail::print_evaluation(os, a, ea, cfg, "A ");
        detail::print_evaluation(os, b, eb, cfg, "B ");
        Verdict v = compare_scores(ea.score, eb.score, a.fitness.compare);
        os << "verdict: " << to_string(v) << '\n';
        if (!cfg.no_timing)
            os << "time: " << std::fixed << std::setprecision(3) << clock.seconds() << " s\n";
        return v == Verdict::incomparable ? exit_code::not_converged : exit_code::ok;
    });
}

inline int cmd_validate(const RunConfig &cfg, std::ostream &os, std::ostream &err) {
    return detail::guarded(err, [&] {
        if (cfg.models.empty())
            throw Error("validate needs at least one --model");
        oracle::check_cap(cfg.max_n, cfg.oracle_cap);
        bool all = true;
        for (const auto &path : cfg.models) {
            LoadedProblem p = load_problem(cfg, path);
            if (cfg.corrupt)
                for (auto &s : p.systems)
                    cfg.corrupt(s);
            auto truth = oracle::path_sums(p.model, p.fitness.fitness, cfg.max_n);
            os << "model: " << path << " (|M| = " << p.model.state_count() << ")\n";
            os << "n comp g oracle result\n";
            std::optional<std::size_t> first_bad;
            for (std::size_t i = 0; i < p.systems.size(); ++i) {
                PowerLadder ladder{BigMatrix(p.systems[i].xi)};
                auto v = to_big(p.systems[i].v);
                for (std::size_t n = 0; n <= cfg.max_n; ++n) {
                    BigInt g = ladder.apply(n + 1, v)[0];
                    bool ok = g == BigInt(truth.sums[n][i]);
                    os << n << ' ' << i + 1 << ' ' << g << ' ' << truth.sums[n][i] << ' '
                       << (ok ? "PASS" : "FAIL") << '\n';
                    if (!ok && (!first_bad || n < *first_bad))
                        first_bad = n;
                }
            }
            if (first_bad) {
                os << "first mismatch at n = " << *first_bad << '\n';
                all = false;
            } else {
                os << "all " << (cfg.max_n + 1) * p.systems.size() << " checks passed\n";
            }
        }
        return all ? exit_code::ok : exit_code::not_converged;
    });
}

inline void print_lts(std::ostream &os, const Lts &m) {
    os << "states (" << m.state_count() << "):";
    for (std::size_t i = 0; i < m.state_count(); ++i)
        os << ' ' << m.state_name(i) << (m.is_initial(i) ? "*" : "");
    os << "\ntransitions:\n";
    for (std::size_t q = 0; q < m.state_count(); ++q)
        for (const auto &t : m.successors(q))
            os << "  " << m.state_name(t.src) << " -" << m.alphabet()[t.label] << "-> "
               << m.state_name(t.dst) << '\n';
}

inline int cmd_inspect(const RunConfig &cfg, std::ostream &os, std::ostream &err) {
    return detail::guarded(err, [&] {
        if (cfg.models.size() != 1)
            throw Error("inspect takes exactly one --model");
        LoadedProblem p = load_problem(cfg, cfg.models.front());
        os << "composed system\n";
        print_lts(os, p.model);
        for (std::size_t i = 0; i < p.fitness.fitness.size(); ++i) {
            ProductAutomaton prod = build_product(p.model, p.fitness.fitness[i]);
            CountMatrix d = predecessor_matrix(prod);
            CountMatrix a = accepting_matrix(prod, d);
            os << "\nproduct with fitness component " << i + 1 << '\n';
            for (std::size_t s = 0; s < prod.size(); ++s) {
                os << "  " << s + 1 << ' ' << prod.names[s];
                if (prod.initial[s])
                    os << " initial";
                if (prod.accepting[s])
                    os << " accepting";
                os << '\n';
            }
            os << "D:\n";
            dump_matrix(os, d);
            os << "A:\n";
            dump_matrix(os, a);
            os << "xi:\n";
            dump_matrix(os, p.systems[i].xi);
            os << "v:\n";
            for (std::size_t j = 0; j < p.systems[i].v.size(); ++j)
                os << (j ? " " : "") << p.systems[i].v[j];
            os << '\n';
        }
        return exit_code::ok;
    });
}

inline std::vector<std::uint64_t> default_series_ks() {
    std::vector<std::uint64_t> ks;
    for (std::uint64_t k = 16; k <= 8192; k *= 2)
        ks.push_back(k);
    return ks;
}

inline void write_series_csv(std::ostream &os, const std::vector<std::pair<std::uint64_t, Score>> &rows,
                             std::size_t outputs, unsigned places) {
    os << "K";
    for (std::size_t i = 0; i < outputs; ++i)
        os << ",comp" << i + 1;
    os << '\n';
    for (const auto &[k, s] : rows) {
        os << k;
        for (const auto &v : s.values)
            os << ',' << render_value(v, places);
        os << '\n';
    }
}

inline int cmd_series(const RunConfig &cfg, std::ostream &os, std::ostream &err) {
    return detail::guarded(err, [&] {
        if (cfg.models.size() != 1)
            throw Error("series takes exactly one --model");
        LoadedProblem p = load_problem(cfg, cfg.models.front());
        auto ks = cfg.ks.empty() ? default_series_ks() : cfg.ks;
        auto rows = series(p.systems, p.fitness.aggregate, ks, cfg.backend);
        unsigned places = cfg.places(7);
        if (cfg.out.empty()) {
            write_series_csv(os, rows, p.fitness.aggregate.output_arity(), places);
        } else {
            std::ofstream f(cfg.out, std::ios::binary);
            if (!f)
                throw Error("cannot write '" + cfg.out + "'");
            write_series_csv(f, rows, p.fitness.aggregate.output_arity(), places);
            os << "wrote " << rows.size() << " rows to " << cfg.out << '\n';
        }
        return exit_code::ok;
    });
}

} // namespace fitscore
