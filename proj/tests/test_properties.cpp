#include <catch_amalgamated.hpp>

#include <deque>
#include <set>

#include "support.hpp"

using namespace fitscore;
using namespace fitscore::oracle;
using namespace support;

namespace {

const Alphabet &small_sigma() {
    static const Alphabet sigma({"a", "b", "c"});
    return sigma;
}

std::vector<std::string> builtin_names() {
    std::vector<std::string> out;
    for (const auto &b : fixtures::models())
        out.emplace_back(b.name);
    return out;
}

ProcessLts random_process(std::mt19937_64 &rng, const std::string &name, const Alphabet &sigma) {
    std::uniform_int_distribution<std::size_t> n_dist(1, 3);
    std::bernoulli_distribution edge(0.3);
    ProcessLts p(name, sigma);
    std::size_t n = n_dist(rng);
    for (std::size_t i = 0; i < n; ++i)
        p.add_state("s" + std::to_string(i));
    p.mark_initial(0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < sigma.size(); ++a)
            for (Tag tag : {Tag::plain, Tag::send, Tag::receive})
                for (std::size_t j = 0; j < n; ++j)
                    if (edge(rng))
                        p.add_transition(i, TaggedLabel{a, tag}, j);
    return p;
}

std::vector<std::string> split_name(const std::string &s) {
    std::vector<std::string> out(1);
    for (char c : s) {
        if (c == '.')
            out.emplace_back();
        else
            out.back() += c;
    }
    return out;
}

bool has_move(const ProcessLts &p, std::size_t from, TaggedLabel l, std::size_t to) {
    for (const auto &t : p.successors(from))
        if (t.label == l && t.dst == to)
            return true;
    return false;
}

BigMatrix random_matrix(std::mt19937_64 &rng, std::size_t dim) {
    std::uniform_int_distribution<int> entry(0, 3);
    BigMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = entry(rng);
    return m;
}

FitnessTuple random_rate_fitness(std::mt19937_64 &rng, const Alphabet &sigma) {
    return FitnessTuple({random_dfa(rng, sigma), make_length_counter(sigma)});
}

} // namespace

TEST_CASE("product preserves paths and fitness counts") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        Lts m = random_lts(rng, 5, small_sigma());
        Dfa f = random_dfa(rng, small_sigma());
        ProductAutomaton p = build_product(m, f);
        for (std::size_t n = 0; n <= 8; ++n) {
            INFO("trial " << trial << " n " << n);
            CHECK(count_paths(p, n) == count_paths(m, n));
            auto traces = unfold_paths(m, n);
            std::uint64_t visits = 0;
            for (const auto &[w, c] : traces.entries)
                visits += c * f.count(w);
            CHECK(alpha_beta_bruteforce(p, n).alpha == visits);
        }
    }
}

TEST_CASE("composition only produces sound moves") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t count = 2 + trial % 2;
        std::vector<ProcessLts> procs;
        for (std::size_t i = 0; i < count; ++i)
            procs.push_back(random_process(rng, "P" + std::to_string(i), small_sigma()));
        Lts m = compose(procs);
        std::vector<std::vector<std::size_t>> local(m.state_count());
        for (std::size_t s = 0; s < m.state_count(); ++s) {
            auto parts = split_name(m.state_name(s));
            REQUIRE(parts.size() == count);
            for (std::size_t i = 0; i < count; ++i)
                local[s].push_back(procs[i].states().index(parts[i]));
        }
        for (const auto &t : m.transitions()) {
            INFO("trial " << trial << ' ' << m.state_name(t.src) << " -> " << m.state_name(t.dst));
            const auto &from = local[t.src];
            const auto &to = local[t.dst];
            std::vector<std::size_t> moved;
            for (std::size_t i = 0; i < count; ++i)
                if (from[i] != to[i])
                    moved.push_back(i);
            bool sound = false;
            // A plain step of one process (possibly a self-loop).
            for (std::size_t i = 0; i < count && !sound; ++i) {
                bool others_fixed = true;
                for (std::size_t j : moved)
                    others_fixed = others_fixed && j == i;
                sound = others_fixed && has_move(procs[i], from[i], {t.label, Tag::plain}, to[i]);
            }
            // A send in one process paired with a receive in another.
            for (std::size_t i = 0; i < count && !sound; ++i) {
                for (std::size_t j = 0; j < count && !sound; ++j) {
                    if (i == j)
                        continue;
                    bool others_fixed = true;
                    for (std::size_t k : moved)
                        others_fixed = others_fixed && (k == i || k == j);
                    sound = others_fixed &&
                            has_move(procs[i], from[i], {t.label, Tag::send}, to[i]) &&
                            has_move(procs[j], from[j], {t.label, Tag::receive}, to[j]);
                }
            }
            CHECK(sound);
        }
    }
}

TEST_CASE("product contains exactly the reachable pairs") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        Lts m = random_lts(rng, 6, small_sigma(), 0.2);
        Dfa f = random_dfa(rng, small_sigma());
        ProductAutomaton p = build_product(m, f);

        std::set<std::pair<std::size_t, std::size_t>> seen;
        std::deque<std::pair<std::size_t, std::size_t>> queue;
        for (auto q : m.initial())
            if (seen.emplace(q, f.initial()).second)
                queue.emplace_back(q, f.initial());
        while (!queue.empty()) {
            auto [q, s] = queue.front();
            queue.pop_front();
            for (const auto &t : m.successors(q)) {
                std::pair next(t.dst, f.step(s, t.label));
                if (seen.insert(next).second)
                    queue.push_back(next);
            }
        }
        std::set<std::pair<std::size_t, std::size_t>> built(p.pairs.begin(), p.pairs.end());
        CHECK(built.size() == p.size());
        CHECK(built == seen);
    }
}

TEST_CASE("counter builders are total and deterministic") {
    std::mt19937_64 rng(14);
    std::bernoulli_distribution coin(0.5);
    Alphabet sigma({"a", "b", "c", "d"});
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> left, right;
        for (const auto &l : sigma.labels()) {
            if (coin(rng))
                left.push_back(l);
            if (coin(rng))
                right.push_back(l);
        }
        if (left.empty())
            left.push_back("a");
        if (right.empty())
            right.push_back("b");
        Dfa seq = make_sequence_counter(sigma, left, right);
        Dfa len = make_length_counter(sigma);
        for (const Dfa *f : {&seq, &len})
            for (std::size_t q = 0; q < f->state_count(); ++q)
                for (std::size_t a = 0; a < sigma.size(); ++a)
                    CHECK(f->step(q, a) < f->state_count());

        std::uniform_int_distribution<std::size_t> sym(0, sigma.size() - 1);
        std::set<std::size_t> rset;
        for (const auto &r : right)
            rset.insert(sigma.index(r));
        for (int w = 0; w < 20; ++w) {
            Word word(w);
            for (auto &x : word)
                x = sym(rng);
            std::uint64_t rights = 0;
            for (auto x : word)
                rights += rset.count(x);
            CHECK(seq.count(word) <= rights);
            CHECK(len.count(word) == word.size());
        }
    }
}

TEST_CASE("alpha and beta vectors agree with brute force on every built-in") {
    for (const auto &name : builtin_names()) {
        Lts m = builtin_lts(name);
        auto ff = builtin_fitness(name);
        for (std::size_t c = 0; c < ff.fitness.size(); ++c) {
            ProductAutomaton p = build_product(m, ff.fitness[c]);
            RecurrenceSystem sys = build_recurrence(p);
            std::size_t n_states = p.size();
            std::vector<BigInt> x = to_big(sys.v);
            BigMatrix xi(sys.xi);
            BigInt alpha_prev = 0;
            for (std::size_t n = 0; n <= 12; ++n) {
                INFO(name << " component " << c + 1 << " n " << n);
                auto ab = alpha_beta_bruteforce(p, n);
                bool match = x[0] == alpha_prev;
                for (std::size_t i = 0; i < n_states; ++i)
                    match = match && x[1 + i] == ab.alpha_state[i] &&
                            x[1 + n_states + i] == ab.beta_state[i];
                CHECK(match);

                BigInt beta_sum = 0;
                for (std::size_t i = 0; i < n_states; ++i)
                    beta_sum += x[1 + n_states + i];
                CHECK(beta_sum == count_paths(m, n));

                // Every path of length n+1 extends one of length n by an out-edge of M.
                BigInt next = 0;
                for (std::size_t i = 0; i < n_states; ++i)
                    next += x[1 + n_states + i] * m.successors(p.pairs[i].first).size();
                CHECK(next == count_paths(m, n + 1));

                alpha_prev = ab.alpha;
                x = xi * x;
            }
        }
    }
}

TEST_CASE("matrix power is a homomorphism") {
    std::mt19937_64 rng(15);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    std::uniform_int_distribution<std::uint64_t> exp(0, 64);
    for (int trial = 0; trial < 200; ++trial) {
        BigMatrix m = random_matrix(rng, dim(rng));
        std::uint64_t a = exp(rng), b = exp(rng);
        INFO("trial " << trial << " a " << a << " b " << b);
        CHECK(mat_pow(m, a + b) == mat_pow(m, a) * mat_pow(m, b));
        CHECK(mat_pow(m, 0) == BigMatrix::identity(m.dim()));
        CHECK(mat_pow(m, 1) == m);
        BigMatrix naive = BigMatrix::identity(m.dim());
        for (std::uint64_t i = 0; i < b; ++i)
            naive = naive * m;
        CHECK(mat_pow(m, b) == naive);
    }
}

TEST_CASE("rate images share one denominator per length") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 50; ++trial) {
        Lts m = random_lts(rng, 6, small_sigma());
        FitnessTuple f = random_rate_fitness(rng, small_sigma());
        for (std::size_t n = 1; n <= 8; ++n) {
            INFO("trial " << trial << " n " << n);
            auto img = image_fitness(f, unfold_paths(m, n));
            CHECK(psi_rate_check(img));
            for (const auto &[x, c] : img.entries)
                CHECK(x[1] == n);
        }
    }
}

TEST_CASE("prefixes of longer traces are traces with smaller counts") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        Lts m = random_lts(rng, 5, small_sigma());
        FitnessTuple f({random_dfa(rng, small_sigma()), random_dfa(rng, small_sigma())});
        for (std::size_t n = 0; n < 7; ++n) {
            auto shorter = unfold_paths(m, n);
            auto longer = unfold_paths(m, n + 1);
            std::map<Word, std::uint64_t> prefixes;
            for (const auto &[w, c] : longer.entries) {
                Word u(w.begin(), w.end() - 1);
                prefixes[u] += c;
                CHECK(shorter.multiplicity(u) > 0);
                auto fu = apply_fitness(f, u);
                auto fw = apply_fitness(f, w);
                for (std::size_t i = 0; i < f.size(); ++i) {
                    CHECK(fu[i] <= fw[i]);
                    CHECK(fw[i] - fu[i] <= 1);
                }
            }
            for (const auto &[u, c] : prefixes)
                CHECK(c <= shorter.multiplicity(u) * m.transitions().size());
        }
    }
}

TEST_CASE("average rate equals the ratio of sums for a common denominator") {
    std::mt19937_64 rng(18);
    std::uniform_int_distribution<std::uint64_t> denom(1, 20), mult(1, 5);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    for (int trial = 0; trial < 100; ++trial) {
        std::uint64_t d = denom(rng);
        std::uniform_int_distribution<std::uint64_t> num(0, d);
        FitnessImage img;
        std::size_t n = size(rng);
        for (std::size_t i = 0; i < n; ++i)
            img.entries[{num(rng), d}] += mult(rng);
        INFO("trial " << trial);
        CHECK(avgrate_direct(img) == Rational(xsum(img, 1), xsum(img, 2)));
        CHECK(avgrate_direct(img) <= maxrate_direct(img));
    }
}

TEST_CASE("average rate of random systems matches the recurrence") {
    std::mt19937_64 rng(19);
    auto h = parse_aggregate("x1 / x2", 2);
    for (int trial = 0; trial < 30; ++trial) {
        Lts m = random_lts(rng, 5, small_sigma());
        FitnessTuple f = random_rate_fitness(rng, small_sigma());
        auto systems = build_systems(m, f);
        for (std::uint64_t k = 2; k <= 8; ++k) {
            auto img = image_fitness(f, unfold_paths(m, k - 1));
            if (img.total() == 0)
                continue;
            INFO("trial " << trial << " K " << k);
            auto s = k_approximations(systems, h, {k}).front();
            REQUIRE(s.values[0]);
            CHECK(*s.values[0] == avgrate_direct(img));
        }
    }
}

TEST_CASE("agreed digits do not drop as K grows") {
    auto h = parse_aggregate("x1 / x2", 2);
    for (const char *name : {"good", "bad"}) {
        INFO(name);
        Lts m = builtin_lts(name);
        auto systems = build_systems(m, builtin_fitness(name).fitness);
        int last = -1;
        for (std::uint64_t k : {16, 64, 256, 1024}) {
            auto r = convergence_report(systems, h, k, 2 * k);
            REQUIRE(r.agreed_digits.size() == 1);
            INFO("K " << k << " digits " << r.agreed_digits[0]);
            CHECK(r.agreed_digits[0] >= last);
            last = r.agreed_digits[0];
        }
    }
}

TEST_CASE("scaled and exact backends agree on random systems") {
    std::mt19937_64 rng(20);
    auto h = parse_aggregate("x1 / x2", 2);
    for (int trial = 0; trial < 30; ++trial) {
        Lts m = random_lts(rng, 6, small_sigma());
        FitnessTuple f = random_rate_fitness(rng, small_sigma());
        auto systems = build_systems(m, f);
        auto exact = k_approximations(systems, h, {64, 512}, Backend::exact);
        auto scaled = k_approximations(systems, h, {64, 512}, Backend::scaled);
        for (std::size_t i = 0; i < exact.size(); ++i) {
            INFO("trial " << trial);
            REQUIRE(exact[i].values[0].has_value() == scaled[i].values[0].has_value());
            if (!exact[i].values[0])
                continue;
            double e = to_double(*exact[i].values[0]);
            double s = to_double(*scaled[i].values[0]);
            CHECK(std::fabs(s - e) <= 5e-7 * std::max(1.0, std::fabs(e)));
        }
    }
}
