#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace fitscore;
using namespace fitscore::oracle;
using namespace support;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

FitnessImage image_of(std::initializer_list<std::pair<FitnessVector, std::uint64_t>> xs) {
    FitnessImage img;
    for (const auto &[v, c] : xs)
        img.entries[v] += c;
    return img;
}

ProductAutomaton toy_product() {
    return build_product(builtin_lts("toy"), builtin_fitness("toy").fitness[0]);
}

} // namespace

TEST_CASE("unfolding a single dollar loop") {
    Lts m = builtin_lts("dollar-loop");
    auto m5 = unfold_paths(m, 5);
    REQUIRE(m5.entries.size() == 1);
    CHECK(m5.entries.begin()->first == Word(5, m.alphabet().index("$")));
    CHECK(m5.total() == 1);
}

TEST_CASE("unfolding the toy system") {
    Lts m = builtin_lts("toy");
    CHECK(unfold_paths(m, 4).total() == 8);
    auto m0 = unfold_paths(m, 0);
    CHECK(m0.total() == m.initial().size());
    CHECK(m0.multiplicity({}) == 1);
}

TEST_CASE("unfolding without initial states is empty") {
    Lts m(Alphabet({"a"}));
    m.add_state("p");
    m.add_transition("p", "a", "p");
    CHECK(unfold_paths(m, 3).entries.empty());
}

TEST_CASE("unfolding respects the depth cap") {
    Lts m = builtin_lts("toy");
    CHECK_THROWS_AS(unfold_paths(m, 15), Error);
    CHECK(unfold_paths(m, 15, 15).total() == 1597);
}

TEST_CASE("word multiplicity counts distinct paths") {
    Alphabet sigma({"a"});
    Lts m(sigma);
    m.add_state("p");
    m.add_state("q");
    m.add_state("r");
    m.mark_initial(0);
    m.add_transition("p", "a", "q");
    m.add_transition("p", "a", "r");
    auto m1 = unfold_paths(m, 1);
    CHECK(m1.multiplicity({0}) == 2);
}

TEST_CASE("apply fitness") {
    auto ff = builtin_fitness("dollar-loop");
    CHECK(apply_fitness(ff.fitness, split_word("$0$$0")) == FitnessVector{3, 5});
    CHECK(apply_fitness(ff.fitness, std::vector<std::string>{}) == FitnessVector{0, 0});
    Alphabet sigma({"s", "t", "a"});
    FitnessTuple seq({make_sequence_counter(sigma, {"s"}, {"a"})});
    CHECK(apply_fitness(seq, split_word("sta")) == FitnessVector{1});
    CHECK_THROWS_AS(apply_fitness(seq, split_word("sx")), Error);
}

TEST_CASE("image of a multiset") {
    std::map<long, std::uint64_t> x = {{2, 1}, {-2, 1}, {3, 3}};
    auto sq = image(x, [](long v) { return v * v; });
    CHECK(sq == std::map<long, std::uint64_t>{{4, 2}, {9, 3}});
    CHECK(image(std::map<long, std::uint64_t>{}, [](long v) { return v; }).empty());
}

TEST_CASE("image of the rate fitness has constant length") {
    Lts m = builtin_lts("bad");
    auto ff = builtin_fitness("bad");
    for (std::size_t n : {1, 4, 7}) {
        auto img = image_fitness(ff.fitness, unfold_paths(m, n));
        CHECK(img.total() == unfold_paths(m, n).total());
        for (const auto &[v, c] : img.entries)
            CHECK(v[1] == n);
        CHECK(psi_rate_check(img));
    }
    CHECK(image_fitness(ff.fitness, TraceMultiset{}).entries.empty());
}

TEST_CASE("xsum") {
    auto img = image_of({{{1, 2}, 2}, {{3, 4}, 1}});
    CHECK(xsum(img, 2) == 8);
    CHECK(xsum(img, 1) == 5);
    CHECK(xsum(FitnessImage{}, 1) == 0);
    CHECK_THROWS_AS(xsum(img, 3), Error);
    CHECK_THROWS_AS(xsum(img, 0), Error);
}

TEST_CASE("xsum agrees with g on the good system") {
    Lts m = builtin_lts("good");
    auto ff = builtin_fitness("good");
    auto img = image_fitness(ff.fitness, unfold_paths(m, 6));
    auto systems = build_systems(m, ff.fitness);
    CHECK(xsum(img, 1) == g_value(systems[0], 6));
    CHECK(xsum(img, 2) == g_value(systems[1], 6));
}

TEST_CASE("average and maximum rate") {
    auto x = image_of({{{1, 3}, 2}, {{2, 3}, 1}});
    CHECK(avgrate_direct(x) == q(4, 9));
    CHECK(maxrate_direct(x) == q(2, 3));
    CHECK(avgrate_direct(image_of({{{7, 7}, 1}})) == 1);
    CHECK(avgrate_direct(image_of({{{0, 5}, 1}})) == 0);
    CHECK(maxrate_direct(image_of({{{3, 6}, 1}, {{2, 6}, 1}, {{4, 6}, 1}})) == q(2, 3));
    CHECK(avgrate_direct(image_of({{{3, 6}, 1}, {{2, 6}, 1}, {{4, 6}, 1}})) == q(1, 2));
    CHECK(maxrate_direct(image_of({{{2, 5}, 1}})) == q(2, 5));
    CHECK_THROWS_AS(avgrate_direct(FitnessImage{}), Error);
    CHECK_THROWS_AS(maxrate_direct(image_of({{{1, 0}, 1}})), Error);
}

TEST_CASE("psi rate predicate") {
    CHECK(psi_rate_check(image_of({{{1, 3}, 1}, {{2, 3}, 1}})));
    CHECK_FALSE(psi_rate_check(image_of({{{1, 3}, 1}, {{2, 4}, 1}})));
}

TEST_CASE("alpha and beta of the toy product") {
    auto p = toy_product();
    REQUIRE(p.names[0] == "s0.q0");
    CHECK(alpha_beta_bruteforce(p, 3).beta_state[0] == 3);
    CHECK(alpha_beta_bruteforce(p, 4).beta_state[1] == 3);
    auto ab1 = alpha_beta_bruteforce(p, 1);
    CHECK(ab1.alpha_state[0] == 0);
    CHECK(ab1.alpha_state[1] == 1);
    CHECK(alpha_beta_bruteforce(p, 3).alpha_state[0] == 2);
    std::vector<std::uint64_t> alphas;
    for (std::size_t n = 0; n <= 4; ++n)
        alphas.push_back(alpha_beta_bruteforce(p, n).alpha);
    CHECK(alphas == std::vector<std::uint64_t>{0, 1, 2, 5, 10});
}

TEST_CASE("alpha and beta at n = 0") {
    ProductAutomaton p;
    p.pairs = {{0, 0}, {1, 0}, {2, 0}};
    p.names = {"a", "b", "c"};
    p.initial = {true, true, false};
    p.accepting = {true, false, true};
    auto ab = alpha_beta_bruteforce(p, 0);
    CHECK(ab.beta_state == std::vector<std::uint64_t>{1, 1, 0});
    CHECK(ab.alpha_state == std::vector<std::uint64_t>{1, 0, 0});
    CHECK_THROWS_AS(alpha_beta_bruteforce(p, 20), Error);
}

TEST_CASE("streamed path sums equal the materialized image") {
    for (const char *name : {"toy", "good", "bad", "2pc-A2"}) {
        INFO(name);
        Lts m = builtin_lts(name);
        auto ff = builtin_fitness(name);
        auto sums = path_sums(m, ff.fitness, 7);
        for (std::size_t n = 0; n <= 7; ++n) {
            auto img = image_fitness(ff.fitness, unfold_paths(m, n));
            CHECK(sums.paths[n] == img.total());
            for (std::size_t i = 0; i < ff.fitness.size(); ++i)
                CHECK(xsum(img, i + 1) == sums.sums[n][i]);
        }
    }
}

// A single trace whose $-rate never settles: $ blocks push the prefix rate up
// to 3/4 and 0 blocks pull it back to 1/2, with each block longer than the last.
TEST_CASE("oscillating prefix rates") {
    auto ff = builtin_fitness("dollar-loop");
    auto rate = [&](const std::string &w) {
        auto x = apply_fitness(ff.fitness, split_word(w));
        return Rational(BigInt(x[0]), BigInt(x[1]));
    };
    std::vector<std::string> prefixes = {"0$"};
    std::size_t dollars = 1, zeros = 1;
    for (int i = 0; i < 5; ++i) {
        std::string w = prefixes.back();
        if (i % 2 == 0) {
            w += std::string(3 * zeros - dollars, '$');
            dollars = 3 * zeros;
        } else {
            w += std::string(dollars - zeros, '0');
            zeros = dollars;
        }
        prefixes.push_back(w);
    }
    CHECK(prefixes[1] == "0$$$");
    CHECK(prefixes[2] == "0$$$00");
    CHECK(prefixes[3] == "0$$$00$$$$$$");
    CHECK(prefixes[4] == "0$$$00$$$$$$000000");
    CHECK(prefixes[5].size() == 36);
    for (std::size_t i = 0; i < prefixes.size(); ++i)
        CHECK(rate(prefixes[i]) == (i % 2 == 0 ? q(1, 2) : q(3, 4)));
}
