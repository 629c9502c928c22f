#include <cmath>
#include <set>

#include "bexsam/diagnostics.hpp"
#include "bexsam/errors.hpp"
#include "bexsam/genbench.hpp"
#include "bexsam/model.hpp"
#include "bexsam/rng.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bexsam;

TEST_CASE("worked example: structural samples for chosen noise patterns") {
    BexsamModel m = support::example_model();
    // only e1 flips: everything downstream turns on
    CHECK(structural_sample(m, 0b0001) == 0b1111);
    // only e4 flips: just the last variable turns on
    CHECK(structural_sample(m, 0b1000) == 0b1000);
    // no noise: all zero
    CHECK(structural_sample(m, 0b0000) == 0b0000);
}

TEST_CASE("worked example: exact joint and conditionals") {
    BexsamModel m = support::example_model();
    JointDistribution j = exact_joint(m);
    CHECK(j.prob_of(0b0000) == doctest::Approx(0.4096).epsilon(1e-12));
    // p(x4 = 1 | x1 = x2 = x3 = 0) is the raw noise rate of x4
    CHECK(exact_conditional(j, 3, 0b0000, 0b0111) == doctest::Approx(0.2).epsilon(1e-12));
    // p(x1 = 1 | x2 = 0) = 0.04 / 0.68
    CHECK(exact_conditional(j, 0, 0b00, 0b010) ==
          doctest::Approx(0.04 / 0.68).epsilon(1e-12));
    double total = 0.0;
    for (double p : j.probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact joint matches the noise-enumeration oracle") {
    for (const BexsamModel& m : {support::example_model()}) {
        JointDistribution a = exact_joint(m);
        JointDistribution b = support::joint_by_noise_enumeration(m);
        REQUIRE(a.probs.size() == b.probs.size());
        for (std::size_t i = 0; i < a.probs.size(); ++i)
            CHECK(a.probs[i] == doctest::Approx(b.probs[i]).epsilon(1e-13));
    }
}

TEST_CASE("structural map is a bijection between noise and samples") {
    for (const BexsamModel& m : support::bank_a()) {
        if (m.dim() > 5) continue;
        std::set<std::uint64_t> seen;
        for (std::uint64_t noise = 0; noise < (std::uint64_t{1} << m.dim()); ++noise)
            seen.insert(structural_sample(m, noise));
        CHECK(seen.size() == (std::size_t{1} << m.dim()));
    }
}

TEST_CASE("true adjacency of the worked example") {
    AdjacencyMatrix b = true_adjacency(support::example_model());
    CHECK(b.edge_count() == 5);
    CHECK(b.at(1, 0) == 1);
    CHECK(b.at(2, 0) == 1);
    CHECK(b.at(2, 1) == 1);
    CHECK(b.at(3, 0) == 1);
    CHECK(b.at(3, 2) == 1);
    CHECK(b.at(0, 1) == 0);
    CHECK(b.at(3, 1) == 0);
}

TEST_CASE("model validation") {
    AnfFunction zero;
    SUBCASE("noise probability bounds") {
        CHECK_THROWS_AS(BexsamModel({0}, {zero}, {0.0}), InputError);
        CHECK_THROWS_AS(BexsamModel({0}, {zero}, {1.0}), InputError);
        CHECK_THROWS_AS(BexsamModel({0}, {zero}, {0.5}), InputError);
    }
    SUBCASE("near-fair noise only warns") {
        BexsamModel m({0}, {zero}, {0.49});
        CHECK(m.warnings().size() == 1);
        BexsamModel ok({0}, {zero}, {0.4});
        CHECK(ok.warnings().empty());
    }
    SUBCASE("order must be a permutation") {
        CHECK_THROWS_AS(BexsamModel({0, 0}, {zero, zero}, {0.2, 0.2}), InputError);
        CHECK_THROWS_AS(BexsamModel({0, 2}, {zero, zero}, {0.2, 0.2}), InputError);
    }
    SUBCASE("functions may only read earlier variables") {
        // x1 reading x2 under order x1, x2
        CHECK_THROWS_AS(
            BexsamModel({0, 1}, {AnfFunction::variable(1), zero}, {0.2, 0.2}),
            InputError);
        // self-reference
        CHECK_THROWS_AS(BexsamModel({0}, {AnfFunction::variable(0)}, {0.2}),
                        InputError);
        // fine when the order allows it
        BexsamModel ok({1, 0}, {AnfFunction::variable(1), zero}, {0.2, 0.2});
        CHECK(true_adjacency(ok).at(0, 1) == 1);
    }
}

TEST_CASE("exact joint dimension guard") {
    std::vector<int> order(21);
    std::vector<AnfFunction> fs(21);
    std::vector<double> ps(21, 0.2);
    for (int i = 0; i < 21; ++i) order[static_cast<std::size_t>(i)] = i;
    BexsamModel big(order, fs, ps);
    CHECK_THROWS_AS(exact_joint(big), CapacityError);
}

TEST_CASE("exact conditional guards") {
    JointDistribution j{2, {0.0, 0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(exact_conditional(j, 0, 0b01, 0b01), InputError);  // target given
    CHECK_THROWS_AS(exact_conditional(j, 1, 0b00, 0b01), InputError);  // zero mass
    CHECK(exact_conditional(j, 1, 0b01, 0b01) == doctest::Approx(1.0));
}

TEST_CASE("marginal difference factorizes into noise and function skews") {
    for (const BexsamModel& m : {support::example_model()}) {
        JointDistribution j = exact_joint(m);
        for (int i = 0; i < m.dim(); ++i) {
            double p1 = 0.0, f1 = 0.0;
            for (std::uint64_t x = 0; x < j.probs.size(); ++x) {
                if ((x >> i) & 1) p1 += j.probs[x];
                if (m.function_of(i).eval(x)) f1 += j.probs[x];
            }
            double lhs = (1.0 - p1) - p1;
            double rhs = (1.0 - 2.0 * m.noise_prob(i)) * ((1.0 - f1) - f1);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("noise marginals for xor and or placements") {
    NoiseMarginals nm = noise_marginals(0.2, 0.3);
    CHECK(nm.xor_one == doctest::Approx(0.38).epsilon(1e-12));
    CHECK(nm.or_one == doctest::Approx(0.44).epsilon(1e-12));
    // small marginals: the two placements are close, gap exactly p_e * p_f
    NoiseMarginals small = noise_marginals(0.05, 0.08);
    CHECK(small.or_one - small.xor_one == doctest::Approx(0.05 * 0.08).epsilon(1e-12));
    CHECK_THROWS_AS(noise_marginals(-0.1, 0.5), InputError);
}

TEST_CASE("skewness check flags near-fair and degenerate marginals") {
    BexsamModel m = support::example_model();
    FrequencyTable t = FrequencyTable::from_joint(exact_joint(m), 1000.0);
    SkewReport rep = skewness_check(t, 0.02);
    REQUIRE(rep.entries.size() == 4);
    CHECK(rep.all_ok);
    CHECK(rep.entries[0].p_hat == doctest::Approx(0.2).epsilon(1e-12));
    for (const SkewEntry& e : rep.entries) {
        CHECK(e.skewed);
        CHECK_FALSE(e.degenerate);
    }

    // a fair coin fails the band, a constant column is degenerate
    FrequencyTable bad = FrequencyTable::from_weights({0, 1}, {0.5, 0.5, 0.0, 0.0});
    SkewReport rep2 = skewness_check(bad, 0.02);
    CHECK_FALSE(rep2.all_ok);
    CHECK_FALSE(rep2.entries[0].skewed);     // p_hat = 0.5
    CHECK(rep2.entries[1].degenerate);       // p_hat = 0
    CHECK_THROWS_AS(skewness_check(bad, 0.7), InputError);

    // sampled marginal of the exogenous p = 0.2 variable lands within three
    // binomial standard errors at n = 10000
    Rng rng(17);
    FrequencyTable sampled =
        FrequencyTable::from_rows(sample_dataset(m, 10000, rng), m.dim());
    SkewReport rep3 = skewness_check(sampled, 0.02);
    CHECK(rep3.all_ok);
    CHECK(std::fabs(rep3.entries[0].p_hat - 0.2) < 0.012);
}
