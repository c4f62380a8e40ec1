#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "easme/mutation.hpp"
#include "easme/rng.hpp"

using namespace easme;

namespace {

std::array<std::size_t, 4> base_counts(const std::string& s) {
    std::array<std::size_t, 4> c{};
    for (char b : s) c[kNucleotides.find(b)]++;
    return c;
}

// True if `longer` equals `shorter` with one contiguous block spliced in.
bool is_single_splice(const std::string& shorter, const std::string& longer) {
    const std::size_t extra = longer.size() - shorter.size();
    for (std::size_t at = 0; at <= shorter.size(); ++at)
        if (longer.compare(0, at, shorter, 0, at) == 0 && longer.compare(at + extra, std::string::npos, shorter, at) == 0)
            return true;
    return false;
}

} // namespace

TEST(Rng, SameTripleSameDraws) {
    auto a = derive_rng_stream(42, 3, 9);
    auto b = derive_rng_stream(42, 3, 9);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(Rng, DistinctTriplesDiffer) {
    auto a = derive_rng_stream(42, 3, 0);
    auto b = derive_rng_stream(42, 3, 1);
    auto c = derive_rng_stream(42, 4, 0);
    auto d = derive_rng_stream(43, 3, 0);
    int same_ab = 0, same_ac = 0, same_ad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        same_ab += x == b.next();
        same_ac += x == c.next();
        same_ad += x == d.next();
    }
    EXPECT_EQ(same_ab, 0);
    EXPECT_EQ(same_ac, 0);
    EXPECT_EQ(same_ad, 0);
}

TEST(Rng, UniformBelowRangeAndBalance) {
    auto rng = derive_rng_stream(1, 0, 0);
    std::array<int, 7> hist{};
    for (int i = 0; i < 70000; ++i) {
        const auto v = rng.uniform_below(7);
        ASSERT_LT(v, 7u);
        hist[v]++;
    }
    for (int h : hist) EXPECT_NEAR(h, 10000, 500);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const auto k = rng.uniform_int(-3, 3);
        ASSERT_GE(k, -3);
        ASSERT_LE(k, 3);
    }
}

TEST(Transition, Pairs) {
    EXPECT_EQ(transition_of('A'), 'G');
    EXPECT_EQ(transition_of('G'), 'A');
    EXPECT_EQ(transition_of('C'), 'T');
    EXPECT_EQ(transition_of('T'), 'C');
}

TEST(PointMutate, ZeroRateIdentity) {
    auto rng = derive_rng_stream(1, 0, 0);
    MutationRates r = MutationRates::none();
    const auto d = random_dna(300, rng);
    EXPECT_EQ(point_mutate(d, r, rng), d);
}

TEST(PointMutate, LargeKappaGivesTransition) {
    auto rng = derive_rng_stream(2, 0, 0);
    MutationRates r = MutationRates::none();
    r.point_rate = 1.0;
    r.kappa = 1e9;
    int g = 0;
    for (int i = 0; i < 10000; ++i) g += point_mutate(Dna("A"), r, rng).bases() == "G";
    EXPECT_GE(g, 9990);
}

TEST(PointMutate, KappaFrequencies) {
    auto rng = derive_rng_stream(3, 0, 0);
    MutationRates r = MutationRates::none();
    r.point_rate = 1.0;
    r.kappa = 2.0;
    std::map<char, int> hist;
    const int n = 100000;
    for (int i = 0; i < n; ++i) hist[point_mutate(Dna("A"), r, rng)[0]]++;
    EXPECT_EQ(hist['A'], 0);
    EXPECT_NEAR(hist['G'] / double(n), 0.5, 0.01);
    EXPECT_NEAR(hist['C'] / double(n), 0.25, 0.01);
    EXPECT_NEAR(hist['T'] / double(n), 0.25, 0.01);
}

TEST(PointMutate, NeverKeepsBaseAndKeepsLength) {
    auto rng = derive_rng_stream(4, 0, 0);
    MutationRates r = MutationRates::none();
    r.point_rate = 1.0;
    for (int i = 0; i < 200; ++i) {
        const auto d = random_dna(50, rng);
        const auto m = point_mutate(d, r, rng);
        ASSERT_EQ(m.size(), d.size());
        for (std::size_t k = 0; k < d.size(); ++k) ASSERT_NE(m[k], d[k]);
    }
}

TEST(Indel, LengthDistribution) {
    auto rng = derive_rng_stream(5, 0, 0);
    std::array<int, 10> hist{};
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto l = sample_indel_length(9, rng);
        ASSERT_GE(l, 1u);
        ASSERT_LE(l, 9u);
        hist[l]++;
    }
    // P(L=l) = 2^-l / (1 - 2^-9)
    const double z = 1.0 - std::pow(2.0, -9);
    for (int l = 1; l <= 9; ++l) EXPECT_NEAR(hist[l] / double(n), std::pow(2.0, -l) / z, 0.01) << l;
    EXPECT_EQ(sample_indel_length(1, rng), 1u);
}

TEST(Insert, ZeroRateAndForced) {
    auto rng = derive_rng_stream(6, 0, 0);
    MutationRates r = MutationRates::none();
    const Dna d("ACGTAC");
    EXPECT_EQ(insert(d, r, rng), d);

    const auto fixed = insert_at(d, 2, "TTT");
    EXPECT_EQ(fixed.bases(), "ACTTTGTAC");

    r.insertion_rate = 1.0;
    for (int i = 0; i < 1000; ++i) {
        const auto m = insert(d, r, rng);
        ASSERT_GT(m.size(), d.size());
        ASSERT_LE(m.size(), d.size() + r.indel_max);
        ASSERT_TRUE(is_single_splice(d.bases(), m.bases()));
    }
}

TEST(Remove, ZeroRateForcedAndEmpty) {
    auto rng = derive_rng_stream(7, 0, 0);
    MutationRates r = MutationRates::none();
    const Dna d("ACGTACGGA");
    EXPECT_EQ(remove(d, r, rng), d);

    const auto fixed = delete_at(d, 3, 3);
    EXPECT_EQ(fixed.bases(), "ACGGGA");
    EXPECT_TRUE(is_single_splice(fixed.bases(), d.bases()));

    r.deletion_rate = 1.0;
    EXPECT_TRUE(remove(Dna(""), r, rng).empty());
    for (int i = 0; i < 1000; ++i) {
        const auto m = remove(d, r, rng);
        ASSERT_LT(m.size(), d.size());
        ASSERT_TRUE(is_single_splice(m.bases(), d.bases()));
    }
    // cannot remove more than exists
    for (int i = 0; i < 200; ++i) EXPECT_LE(remove(Dna("AC"), r, rng).size(), 1u);
}

TEST(Recombine, Examples) {
    const auto [c1, c2] = recombine_at(Dna("AAAA"), Dna("CCCC"), 2);
    EXPECT_EQ(c1.bases(), "AACC");
    EXPECT_EQ(c2.bases(), "CCAA");

    auto rng = derive_rng_stream(8, 0, 0);
    const Dna p("ACGTTGCA");
    for (std::size_t k = 0; k <= p.size(); ++k) {
        const auto [a, b] = recombine_at(p, p, k);
        EXPECT_EQ(a, p);
        EXPECT_EQ(b, p);
    }
    const auto [a, b] = recombine(p, p, rng);
    EXPECT_EQ(a, p);
    EXPECT_EQ(b, p);
}

TEST(Recombine, ConservesBaseCounts) {
    auto rng = derive_rng_stream(9, 0, 0);
    for (int i = 0; i < 500; ++i) {
        const auto a = random_dna(1 + rng.uniform_below(60), rng);
        const auto b = random_dna(1 + rng.uniform_below(60), rng);
        const auto [c, d] = recombine(a, b, rng, i % 2 == 0);
        EXPECT_EQ(base_counts(c.bases() + d.bases()), base_counts(a.bases() + b.bases()));
        EXPECT_EQ(c.size() + d.size(), a.size() + b.size());
    }
}

TEST(Recombine, CodonAlignedCut) {
    auto rng = derive_rng_stream(10, 0, 0);
    const Dna a(std::string(30, 'A')), b(std::string(30, 'C'));
    for (int i = 0; i < 200; ++i) {
        const auto [c, d] = recombine(a, b, rng, true);
        const auto cut = c.bases().find('C');
        ASSERT_NE(cut, std::string::npos);
        EXPECT_EQ(cut % 3, 0u);
    }
}

TEST(MutateIndividual, ZeroRatesIdentity) {
    auto rng = derive_rng_stream(11, 0, 0);
    const auto d = random_dna(400, rng);
    EXPECT_EQ(mutate_individual(d, MutationRates::none(), rng), d);
}

TEST(MutateIndividual, MeanSubstitutions) {
    auto rng = derive_rng_stream(12, 0, 0);
    MutationRates r = MutationRates::none();
    r.point_rate = 1e-3;
    const auto d = random_dna(3000, rng);
    double total = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const auto m = mutate_individual(d, r, rng);
        for (std::size_t k = 0; k < d.size(); ++k) total += m[k] != d[k];
    }
    const double mean = total / trials;
    EXPECT_GE(mean, 2.8);
    EXPECT_LE(mean, 3.2);
}

TEST(MutateIndividual, Deterministic) {
    auto seed_rng = derive_rng_stream(13, 0, 0);
    const auto d = random_dna(600, seed_rng);
    MutationRates r;
    r.point_rate = 0.01;
    r.insertion_rate = r.deletion_rate = 0.5;
    auto a = derive_rng_stream(99, 4, 17);
    auto b = derive_rng_stream(99, 4, 17);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(mutate_individual(d, r, a), mutate_individual(d, r, b));
}

TEST(Rates, Validate) {
    MutationRates r;
    EXPECT_NO_THROW(r.validate());
    r.point_rate = 1.5;
    EXPECT_THROW(r.validate(), std::invalid_argument);
    r = {};
    r.kappa = -1;
    EXPECT_THROW(r.validate(), std::invalid_argument);
    r = {};
    r.indel_max = 0;
    EXPECT_THROW(r.validate(), std::invalid_argument);
}
