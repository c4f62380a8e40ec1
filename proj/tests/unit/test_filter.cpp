#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "easme/filter.hpp"
#include "easme/objectives.hpp"
#include "oracles.hpp"

using namespace easme;

namespace {

bool has_reason(const FilterVerdict& v, std::string_view id) {
    return std::find(v.reasons.begin(), v.reasons.end(), id) != v.reasons.end();
}

double entropy_oracle(const std::string& s) {
    std::map<char, int> counts;
    for (char c : s) counts[c]++;
    double h = 0;
    for (const auto& [c, n] : counts) {
        const double p = double(n) / double(s.size());
        h -= p * std::log2(p);
    }
    return h;
}

} // namespace

TEST(Entropy, Examples) {
    EXPECT_DOUBLE_EQ(shannon_entropy("KKKK"), 0.0);
    EXPECT_DOUBLE_EQ(shannon_entropy("AK"), 1.0);
    EXPECT_DOUBLE_EQ(shannon_entropy("AAKK"), 1.0);
    EXPECT_THROW(shannon_entropy(""), std::invalid_argument);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto p = oracle::random_protein(rng, 1 + rng() % 60);
        EXPECT_NEAR(shannon_entropy(p), entropy_oracle(p), 1e-12);
    }
}

TEST(Homopolymer, Examples) {
    EXPECT_EQ(max_homopolymer_run("AAKKKA"), 3u);
    EXPECT_EQ(max_homopolymer_run(""), 0u);
    EXPECT_EQ(max_homopolymer_run("K"), 1u);
}

TEST(Check, MixedProteinAccepted) {
    const Protein p("MAKEVLSTGDRNWQIPHFCYAKEVLSTGDR");
    ASSERT_EQ(p.size(), 30u);
    // rule by rule
    ASSERT_GE(p.size(), 20u);
    ASSERT_LE(max_homopolymer_run(p.residues()), 8u);
    ASSERT_GE(entropy_oracle(p.residues()), 1.5);
    double kd = 0;
    for (char c : p.residues()) kd += oracle::kd(c);
    ASSERT_GE(kd / 30, -2.0);
    ASSERT_LE(kd / 30, 2.0);

    const auto v = check(p, FilterConfig{});
    EXPECT_TRUE(v.accepted);
    EXPECT_TRUE(v.reasons.empty());
}

TEST(Check, PolyLysineRejected) {
    const auto v = check(Protein(std::string(24, 'K')), FilterConfig{});
    EXPECT_FALSE(v.accepted);
    EXPECT_TRUE(has_reason(v, rule::kHomopolymer));
    EXPECT_TRUE(has_reason(v, rule::kEntropy));
    EXPECT_TRUE(has_reason(v, rule::kGravy));
}

TEST(Check, TruncatedRejected) {
    const Protein p("MAKEVLSTGDRNWQIPHFCYAKEVLSTGDR", true);
    const auto v = check(p, FilterConfig{});
    EXPECT_FALSE(v.accepted);
    EXPECT_EQ(v.reasons, std::vector<std::string>{"truncated"});

    FilterConfig lax;
    lax.reject_truncated = false;
    EXPECT_TRUE(check(p, lax).accepted);
}

TEST(Check, ReasonsInRuleOrder) {
    FilterConfig c;
    c.require_start_met = true;
    const auto v = check(Protein("KKKKKKKKK", true), c);
    EXPECT_EQ(v.reasons, (std::vector<std::string>{"min_length", "truncated", "homopolymer", "entropy", "gravy",
                                                   "start_met"}));
}

TEST(Check, EmptyAndLengthBounds) {
    FilterConfig c;
    c.min_length = 0;
    EXPECT_EQ(check(Protein(""), c).reasons, std::vector<std::string>{"min_length"});
    c.max_length = 25;
    const auto v = check(Protein("MAKEVLSTGDRNWQIPHFCYAKEVLSTGDR"), c);
    EXPECT_EQ(v.reasons, std::vector<std::string>{"max_length"});
}

TEST(Check, ConfigValidation) {
    FilterConfig c;
    c.min_length = 10;
    c.max_length = 5;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.gravy_min = 1;
    c.gravy_max = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.min_entropy = 10;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Check, LooseningNeverRejects) {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 3000; ++i) {
        const std::string alphabet = i % 2 ? oracle::kResidues : "AKIL";
        const Protein p(oracle::random_protein(rng, rng() % 60, alphabet), rng() % 4 == 0);
        FilterConfig base;
        base.min_length = rng() % 30;
        base.max_homopolymer = 1 + rng() % 6;
        base.min_entropy = double(rng() % 40) / 10.0;
        base.gravy_min = -double(rng() % 30) / 10.0;
        base.gravy_max = double(rng() % 30) / 10.0;
        base.require_start_met = rng() % 2;
        if (!check(p, base).accepted) continue;

        std::vector<FilterConfig> looser(7, base);
        looser[0].min_length = base.min_length / 2;
        looser[1].max_length = base.max_length + 100;
        looser[2].reject_truncated = false;
        looser[3].max_homopolymer += 3;
        looser[4].min_entropy /= 2;
        looser[5].gravy_min -= 1;
        looser[5].gravy_max += 1;
        looser[6].require_start_met = false;
        for (const auto& l : looser) ASSERT_TRUE(check(p, l).accepted) << p.residues();
    }
}

TEST(Check, Deterministic) {
    const Protein p("MAKEVLSTGDRNWQIPHFCY");
    EXPECT_EQ(check(p, FilterConfig{}), check(p, FilterConfig{}));
}
