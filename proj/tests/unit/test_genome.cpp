#include <gtest/gtest.h>

#include <random>

#include "easme/fasta.hpp"
#include "easme/genome.hpp"
#include "oracles.hpp"

using namespace easme;

TEST(Translate, Examples) {
    auto p = translate(Dna("ATGGCTAAA"), 0);
    EXPECT_EQ(p.residues(), "MAK");
    EXPECT_FALSE(p.truncated());

    p = translate(Dna(""), 0);
    EXPECT_EQ(p.residues(), "");
    EXPECT_FALSE(p.truncated());

    p = translate(Dna("ATGTGAGCT"), 0);
    EXPECT_EQ(p.residues(), "M");
    EXPECT_TRUE(p.truncated());
}

TEST(Translate, TerminalStopIsNotTruncation) {
    const auto p = translate(Dna("ATGGCTTAA"), 0);
    EXPECT_EQ(p.residues(), "MA");
    EXPECT_FALSE(p.truncated());
}

TEST(Translate, FramesAndBadFrame) {
    EXPECT_EQ(translate(Dna("CATGGCT"), 1).residues(), "MA");
    EXPECT_EQ(translate(Dna("CCATGGCT"), 2).residues(), "MA");
    EXPECT_THROW(translate(Dna("ATG"), 3), std::invalid_argument);
}

TEST(GeneticCode, MatchesTable1) {
    const auto& code = GeneticCode::standard();
    const auto entries = code.entries();
    ASSERT_EQ(entries.size(), 64u);
    int stops = 0;
    for (const auto& [codon, aa] : entries) {
        EXPECT_EQ(aa, oracle::codon_table().at(codon)) << codon;
        EXPECT_EQ(code.translate_codon(codon), aa);
        const auto p = translate(Dna(codon), 0);
        if (aa == kStopSymbol) {
            ++stops;
            EXPECT_TRUE(p.empty());
        } else {
            EXPECT_EQ(p.residues(), std::string(1, aa));
        }
    }
    EXPECT_EQ(stops, 3);
    EXPECT_THROW(code.translate_codon("AUG"), std::invalid_argument);
    EXPECT_THROW(code.translate_codon("AT"), std::invalid_argument);
}

TEST(Translate, MatchesOracleOnRandomDna) {
    RngStream rng(7, 0, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto dna = random_dna(1 + rng.uniform_below(120), rng);
        for (std::size_t frame = 0; frame < 3; ++frame) {
            const auto expect = oracle::translate(dna.bases(), frame);
            const auto got = translate(dna, frame);
            ASSERT_EQ(got.residues(), expect.residues) << dna.bases();
            ASSERT_EQ(got.truncated(), expect.truncated) << dna.bases();
        }
    }
}

TEST(Translate, PartialCodonSuffixIsIgnored) {
    RngStream rng(8, 0, 0);
    int checked = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const auto dna = random_dna(3 * (1 + rng.uniform_below(20)), rng);
        const auto base = translate(dna, 0);
        // the property covers DNA with no stop or with only a terminal stop
        if (base.truncated()) continue;
        for (std::size_t extra = 1; extra <= 2; ++extra) {
            const auto longer = Dna(dna.bases() + random_dna(extra, rng).bases());
            EXPECT_EQ(translate(longer, 0), base);
        }
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(RandomDna, AlphabetLengthDeterminism) {
    RngStream rng(1, 0, 0);
    const auto d = random_dna(6, rng);
    EXPECT_EQ(d.size(), 6u);
    for (char c : d.bases()) EXPECT_TRUE(is_nucleotide(c));

    const auto one = random_dna(1, rng);
    EXPECT_NE(std::string("ACGT").find(one.bases()), std::string::npos);

    RngStream a(5, 1, 2), b(5, 1, 2);
    EXPECT_EQ(random_dna(500, a), random_dna(500, b));
    EXPECT_THROW(random_dna(0, a), std::invalid_argument);
}

TEST(Validate, Dna) {
    EXPECT_EQ(validate_dna("acgt").bases(), "ACGT");
    EXPECT_TRUE(validate_dna("").empty());
    try {
        validate_dna("ACGU");
        FAIL();
    } catch (const SequenceError& e) {
        EXPECT_EQ(e.position(), 3u);
        EXPECT_EQ(e.character(), 'U');
    }
    EXPECT_THROW(validate_dna("ACNT"), SequenceError);
    EXPECT_THROW(Dna("acgt"), SequenceError);
}

TEST(Validate, Protein) {
    EXPECT_EQ(validate_protein("mak").residues(), "MAK");
    try {
        validate_protein("MAX");
        FAIL();
    } catch (const SequenceError& e) {
        EXPECT_EQ(e.position(), 2u);
    }
    EXPECT_THROW(validate_protein("MA*"), SequenceError);
}

TEST(Fasta, ParseExamples) {
    const auto r = parse_fasta(">g1\nATG\nGCT\n");
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0], (FastaRecord{"g1", "ATGGCT"}));

    const auto two = parse_fasta(">a\nATG\n>b\nTTT\n");
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].id, "a");
    EXPECT_EQ(two[1].id, "b");

    EXPECT_THROW(parse_fasta("ATG\n"), FastaError);
    EXPECT_TRUE(parse_fasta("").empty());
}

TEST(Fasta, CrlfLowercaseAndBlankLines) {
    const auto r = parse_fasta(">x desc\r\natg\r\n\r\ngct\r\n");
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].id, "x desc");
    EXPECT_EQ(r[0].sequence, "ATGGCT");
}

TEST(Fasta, BadCharacterNamesRecord) {
    try {
        parse_fasta(">ok\nACGT\n>bad\nACXT\n");
        FAIL();
    } catch (const FastaError& e) {
        EXPECT_EQ(e.record_id(), "bad");
        EXPECT_EQ(e.position(), 2u);
        EXPECT_EQ(e.character(), 'X');
    }
    EXPECT_NO_THROW(parse_fasta(">p\nMAKW\n", SequenceAlphabet::Protein));
    EXPECT_THROW(parse_fasta(">p\nMAKW\n", SequenceAlphabet::Dna), FastaError);
}

TEST(Fasta, Write) {
    EXPECT_EQ(write_fasta({{"g1", "ATGGCT"}}), ">g1\nATGGCT\n");
    const std::string seq(130, 'A');
    const auto text = write_fasta({{"long", seq}}, 60);
    EXPECT_EQ(text, ">long\n" + std::string(60, 'A') + "\n" + std::string(60, 'A') + "\n" + std::string(10, 'A') + "\n");
    EXPECT_THROW(write_fasta({{"", "ACGT"}}), std::invalid_argument);
}

TEST(Fasta, RoundTripAnyWrap) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<FastaRecord> records;
        const std::size_t n = gen() % 5;
        for (std::size_t i = 0; i < n; ++i) {
            std::string s;
            const std::size_t len = gen() % 150;
            for (std::size_t k = 0; k < len; ++k) s += "ACGT"[gen() % 4];
            records.push_back({"rec_" + std::to_string(i) + " note", s});
        }
        const std::size_t wrap = 1 + gen() % 80;
        EXPECT_EQ(parse_fasta(write_fasta(records, wrap)), records);
    }
}
