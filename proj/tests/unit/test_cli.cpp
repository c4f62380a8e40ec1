#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using easme::cli::run_cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("easme_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& content) {
        const auto p = dir_ / name;
        std::ofstream(p) << content;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static std::string read(const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string config(int population = 12, int generations = 4) {
        return file("config.json", R"({"mode": "unknown_to_known", "seed": 2, "population_size": )" +
                                       std::to_string(population) + R"(, "generations": )" +
                                       std::to_string(generations) + R"(, "initial_length": 60,
            "objectives": [{"kind": "consensus_similarity", "target": "MAKWVTFISLLFLFSSAYS"},
                           {"kind": "charged_fraction"}],
            "filter": {"min_length": 10}})");
    }

    fs::path dir_;
};

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_F(CliTest, UnknownFlagIsUsageError) {
    const auto r = invoke({"translate", "--fasta", "x.fa", "--bogus"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"dance"}).code, 2);
    EXPECT_EQ(invoke({"translate"}).code, 2);
    EXPECT_EQ(invoke({"translate", "--fasta", "x.fa", "--frame", "3"}).code, 2);
    EXPECT_EQ(invoke({"score", "--objectives", "o.json"}).code, 2);
    EXPECT_EQ(invoke({"score", "--protein", "MAK", "--fasta", "f.fa", "--objectives", "o.json"}).code, 2);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, TranslateExamples) {
    auto r = invoke({"translate", "--fasta", file("a.fa", ">g\nATGGCTAAA\n")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, ">g\nMAK\n");

    r = invoke({"translate", "--fasta", file("b.fa", ">g\nATGTGAGCT\n")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, ">g truncated=true\nM\n");

    r = invoke({"translate", "--fasta", file("c.fa", "")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");

    r = invoke({"translate", "--fasta", file("d.fa", ">g\nCATGGCT\n"), "--frame", "1"});
    EXPECT_EQ(r.out, ">g\nMA\n");

    r = invoke({"translate", "--fasta", file("e.fa", ">bad\nATGXAA\n")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("bad"), std::string::npos);

    EXPECT_EQ(invoke({"translate", "--fasta", path("missing.fa")}).code, 1);
}

TEST_F(CliTest, ScoreExamples) {
    const auto objectives = file("o.json", R"([{"kind": "charged_fraction"}, {"kind": "gravy_target", "target": 0}])");
    auto r = invoke({"score", "--protein", "MAK", "--objectives", objectives});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "id,charged_fraction,gravy_target,accepted,reasons");
    EXPECT_NE(r.out.find("protein,0.333333,"), std::string::npos);
    EXPECT_NE(r.out.find("false,min_length"), std::string::npos);

    const auto fasta = file("p.fa", ">first\nMAKEVLSTGDRNWQIPHFCY\n>second\nKKKK\n");
    r = invoke({"score", "--fasta", fasta, "--objectives", objectives});
    EXPECT_EQ(r.code, 0);
    ASSERT_EQ(lines(r.out), 3u);
    EXPECT_LT(r.out.find("\nfirst,"), r.out.find("\nsecond,"));
    EXPECT_NE(r.out.find("second,1.000000,-3.900000,false,min_length;entropy;gravy"), std::string::npos);

    const auto lax = file("f.json", R"({"min_length": 1, "min_entropy": 0, "gravy_bounds": [-5, 5]})");
    r = invoke({"score", "--fasta", fasta, "--objectives", objectives, "--filter", lax});
    EXPECT_NE(r.out.find("second,1.000000,-3.900000,true,\n"), std::string::npos);

    r = invoke({"score", "--protein", "MAX", "--objectives", objectives});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("position 2"), std::string::npos);

    r = invoke({"score", "--fasta", file("q.fa", ">ok\nMAK\n>oops\nMZK\n"), "--objectives", objectives});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("oops"), std::string::npos);

    r = invoke({"score", "--protein", "MAK", "--objectives", file("bad.json", R"([{"kind": "nope"}])")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("objectives[0].kind"), std::string::npos);
}

TEST_F(CliTest, RunWritesOutputsAndProgress) {
    const auto out = path("run");
    const auto r = invoke({"run", "--config", config(12, 4), "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(read(out + "/history.csv")), 1u + 5u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5 + 1);
    EXPECT_EQ(r.out.rfind("gen 0 ", 0), 0u);
    for (const char* f : {"config_echo.json", "history.csv", "final_dna.fasta", "final_proteins.fasta", "pareto.json"})
        EXPECT_TRUE(fs::exists(fs::path(out) / f)) << f;
}

TEST_F(CliTest, RunInvalidConfig) {
    auto r = invoke({"run", "--config", config(3, 4), "--out", path("never")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("population_size"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("never")));

    r = invoke({"run", "--config", path("absent.json"), "--out", path("never")});
    EXPECT_EQ(r.code, 1);

    r = invoke({"run", "--config", file("broken.json", "{")});
    EXPECT_EQ(r.code, 1);

    r = invoke({"run", "--config", config()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("output_dir"), std::string::npos);
}

TEST_F(CliTest, RunSeedOverride) {
    const auto cfg = config(12, 3);
    ASSERT_EQ(invoke({"run", "--config", cfg, "--out", path("a")}).code, 0);
    ASSERT_EQ(invoke({"run", "--config", cfg, "--out", path("b"), "--seed", "77"}).code, 0);
    ASSERT_EQ(invoke({"run", "--config", cfg, "--out", path("c"), "--seed", "77", "--workers", "3"}).code, 0);
    EXPECT_NE(read(path("a") + "/history.csv"), read(path("b") + "/history.csv"));
    EXPECT_EQ(read(path("b") + "/history.csv"), read(path("c") + "/history.csv"));
    EXPECT_EQ(read(path("b") + "/pareto.json"), read(path("c") + "/pareto.json"));
    EXPECT_EQ(invoke({"run", "--config", cfg, "--out", path("d"), "--workers", "0"}).code, 2);
}

TEST_F(CliTest, ParetoTableAndSvg) {
    const auto out = path("run");
    ASSERT_EQ(invoke({"run", "--config", config(12, 4), "--out", out}).code, 0);
    const auto front = nlohmann::json::parse(read(out + "/pareto.json"));

    auto r = invoke({"pareto", "--run", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out), 1 + front.size());
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "index,obj_0,obj_1,length,protein");

    const auto svg = path("front.svg");
    r = invoke({"pareto", "--run", out, "--svg", svg, "--objectives", "1,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = read(svg);
    EXPECT_EQ(doc.rfind("<svg", 0), 0u);
    EXPECT_NE(doc.find("</svg>"), std::string::npos);
    EXPECT_EQ(doc.find("href"), std::string::npos);
    EXPECT_EQ(std::count(doc.begin(), doc.end(), '<'), std::count(doc.begin(), doc.end(), '>'));

    EXPECT_EQ(invoke({"pareto", "--run", out, "--objectives", "0,5"}).code, 1);
    EXPECT_EQ(invoke({"pareto", "--run", path("nowhere")}).code, 1);
    EXPECT_EQ(invoke({"pareto", "--run", out, "--objectives", "zero"}).code, 2);
}

TEST(HistoryCsv, Parse) {
    const auto t = easme::cli::parse_history_csv(
        "generation,best_0,mean_0,front0_size,reject_frac,checksum\n0,nan,nan,3,1,00000000000000ff\n");
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_TRUE(std::isnan(t.rows[0][1]));
    EXPECT_EQ(t.rows[0][5], 255.0);
    EXPECT_THROW(easme::cli::parse_history_csv("x,y\n"), std::runtime_error);
}
