#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "subdiv/io.hpp"

namespace fs = std::filesystem;
using subdiv::json;

namespace {

const std::string kCli = SUBDIV_CLI;
const std::string kSamples = SUBDIV_SAMPLES;

struct Out {
    int code;
    std::string out, err;
};

Out run(const std::string& args) {
    const auto dir = fs::temp_directory_path() / "subdiv_cli_test";
    fs::create_directories(dir);
    const auto o = (dir / "out.txt").string(), e = (dir / "err.txt").string();
    const int status = std::system((kCli + " " + args + " > " + o + " 2> " + e).c_str());
    return {WEXITSTATUS(status), subdiv::read_file(o), subdiv::read_file(e)};
}

std::string tmp(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "subdiv_cli_test";
    fs::create_directories(dir);
    return (dir / name).string();
}

} // namespace

TEST(Cli, UnknownSubcommandIsUsageError) {
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("modulus").code, 1); // missing --input
}

TEST(Cli, MalformedComplexIsValidationError) {
    const auto path = tmp("dangling.json");
    subdiv::write_file(path, R"({"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"faces":[[1,2,9]]})");
    const auto r = run("modulus --input " + path);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("DanglingEdge"), std::string::npos);
}

TEST(Cli, MissingFileIsIoError) { EXPECT_EQ(run("modulus --input /nonexistent/x.json").code, 4); }

TEST(Cli, OracleTooLargeIsSolverError) {
    const auto r = run("modulus --input " + kSamples + "/annulus_6.json --oracle");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("TooLarge"), std::string::npos);
}

TEST(Cli, SquareModulus) {
    const auto r = run("modulus --input " + kSamples + "/two_triangle_square.json --marking quad --mode vertex");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["value"].get<double>(), 1.0, 1e-9);
    EXPECT_EQ(j["carrier"], "vertices");
    EXPECT_EQ(run("modulus --input " + kSamples + "/two_triangle_square.json --marking ring").code, 2);
}

TEST(Cli, SubdivideKeepsMarking) {
    const auto out = tmp("sq2.json");
    ASSERT_EQ(run("subdivide --rule barycentric --input " + kSamples + "/two_triangle_square.json --levels 2 --output " + out)
                  .code,
              0);
    const auto r = run("modulus --input " + out);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(json::parse(r.out)["value"].get<double>(), 1.0, 1e-6);
    const auto ring = tmp("ann1.json");
    ASSERT_EQ(run("subdivide --rule hexagonal --input " + kSamples + "/annulus_6.json --output " + ring).code, 0);
    EXPECT_EQ(run("modulus --input " + ring + " --which inf").code, 0);
}

TEST(Cli, RulesAndGrowth) {
    const auto r = run("rules list");
    EXPECT_EQ(r.out, "barycentric\nhexagonal\n");
    const auto g = run("rules growth --rule " + kSamples + "/linear_rule.json --input " + kSamples +
                       "/linear_seed.json --vertex 0 --stages 5");
    ASSERT_EQ(g.code, 0) << g.err;
    const auto j = json::parse(g.out);
    EXPECT_EQ(j["kind"], "linear");
    EXPECT_EQ(j["addend"], 2);
}

TEST(Cli, PackIsDeterministic) {
    const auto a = tmp("a.svg"), b = tmp("b.svg"), ma = tmp("ma.json"), mb = tmp("mb.json");
    const std::string args = "pack --input " + kSamples + "/triangle.json --rule barycentric --levels 2 --color-by stage";
    ASSERT_EQ(run("--manifest " + ma + " " + args + " --svg " + a).code, 0);
    ASSERT_EQ(run("--manifest " + mb + " " + args + " --svg " + b).code, 0);
    EXPECT_EQ(subdiv::read_file(a), subdiv::read_file(b));
    const auto ja = json::parse(subdiv::read_file(ma)), jb = json::parse(subdiv::read_file(mb));
    EXPECT_EQ(ja["output_hashes"]["stdout"], jb["output_hashes"]["stdout"]);
    EXPECT_EQ(ja["output_hashes"][a], jb["output_hashes"][b]);
    EXPECT_EQ(ja["input_hashes"].size(), 1u);
    EXPECT_EQ(ja["tool_version"], jb["tool_version"]);
    EXPECT_EQ(run("pack --input " + kSamples + "/annulus_6.json").code, 2);
}

TEST(Cli, VerifySuites) {
    const auto r = run("--threads 2 verify --suite paper");
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["results"].size(), 8u);
    for (const auto& c : j["results"]) EXPECT_TRUE(c["passed"].get<bool>()) << c["name"];
    EXPECT_EQ(run("verify --suite oracle").code, 0);
    EXPECT_EQ(run("verify --suite packing").code, 0);
    EXPECT_EQ(run("verify --suite nonsense").code, 1);
    // same seed, same report
    EXPECT_EQ(run("verify --suite oracle").out, run("verify --suite oracle").out);
}

TEST(Cli, CriterionLayersAxiom) {
    auto c = run("criterion --rule hexagonal --levels 1 --mode vertex");
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_GT(json::parse(c.out)["M"].get<double>(), 0.0);
    auto l = run("layers --rule barycentric --vertex 0 --stages 3");
    ASSERT_EQ(l.code, 0) << l.err;
    EXPECT_NEAR(json::parse(l.out)["bound"].get<double>(), 1.0 / 6 + 1.0 / 12 + 1.0 / 24, 1e-6);
    auto a = run("axiom --which 2 --rule hexagonal --stages 2");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(json::parse(a.out)["layered"].size(), 2u);
    EXPECT_EQ(run("axiom --which 3 --rule hexagonal").code, 1);
    EXPECT_EQ(run("layers --rule barycentric --vertex 1 --stages 2").code, 2); // boundary vertex
}
