#include <gtest/gtest.h>

#include <sstream>

#include "heights/cli.hpp"
#include "heights/keyfile.hpp"

using namespace heights;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  const Result r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::string sample(const std::string& name) { return std::string(HEIGHTS_SAMPLES_DIR) + "/" + name; }

double lo(const json& v) { return std::stod(v["lo"].get<std::string>()); }
double hi(const json& v) { return std::stod(v["hi"].get<std::string>()); }

}  // namespace

TEST(Cli, MahlerLehmer) {
  const json j = run_json({"mahler", "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"});
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "mahler");
  EXPECT_FALSE(j["exact"].get<bool>());
  EXPECT_GE(lo(j["value"]), 1.17);
  EXPECT_LE(hi(j["value"]), 1.18);
  EXPECT_TRUE(j["value"]["lo"].is_string());
}

TEST(Cli, SurdExact) {
  const json j = run_json({"surd", "5/6", "--root", "3"});
  EXPECT_TRUE(j["exact"].get<bool>());
  EXPECT_EQ(j["value"]["m_infinity"], "5");
  EXPECT_EQ(j["value"]["degree"], 3);
}

TEST(Cli, DobrowolskiGuard) {
  const json j = run_json({"dobrowolski", "--degree", "2"});
  EXPECT_EQ(lo(j["value"]), 1.0);
  EXPECT_EQ(hi(j["value"]), 1.0);
}

TEST(Cli, OtherSubcommands) {
  EXPECT_EQ(run_json({"padic", "x^2-2x-4"})["value"], json::array({"2"}));
  EXPECT_EQ(run_json({"padic", "x^2-2x-4", "--prime", "3"})["value"], true);
  EXPECT_EQ(run_json({"cyclo", "x^2+x+1"})["value"], true);
  EXPECT_EQ(run_json({"roots", "x^2+1"})["roots"].size(), 2u);
  EXPECT_EQ(run_json({"roots", "x^4+2x^2+1"})["roots"][0]["multiplicity"], 2);
  const json h = run_json({"height", "x^2-2x-4"});
  EXPECT_LE(lo(h["value"]), 2.0);
  EXPECT_GE(hi(h["value"]), 2.0);
  EXPECT_EQ(run_json({"field-min", "--disc", "5", "--bound", "8"})["uvw"], json::array({1, 1, 2}));
  EXPECT_EQ(run_json({"surd-op", "[2^1/2] * [3]^(1/3)"})["value"]["degree"], 6);
  EXPECT_EQ(run_json({"surd-op", "[2^3/2*3^-1]^(2) / [3]"})["value"]["coset"], "2^3 * 3^-3");
}

TEST(Cli, Searches) {
  const json a = run_json({"minf-search", sample("golden.pool")});
  EXPECT_TRUE(a["pinned"].get<bool>());
  EXPECT_EQ(a["lower"], "2");
  EXPECT_EQ(a["witness"].size(), 2u);
  const json b = run_json({"minf-search", sample("four.pool")});
  EXPECT_EQ(b["witness"], json::array({"2", "2"}));
  const json c = run_json({"m1-search", sample("four.pool"), "--max-length", "1"});
  EXPECT_EQ(c["witness"], json::array({"4"}));
  EXPECT_EQ(c["inputs"]["max_length"], 1);
  const json d = run_json({"minf-search", sample("four.pool"), "--target", "8"});
  EXPECT_EQ(d["witness"], json::array({"2", "2", "2"}));
}

TEST(Cli, Framework) {
  const json j = run_json({"framework", sample("z5.group")});
  EXPECT_EQ(j["rho_1"]["(1)"], "4");
  EXPECT_EQ(j["rho_inf"]["(1)"], "2");
  EXPECT_EQ(j["class"], "plain");
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c["name"];
}

TEST(Cli, LehmerScan) {
  const json j = run_json({"lehmer-scan", "--degree", "4", "--coef-bound", "1"});
  // Smallest measure > 1 for quartics with coefficients in {-1,0,1}: the
  // largest root of x^4-x^3-1 family is ~1.3803 (Salem/Pisot-type minimum).
  EXPECT_GT(lo(j["value"]), 1.0);
  EXPECT_LT(hi(j["value"]), 1.5);
  EXPECT_GT(j["symmetry_classes"].get<long>(), 0);
  EXPECT_LT(j["symmetry_classes"].get<long>(), j["scanned"].get<long>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"mahler", "x^2+"}).code, 2);
  EXPECT_NE(run({"mahler", "x^2+"}).err.find("position"), std::string::npos);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"roots", "7"}).code, 2);
  EXPECT_EQ(run({"padic", "x^2-2", "--prime", "4"}).code, 2);
  EXPECT_EQ(run({"surd", "0"}).code, 2);
  EXPECT_EQ(run({"framework", "/nonexistent/file"}).code, 2);
  EXPECT_EQ(run({"mahler", "x-2", "--tol", "-1"}).code, 2);
  EXPECT_EQ(run({"field-min", "--disc", "5", "--bound", "0"}).code, 2);
  EXPECT_EQ(run({"mahler", "x-2"}).code, 0);
}

TEST(Cli, JsonRoundTripAndHumanAgreement) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"mahler", "x^3-x-1"}, {"height", "3x^2-2"}, {"surd", "-8/9", "--root", "2"},
        {"dobrowolski", "--degree", "10"}}) {
    const json first = run_json(args);
    // Re-run from the echoed inputs.
    std::vector<std::string> again{first["command"].get<std::string>()};
    const json& in = first["inputs"];
    if (in.contains("poly")) again.push_back(in["poly"].get<std::string>());
    if (in.contains("rational")) again.insert(again.end(), {in["rational"].get<std::string>(), "--root",
                                                            std::to_string(in["root"].get<long>())});
    if (in.contains("degree")) again.insert(again.end(), {"--degree", std::to_string(in["degree"].get<long>()),
                                                          "--constant", in["constant"].get<std::string>()});
    again.insert(again.end(), {"--tol", in["tol"].get<std::string>()});
    const json second = run_json(again);
    EXPECT_EQ(first["value"], second["value"]);

    const Result human = run(args);
    ASSERT_EQ(human.code, 0);
    const json& v = first["value"];
    const std::string probe = v.contains("lo") ? v["lo"].get<std::string>() : v["m_infinity"].get<std::string>();
    EXPECT_NE(human.out.find(probe), std::string::npos) << human.out;
  }
}

TEST(Keyfile, Statements) {
  const json doc = parse_keyfile("# comment\na = 1\nb = [1,\n  2] # trailing\nc = \"x # not a comment\"\n");
  EXPECT_EQ(doc["a"], 1);
  EXPECT_EQ(doc["b"], json::array({1, 2}));
  EXPECT_EQ(doc["c"], "x # not a comment");
  EXPECT_THROW(parse_keyfile("a = 1\na = 2\n"), ParseError);
  EXPECT_THROW(parse_keyfile("a = [1,\n"), ParseError);
  EXPECT_THROW(parse_keyfile("junk\n"), ParseError);
  EXPECT_THROW(parse_keyfile("a =\n"), ParseError);
}

TEST(Keyfile, GroupLoading) {
  const HeightedGroup G = load_group(parse_keyfile(read_text_file(sample("z2xz4.group"))));
  EXPECT_EQ(G.group.order(), 8u);
  EXPECT_EQ(classify_height(G), HeightClass::strong);
  EXPECT_THROW(load_group(parse_keyfile("cyclic = [3]\nheight = {\"(0)\": 1, \"(1)\": 2}\n")), DomainError);
  EXPECT_THROW(load_group(parse_keyfile("cyclic = [3]\nheight = {\"(0)\": 1, \"(1)\": 2, \"(2)\": 3}\n")),
               DomainError);  // rho(a) != rho(a^-1)
  EXPECT_THROW(load_group(parse_keyfile("cyclic = [3]\nheight = {\"(5)\": 1}\n")), ParseError);
  EXPECT_THROW(load_group(parse_keyfile("height = {}\n")), ParseError);
}

TEST(Keyfile, PoolLoading) {
  const PoolSpec s = load_pool_spec(parse_keyfile(read_text_file(sample("golden.pool"))));
  EXPECT_EQ(s.kind, "quad");
  EXPECT_EQ(s.disc, 5);
  EXPECT_EQ(s.target, "1+√5");
  EXPECT_FALSE(pool_quads(s).empty());
  EXPECT_THROW(load_pool_spec(parse_keyfile("kind = \"quad\"\nmembers = [\"1\"]\n")), ParseError);
  EXPECT_THROW(load_pool_spec(parse_keyfile("kind = \"rational\"\nmembers = []\n")), ParseError);
  EXPECT_THROW(load_pool_spec(parse_keyfile("kind = \"rational\"\nmembers = [\"2\"]\nbogus = 1\n")), ParseError);
}
