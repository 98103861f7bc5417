#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "invset/exactnum.hpp"
#include "invset_cli/dispatch.hpp"
#include "invset_cli/record.hpp"

using namespace invset;
using namespace invset::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, Environment env = {}) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err, env);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

RunRecord only_record(const Run& r) {
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.size(), 1u) << r.out;
  return from_json_line(ls.at(0));
}

bool has_flag(const RunRecord& r, const std::string& f) {
  return std::find(r.flags.begin(), r.flags.end(), f) != r.flags.end();
}

const ResultValue& result(const RunRecord& r, const std::string& key) {
  for (const auto& [k, v] : r.results)
    if (k == key) return v;
  throw std::out_of_range("no result " + key);
}

std::string param(const RunRecord& r, const std::string& key) {
  for (const auto& [k, v] : r.parameters)
    if (k == key) return v;
  return {};
}

}  // namespace

TEST(Cli, GoldenPadicRecord) {
  const auto r = run({"padic", "dist", "--p", "2", "--x", "7", "--y", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out,
            "{\"command\":\"padic dist\",\"parameters\":{\"p\":\"2\",\"x\":\"7/1\",\"y\":\"3/1\"},"
            "\"results\":{\"distance\":{\"exact\":\"1/4\",\"decimal\":\"0.250000000000000000000000000000\"},"
            "\"ord\":{\"exact\":\"2/1\",\"decimal\":\"2.000000000000000000000000000000\"}},"
            "\"flags\":[],\"seed\":null,\"version\":\"" + version() + "\"}\n");
}

TEST(Cli, GoldenChshRecord) {
  const auto rec = only_record(run({"chsh", "run", "--cos", "45/64", "--N", "8", "--signs", "++-"}));
  EXPECT_EQ(result(rec, "S").exact, "45/16");
  EXPECT_EQ(result(rec, "C11").exact, "-45/64");
  EXPECT_EQ(result(rec, "classical_bound").exact, "2/1");
  EXPECT_TRUE(has_flag(rec, "BELL_VIOLATED"));
}

TEST(Cli, GoldenPbrRecord) {
  const auto rec = only_record(
      run({"pbr", "eval", "--theta", "1/2 pi", "--offset", "cos=1/2", "--beta", "cos=3/4"}));
  EXPECT_EQ(result(rec, "X").exact, "3/4");
  EXPECT_EQ(result(rec, "Z").exact, "-11/8 + 1/8*sqrt(21)");
  EXPECT_EQ(result(rec, "cos_alpha_minus_beta").exact, "3/8 - 1/8*sqrt(21)");
  EXPECT_EQ(param(rec, "cos_alpha_minus_beta.kind"), "irrational");
  EXPECT_TRUE(has_flag(rec, "INCOMPATIBILITY_CERTIFIED"));
  EXPECT_TRUE(has_flag(rec, "X_N_BIT"));
  EXPECT_FALSE(has_flag(rec, "SIMULTANEOUS_N_BIT"));
}

TEST(Cli, ExactStringsParseBackToTheirDecimals) {
  const std::vector<std::vector<std::string>> invocations{
      {"pbr", "eval", "--theta", "1/2 pi", "--offset", "cos=1/2", "--beta", "cos=3/4"},
      {"pbr", "eval", "--theta", "1/3 pi", "--alpha", "1/4 pi", "--beta", "1/6 pi"},
      {"chsh", "run", "--cos", "45/64,-3/8,1/2,7/16", "--N", "8"},
      {"padic", "embed", "--p", "3", "--x", "-2/5", "--depth", "12"},
      {"niven", "classify", "--phi", "2/3 pi"},
      {"qubit", "build", "--weights", "1/2,3/4,1/4", "--N", "3", "--form", "A", "--convert"},
      {"mz", "run", "--mode", "momentum", "--phi", "cos=5/8", "--N", "4"},
  };
  for (const auto& args : invocations) {
    const auto r = run(args);
    ASSERT_EQ(r.code, kExitOk) << args[0] << " " << args[1] << ": " << r.err;
    const auto rec = only_record(r);
    int checked = 0;
    for (const auto& [key, v] : rec.results) {
      if (!v.exact) continue;
      const auto value = v.exact->find("sqrt") == std::string::npos
                             ? QuadExtElement(Rational::parse(*v.exact))
                             : QuadExtElement::parse(*v.exact);
      EXPECT_EQ(value.str(), QuadExtElement::parse(*v.exact).str());
      EXPECT_EQ(value.decimal(kRecordDecimals), v.decimal) << key;
      ++checked;
    }
    EXPECT_GT(checked, 0) << args[0];
  }
}

TEST(Cli, RecordJsonRoundTrip) {
  const auto r = run({"--seed", "0x2a", "dynamics", "dirac", "--N", "4", "--ticks", "5", "--rate", "3"});
  ASSERT_EQ(r.code, kExitOk);
  const auto line = lines(r.out).at(0);
  const auto rec = from_json_line(line);
  EXPECT_EQ(to_json_line(rec), line);
  EXPECT_EQ(rec.seed, "0x000000000000002a");
  EXPECT_FALSE(rec.artifacts.empty());
  const auto parsed = nlohmann::ordered_json::parse(line);
  std::vector<std::string> keys;
  for (const auto& [k, v] : parsed.items()) keys.push_back(k);
  const std::vector<std::string> expected{"command", "parameters", "results", "artifacts", "flags", "seed", "version"};
  EXPECT_EQ(keys, expected);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"padic", "dist", "--p", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"--N", "0", "selftest"}).code, kExitUsage);
  EXPECT_EQ(run({"padic", "dist", "--p", "4", "--x", "1", "--y", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"--version"}).code, kExitOk);
  EXPECT_EQ(run({"mz", "run", "--mode", "momentum", "--phi", "3/8 pi"}).code, kExitRefusal);
  EXPECT_EQ(run({"mz", "run", "--mode", "position", "--phi", "1/3 pi"}).code, kExitRefusal);
  EXPECT_EQ(run({"chsh", "run", "--cos", "45/64", "--query", "01", "--z", "0"}).code, kExitRefusal);
  EXPECT_EQ(run({"chsh", "run", "--cos", "1/3"}).code, kExitRefusal);
  EXPECT_EQ(run({"chsh", "run", "--cos", "45/64", "--query", "01", "--z", "1"}).code, kExitOk);
}

TEST(Cli, RefusalsWriteFlaggedPartialRecords) {
  const auto wrong = run({"chsh", "run", "--cos", "45/64", "--query", "01", "--z", "0"});
  const auto rec = only_record(wrong);
  EXPECT_EQ(rec.command, "chsh query");
  EXPECT_TRUE(has_flag(rec, "WRONG_SAMPLE_SPACE"));
  EXPECT_TRUE(rec.results.empty());
  EXPECT_FALSE(wrong.err.empty());

  const auto inconsistent = only_record(run({"mz", "run", "--mode", "momentum", "--phi", "3/8 pi"}));
  EXPECT_TRUE(has_flag(inconsistent, "INCONSISTENT_HISTORY"));

  const auto small = run({"chsh", "run", "--cos", "45/64", "--N", "7", "--signs", "++-"});
  EXPECT_EQ(small.code, kExitUsage);
  EXPECT_TRUE(has_flag(only_record(small), "NOT_REPRESENTABLE"));
}

TEST(Cli, SeedPrecedence) {
  const std::vector<std::string> args{"dynamics", "ruban", "--p", "2", "--samples", "1000", "--depth", "8"};
  const auto dflt = only_record(run(args));
  EXPECT_EQ(dflt.seed, "0x0000000000000000");
  EXPECT_EQ(param(dflt, "seed_source"), "default");

  const auto env = only_record(run(args, Environment{"0x9"}));
  EXPECT_EQ(env.seed, "0x0000000000000009");
  EXPECT_EQ(param(env, "seed_source"), "env");

  auto with_flag = args;
  with_flag.insert(with_flag.begin(), {"--seed", "0x11"});
  const auto flag = only_record(run(with_flag, Environment{"0x9"}));
  EXPECT_EQ(flag.seed, "0x0000000000000011");
  EXPECT_EQ(param(flag, "seed_source"), "flag");

  EXPECT_EQ(run(args, Environment{"not-hex"}).code, kExitUsage);
}

TEST(Cli, SameSeedSameBytes) {
  const std::vector<std::string> a{"--seed", "0xabc", "dynamics", "dirac", "--N", "6", "--ticks", "17"};
  EXPECT_EQ(run(a).out, run(a).out);
  auto b = a;
  b[1] = "0xabd";
  EXPECT_NE(run(a).out, run(b).out);
  const std::vector<std::string> s{"--seed", "0x5", "selftest"};
  EXPECT_EQ(run(s).out, run(s).out);
}

TEST(Cli, TsirelsonScanIsThreadIndependent) {
  const auto one = run({"--seed", "0x3", "--trials", "20000", "chsh", "scan-tsirelson", "--threads", "1"});
  const auto four = run({"--seed", "0x3", "--trials", "20000", "chsh", "scan-tsirelson", "--threads", "4"});
  ASSERT_EQ(one.code, kExitOk);
  EXPECT_EQ(result(only_record(one), "max_S").exact, result(only_record(four), "max_S").exact);
  EXPECT_TRUE(has_flag(only_record(one), "BELL_VIOLATED"));
  EXPECT_TRUE(has_flag(only_record(one), "WITHIN_TSIRELSON"));
}

TEST(Cli, SelftestPasses) {
  const auto r = run({"--seed", "0x1", "selftest"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.size(), 11u);
  for (const auto& l : ls) {
    const auto rec = from_json_line(l);
    EXPECT_EQ(rec.command, "selftest");
    EXPECT_TRUE(has_flag(rec, "PASS")) << l;
  }
}

TEST(Cli, CsvFormat) {
  const auto r = run({"--format", "csv", "chsh", "run", "--cos", "45/64", "--signs", "++-"});
  ASSERT_EQ(r.code, kExitOk);
  const auto ls = lines(r.out);
  ASSERT_GT(ls.size(), 1u);
  EXPECT_EQ(ls[0], csv_header());
  EXPECT_EQ(ls[0], "command,kind,key,exact,decimal,flags,seed,version");
  EXPECT_NE(std::find(ls.begin(), ls.end(), "chsh run,result,S,45/16,2.812500000000000000000000000000,BELL_VIOLATED,,"
                                                + version()),
            ls.end());
  const auto multi = run({"--format", "csv", "--seed", "0x1", "selftest"});
  const auto rows = lines(multi.out);
  EXPECT_GT(rows.size(), 11u);
  EXPECT_EQ(rows[0], csv_header());
  EXPECT_EQ(std::count(rows.begin(), rows.end(), csv_header()), 1);
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "invset_cli_out_test.jsonl";
  std::filesystem::remove(path);
  const auto r = run({"--out", path.string(), "niven", "classify", "--phi", "1/3 pi"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  const auto rec = from_json_line(line);
  EXPECT_EQ(result(rec, "cos").exact, "1/2");
  std::filesystem::remove(path);
}

TEST(Cli, QubitCommands) {
  const auto one = only_record(run({"qubit", "build", "--cos", "1/2", "--phase", "1", "--N", "3"}));
  EXPECT_EQ(result(one, "born_probability").exact, "3/4");
  ASSERT_FALSE(one.artifacts.empty());
  EXPECT_EQ(one.artifacts[0].second, "01111110");
  const auto corr = only_record(run({"qubit", "correlate", "--cos", "1/2", "--N", "3", "--anti"}));
  EXPECT_EQ(result(corr, "correlation").exact, "-1/2");
  EXPECT_EQ(run({"qubit", "build", "--weights", "1/2,1/2,1/4", "--N", "3", "--convert"}).code, kExitUsage);
}
