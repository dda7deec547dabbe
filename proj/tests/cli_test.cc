#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "multirank/cli.hpp"

namespace multirank {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "multirank");
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void Spit(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

// Fresh scratch directory per test case.
class Scratch {
 public:
  explicit Scratch(const std::string& name)
      : dir_(fs::temp_directory_path() / ("multirank_cli_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string operator/(const std::string& file) const { return (dir_ / file).string(); }

 private:
  fs::path dir_;
};

TEST_CASE("simulate then fit") {
  Scratch dir("simfit");
  const Run sim = Cli({"simulate", "--n", "100", "--m", "5000", "--types", "5",
                      "--qmin", "0.5", "--qmax", "1", "--seed", "7",
                      "--out-prefix", dir / "sim"});
  REQUIRE(sim.code == kExitOk);
  CHECK(Slurp(dir / "sim.csv").starts_with("winner,loser,type\n"));
  const auto truth = nlohmann::json::parse(Slurp(dir / "sim.truth.json"));
  CHECK(truth["scores"].size() == 100);
  CHECK(truth["valences"].size() == 5);
  CHECK(truth["stances"].size() == 5000);

  const Run fit = Cli({"fit", dir / "sim.csv", "--out", dir / "fit.json"});
  CHECK(fit.code == kExitOk);
  const auto doc = nlohmann::json::parse(Slurp(dir / "fit.json"));
  CHECK(doc["diagnostics"]["converged"] == true);
  CHECK(doc["individuals"].size() == 100);
  CHECK(Slurp(dir / "fit.json.individuals.csv").starts_with("label,score,rank\n"));
  CHECK(Slurp(dir / "fit.json.types.csv").starts_with("type,valence\n"));

  // Without --out the JSON goes to stdout.
  const Run piped = Cli({"fit", dir / "sim.csv"});
  CHECK(piped.code == kExitOk);
  CHECK(piped.out == Slurp(dir / "fit.json"));
}

TEST_CASE("fit flags") {
  Scratch dir("flags");
  REQUIRE(Cli({"simulate", "--n", "20", "--m", "400", "--types", "3", "--seed", "3",
               "--out-prefix", dir / "d"})
              .code == kExitOk);
  const Run plain = Cli({"fit", dir / "d.csv"});
  const Run flipped = Cli({"fit", dir / "d.csv", "--flip"});
  REQUIRE(plain.code == kExitOk);
  REQUIRE(flipped.code == kExitOk);
  const auto a = nlohmann::json::parse(plain.out);
  const auto b = nlohmann::json::parse(flipped.out);
  CHECK(a["diagnostics"]["flipped"] != b["diagnostics"]["flipped"]);
  CHECK(a["individuals"][0]["score"].get<double>() ==
        doctest::Approx(-b["individuals"][0]["score"].get<double>()));

  // Unpinned ML may not settle, in which case the result is still written.
  const Run ml = Cli({"fit", dir / "d.csv", "--mode", "ml", "--tol", "1e-6",
                      "--seed", "4", "--max-iter", "200"});
  CHECK((ml.code == kExitOk || ml.code == kExitNotConverged));
  CHECK(nlohmann::json::parse(ml.out)["diagnostics"]["mode"] == "ml");

  const Run capped = Cli({"fit", dir / "d.csv", "--max-iter", "1", "--out",
                          dir / "capped.json"});
  CHECK(capped.code == kExitNotConverged);
  CHECK(fs::exists(dir / "capped.json"));
  CHECK(nlohmann::json::parse(Slurp(dir / "capped.json"))["diagnostics"]["converged"] ==
        false);
}

TEST_CASE("input errors exit 2") {
  Scratch dir("input");
  Spit(dir / "loop.csv", "winner,loser,type\nA,B,x\nA,A,x\n");
  const Run loop = Cli({"fit", dir / "loop.csv"});
  CHECK(loop.code == kExitInputError);
  CHECK(loop.err.find("line 3") != std::string::npos);

  Spit(dir / "header.csv", "a,b,c\nA,B,x\n");
  CHECK(Cli({"fit", dir / "header.csv"}).code == kExitInputError);
  Spit(dir / "empty.csv", "winner,loser,type\n");
  CHECK(Cli({"fit", dir / "empty.csv"}).code == kExitInputError);
  CHECK(Cli({"fit", dir / "missing.csv"}).code == kExitInputError);
  CHECK(Cli({"compare", dir / "loop.csv"}).code == kExitInputError);

  CHECK(Cli({"simulate", "--qmin", "0.8", "--qmax", "0.2", "--out-prefix",
             dir / "bad"})
            .code == kExitInputError);
}

TEST_CASE("usage errors exit 64") {
  CHECK(Cli({}).code == kExitUsage);
  CHECK(Cli({"frobnicate"}).code == kExitUsage);
  CHECK(Cli({"fit"}).code == kExitUsage);
  CHECK(Cli({"fit", "x.csv", "--bogus"}).code == kExitUsage);
  CHECK(Cli({"fit", "x.csv", "--mode", "bayes"}).code == kExitUsage);
  CHECK(Cli({"fit", "x.csv", "--tol", "-1"}).code == kExitUsage);
  CHECK(Cli({"simulate"}).code == kExitUsage);
  CHECK(Cli({"simulate", "--n", "1", "--out-prefix", "p"}).code == kExitUsage);
  CHECK(Cli({"benchmark", "--instances", "0"}).code == kExitUsage);
  const Run help = Cli({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs") {
  Scratch dir("determinism");
  for (const char* tag : {"a", "b"}) {
    const std::string p = std::string(tag);
    REQUIRE(Cli({"simulate", "--n", "30", "--m", "800", "--types", "4", "--qmin",
                 "0", "--seed", "11", "--out-prefix", dir / p})
                .code == kExitOk);
    REQUIRE(Cli({"fit", dir / (p + ".csv"), "--seed", "5", "--out",
                 dir / (p + ".fit.json")})
                .code == kExitOk);
    REQUIRE(Cli({"compare", dir / (p + ".csv"), "--out", dir / (p + ".cmp.csv")})
                .code == kExitOk);
  }
  for (const char* suffix : {".csv", ".truth.json", ".fit.json",
                             ".fit.json.individuals.csv", ".fit.json.types.csv",
                             ".cmp.csv"}) {
    CHECK(Slurp(dir / (std::string("a") + suffix)) ==
          Slurp(dir / (std::string("b") + suffix)));
  }
  CHECK(Slurp(dir / "a.cmp.csv").starts_with("label,rank_multimodal,rank_baseline"));
}

TEST_CASE("benchmark subcommand") {
  Scratch dir("bench");
  const Run a = Cli({"benchmark", "--instances", "1", "--seed", "1", "--threads",
                     "1", "--out", dir / "a.csv"});
  REQUIRE(a.code == kExitOk);
  const Run b = Cli({"benchmark", "--instances", "1", "--seed", "1", "--threads",
                     "2", "--out", dir / "b.csv"});
  REQUIRE(b.code == kExitOk);
  CHECK(Slurp(dir / "a.csv") == Slurp(dir / "b.csv"));
  CHECK(Slurp(dir / "a.csv.txt") == a.out);
  CHECK(Slurp(dir / "a.csv").starts_with(
      "m,t,q_min,q_max,instances,r2_multi,r2_base,se_multi,se_base\n"));
  CHECK(a.out.find("5000   5") != std::string::npos);
}

}  // namespace
}  // namespace multirank
