#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "charfock/cli.hpp"
#include "charfock/io.hpp"
#include "charfock/rowcon.hpp"
#include "helpers.hpp"

using namespace charfock;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("charfock_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("examples 5.2") {
    const Run r = run_cli({"examples", "--which", "5.2"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("0.816496580928") != std::string::npos);
  }

  TEST_CASE("co-isometry of the Popescu colligation") {
    Rng rng(81);
    const std::string path =
        write_temp("rowcon.json", rowcon_to_json(random_row_contraction(rng, 2, 2, 0.8)).dump());
    CHECK(run_cli({"check", "coisom", "-i", path}).code == cli::kOk);
    CHECK(run_cli({"charfn", "-i", path, "-N", "3", "--oracle"}).code == cli::kOk);
  }

  TEST_CASE("bad input exits 2") {
    const std::string path = write_temp("broken.json", "{\"dim\": 2,");
    const Run r = run_cli({"charfn", "-i", path});
    CHECK(r.code == cli::kInvalidInput);
    CHECK_FALSE(r.err.empty());
    CHECK(run_cli({"charfn", "-i", "/nonexistent.json"}).code == cli::kInvalidInput);
    CHECK(run_cli({"examples", "--which", "9.9"}).code == cli::kInvalidInput);
  }

  TEST_CASE("zero cases is a vacuous pass") {
    CHECK(run_cli({"proptest", "--suite", "all", "--cases", "0"}).code == cli::kOk);
  }

  TEST_CASE("reports are reproducible and the environment seed wins") {
    const std::vector<std::string> args{"proptest", "--suite", "rowcon", "--cases", "3", "--seed", "5", "--format", "json"};
    const Run a = run_cli(args);
    const Run b = run_cli(args);
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);

    ::setenv("CHARFOCK_SEED", "5", 1);
    std::vector<std::string> other = args;
    other[6] = "11";
    const Run c = run_cli(other);
    ::unsetenv("CHARFOCK_SEED");
    CHECK(c.out == a.out);
    CHECK(run_cli(other).out != a.out);
  }

  TEST_CASE("coincidence of different Blaschke liftings is refuted") {
    const std::string left = write_temp("left.json", R"({"E": {"dim": 2, "arity": 1, "blocks": [{"rows": 2, "cols": 2,
        "data": [[0.5, 0], [0, 0], [0.5, 0], [0.3, 0]]}]}, "split": 1})");
    const std::string right = write_temp("right.json", R"({"E": {"dim": 2, "arity": 1, "blocks": [{"rows": 2, "cols": 2,
        "data": [[0.5, 0], [0, 0], [0.4, 0], [-0.2, 0]]}]}, "split": 1})");
    CHECK(run_cli({"coincide", "--left", left, "--right", right}).code == cli::kCheckFailed);
    CHECK(run_cli({"coincide", "--left", left, "--right", left}).code == cli::kOk);
    CHECK(run_cli({"lift-charfn", "-i", left, "--method", "both"}).code == cli::kOk);
  }
}
