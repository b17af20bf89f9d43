#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sparsekit/cli.hpp"
#include "sparsekit/dictionary.hpp"
#include "sparsekit/experiments.hpp"

using namespace sparsekit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sparsekit_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 1") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"noisy", "--seed", "1"}).code == kExitUsage);
    CHECK(run({"noiseless"}).code == kExitUsage);
    CHECK(run({"noiseless", "--seed", "1", "--bogus"}).code == kExitUsage);
    CHECK(run({"noiseless", "--seed", "1", "--dict", "fourier"}).code == kExitUsage);
    CHECK(run({"noiseless", "--seed", "1", "--algorithms", "bp,lasso"}).code == kExitUsage);
    CHECK(run({"noiseless", "--seed", "1", "--d", "16", "--s-max", "20"}).code == kExitUsage);
    CHECK(run({"bounds", "--alpha", "0.9"}).code == kExitUsage);
  }

  TEST_CASE("help exits with 0") {
    const auto r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("noiseless") != std::string::npos);
  }

  TEST_CASE("coherence") {
    const auto r = run({"coherence", "--d", "128", "--dict", "dirac-dct"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "0.124991\n");
    CHECK(run({"coherence", "--d", "8"}).out == "0.490393\n");
    CHECK(run({"coherence", "--dict", "dirac-dct-random"}).code == kExitUsage);
    const auto rnd = run({"coherence", "--d", "16", "--dict", "dirac-dct-random", "--seed", "4"});
    CHECK(rnd.code == kExitOk);
    const double mu = std::stod(rnd.out);
    CHECK(mu > coherence(build_dirac_dct(16)));
    CHECK(mu < 1.0);
  }

  TEST_CASE("noiseless writes the full default grid") {
    const auto path = scratch("grid.csv");
    const auto r = run({"noiseless", "--d", "128", "--dict", "dirac-dct", "--trials", "2", "--seed", "7", "--out",
                        path.string(), "--jobs", "2"});
    REQUIRE(r.code == kExitOk);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(count_lines(text.str()) == 1 + 3 * 24 * 11);
    std::istringstream parse(text.str());
    const auto grid = experiments::read_csv(parse);
    CHECK(grid.cells.size() == 3 * 24 * 11);
    CHECK(grid.find(48, 1.0, "THR", "success"));
  }

  TEST_CASE("noiseless to stdout with a subset of algorithms") {
    const auto r = run({"noiseless", "--d", "16", "--trials", "3", "--seed", "1", "--s-max", "4", "--alpha-steps", "2",
                        "--algorithms", "omp,thr", "--jobs", "1"});
    REQUIRE(r.code == kExitOk);
    CHECK(count_lines(r.out) == 1 + 2 * 2 * 2);
    CHECK(r.out.find(",BP,") == std::string::npos);
  }

  TEST_CASE("noisy") {
    const auto r = run({"noisy", "--d", "32", "--trials", "3", "--seed", "1", "--snr", "16", "--s-max", "6",
                        "--alpha-steps", "3"});
    REQUIRE(r.code == kExitOk);
    CHECK(count_lines(r.out) == 1 + 2 * 3 * 3);
    CHECK(r.out.find("noisy-snr16,dirac-dct,32,64,2,0.75,OMP,partial_recovery,") != std::string::npos);
    CHECK(r.out.find("THEORY,recoverable_fraction") != std::string::npos);
    CHECK(run({"noisy", "--seed", "1", "--snr", "16", "--algorithms", "bp"}).code == kExitUsage);
    CHECK(run({"noisy", "--seed", "1", "--snr", "-3"}).code == kExitUsage);
  }

  TEST_CASE("custom dictionary from csv") {
    const auto path = scratch("dict.csv");
    write_dictionary_csv(Dictionary(DenseMatrix::identity(8), DictionaryKind::Custom), path.string());
    const auto r = run({"noiseless", "--dict-csv", path.string(), "--trials", "4", "--seed", "2", "--s-max", "8",
                        "--s-step", "3", "--alpha-steps", "2"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("custom,8,8,") != std::string::npos);
    std::size_t perfect = 0;
    for (auto pos = r.out.find(",success,1,4,2\n"); pos != std::string::npos; pos = r.out.find(",success,1,4,2\n", pos + 1))
      ++perfect;
    CHECK(perfect == 3 * 2 * 3);
    CHECK(run({"coherence", "--dict-csv", path.string()}).out == "0\n");
  }

  TEST_CASE("runtime failures exit with 2") {
    const auto r = run({"noiseless", "--seed", "1", "--trials", "1", "--out", "/nonexistent-dir/x.csv", "--s-max",
                        "2", "--alpha-steps", "1", "--d", "8", "--alpha-min", "1"});
    CHECK(r.code == kExitRuntime);
    CHECK(run({"coherence", "--dict-csv", "/nonexistent-dir/d.csv"}).code == kExitRuntime);
  }

  TEST_CASE("bounds table") {
    const auto r = run({"bounds", "--S", "1", "--alpha", "0.5", "--m", "1", "--d", "128"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("worst_case_omp_bp") != std::string::npos);
    CHECK(r.out.find("noiseless_full_support") != std::string::npos);
    CHECK(r.out.find("0.0078125") != std::string::npos);

    const auto noisy = run({"bounds", "--S", "32", "--alpha", "0.75", "--snr", "16"});
    REQUIRE(noisy.code == kExitOk);
    CHECK(noisy.out.find("noisy_coefficient_floor") != std::string::npos);
    CHECK(noisy.out.find("recoverable_count 8 of 32") != std::string::npos);

    const auto flat = run({"bounds", "--S", "4", "--alpha", "1"});
    CHECK(flat.code == kExitOk);
    CHECK(flat.out.find("not applicable") != std::string::npos);
    CHECK(run({"bounds", "--S", "4", "--alpha", "1.5"}).code == kExitUsage);
    CHECK(run({"bounds", "--S", "4", "--alpha", "0.9", "--m", "0.2"}).code == kExitUsage);
  }
}
