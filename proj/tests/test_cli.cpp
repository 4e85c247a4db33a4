#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "nmsqueeze_cli/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = nmsqueeze::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  REQUIRE(r.status == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_SUITE("matrices") {
  TEST_CASE("n=4, lambda=0.3 reports detN = cosh^2") {
    const auto doc = run_json({"matrices", "--n", "4", "--lambda", "0.3"});
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["command"] == "matrices");
    CHECK(std::abs(doc["det_n"].get<double>() - std::pow(std::cosh(0.3), 2)) < 1e-12);
    CHECK(doc["f"].size() == 4);
  }

  TEST_CASE("n=2, lambda=0 gives identity and zero blocks") {
    const auto doc = run_json({"matrices", "--n", "2", "--lambda", "0"});
    for (const char* name : {"lambda_matrix", "exp_lambda_a", "gram", "gram_inverse", "n_matrix", "n_inverse"}) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(std::abs(doc[name][i][j].get<double>() - (i == j ? 1.0 : 0.0)) < 1e-15);
      }
    }
    for (const char* name : {"f", "e", "d"}) {
      for (const auto& row : doc[name]) {
        for (const auto& x : row) CHECK(std::abs(x.get<double>()) < 1e-15);
      }
    }
    CHECK(doc["prefactor"].get<double>() == doctest::Approx(1.0));
  }

  TEST_CASE("n=3, lambda=0.5 gram carries u and v") {
    const double lambda = 0.5;
    const auto doc = run_json({"matrices", "--n", "3", "--lambda", "0.5"});
    const double u = 2.0 / 3 * std::exp(lambda) + std::exp(-2 * lambda) / 3;
    const double v = (std::exp(-2 * lambda) - std::exp(lambda)) / 3;
    CHECK(std::abs(doc["gram"][1][1].get<double>() - u) < 1e-12);
    CHECK(std::abs(doc["gram"][0][2].get<double>() - v) < 1e-12);
  }

  TEST_CASE("CSV blocks") {
    const auto r = run({"matrices", "--n", "2", "--lambda", "0.2", "--format", "csv"});
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("# schema_version=1 command=matrices n=2 lambda=0.2\n", 0) == 0);
    CHECK(r.out.find("# gram\n") != std::string::npos);
  }
}

TEST_SUITE("variances") {
  TEST_CASE("n=5, lambda=1") {
    const auto doc = run_json({"variances", "--n", "5", "--lambda", "1"});
    CHECK(std::abs(doc["var_x1"].get<double>() - std::exp(-2.0) / 4) < 1e-12);
    CHECK(doc["reference_x1"].get<double>() == std::exp(-2.0) / 4);
  }

  TEST_CASE("n=2, lambda=0") {
    const auto doc = run_json({"variances", "--n", "2", "--lambda", "0"});
    CHECK(doc["var_x1"].get<double>() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(doc["var_x2"].get<double>() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(doc["product"].get<double>() == doctest::Approx(0.0625).epsilon(1e-15));
  }

  TEST_CASE("n=8, lambda=-0.7 product") {
    const auto doc = run_json({"variances", "--n", "8", "--lambda", "-0.7"});
    CHECK(std::abs(doc["product"].get<double>() - 0.0625) < 1e-13);
  }
}

TEST_SUITE("state") {
  TEST_CASE("analytic and oracle pairs agree for n=2") {
    const auto doc = run_json({"state", "--n", "2", "--lambda", "0.4", "--oracle", "--cutoff", "24"});
    CHECK(doc["prefactor"].get<double>() == doctest::Approx(1.0 / std::cosh(0.4)));
    CHECK(doc["oracle"]["max_abs_residual_vs_f"].get<double>() < 1e-6);
  }
}

TEST_SUITE("wigner") {
  TEST_CASE("CSV header documents the slice") {
    const auto r = run({"wigner", "--n", "3", "--lambda", "0.5", "--axes", "q1,p2", "--range-a", "-1,1",
                        "--range-b", "-1,1", "--steps", "3", "--fixed", "q3=0.25", "--format", "csv"});
    REQUIRE(r.status == 0);
    std::istringstream lines(r.out);
    std::string first, second;
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(first.rfind("# schema_version=1 command=wigner n=3 lambda=0.5 axis_a=q1 axis_b=p2", 0) == 0);
    CHECK(first.find("q3:0.25") != std::string::npos);
    CHECK(second == "coord_a,coord_b,w");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 9);
  }

  TEST_CASE("JSON rows") {
    const auto doc = run_json({"wigner", "--n", "2", "--lambda", "0", "--steps", "3", "--range-a", "-1,1",
                               "--range-b", "-1,1"});
    REQUIRE(doc["rows"].size() == 9);
    CHECK(doc["rows"][4][2].get<double>() == doctest::Approx(1.0 / (M_PI * M_PI)));
    CHECK(doc["axis_a"] == "q1");
  }
}

TEST_SUITE("identities") {
  TEST_CASE("n=6, l_max=10 all exact") {
    const auto doc = run_json({"identities", "--n", "6", "--l-max", "10"});
    CHECK(doc["pass"] == true);
    REQUIRE(doc["entry_sum_identity"].size() == 11);
    for (const auto& row : doc["entry_sum_identity"]) CHECK(row["lhs"] == row["rhs"]);
    CHECK_FALSE(doc.contains("gram_entry_sum"));
  }

  TEST_CASE("with lambda adds the gram entry sums") {
    const auto doc = run_json({"identities", "--n", "4", "--lambda", "0.3"});
    CHECK(std::abs(doc["gram_entry_sum"].get<double>() - 4 * std::exp(-0.6)) < 1e-11);
  }
}

TEST_SUITE("verify") {
  TEST_CASE("n=2 with the oracle at cutoff 24") {
    const auto doc = run_json({"verify", "--n", "2", "--lambda", "0.4", "--oracle", "--cutoff", "24"});
    CHECK(doc["pass"] == true);
    bool saw_oracle = false;
    for (const auto& check : doc["checks"]) {
      CHECK_MESSAGE(check["pass"] == true, check["name"]);
      if (check["name"].get<std::string>().find("oracle") != std::string::npos) saw_oracle = true;
    }
    CHECK(saw_oracle);
  }

  TEST_CASE("n=4 Cayley-Hamilton residual") {
    const auto doc = run_json({"verify", "--n", "4", "--lambda", "0.3"});
    CHECK(doc["pass"] == true);
    bool saw = false;
    for (const auto& check : doc["checks"]) {
      if (check["name"].get<std::string>().find("cayley") != std::string::npos) {
        saw = true;
        CHECK(check["residual"].get<double>() < 1e-12);
      }
    }
    CHECK(saw);
  }

  TEST_CASE("an impossible tolerance fails with status 1") {
    const auto r = run({"verify", "--n", "3", "--lambda", "0.5", "--tol", "1e-30"});
    CHECK(r.status == 1);
    CHECK(json::parse(r.out)["pass"] == false);
  }
}

TEST_SUITE("errors") {
  TEST_CASE("validation failures exit 2 with one diagnostic line") {
    const std::vector<std::vector<std::string>> cases = {
        {"matrices", "--n", "1", "--lambda", "0.1"},
        {"matrices", "--n", "3"},
        {"variances", "--n", "3", "--lambda", "0.1", "--format", "csv"},
        {"wigner", "--n", "2", "--lambda", "0.1", "--axes", "q1,q3"},
        {"wigner", "--n", "2", "--lambda", "0.1", "--axes", "q1,q1"},
        {"wigner", "--n", "2", "--lambda", "0.1", "--fixed", "q1=0.5"},
        {"matrices", "--n", "3", "--lambda", "400"},
        {"state", "--n", "5", "--lambda", "0.1", "--oracle", "--cutoff", "9"},
        {"bogus"},
        {},
    };
    for (const auto& args : cases) {
      const auto r = run(args);
      CHECK(r.status == 2);
      CHECK(r.out.empty());
      REQUIRE_FALSE(r.err.empty());
      CHECK(r.err.find('\n') == r.err.size() - 1);
    }
  }
}

TEST_SUITE("output") {
  TEST_CASE("identical flags give identical bytes") {
    const std::vector<std::string> args = {"matrices", "--n", "5", "--lambda", "0.37"};
    CHECK(run(args).out == run(args).out);
  }

  TEST_CASE("--output writes the report to a file") {
    const auto path = std::filesystem::temp_directory_path() / "nmsqueeze_cli_test.json";
    std::filesystem::remove(path);
    const auto r = run({"variances", "--n", "3", "--lambda", "0.2", "--output", path.string()});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream contents;
    contents << in.rdbuf();
    CHECK(json::parse(contents.str())["n"] == 3);
    std::filesystem::remove(path);
  }
}
