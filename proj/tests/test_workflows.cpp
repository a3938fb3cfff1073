#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "surromix/csv.hpp"
#include "surromix/json_io.hpp"
#include "surromix/oracles.hpp"
#include "surromix/workflows.hpp"

using namespace surromix;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("surromix_wf_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

json minimal_mean_plan() {
  return {{"n_grid", {100}},
          {"m_grid", {400}},
          {"alpha_grid", {0.3}},
          {"lambda_grid", {0.0}},
          {"replicates", 5},
          {"seed", 7},
          {"generator", "gaussian_mean"},
          {"generator_params",
           {{"d", 10}, {"sigma", 1.0}, {"sigma_s", 1.0}, {"gap", 0.25}}}};
}

}  // namespace

TEST_CASE("alpha grid specs") {
  const auto lin = workflows::parse_alpha_grid("0:1:5");
  REQUIRE(lin.size() == 5);
  CHECK(lin[0] == 0.0);
  CHECK(lin[1] == 0.25);
  CHECK(lin[4] == 1.0);

  const auto list = workflows::parse_alpha_grid("0.1,0.2,0.9");
  REQUIRE(list.size() == 3);
  CHECK(list[2] == 0.9);

  CHECK_THROWS_AS(workflows::parse_alpha_grid("0:1"), Error);
  CHECK_THROWS_AS(workflows::parse_alpha_grid("0.5,0.4"), Error);
  CHECK_THROWS_AS(workflows::parse_alpha_grid("0,2"), Error);
  CHECK_THROWS_AS(workflows::parse_alpha_grid("abc"), Error);
}

TEST_CASE("csv floats survive a round trip exactly") {
  TempDir tmp;
  std::vector<sim::ResultRow> rows = {
      {100, 400, 1.0 / 3.0, 0.27875000000000011, 8.8817841970012523e-16, 7},
      {100, 401, 0.1 + 0.2, std::acos(-1.0), 0.0, 1},
  };
  csv::write_results(tmp.file("rows.csv"), rows);
  const auto back = csv::read_results(tmp.file("rows.csv"));
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].alpha == rows[i].alpha);
    CHECK(back[i].risk_mean == rows[i].risk_mean);
    CHECK(back[i].risk_se == rows[i].risk_se);
  }

  csv::write_loss_table(tmp.file("loss.csv"),
                        {{10, 1.0 / 7.0}, {20, 2.0 / 7.0}});
  const auto loss = csv::read_loss_table(tmp.file("loss.csv"));
  CHECK(loss[0].loss == 1.0 / 7.0);
  CHECK(loss[1].loss == 2.0 / 7.0);
}

TEST_CASE("loss table parsing errors carry locations") {
  TempDir tmp;
  write_file(tmp.file("bad.csv"), "n,loss\n10,0.5\nxx,0.4\n");
  try {
    csv::read_loss_table(tmp.file("bad.csv"));
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  write_file(tmp.file("hdr.csv"), "n;loss\n");
  CHECK_THROWS_AS(csv::read_loss_table(tmp.file("hdr.csv")), Error);
  CHECK_THROWS_AS(csv::read_loss_table(tmp.file("missing.csv")), Error);
}

TEST_CASE("simulate workflow writes deterministic results") {
  TempDir tmp;
  save_json_file(tmp.file("plan.json"), minimal_mean_plan());
  workflows::simulate_file(tmp.file("plan.json"), tmp.file("a.csv"),
                           std::nullopt, 1);
  workflows::simulate_file(tmp.file("plan.json"), tmp.file("b.csv"),
                           std::nullopt, 2);
  CHECK(read_file(tmp.file("a.csv")) == read_file(tmp.file("b.csv")));

  // A seed override changes the draw, the plan seed stays authoritative
  // otherwise.
  workflows::simulate_file(tmp.file("plan.json"), tmp.file("c.csv"),
                           std::uint64_t{12345}, 1);
  CHECK(read_file(tmp.file("a.csv")) != read_file(tmp.file("c.csv")));

  const auto rows = csv::read_results(tmp.file("a.csv"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 100);
  CHECK(rows[0].replicates == 5);
}

TEST_CASE("malformed plans are rejected with the field named") {
  TempDir tmp;
  json plan = minimal_mean_plan();
  plan["alpha_grid"] = {1.5};
  save_json_file(tmp.file("plan.json"), plan);
  try {
    workflows::simulate_file(tmp.file("plan.json"), tmp.file("out.csv"),
                             std::nullopt, 1);
    FAIL("expected validation error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("alpha") != std::string::npos);
  }
}

TEST_CASE("fit, predict and plan round trip through files") {
  TempDir tmp;
  std::vector<scaling::LossPoint> orig, surr;
  for (std::int64_t n : {10, 20, 40, 80, 160, 320, 640, 1280}) {
    orig.push_back({n, 0.10 + 2.0 / double(n)});
    surr.push_back({n, 0.25 + 3.0 / double(n)});
  }
  csv::write_loss_table(tmp.file("orig.csv"), orig);
  csv::write_loss_table(tmp.file("surr.csv"), surr);
  workflows::fit_file(tmp.file("orig.csv"), tmp.file("surr.csv"),
                      tmp.file("model.json"));

  const ScalingLawModel model =
      scaling_model_from_json(load_json_file(tmp.file("model.json")));
  CHECK(model.bayes_risk == doctest::Approx(0.10).epsilon(1e-3));
  CHECK(model.surrogate_gap == doctest::Approx(0.15).epsilon(1e-2));
  CHECK(model.beta == doctest::Approx(1.0).epsilon(0.02));

  workflows::predict_file(tmp.file("model.json"), 100, 400, "0:1:11",
                          tmp.file("curve.csv"));
  const std::string curve = read_file(tmp.file("curve.csv"));
  CHECK(curve.find("alpha,predicted_risk") == 0);
  CHECK(curve.find("# alpha_star=") != std::string::npos);

  // The curve rows match direct predictions.
  std::istringstream ss(curve);
  std::string line;
  std::getline(ss, line);  // header
  std::getline(ss, line);  // alpha = 0 row
  const auto comma = line.find(',');
  CHECK(std::stod(line.substr(comma + 1)) ==
        doctest::Approx(scaling::predict_mixture_risk(model, 100, 400, 0.0))
            .epsilon(1e-15));

  const std::string feasible = workflows::plan_line(
      tmp.file("model.json"), 100,
      scaling::optimal_alpha(model, 100, 1).risk_star + 1e-9);
  CHECK(feasible.find("m=1 ") == 0);
  CHECK(feasible.find("alpha=") != std::string::npos);
  CHECK(workflows::plan_line(tmp.file("model.json"), 100, 0.01) ==
        "infeasible");
}

TEST_CASE("oracle workflow curves") {
  TempDir tmp;
  SUBCASE("mean setting matches the closed form") {
    save_json_file(tmp.file("p.json"), {{"d", 50},
                                        {"n", 100},
                                        {"m", 400},
                                        {"gap", 0.25},
                                        {"alpha_grid", {0.0, 0.3, 0.6}}});
    workflows::oracle_file("mean", tmp.file("p.json"), tmp.file("out.csv"));
    const std::string text = read_file(tmp.file("out.csv"));
    CHECK(text.find("alpha,risk") == 0);
    std::istringstream ss(text);
    std::string line;
    std::getline(ss, line);
    std::getline(ss, line);
    std::getline(ss, line);  // alpha = 0.3 row
    CHECK(std::stod(line.substr(line.find(',') + 1)) ==
          doctest::Approx(0.27875).epsilon(1e-12));
    CHECK(text.find("# alpha_star=") != std::string::npos);
  }
  SUBCASE("hidim symmetric curve is alpha-symmetric") {
    save_json_file(
        tmp.file("p.json"),
        {{"spec", to_json(HiDimSpec{})}, {"alpha_grid", {0.3, 0.5, 0.7}}});
    workflows::oracle_file("hidim", tmp.file("p.json"), tmp.file("out.csv"));
    std::istringstream ss(read_file(tmp.file("out.csv")));
    std::string header, l1, l2, l3;
    std::getline(ss, header);
    std::getline(ss, l1);
    std::getline(ss, l2);
    std::getline(ss, l3);
    const double r1 = std::stod(l1.substr(l1.find(',') + 1));
    const double r3 = std::stod(l3.substr(l3.find(',') + 1));
    CHECK(r1 == doctest::Approx(r3).epsilon(1e-6));
  }
  SUBCASE("unknown setting") {
    save_json_file(tmp.file("p.json"), {{"alpha_grid", {0.5}}});
    CHECK_THROWS_AS(
        workflows::oracle_file("bogus", tmp.file("p.json"), tmp.file("o.csv")),
        Error);
  }
  SUBCASE("sequence setting with the selection rule") {
    SequenceModelSpec spec;
    const int dim = 30;
    spec.theta_star.resize(dim);
    spec.theta_star_s.resize(dim);
    spec.omega.resize(dim);
    for (int k = 0; k < dim; ++k) {
      spec.theta_star[k] = std::pow(k + 1.0, -1.5);
      spec.theta_star_s[k] = spec.theta_star[k] + 0.05;
      spec.omega[k] = std::pow(k + 1.0, 2.0);
    }
    spec.sigma = 1.0;
    spec.sigma_s = 1.0;
    spec.n = 100;
    spec.m = 100;
    spec.mu = 2.0;
    spec.rho_decay = 1.0;
    save_json_file(tmp.file("p.json"), {{"spec", to_json(spec)},
                                        {"lambda", "star"},
                                        {"alpha_grid", {0.2, 0.5, 0.8}}});
    workflows::oracle_file("sequence", tmp.file("p.json"),
                           tmp.file("out.csv"));
    std::istringstream ss(read_file(tmp.file("out.csv")));
    std::string header, row;
    std::getline(ss, header);
    std::getline(ss, row);  // alpha = 0.2
    const double lambda =
        oracles::sequence_lambda_star(spec, 0.2);
    const double expected =
        oracles::sequence_risk(spec, MixtureConfig(0.2, lambda)).risk;
    CHECK(std::stod(row.substr(row.find(',') + 1)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}
