#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "reference_oracles.hpp"
#include "surromix/estimators.hpp"
#include "surromix/oracles.hpp"
#include "surromix/rng.hpp"
#include "surromix/scaling.hpp"
#include "surromix/sim.hpp"

using namespace surromix;
using namespace surromix::oracles;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

SequenceModelSpec random_sequence_spec(std::uint64_t seed, int dim) {
  CounterRng rng(seed);
  SequenceModelSpec s;
  s.theta_star.resize(dim);
  s.theta_star_s.resize(dim);
  s.omega.resize(dim);
  for (int k = 0; k < dim; ++k) {
    s.theta_star[k] = rng.next_normal();
    s.theta_star_s[k] = s.theta_star[k] + 0.5 * rng.next_normal();
    s.omega[k] = std::pow(double(k + 1), 1.5);
  }
  s.sigma = 1.0;
  s.sigma_s = 1.5;
  s.n = 40;
  s.m = 80;
  s.mu = 1.5;
  s.rho_decay = 1.0;
  return s;
}

}  // namespace

TEST_CASE("mean risk formula") {
  // alpha = 0 is the original-only variance d/n.
  CHECK(mean_risk(50, 100, 400, 0.0, 0.25) ==
        doctest::Approx(0.5).epsilon(1e-15));
  // Frozen arithmetic value.
  CHECK(mean_risk(50, 100, 400, 0.3, 0.25) ==
        doctest::Approx(0.27875).epsilon(1e-14));
  // Pooling weight with no shift costs d/(n+m).
  CHECK(mean_risk(50, 100, 400, 0.8, 0.0) ==
        doctest::Approx(0.1).epsilon(1e-14));
  // Zero-count sides need zero weight.
  CHECK_THROWS_AS(mean_risk(50, 0, 400, 0.5, 0.25), Error);
  CHECK_THROWS_AS(mean_risk(50, 100, 0, 0.5, 0.25), Error);
  CHECK_NOTHROW(mean_risk(50, 0, 400, 1.0, 0.25));
}

TEST_CASE("mean optimal alpha closed form and grid oracle") {
  const auto opt = mean_optimal_alpha(50, 100, 400, 0.25);
  CHECK(opt.alpha_star == doctest::Approx(0.5 / 0.875).epsilon(1e-14));
  CHECK(opt.risk_star ==
        doctest::Approx((0.375 / 0.875) * 0.5).epsilon(1e-14));

  // Independent grid minimization with step 1e-4.
  double best_a = 0.0, best_r = mean_risk(50, 100, 400, 0.0, 0.25);
  for (int i = 1; i <= 10000; ++i) {
    const double a = double(i) / 10000.0;
    const double r = mean_risk(50, 100, 400, a, 0.25);
    if (r < best_r) {
      best_r = r;
      best_a = a;
    }
  }
  CHECK(std::abs(best_a - opt.alpha_star) <= 1e-4);
  CHECK(best_r >= opt.risk_star);
  CHECK(best_r - opt.risk_star <= 1e-7);

  // Useless surrogate: huge gap pushes alpha* to zero, risk* to d/n.
  const auto far = mean_optimal_alpha(50, 100, 400, 1e9);
  CHECK(far.alpha_star <= 1e-8);
  CHECK(far.risk_star == doctest::Approx(0.5).epsilon(1e-6));

  // No shift: pooling.
  const auto pool = mean_optimal_alpha(50, 100, 400, 0.0);
  CHECK(pool.alpha_star == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(pool.risk_star == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("surrogate data never hurt the optimal mean risk") {
  CounterRng rng(5150);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = 1 + std::int64_t(rng.next_uniform() * 100);
    const auto n = 1 + std::int64_t(rng.next_uniform() * 1000);
    const auto m = 1 + std::int64_t(rng.next_uniform() * 1000);
    const double gap = rng.next_uniform() * 10.0;
    const auto opt = mean_optimal_alpha(d, n, m, gap);
    CHECK(opt.risk_star < double(d) / double(n));
  }
}

TEST_CASE("naive pooled risk") {
  CHECK(naive_pooled_risk(50, 100, 0, 0.25) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(naive_pooled_risk(50, 100, 400, 0.0) ==
        doctest::Approx(0.1).epsilon(1e-15));
  CHECK(naive_pooled_risk(50, 100, 400, 0.25) ==
        doctest::Approx(0.26).epsilon(1e-14));
}

TEST_CASE("sequence risk formula collapses") {
  SequenceModelSpec s = random_sequence_spec(11, 12);
  SUBCASE("lambda 0") {
    const auto r = sequence_risk(s, MixtureConfig(0.3, 0.0));
    const double gap = (s.theta_star - s.theta_star_s).squaredNorm();
    CHECK(r.bias == doctest::Approx(0.09 * gap).epsilon(1e-12));
    CHECK(r.variance_count == doctest::Approx(12.0).epsilon(1e-15));
    const double noise = 0.49 * 1.0 / 40.0 + 0.09 * 2.25 / 80.0;
    CHECK(r.noise_scale == doctest::Approx(noise).epsilon(1e-12));
    CHECK(r.risk ==
          doctest::Approx(0.09 * gap + noise * 12.0).epsilon(1e-12));
  }
  SUBCASE("alpha 0, lambda 0") {
    const auto r = sequence_risk(s, MixtureConfig(0.0, 0.0));
    CHECK(r.risk == doctest::Approx(1.0 * 12.0 / 40.0).epsilon(1e-12));
  }
  SUBCASE("decomposition identity under direct re-summation") {
    const MixtureConfig cfg(0.45, 0.07);
    const auto r = sequence_risk(s, cfg);
    double bias = 0.0, count = 0.0;
    for (int k = 0; k < 12; ++k) {
      const double w = 1.0 + cfg.lambda * s.omega[k];
      const double num = (cfg.alpha + cfg.lambda * s.omega[k]) * s.theta_star[k] -
                         cfg.alpha * s.theta_star_s[k];
      bias += num * num / (w * w);
      count += 1.0 / (w * w);
    }
    CHECK(r.risk == doctest::Approx(bias + r.noise_scale * count).epsilon(1e-14));
  }
}

TEST_CASE("sequence risk stays finite under extreme eigenvalues") {
  SequenceModelSpec s;
  s.theta_star = vec({1.0, 0.5});
  s.theta_star_s = vec({0.8, 0.4});
  s.omega = vec({1.0, 1e300});
  s.sigma = 1.0;
  s.sigma_s = 1.0;
  s.n = 10;
  s.m = 10;
  s.mu = 1.0;
  s.rho_decay = 1.0;
  const auto r = sequence_risk(s, MixtureConfig(0.5, 1.0));
  CHECK(std::isfinite(r.risk));
  // The crushed coordinate contributes its full squared signal as bias.
  CHECK(r.bias >= 0.25);
}

TEST_CASE("sequence risk matches Monte Carlo") {
  const SequenceModelSpec s = random_sequence_spec(13, 20);
  const MixtureConfig cfg(0.4, 0.05);
  const auto analytic = sequence_risk(s, cfg);

  const int reps = 4000;
  double sum = 0.0, sumsq = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    CounterRng rng = CounterRng::stream(777, 0, rep, 0);
    const auto [obs, obs_s] = sim::gen_sequence_obs(s, rng);
    const double risk =
        (estimators::sequence_estimate(s, obs, obs_s, cfg) - s.theta_star)
            .squaredNorm();
    sum += risk;
    sumsq += risk * risk;
  }
  const double mean = sum / reps;
  const double se =
      std::sqrt((sumsq / reps - mean * mean) / double(reps - 1));
  CHECK(std::abs(mean - analytic.risk) <= 3.0 * se);
}

TEST_CASE("sequence lambda selection rule") {
  SequenceModelSpec s;
  const int dim = 50;
  s.theta_star.setZero(dim);
  s.theta_star_s.setZero(dim);
  s.omega.resize(dim);
  for (int k = 0; k < dim; ++k) s.omega[k] = double(k + 1) * double(k + 1);
  s.sigma = 1.0;
  s.sigma_s = 1.0;
  s.mu = 2.0;
  s.rho_decay = 1.0;

  SUBCASE("frozen arithmetic: k1 = 6, lambda = 1/36") {
    s.n = 100;
    s.m = 100;
    CHECK(sequence_lambda_star(s, 0.5) ==
          doctest::Approx(1.0 / 36.0).epsilon(1e-14));
  }
  SUBCASE("s = 1 boundary picks the first eigenvalue") {
    s.n = 1;
    s.m = 1;
    // alpha = 0: s = sigma^2/n = 1, so k1 = 1 and lambda = 1/omega_1.
    CHECK(sequence_lambda_star(s, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("doubling n weakly decreases lambda") {
    s.m = 64;
    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t n = 8; n <= 65536; n *= 2) {
      s.n = n;
      const double lam = sequence_lambda_star(s, 0.5);
      CHECK(lam <= prev + 1e-15);
      prev = lam;
    }
  }
  SUBCASE("zero eigenvalue is an error") {
    s.omega[0] = 0.0;
    for (int k = 1; k < dim; ++k) s.omega[k] = double(k);
    s.n = 1;
    s.m = 1;
    CHECK_THROWS_AS(sequence_lambda_star(s, 0.0), Error);
  }
}

namespace {

NonparamSpec three_term_spec() {
  NonparamSpec s;
  s.dim = 1;
  s.penalty_order = 1.0;
  s.truncation = 1;
  s.target_coeffs[{0}] = {1.0, 0.0};
  s.target_coeffs[{1}] = {0.3, -0.1};
  s.target_coeffs[{-1}] = {0.3, 0.1};
  s.surrogate_coeffs[{0}] = {0.8, 0.0};
  s.surrogate_coeffs[{1}] = {0.2, -0.2};
  s.surrogate_coeffs[{-1}] = {0.2, 0.2};
  s.sigma = 1.0;
  s.sigma_s = 2.0;
  s.n = 50;
  s.m = 200;
  s.lambda = 0.05;
  return s;
}

}  // namespace

TEST_CASE("nonparam risk, three lattice terms summed by hand") {
  const NonparamSpec s = three_term_spec();
  const double alpha = 0.4;

  // Independent evaluation of the same three frequencies 0 and +-2*pi.
  const double two_pi = 2.0 * std::acos(-1.0);
  const double K = 0.36 * 1.0 / 50.0 + 0.16 * 4.0 / 200.0;
  auto term = [&](std::complex<double> th, std::complex<double> th_s,
                  double freq) {
    const double c = 1.0 + freq * freq;  // p = 1
    const std::complex<double> num = alpha * (th_s - th) + s.lambda * c * th;
    const double shrink = 1.0 / (1.0 + s.lambda * c);
    return shrink * shrink * std::norm(num);
  };
  auto vterm = [&](double freq) {
    const double c = 1.0 + freq * freq;
    const double shrink = 1.0 / (1.0 + s.lambda * c);
    return shrink * shrink;
  };
  const double expected =
      term({1.0, 0.0}, {0.8, 0.0}, 0.0) +
      term({0.3, -0.1}, {0.2, -0.2}, two_pi) +
      term({0.3, 0.1}, {0.2, 0.2}, two_pi) +
      K * (vterm(0.0) + 2.0 * vterm(two_pi));

  CHECK(nonparam_risk(s, alpha) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("nonparam risk formula collapses") {
  NonparamSpec s = three_term_spec();
  SUBCASE("zero signal leaves pure variance") {
    for (auto& [q, v] : s.target_coeffs) v = 0.0;
    for (auto& [q, v] : s.surrogate_coeffs) v = 0.0;
    const double alpha = 0.25;
    const double K = (1 - alpha) * (1 - alpha) / 50.0 +
                     alpha * alpha * 4.0 / 200.0;
    const double two_pi = 2.0 * std::acos(-1.0);
    const double c1 = 1.0 + two_pi * two_pi;
    const double expected =
        K * (1.0 / ((1.0 + 0.05) * (1.0 + 0.05)) +
             2.0 / ((1.0 + 0.05 * c1) * (1.0 + 0.05 * c1)));
    CHECK(nonparam_risk(s, alpha) == doctest::Approx(expected).epsilon(1e-13));
  }
  SUBCASE("lambda 0 collapse") {
    s.lambda = 0.0;
    s.truncation = 3;  // lattice {-3..3}: 7 points
    const double alpha = 0.4;
    double gap = 0.0;
    for (const auto& [q, v] : s.target_coeffs) {
      gap += std::norm(s.surrogate_coeffs.at(q) - v);
    }
    const double K = 0.36 / 50.0 + 0.16 * 4.0 / 200.0;
    CHECK(nonparam_risk(s, alpha) ==
          doctest::Approx(alpha * alpha * gap + K * 7.0).epsilon(1e-13));
  }
  SUBCASE("weak penalty is rejected") {
    s.penalty_order = 0.25;  // needs p > d/4
    CHECK_THROWS_AS(nonparam_risk(s, 0.4), Error);
    try {
      nonparam_risk(s, 0.4);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::penalty_too_weak);
    }
  }
  SUBCASE("huge penalty order stays finite") {
    s.penalty_order = 400.0;  // c at |q| = 1 overflows to inf
    const double got = nonparam_risk(s, 0.4);
    CHECK(std::isfinite(got));
    // The +-1 coefficients are fully suppressed; their signal becomes bias.
    CHECK(got >= 2.0 * std::norm(std::complex<double>(0.3, -0.1)));
  }
}

namespace {

LowDimCurvature demo_curvature() {
  LowDimCurvature c;
  c.hessian = Eigen::MatrixXd(2, 2);
  c.hessian << 2.0, 0.4, 0.4, 1.5;
  c.cov_original = Eigen::MatrixXd(2, 2);
  c.cov_original << 1.2, -0.3, -0.3, 0.9;
  c.cov_surrogate = Eigen::MatrixXd(2, 2);
  c.cov_surrogate << 2.5, 0.1, 0.1, 1.1;
  c.shift_gradient = vec({0.2, -0.4});
  return c;
}

}  // namespace

TEST_CASE("lowdim risk against an explicit 2x2 inverse") {
  const LowDimCurvature c = demo_curvature();
  const std::int64_t n = 300, m = 900;
  const double alpha = 0.35;

  // Hand inverse of [[a,b],[b,d]].
  const double a = 2.0, b = 0.4, d = 1.5;
  const double det = a * d - b * b;
  Eigen::MatrixXd inv(2, 2);
  inv << d / det, -b / det, -b / det, a / det;
  const double shift = c.shift_gradient.dot(inv * c.shift_gradient);
  const double tr_or = (inv * c.cov_original).trace();
  const double tr_su = (inv * c.cov_surrogate).trace();
  const double expected = alpha * alpha * shift +
                          (1 - alpha) * (1 - alpha) / double(n) * tr_or +
                          alpha * alpha / double(m) * tr_su;

  CHECK(lowdim_risk(c, n, m, alpha) ==
        doctest::Approx(expected).epsilon(1e-13));
  CHECK(lowdim_risk(c, n, m, 0.0) ==
        doctest::Approx(tr_or / double(n)).epsilon(1e-13));
}

TEST_CASE("lowdim well-specified case reduces to the mean formula") {
  LowDimCurvature c;
  c.hessian = Eigen::MatrixXd::Identity(3, 3) * 1.7;
  c.cov_original = c.hessian;
  c.cov_surrogate = c.hessian;
  c.shift_gradient = Eigen::VectorXd::Zero(3);
  const double got = lowdim_risk(c, 50, 200, 0.3);
  CHECK(got ==
        doctest::Approx((0.09 / 200.0 + 0.49 / 50.0) * 3.0).epsilon(1e-13));

  const auto opt = lowdim_optimal_alpha(c, 50, 200);
  CHECK(opt.alpha_star == doctest::Approx(200.0 / 250.0).epsilon(1e-13));
  CHECK(opt.risk_star == doctest::Approx(3.0 / 250.0).epsilon(1e-13));
}

TEST_CASE("lowdim optimal alpha against a grid scan") {
  const LowDimCurvature c = demo_curvature();
  const std::int64_t n = 120, m = 800;
  const auto opt = lowdim_optimal_alpha(c, n, m);

  double best_a = 0.0, best_r = lowdim_risk(c, n, m, 0.0);
  for (int i = 1; i <= 10000; ++i) {
    const double a = double(i) / 10000.0;
    const double r = lowdim_risk(c, n, m, a);
    if (r < best_r) {
      best_r = r;
      best_a = a;
    }
  }
  CHECK(std::abs(opt.alpha_star - best_a) <= 1e-4);
  CHECK(opt.risk_star <= best_r + 1e-12);

  // Huge shift forces alpha* to zero.
  LowDimCurvature far = c;
  far.shift_gradient = vec({1e8, -1e8});
  const auto opt_far = lowdim_optimal_alpha(far, n, m);
  CHECK(opt_far.alpha_star <= 1e-10);
  CHECK(opt_far.risk_star ==
        doctest::Approx(lowdim_risk(far, n, m, 0.0)).epsilon(1e-6));
}

TEST_CASE("hidim fixed point closed forms") {
  HiDimSpec spec;
  spec.delta = 2.0;
  spec.delta_s = 2.0;
  spec.sigma = 1.0;
  spec.sigma_s = 1.0;
  spec.lambda = 0.1;

  SUBCASE("omega 0 decouples the equation") {
    const auto sp = hidim_fixed_point(spec, 0.3, 0.5, 0.7, 0.0);
    const double expected = std::sqrt(0.49 * (0.25 + 1.0) / 2.0 +
                                      0.09 * (0.49 + 1.0) / 2.0);
    CHECK(sp.rho_bar == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("symmetry gives t = 1") {
    const auto sp = hidim_fixed_point(spec, 0.5, 0.6, 0.6, 0.4);
    CHECK(sp.t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sp.rho == doctest::Approx(sp.rho_s).epsilon(1e-12));
    CHECK(sp.rho * sp.rho + sp.rho_s * sp.rho_s ==
          doctest::Approx(sp.rho_bar * sp.rho_bar).epsilon(1e-12));
  }
  SUBCASE("bisection oracle agreement, frozen instance") {
    const auto sp = hidim_fixed_point(spec, 0.5, 0.5, 0.5, 0.3);
    const double A = 2.0 * (0.25 + 1.0);
    const double B = 2.0 / 0.5;
    const double ref = refor::bisect_rho_bar(A, B, A, B, 0.3);
    CHECK(std::abs(sp.rho_bar - ref) <= 1e-8);
  }
  SUBCASE("alpha must be interior") {
    CHECK_THROWS_AS(hidim_fixed_point(spec, 0.0, 0.5, 0.5, 0.3), Error);
    CHECK_THROWS_AS(hidim_fixed_point(spec, 1.0, 0.5, 0.5, 0.3), Error);
  }
}

TEST_CASE("hidim fixed point random draws: residual and oracle agreement") {
  CounterRng rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    HiDimSpec spec;
    spec.delta = 0.6 + 4.0 * rng.next_uniform();
    spec.delta_s = 0.6 + 4.0 * rng.next_uniform();
    if (spec.delta + spec.delta_s <= 1.0) spec.delta += 1.0;
    spec.sigma = 2.0 * rng.next_uniform();
    spec.sigma_s = 2.0 * rng.next_uniform();
    spec.lambda = 0.01 + rng.next_uniform();
    const double alpha = 0.05 + 0.9 * rng.next_uniform();
    // Realizable triples have tau >= omega.
    const double omega = 2.0 * rng.next_uniform();
    const double tau =
        std::sqrt(omega * omega + std::pow(3.0 * rng.next_uniform(), 2));
    const double tau_s =
        std::sqrt(omega * omega + std::pow(3.0 * rng.next_uniform(), 2));

    const auto sp = hidim_fixed_point(spec, alpha, tau, tau_s, omega);
    const double u = omega / sp.rho_bar;
    const double rhs =
        spec.delta * (tau * tau + spec.sigma * spec.sigma) /
            std::pow(spec.delta / (1.0 - alpha) + u, 2) +
        spec.delta_s * (tau_s * tau_s + spec.sigma_s * spec.sigma_s) /
            std::pow(spec.delta_s / alpha + u, 2);
    CHECK(std::abs(sp.rho_bar * sp.rho_bar - rhs) <= 1e-10);

    const double ref = refor::bisect_rho_bar(
        spec.delta * (tau * tau + spec.sigma * spec.sigma),
        spec.delta / (1.0 - alpha),
        spec.delta_s * (tau_s * tau_s + spec.sigma_s * spec.sigma_s),
        spec.delta_s / alpha, omega);
    CHECK(std::abs(sp.rho_bar - ref) <= 1e-8);
  }
}

TEST_CASE("hidim risk: pooled splits agree with each other and the MP form") {
  // Identical original and surrogate distributions; the pooled objective is
  // the same regardless of how the sample is split, and matches the
  // single-dataset asymptotics at the combined aspect ratio.
  HiDimSpec a;
  a.delta = 2.0;
  a.delta_s = 2.0;
  a.r = 1.0;
  a.r_s = 1.0;
  a.gamma = 0.0;
  a.sigma = 0.8;
  a.sigma_s = 0.8;
  a.lambda = 0.3;
  const double risk_a = hidim_asymptotic_risk(a, 0.5).risk;

  HiDimSpec b = a;
  b.delta = 1.0;
  b.delta_s = 3.0;
  const double risk_b = hidim_asymptotic_risk(b, 0.75).risk;
  CHECK(risk_a == doctest::Approx(risk_b).epsilon(1e-7));

  const double mp = refor::single_ridge_asymptotic_risk(4.0, 1.0, 0.8, 0.3);
  CHECK(risk_a == doctest::Approx(mp).epsilon(1e-6));
}

TEST_CASE("hidim endpoint matches the single-dataset MP form") {
  HiDimSpec spec;
  spec.delta = 2.0;
  spec.delta_s = 2.0;
  spec.r = 1.0;
  spec.r_s = 0.5;
  spec.gamma = 1.0;
  spec.sigma = 1.0;
  spec.sigma_s = 1.0;
  spec.lambda = 0.1;
  // Both aspects exceed 1, so alpha = 0 is evaluated exactly and the
  // surrogate data drop out entirely.
  const double at0 = hidim_asymptotic_risk(spec, 0.0).risk;
  const double mp = refor::single_ridge_asymptotic_risk(2.0, 1.0, 1.0, 0.1);
  CHECK(at0 == doctest::Approx(mp).epsilon(1e-6));
}

TEST_CASE("hidim curve symmetry for identical distributions") {
  HiDimSpec spec;
  spec.delta = 2.0;
  spec.delta_s = 2.0;
  spec.r = 1.0;
  spec.r_s = 1.0;
  spec.gamma = 0.0;
  spec.sigma = 1.0;
  spec.sigma_s = 1.0;
  spec.lambda = 0.1;
  const std::vector<double> grid = {0.2, 0.35, 0.5, 0.65, 0.8};
  const RiskCurve curve = hidim_risk_curve(spec, grid);
  REQUIRE(curve.points.size() == 5);
  CHECK(curve.points[0].risk ==
        doctest::Approx(curve.points[4].risk).epsilon(1e-7));
  CHECK(curve.points[1].risk ==
        doctest::Approx(curve.points[3].risk).epsilon(1e-7));
  for (const auto& p : curve.points) CHECK(p.std_error == 0.0);
}

TEST_CASE("hidim curve orthogonal surrogate approaches the squared distance") {
  HiDimSpec spec;
  spec.delta = 2.0;
  spec.delta_s = 400.0;
  spec.r = 1.0;
  spec.r_s = 1.0;
  spec.gamma = std::acos(-1.0) / 2.0;
  spec.sigma = 1.0;
  spec.sigma_s = 1.0;
  spec.lambda = 0.01;
  // |theta - theta_s|^2 = 2 - 2cos(pi/2) = 2; at alpha -> 1 with abundant
  // surrogate data the excess risk approaches it from above.
  const double at1 = hidim_asymptotic_risk(spec, 1.0).risk;
  CHECK(at1 >= 1.95);
  CHECK(at1 <= 2.15);
}

TEST_CASE("hidim singleton grid equals the scalar evaluation") {
  HiDimSpec spec;
  spec.gamma = 0.7;
  const RiskCurve curve = hidim_risk_curve(spec, {0.37});
  REQUIRE(curve.points.size() == 1);
  CHECK(curve.points[0].risk ==
        doctest::Approx(hidim_asymptotic_risk(spec, 0.37).risk)
            .epsilon(1e-12));
}

TEST_CASE("hidim large aspect ratios approach the parametric scaling law") {
  HiDimSpec spec;
  spec.delta = 50.0;
  spec.delta_s = 50.0;
  spec.r = 1.0;
  spec.r_s = 1.0;
  spec.gamma = 0.5;
  spec.sigma = 1.0;
  spec.sigma_s = 1.0;
  spec.lambda = 0.01;

  const double gap =
      spec.r * spec.r + spec.r_s * spec.r_s -
      2.0 * spec.r * spec.r_s * std::cos(spec.gamma);
  const double ex_or = hidim_asymptotic_risk(spec, 0.0).risk;
  const double ex_su = hidim_asymptotic_risk(spec, 1.0).risk - gap;

  ScalingLawModel model;
  model.bayes_risk = 0.0;
  model.surrogate_gap = gap;
  model.original_fit = {0.0, ex_or * 50.0, 1.0, 0.0, false};
  model.surrogate_fit = {gap, ex_su * 50.0, 1.0, 0.0, false};
  model.beta = 1.0;
  const auto law = scaling::optimal_alpha(model, 50, 50);

  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(double(i) / 20.0);
  const RiskCurve curve = hidim_risk_curve(spec, grid);
  const double curve_min = curve.points[curve.argmin()].risk;
  CHECK(std::abs(curve_min - law.risk_star) <= 0.1 * curve_min);
}

TEST_CASE("hidim objective sanity at the reported minimizer") {
  HiDimSpec spec;
  spec.gamma = 0.9;
  spec.r_s = 0.8;
  const HiDimSolution sol = hidim_asymptotic_risk(spec, 0.4);
  sol.validate();
  CHECK(sol.risk == doctest::Approx((sol.xi - spec.r) * (sol.xi - spec.r) +
                                    sol.xi_perp * sol.xi_perp +
                                    sol.omega * sol.omega)
                        .epsilon(1e-12));
  const double f0 = hidim_objective(spec, 0.4, sol.xi, sol.xi_perp, sol.omega);
  // Nearby feasible points do not improve the objective.
  for (const double dx : {-1e-3, 1e-3}) {
    CHECK(f0 <= hidim_objective(spec, 0.4, sol.xi + dx, sol.xi_perp,
                                sol.omega) +
                    1e-9);
    CHECK(f0 <= hidim_objective(spec, 0.4, sol.xi,
                                std::max(0.0, sol.xi_perp + dx), sol.omega) +
                    1e-9);
    CHECK(f0 <= hidim_objective(spec, 0.4, sol.xi, sol.xi_perp,
                                std::max(0.0, sol.omega + dx)) +
                    1e-9);
  }
}
