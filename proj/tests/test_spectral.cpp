#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "common.hpp"
#include "qw/dynamics.hpp"
#include "qw/errors.hpp"
#include "qw/registry.hpp"
#include "qw/spectral.hpp"

using namespace qw;
using testutil::branch_error;
using testutil::kPi;
using testutil::multiset_distance;
using testutil::total_winding;

namespace {

// The non-constant branches, in tracked order.
std::vector<const EigenvalueFunction*> moving(const SpectrumDecomposition& spec) {
  std::vector<const EigenvalueFunction*> out;
  for (const auto& b : spec.branches)
    if (!b.constant) out.push_back(&b);
  return out;
}

EigenvalueFunction conjugate_branch(const EigenvalueFunction& b) {
  return make_branch(b.samples.conjugate(), b.p, b.ambient_n);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("pointwise eigenvalues against closed forms") {
  const WalkDefinition coin = make_registry_walk("coin", {0.6});
  CHECK(multiset_distance(eigenvalues_at(coin, 0.0), {cd(0.6, 0.8), cd(0.6, -0.8)}) <= 1e-12);

  const WalkDefinition g3 = make_registry_walk("grover3");
  for (double k : {1.3, -0.4}) {
    const std::vector<cd> want = {cd(-1.0, 0.0), testutil::grover3_branch(k),
                                  testutil::grover3_branch(k + 2.0 * kPi)};
    CHECK(multiset_distance(eigenvalues_at(g3, k), want) <= 1e-9);
  }

  const WalkDefinition cube = make_registry_walk("cube");
  for (double k : {0.0, 0.9}) {
    std::vector<cd> want;
    for (int j = 0; j < 3; ++j) want.push_back(std::polar(1.0, (2.0 * k + 2.0 * kPi * j) / 3.0));
    CHECK(multiset_distance(eigenvalues_at(cube, k), want) <= 1e-12);
  }
}

TEST_CASE("eigenvalues stay on the unit circle") {
  for (const char* name : {"grover4", "s3-walk", "coin-decomposable"}) {
    const WalkDefinition w =
        make_registry_walk(name, std::string(name) == "coin-decomposable"
                                     ? std::vector<double>{0.6}
                                     : std::vector<double>{});
    for (double k : {0.0, 0.31, 1.7, -2.9})
      for (const cd& lam : eigenvalues_at(w, k))
        CHECK(std::abs(std::abs(lam) - 1.0) <= 1e-9);
  }
}

TEST_CASE("coin tracks to one analytic 4-pi branch with winding one") {
  const SpectrumDecomposition spec = track_branches(make_registry_walk("coin", {0.6}), 1024);
  REQUIRE(spec.branches.size() == 1);
  const EigenvalueFunction& b = spec.branches[0];
  CHECK(b.translates == 2);
  CHECK(b.p == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(std::abs(b.minimal_period - 4.0 * kPi) <= 1e-9);
  CHECK(b.winding == 1);
  CHECK(b.winding_residual <= 0.01);
  CHECK(b.closure_defect <= 1e-8);
  CHECK(branch_error(b, [](double k) { return testutil::coin_branch(0.6, k); }) <= 1e-8);
}

TEST_CASE("grover3 tracks to a constant and a flat 4-pi branch") {
  const SpectrumDecomposition spec = track_branches(make_registry_walk("grover3"), 1024);
  REQUIRE(spec.branches.size() == 2);
  const EigenvalueFunction* flat = nullptr;
  const EigenvalueFunction* moving_b = nullptr;
  for (const auto& b : spec.branches) (b.constant ? flat : moving_b) = &b;
  REQUIRE(flat != nullptr);
  REQUIRE(moving_b != nullptr);
  CHECK(std::abs(flat->constant_value - cd(-1.0, 0.0)) <= 1e-10);
  CHECK(flat->minimal_period == 0.0);
  CHECK(moving_b->translates == 2);
  CHECK(moving_b->winding == 0);
  CHECK(branch_error(*moving_b, testutil::grover3_branch) <= 1e-8);
}

TEST_CASE("grover4 tracks to constants plus opposite-winding branches") {
  const SpectrumDecomposition spec = track_branches(make_registry_walk("grover4"), 1024);
  REQUIRE(spec.branches.size() == 4);
  int constants = 0;
  std::vector<int> winds;
  for (const auto& b : spec.branches) {
    if (b.constant) {
      ++constants;
      CHECK(std::abs(std::abs(b.constant_value.real()) - 1.0) <= 1e-9);
      continue;
    }
    CHECK(std::abs(b.minimal_period - 2.0 * kPi) <= 1e-9);
    winds.push_back(b.winding);
    const double err_plus = branch_error(b, [](double k) { return testutil::grover4_branch(k, +1); });
    const double err_minus = branch_error(b, [](double k) { return testutil::grover4_branch(k, -1); });
    CHECK(std::min(err_plus, err_minus) <= 1e-8);
    // The branch matching lambda_+ must be the one winding upward.
    if (err_plus < err_minus)
      CHECK(b.winding == 1);
    else
      CHECK(b.winding == -1);
  }
  CHECK(constants == 2);
  std::sort(winds.begin(), winds.end());
  CHECK(winds == std::vector<int>{-1, 1});
}

TEST_CASE("decomposable coin splits into two flat 2-pi branches") {
  const SpectrumDecomposition spec =
      track_branches(make_registry_walk("coin-decomposable", {0.6}), 1024);
  REQUIRE(spec.branches.size() == 2);
  for (const auto& b : spec.branches) {
    CHECK(b.translates == 1);
    CHECK(b.winding == 0);
    const double err_plus =
        branch_error(b, [](double k) { return testutil::decomposable_branch(0.6, k, +1); });
    const double err_minus =
        branch_error(b, [](double k) { return testutil::decomposable_branch(0.6, k, -1); });
    CHECK(std::min(err_plus, err_minus) <= 1e-8);
  }
}

TEST_CASE("cube walk is one 6-pi branch at minimal period 3-pi") {
  const SpectrumDecomposition spec = track_branches(make_registry_walk("cube"), 1024);
  REQUIRE(spec.branches.size() == 1);
  const EigenvalueFunction& b = spec.branches[0];
  CHECK(b.translates == 3);
  CHECK(std::abs(b.minimal_period - 3.0 * kPi) <= 1e-9);
  CHECK(b.winding == 1);
  CHECK(branch_error(b, [](double k) { return std::polar(1.0, 2.0 * k / 3.0); }) <= 1e-8);
}

TEST_CASE("branch translates cover the pointwise spectrum") {
  const std::vector<std::pair<std::string, std::vector<double>>> walks = {
      {"coin", {0.6}}, {"coin-decomposable", {0.6}}, {"grover3", {}},
      {"grover4", {}}, {"cube", {}},                 {"s3-walk", {}}};
  for (const auto& [name, args] : walks) {
    CAPTURE(name);
    const WalkDefinition w = make_registry_walk(name, args);
    const int grid = 512;
    const SpectrumDecomposition spec = track_branches(w, grid);
    int translate_total = 0;
    for (const auto& b : spec.branches) translate_total += b.translates;
    CHECK(translate_total == w.n);
    double worst = 0.0;
    for (int u = 0; u < grid; u += 7) {
      std::vector<cd> from_branches;
      for (const auto& b : spec.branches)
        for (int j = 0; j < b.translates; ++j)
          from_branches.push_back(b.constant ? b.constant_value : b.samples[u + j * grid]);
      worst = std::max(
          worst, multiset_distance(from_branches, eigenvalues_at(w, u * 2.0 * kPi / grid)));
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("closure certificates hold off the grid") {
  for (const auto& [name, args] :
       std::vector<std::pair<std::string, std::vector<double>>>{
           {"coin", {0.6}}, {"grover3", {}}, {"grover4", {}}, {"cube", {}}, {"s3-walk", {}}}) {
    CAPTURE(name);
    for (const auto& b : track_branches(make_registry_walk(name, args), 1024).branches) {
      CHECK(b.closure_defect <= 1e-8);
      if (!b.constant)
        for (int u = 0; u < b.samples.size(); u += 97)
          CHECK(std::abs(std::abs(b.samples[u]) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("winding adds under pointwise branch products") {
  const EigenvalueFunction c6 =
      track_branches(make_registry_walk("coin", {0.6}), 1024).branches[0];
  const EigenvalueFunction c8 =
      track_branches(make_registry_walk("coin", {0.8}), 1024).branches[0];
  CHECK(total_winding(c6) == 1);

  const EigenvalueFunction prod = testutil::product_branch(c6, c8);
  CHECK(total_winding(prod) == total_winding(c6) + total_winding(c8));

  // A branch against its own conjugate cancels to the constant one.
  const EigenvalueFunction cancel = testutil::product_branch(c6, conjugate_branch(c6));
  CHECK(cancel.constant);
  CHECK(std::abs(cancel.constant_value - cd(1.0, 0.0)) <= 1e-10);
  CHECK(total_winding(cancel) == 0);

  // 2-pi examples with nonzero and zero windings mixed.
  const EigenvalueFunction sh = track_branches(testutil::shift_walk(1), 1024).branches[0];
  const EigenvalueFunction dec =
      track_branches(make_registry_walk("coin-decomposable", {0.6}), 1024).branches[0];
  CHECK(total_winding(testutil::product_branch(sh, dec)) == total_winding(sh) + total_winding(dec));
  CHECK(total_winding(testutil::product_branch(sh, sh)) == 2);
}

TEST_CASE("tracked invariants are stable under grid doubling") {
  for (const char* name : {"coin", "grover4"}) {
    CAPTURE(name);
    const WalkDefinition w = make_registry_walk(
        name, std::string(name) == "coin" ? std::vector<double>{0.6} : std::vector<double>{});
    const SpectrumDecomposition a = track_branches(w, 512);
    const SpectrumDecomposition b = track_branches(w, 1024);
    auto signature = [](const SpectrumDecomposition& s) {
      std::vector<std::tuple<int, int, int>> sig;  // (translates, winding, constant)
      for (const auto& br : s.branches)
        sig.emplace_back(br.translates, br.winding, br.constant ? 1 : 0);
      std::sort(sig.begin(), sig.end());
      return sig;
    };
    CHECK(signature(a) == signature(b));
    std::vector<double> pa, pb;
    for (const auto& br : a.branches) pa.push_back(br.minimal_period);
    for (const auto& br : b.branches) pb.push_back(br.minimal_period);
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) CHECK(std::abs(pa[i] - pb[i]) <= 1e-9);
  }
}

TEST_CASE("group velocity: closed cases, finite differences, and the speed cap") {
  const EigenvalueFunction sh = track_branches(testutil::shift_walk(1), 1024).branches[0];
  for (double k : {0.0, 1.1, -2.3}) CHECK(std::abs(group_velocity(sh, k) - 1.0) <= 1e-10);

  for (const auto& b : track_branches(make_registry_walk("grover3"), 1024).branches)
    if (b.constant) CHECK(group_velocity(b, 0.77) == doctest::Approx(0.0));

  const EigenvalueFunction coin =
      track_branches(make_registry_walk("coin", {0.6}), 1024).branches[0];
  const double eps = 1e-4;
  for (double k : {kPi, 0.4, 2.6}) {
    const double fd = std::arg(coin.eval(k + eps) / coin.eval(k - eps)) / (2.0 * eps);
    CHECK(std::abs(group_velocity(coin, k) - fd) <= 1e-6);
  }

  const std::vector<std::pair<std::string, std::vector<double>>> walks = {
      {"coin", {0.6}}, {"grover3", {}}, {"grover4", {}}, {"cube", {}}, {"s3-walk", {}}};
  for (const auto& [name, args] : walks) {
    CAPTURE(name);
    const WalkDefinition w = make_registry_walk(name, args);
    const double cap = propagation_radius(w) + 1e-6;
    for (const auto& b : track_branches(w, 1024).branches) {
      if (b.constant) continue;
      const double h = b.grid_step();
      for (int u = 0; u < b.samples.size(); u += 3)
        CHECK(std::abs(group_velocity(b, u * h)) <= cap);
    }
  }
}

TEST_CASE("series resampling is consistent and guards its bandwidth") {
  const EigenvalueFunction b =
      track_branches(make_registry_walk("coin", {0.6}), 1024).branches[0];
  const std::vector<cd> re = series_samples(b.fourier, static_cast<int>(b.samples.size()));
  double worst = 0.0;
  for (int u = 0; u < b.samples.size(); ++u) worst = std::max(worst, std::abs(re[u] - b.samples[u]));
  CHECK(worst <= 1e-10);

  const std::vector<cd> off = series_samples(b.fourier, 257, 0.37);
  const double step = b.p / 257.0;
  for (int u = 0; u < 257; u += 13)
    CHECK(std::abs(off[u] - b.fourier.eval(0.37 + u * step)) <= 1e-12);

  const EigenvalueFunction g4 = *moving(track_branches(make_registry_walk("grover4"), 1024))[0];
  CHECK_THROWS_AS(series_samples(g4.fourier, 16), WindowTooSmall);
}

TEST_CASE("limit law of transparent walks") {
  const LimitDistribution one =
      limit_velocity_distribution(make_registry_walk("shift"), delta_state(1, 1, {0}, 0), 1024);
  CHECK(one.total_mass == doctest::Approx(1.0).epsilon(1e-6));
  for (const auto& [v, m] : one.atoms) CHECK(std::abs(v - 1.0) <= 1e-9);

  const LimitDistribution cube =
      limit_velocity_distribution(make_registry_walk("cube"), delta_state(1, 3, {0}, 0), 1024);
  CHECK(cube.total_mass == doctest::Approx(1.0).epsilon(1e-6));
  double mean = 0.0;
  for (const auto& [v, m] : cube.atoms) {
    CHECK(std::abs(v - 2.0 / 3.0) <= 1e-8);
    mean += v * m;
  }
  CHECK(mean == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("limit law matches long-run empirical velocities") {
  const double a = 1.0 / std::sqrt(2.0);
  const WalkDefinition w = make_registry_walk("coin", {a});
  const StateVector xi = delta_state(1, 2, {0}, 0);
  const LimitDistribution lim = limit_velocity_distribution(w, xi, 2048);
  CHECK(lim.total_mass == doctest::Approx(1.0).epsilon(1e-6));

  const long t = 2000;
  const auto nu = velocity_distribution(evolve(w, xi, t), t).atoms1d();
  CHECK(kolmogorov_distance(lim.atoms, nu) <= 0.05);
}

TEST_CASE("guards on grid size and dimensionality") {
  CHECK_THROWS_AS(track_branches(make_registry_walk("coin", {0.6}), 256), std::invalid_argument);
  CHECK_THROWS_AS(track_branches(make_registry_walk("grover2d"), 1024), NotSupported);
  CHECK_THROWS_AS(eigenvalues_at(make_registry_walk("grover2d"), 0.5), NotSupported);
}

}  // TEST_SUITE
