#include "qw/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <sstream>

#include "qw/detail/assignment.hpp"
#include "qw/errors.hpp"

namespace qw {

namespace {

constexpr double kCrossingTol = 1e-9;   // targets this close count as one point
constexpr double kResidualFactor = 0.1; // prediction sharpness vs contested gap
constexpr int kMaxDepth = 12;

std::vector<cd> schur_eigenvalues(const Eigen::MatrixXcd& U) {
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(U, false);
  std::vector<cd> ev(U.rows());
  for (int i = 0; i < U.rows(); ++i) ev[i] = schur.matrixT()(i, i);
  return ev;
}

// Two-point history of one tracked slot; supports linear extrapolation over
// non-uniform steps (bisection shrinks them).
struct SlotHist {
  cd v1 = 0.0;     // value at k1 (latest)
  double k1 = 0.0;
  bool has0 = false;
  cd v0 = 0.0;
  double k0 = 0.0;

  cd predict(double k) const {
    if (!has0 || k1 == k0) return v1;
    return v1 + (v1 - v0) * ((k - k1) / (k1 - k0));
  }
  void advance(double k, cd v) {
    v0 = v1;
    k0 = k1;
    has0 = true;
    v1 = v;
    k1 = k;
  }
};

struct Tracker {
  const WalkDefinition& w;
  std::vector<SlotHist> slots;

  std::vector<int> assignment(const std::vector<cd>& targets, bool first_order,
                              double k) const {
    const int n = static_cast<int>(slots.size());
    Eigen::MatrixXd cost(n, n);
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c)
        cost(j, c) = std::abs((first_order ? slots[j].predict(k) : slots[j].v1) - targets[c]);
    return detail::min_cost_assignment(cost);
  }

  // Assigns targets at momentum k to slots and advances them, bisecting with
  // fresh eigensolves when the continuation is ambiguous.
  std::vector<int> assign_and_advance(double k, const std::vector<cd>& targets, int depth) {
    const int n = static_cast<int>(slots.size());
    const auto s1 = assignment(targets, true, k);
    const auto s0 = assignment(targets, false, k);
    bool ok = (s0 == s1);
    if (!ok) {
      // contested targets: the columns where the two assignments differ
      std::vector<int> contested;
      for (int j = 0; j < n; ++j)
        if (s0[j] != s1[j]) {
          contested.push_back(s0[j]);
          contested.push_back(s1[j]);
        }
      double spread = 0.0;
      double gap = std::numeric_limits<double>::infinity();
      for (size_t a = 0; a < contested.size(); ++a)
        for (size_t b = a + 1; b < contested.size(); ++b) {
          const double dist = std::abs(targets[contested[a]] - targets[contested[b]]);
          spread = std::max(spread, dist);
          if (dist > kCrossingTol) gap = std::min(gap, dist);
        }
      if (spread <= kCrossingTol) {
        ok = true;  // exact crossing: any continuation is the same point
      } else {
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
          if (s0[j] != s1[j])
            worst = std::max(worst, std::abs(slots[j].predict(k) - targets[s1[j]]));
        ok = worst <= kResidualFactor * gap;
      }
    }
    if (!ok) {
      if (depth >= kMaxDepth) {
        std::ostringstream os;
        os << "ambiguous branch continuation near k = " << k
           << " after " << kMaxDepth << " bisections";
        throw TrackingAmbiguity(os.str());
      }
      const double km = 0.5 * (slots[0].k1 + k);
      const auto mid = schur_eigenvalues(evaluate_symbol(w, km));
      assign_and_advance(km, mid, depth + 1);
      return assign_and_advance(k, targets, depth + 1);
    }
    for (int j = 0; j < n; ++j) slots[j].advance(k, targets[s1[j]]);
    return s1;
  }
};

}  // namespace

std::vector<cd> eigenvalues_at(const WalkDefinition& w, double k) {
  if (w.d != 1) throw NotSupported("branch analysis is 1-d only");
  if (w.unitarity_defect < 0.0 || w.unitarity_defect > 1e-10)
    throw NonUnitarySymbol("walk failed (or skipped) the unitarity gate");
  const auto ev = schur_eigenvalues(evaluate_symbol(w, k));
  for (const cd& e : ev)
    if (std::abs(std::abs(e) - 1.0) > 1e-9)
      throw NonUnitarySymbol("eigenvalue off the unit circle");
  return ev;
}

std::vector<cd> series_samples(const FourierSeries& s, int count, double offset) {
  int maxfreq = 0;
  for (const auto& [j, c] : s.coeff) maxfreq = std::max(maxfreq, std::abs(j));
  if (2 * maxfreq >= count)
    throw WindowTooSmall("resolution below the branch bandwidth");
  std::vector<cd> freq(count, cd(0.0, 0.0));
  for (const auto& [j, c] : s.coeff)
    freq[(j % count + count) % count] += c * std::polar(1.0, 2.0 * M_PI * j * offset / s.p);
  Eigen::FFT<double> fft;
  std::vector<cd> out(count);
  fft.inv(out, freq);  // (1/count) sum_m freq[m] e^{+2 pi i u m / count}
  for (auto& v : out) v *= static_cast<double>(count);
  return out;
}

EigenvalueFunction make_branch(Eigen::VectorXcd samples, double p, int ambient_n) {
  EigenvalueFunction lam;
  lam.p = p;
  lam.translates = std::max(1, static_cast<int>(std::lround(p / (2.0 * M_PI))));
  lam.ambient_n = ambient_n;
  lam.samples = std::move(samples);

  const int n = static_cast<int>(lam.samples.size());
  const cd mean = lam.samples.sum() / static_cast<double>(n);
  double var = 0.0;
  for (int u = 0; u < n; ++u) var += std::norm(lam.samples[u] - mean);
  var /= n;
  if (var <= 1e-12) {
    lam.constant = true;
    lam.constant_value = mean;
    lam.fourier.p = p;
    lam.fourier.coeff = {{0, mean}};
    lam.minimal_period = 0.0;
    lam.winding = 0;
    lam.winding_residual = 0.0;
    return lam;
  }
  std::vector<cd> buf(lam.samples.data(), lam.samples.data() + n);
  lam.fourier = fourier_fit(buf, p);
  lam.minimal_period = minimal_period_of(lam);
  lam.winding = winding_number(lam, &lam.winding_residual);
  return lam;
}

double minimal_period_of(const EigenvalueFunction& lam, double tol) {
  if (lam.constant) return 0.0;
  const int n = static_cast<int>(lam.samples.size());
  for (int m = 2 * lam.ambient_n; m >= 2; --m) {
    double sup;
    if (n % m == 0) {
      const int jump = n / m;
      sup = 0.0;
      for (int u = 0; u < n; ++u)
        sup = std::max(sup, std::abs(lam.samples[u] - lam.samples[(u + jump) % n]));
    } else {
      sup = 0.0;
      for (const auto& [j, c] : lam.fourier.coeff)
        if (j % m != 0)
          sup += std::abs(c) * std::abs(std::polar(1.0, 2.0 * M_PI * j / m) - cd(1.0, 0.0));
    }
    if (sup <= tol) return lam.p / m;
  }
  return lam.p;
}

int winding_number(const EigenvalueFunction& lam, double* residual) {
  if (residual) *residual = 0.0;
  if (lam.constant) return 0;
  const int n = static_cast<int>(lam.samples.size());
  double total = 0.0;
  for (int u = 0; u < n; ++u) {
    const cd a = lam.samples[u];
    const cd b = lam.samples[(u + 1) % n];
    if (a == cd(0.0, 0.0) || b == cd(0.0, 0.0))
      throw UnwrapFailure("branch sample vanishes; no winding on the circle");
    const double jump = std::arg(b / a);
    if (std::abs(jump) >= M_PI / 2.0)
      throw UnwrapFailure("phase jump >= pi/2 between adjacent samples; grid too coarse");
    total += jump;
  }
  const double q = lam.minimal_period > 0.0 ? lam.minimal_period : minimal_period_of(lam);
  const int m = std::max(1, static_cast<int>(std::lround(lam.p / q)));
  const double raw = total / (2.0 * M_PI * m);
  const int wind = static_cast<int>(std::lround(raw));
  const double res = std::abs(raw - wind);
  if (residual) *residual = res;
  if (res > 0.01)
    throw UnwrapFailure("winding total is not near an integer multiple of 2 pi");
  return wind;
}

double group_velocity(const EigenvalueFunction& lam, double k) {
  if (lam.constant) return 0.0;
  const cd v = lam.fourier.eval(k);
  const cd dv = lam.fourier.derivative().eval(k);
  return std::imag(std::conj(v) * dv);
}

SpectrumDecomposition track_branches(const WalkDefinition& w, int grid_size) {
  if (w.d != 1) throw NotSupported("branch tracking is 1-d only");
  if (grid_size < 512) throw std::invalid_argument("grid_size must be at least 512");
  const int N = grid_size;
  const int n = w.n;
  const double h = 2.0 * M_PI / N;

  std::vector<std::vector<cd>> eigs(N);
  for (int i = 0; i < N; ++i) eigs[i] = eigenvalues_at(w, i * h);

  // start where the spectrum is best separated so extrapolation history
  // exists before any crossing
  int i0 = 0;
  double best = -1.0;
  for (int i = 0; i < N; ++i) {
    double gap = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        gap = std::min(gap, std::abs(eigs[i][a] - eigs[i][b]));
    if (n == 1) gap = 1.0;
    if (gap > best) {
      best = gap;
      i0 = i;
    }
  }

  Tracker tracker{w, std::vector<SlotHist>(n)};
  std::vector<std::vector<cd>> path(n);
  for (int j = 0; j < n; ++j) {
    tracker.slots[j].v1 = eigs[i0][j];
    tracker.slots[j].k1 = i0 * h;
    path[j].push_back(eigs[i0][j]);
  }
  std::vector<int> closing(n);
  for (int s = 1; s <= N; ++s) {
    const double k = (i0 + s) * h;
    const auto& targets = eigs[(i0 + s) % N];
    const auto sigma = tracker.assign_and_advance(k, targets, 0);
    if (s < N)
      for (int j = 0; j < n; ++j) path[j].push_back(targets[sigma[j]]);
    else
      closing = sigma;
  }

  // monodromy cycles -> branches of period 2 pi m
  SpectrumDecomposition out;
  out.grid = N;
  std::vector<bool> seen(n, false);
  for (int j = 0; j < n; ++j) {
    if (seen[j]) continue;
    std::vector<int> cycle;
    int c = j;
    while (!seen[c]) {
      seen[c] = true;
      cycle.push_back(c);
      c = closing[c];
    }
    const int m = static_cast<int>(cycle.size());
    Eigen::VectorXcd samples(m * N);
    for (int lap = 0; lap < m; ++lap)
      for (int i = 0; i < N; ++i) {
        const int swept = lap * N + i;           // position along the sweep
        const int u = (swept + i0) % (m * N);    // domain index, kappa = u h
        samples[u] = path[cycle[lap]][i];
      }
    EigenvalueFunction lam = make_branch(std::move(samples), 2.0 * M_PI * m, n);

    // off-grid certificate: the fitted branch must interpolate the spectrum
    if (!lam.constant) {
      double worst = 0.0;
      const int probes = 64;
      for (int q = 0; q < probes; ++q) {
        const double kappa = lam.p * (q + 0.37) / probes;
        const cd fit = lam.eval(kappa);
        const auto ev = schur_eigenvalues(evaluate_symbol(w, kappa));
        double nearest = std::numeric_limits<double>::infinity();
        for (const cd& e : ev) nearest = std::min(nearest, std::abs(fit - e));
        worst = std::max(worst, nearest);
      }
      lam.closure_defect = worst;
    }
    out.branches.push_back(std::move(lam));
  }
  return out;
}

}  // namespace qw
