#include "qw/ctqw.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qw/dynamics.hpp"
#include "qw/errors.hpp"

namespace qw {

namespace {

using cd = std::complex<double>;

// Principal argument with the cut snapped so the negative real axis maps to
// +pi even under roundoff noise in the imaginary part.
double principal_phase(cd z) {
  const double h = std::arg(z);
  return h <= -M_PI + 1e-9 ? M_PI : h;
}

RealizabilityVerdict verdict_of(const Decomposition& d) {
  RealizabilityVerdict v;
  v.realizable = true;
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    const int wind = d.parts[i].constant() ? 0 : d.parts[i].lambda.winding;
    v.windings.emplace_back(static_cast<int>(i), wind);
    if (wind != 0 && v.obstruction < 0) {
      v.obstruction = static_cast<int>(i);
      v.realizable = false;
    }
  }
  return v;
}

}  // namespace

RealizabilityVerdict realizable(const WalkDefinition& w, int grid) {
  return verdict_of(decompose(w, grid));
}

PhaseGenerator build_generator(const WalkDefinition& w, int grid) {
  PhaseGenerator g;
  g.walk = w;
  g.decomposition = decompose(w, grid);

  const RealizabilityVerdict v = verdict_of(g.decomposition);
  if (!v.realizable) {
    std::ostringstream os;
    os << "part " << v.obstruction << " winds " << v.windings[v.obstruction].second
       << "; no continuous-time realization";
    throw NotRealizable(os.str());
  }

  for (const auto& lam : g.decomposition.spectrum.branches) {
    if (lam.constant) {
      const double h = principal_phase(lam.constant_value);  // in (-pi, pi]
      g.phase_samples.push_back(
          Eigen::VectorXd::Constant(lam.samples.size(), h));
      FourierSeries s;
      s.p = lam.p;
      s.coeff.emplace_back(0, cd(h, 0.0));
      g.phase_fourier.push_back(std::move(s));
      continue;
    }
    const int count = static_cast<int>(lam.samples.size());
    Eigen::VectorXd theta(count);
    theta[0] = principal_phase(lam.samples[0]);  // pins h(0) in (-pi, pi]
    for (int u = 1; u < count; ++u)
      theta[u] = theta[u - 1] + std::arg(lam.samples[u] / lam.samples[u - 1]);
    // Zero total winding means the unwrapped phase closes up over the period.
    std::vector<cd> buf(count);
    for (int u = 0; u < count; ++u) buf[u] = cd(theta[u], 0.0);
    g.phase_samples.push_back(std::move(theta));
    g.phase_fourier.push_back(fourier_fit(buf, lam.p));
  }
  return g;
}

ContinuousWalk bind_generator(const PhaseGenerator& g, int window) {
  ContinuousWalk cw;
  cw.win = centered_window(window, g.walk.n);
  const BranchSections secs =
      build_sections(g.walk, g.decomposition.spectrum, window, 0.0);
  cw.sections = secs.per_branch;
  for (std::size_t b = 0; b < g.phase_fourier.size(); ++b) {
    const int cols = static_cast<int>(cw.sections[b].cols());
    const std::vector<cd> vals = series_samples(g.phase_fourier[b], cols);
    Eigen::VectorXd ph(cols);
    for (int u = 0; u < cols; ++u) ph[u] = std::real(vals[u]);
    cw.phases.push_back(std::move(ph));
  }
  return cw;
}

StateVector ContinuousWalk::apply(double t, const StateVector& xi, double trunc) const {
  const int M = win.M;
  const Eigen::MatrixXcd f = win.to_k(xi);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(win.n, M);
  for (std::size_t b = 0; b < sections.size(); ++b) {
    const Eigen::MatrixXcd& s = sections[b];
    for (int u = 0; u < s.cols(); ++u) {
      const int base = u % M;
      const cd amp = s.col(u).dot(f.col(base));
      out.col(base) += std::polar(1.0, t * phases[b][u]) * amp * s.col(u);
    }
  }
  return win.from_k(out, trunc);
}

StateVector evolve_continuous(const PhaseGenerator& g, double t, const StateVector& xi,
                              int window) {
  return bind_generator(g, window).apply(t, xi);
}

double verify_realization(const PhaseGenerator& g, int window, int trials, unsigned seed) {
  const ContinuousWalk cw = bind_generator(g, window);
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    StateVector xi;
    xi.d = 1;
    xi.n = g.walk.n;
    for (int x = cw.win.x0 + window / 4; x < cw.win.x0 + 3 * window / 4; ++x) {
      Eigen::VectorXcd v(g.walk.n);
      for (int c = 0; c < g.walk.n; ++c) v[c] = cd(gauss(rng), gauss(rng));
      xi.amplitudes[x] = v;
    }
    xi.normalize();
    worst = std::max(worst, state_distance(cw.apply(1.0, xi), step(g.walk, xi)));
  }
  return worst;
}

}  // namespace qw
