#pragma once

// Closed-form spectra and small symbol builders shared by the suites.
// Formulas here are derived by hand from the walk matrices; agreement with
// the tracked branches is what the spectral tests certify.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "qw/category.hpp"
#include "qw/detail/assignment.hpp"
#include "qw/spectral.hpp"
#include "qw/walk.hpp"

namespace testutil {

using qw::cd;

inline constexpr double kPi = 3.14159265358979323846;

// coin(a): one 4*pi branch  e^{ik/2} (a cos(k/2) - i sqrt(1 - a^2 cos^2(k/2))).
inline cd coin_branch(double a, double k) {
  const double c = std::cos(0.5 * k);
  return std::polar(1.0, 0.5 * k) * cd(a * c, -std::sqrt(1.0 - a * a * c * c));
}

// grover3: the moving branch on period 4*pi (the third eigenvalue is -1).
inline cd grover3_branch(double k) {
  return cd((2.0 + std::cos(k)) / 3.0,
            std::sin(0.5 * k) * std::sqrt(10.0 + 2.0 * std::cos(k)) / 3.0);
}

// grover4: the two moving branches on period 2*pi (plus constants +1, -1).
inline cd grover4_branch(double k, int sign) {
  const double c = std::cos(k);
  return cd(0.5 * (std::cos(k) + std::cos(3.0 * k)),
            sign * std::sin(k) * std::sqrt(1.0 + 4.0 * c * c * c * c));
}

// coin-decomposable(a): branches a cos k +- i sqrt(1 - a^2 cos^2 k) on 2*pi.
inline cd decomposable_branch(double a, double k, int sign) {
  const double c = a * std::cos(k);
  return cd(c, sign * std::sqrt(1.0 - c * c));
}

// Sup distance of tracked samples to a closed form, minimized over the
// translate relabeling (which of the m sheets the tracker called slot zero).
template <class F>
double branch_error(const qw::EigenvalueFunction& b, F&& f) {
  const double h = b.grid_step();
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < b.translates; ++j) {
    double worst = 0.0;
    for (int u = 0; u < b.samples.size(); ++u)
      worst = std::max(worst, std::abs(b.samples[u] - f(u * h + 2.0 * kPi * j)));
    best = std::min(best, worst);
  }
  return best;
}

// Max matched distance between two complex multisets (optimal assignment).
inline double multiset_distance(const std::vector<cd>& a, const std::vector<cd>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd cost(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost(i, j) = std::abs(a[i] - b[j]);
  const std::vector<int> match = qw::detail::min_cost_assignment(cost);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, cost(i, match[i]));
  return worst;
}

// Winding accumulated over the full branch period p (minimal-period winding
// times the number of repeats); additive under pointwise products.
inline int total_winding(const qw::EigenvalueFunction& b) {
  if (b.constant) return 0;
  return b.winding * static_cast<int>(std::lround(b.p / b.minimal_period));
}

inline qw::WalkDefinition shift_walk(int s) {
  qw::LaurentPoly p;
  p.add_term({s}, 1.0);
  return qw::make_walk("shift^" + std::to_string(s), 1, 1, {p});
}

// d = 1 walk with entry (i, j) = C[i][j] S^{rows[i]} (zero shift when C is a
// plain coin).
inline qw::WalkDefinition row_shifted_coin(std::string name, const Eigen::MatrixXcd& c,
                                           const std::vector<int>& rows) {
  const int n = static_cast<int>(c.rows());
  std::vector<qw::LaurentPoly> entries(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (c(i, j) != cd(0.0, 0.0)) entries[i * n + j].add_term({rows[i]}, c(i, j));
  return qw::make_walk(std::move(name), 1, n, std::move(entries));
}

// Symbol conjugation by a constant unitary: V(k) = Q U(k) Q^*.
inline qw::WalkDefinition conjugate_walk(const qw::WalkDefinition& w,
                                         const Eigen::MatrixXcd& q) {
  std::vector<qw::LaurentPoly> entries(w.n * w.n);
  for (int i = 0; i < w.n; ++i)
    for (int j = 0; j < w.n; ++j) {
      qw::LaurentPoly acc;
      for (int a = 0; a < w.n; ++a)
        for (int b = 0; b < w.n; ++b) {
          const cd scale = q(i, a) * std::conj(q(j, b));
          if (scale == cd(0.0, 0.0)) continue;
          for (const auto& t : w.at(a, b).terms) acc.add_term(t.shift, scale * t.coeff);
        }
      entries[i * w.n + j] = std::move(acc);
    }
  return qw::make_walk(w.name + "-rotated", w.d, w.n, std::move(entries));
}

// Branch translated in momentum: mu(k) = lambda(k - l), same period.
inline qw::EigenvalueFunction translated_branch(const qw::EigenvalueFunction& b, double l) {
  Eigen::VectorXcd samples(b.samples.size());
  const double h = b.grid_step();
  for (int u = 0; u < samples.size(); ++u) samples[u] = b.eval(u * h - l);
  return qw::make_branch(std::move(samples), b.p, b.ambient_n);
}

// Pointwise product of two branches sampled on a common period/grid.
inline qw::EigenvalueFunction product_branch(const qw::EigenvalueFunction& a,
                                             const qw::EigenvalueFunction& b) {
  const int count = static_cast<int>(std::max(a.samples.size(), b.samples.size()));
  Eigen::VectorXcd samples(count);
  const double h = a.p / count;
  for (int u = 0; u < count; ++u) samples[u] = a.eval(u * h) * b.eval(u * h);
  return qw::make_branch(std::move(samples), a.p, a.ambient_n);
}

// Perfect part matching by brute force permutation search; fine for <= 6 parts.
inline bool parts_biject(const std::vector<qw::ModelWalk>& a,
                         const std::vector<qw::ModelWalk>& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> perm(a.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i)
      ok = qw::intertwiner_space(a[i], b[perm[i]]).kind ==
           qw::IntertwinerDescriptor::Kind::Translation;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace testutil
