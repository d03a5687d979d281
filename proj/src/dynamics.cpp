#include "qw/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "qw/errors.hpp"

namespace qw {

namespace {

void check_state(const WalkDefinition& w, const StateVector& xi) {
  if (xi.d != w.d || xi.n != w.n)
    throw DimensionMismatch("state does not match the walk's lattice/internal dimensions");
}

// Flattened term list of a symbol matrix.
struct Term {
  int i, j;
  std::vector<int> shift;
  cd coeff;
};

std::vector<Term> term_list(const WalkDefinition& w) {
  std::vector<Term> ts;
  for (int i = 0; i < w.n; ++i)
    for (int j = 0; j < w.n; ++j)
      for (const auto& t : w.at(i, j).terms) ts.push_back({i, j, t.shift, t.coeff});
  return ts;
}

// Dense buffer on a box [lo, hi] (inclusive) with room to grow; the box is
// re-derived from the walk radius each step.
struct Box {
  int d, n;
  std::vector<int> lo, hi;   // inclusive
  std::vector<int> stride;
  std::vector<cd> data;      // site-major, component-minor

  int64_t volume() const {
    int64_t v = 1;
    for (int a = 0; a < d; ++a) v *= hi[a] - lo[a] + 1;
    return v;
  }
  void shape() {
    stride.assign(d, 1);
    for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * (hi[a + 1] - lo[a + 1] + 1);
    data.assign(static_cast<size_t>(volume()) * n, cd(0.0, 0.0));
  }
  int64_t site_index(const std::vector<int>& x) const {
    int64_t idx = 0;
    for (int a = 0; a < d; ++a) idx += static_cast<int64_t>(x[a] - lo[a]) * stride[a];
    return idx;
  }
};

Box box_from_state(const StateVector& xi, long t_growth, int radius) {
  Box b;
  b.d = xi.d;
  b.n = xi.n;
  if (!xi.bounding_box(b.lo, b.hi)) {
    b.lo.assign(xi.d, 0);
    b.hi.assign(xi.d, 0);
  }
  const long margin = t_growth * radius;
  for (int a = 0; a < b.d; ++a) {
    b.lo[a] -= static_cast<int>(margin);
    b.hi[a] += static_cast<int>(margin);
  }
  b.shape();
  for (const auto& [key, spinor] : xi.amplitudes) {
    const auto x = unpack_position(key, xi.d);
    const int64_t s = b.site_index(x);
    for (int c = 0; c < b.n; ++c) b.data[s * b.n + c] = spinor[c];
  }
  return b;
}

StateVector box_to_state(const Box& b) {
  StateVector out;
  out.d = b.d;
  out.n = b.n;
  std::vector<int> x = b.lo;
  const int64_t vol = b.volume();
  for (int64_t s = 0; s < vol; ++s) {
    Eigen::VectorXcd spinor(b.n);
    bool nonzero = false;
    for (int c = 0; c < b.n; ++c) {
      spinor[c] = b.data[s * b.n + c];
      nonzero = nonzero || spinor[c] != cd(0.0, 0.0);
    }
    if (nonzero) out.amplitudes.emplace(pack_position(x), std::move(spinor));
    for (int a = b.d - 1; a >= 0; --a) {
      if (++x[a] <= b.hi[a]) break;
      x[a] = b.lo[a];
    }
  }
  return out;
}

// One step inside the box: out(x + s) += coeff * in(x)[j].  The box must
// already include the grown support.
void box_step(const Box& in, Box& out, const std::vector<Term>& terms) {
  out.data.assign(out.data.size(), cd(0.0, 0.0));
  const int64_t vol = in.volume();
  std::vector<int> x = in.lo;
  // per-term linear offset between in-site index (relative to in) mapped
  // into out's indexing
  std::vector<int64_t> base(terms.size());
  for (size_t ti = 0; ti < terms.size(); ++ti) {
    int64_t off = 0;
    for (int a = 0; a < in.d; ++a)
      off += static_cast<int64_t>(in.lo[a] + terms[ti].shift[a] - out.lo[a]) * out.stride[a];
    base[ti] = off;
  }
  for (int64_t s = 0; s < vol; ++s) {
    const cd* src = &in.data[s * in.n];
    // out linear site index for term ti: base[ti] + sum_a (x-in.lo)[a]*out.stride[a]
    int64_t rel = 0;
    for (int a = 0; a < in.d; ++a) rel += static_cast<int64_t>(x[a] - in.lo[a]) * out.stride[a];
    for (size_t ti = 0; ti < terms.size(); ++ti) {
      const cd v = src[terms[ti].j];
      if (v != cd(0.0, 0.0))
        out.data[(base[ti] + rel) * out.n + terms[ti].i] += terms[ti].coeff * v;
    }
    for (int a = in.d - 1; a >= 0; --a) {
      if (++x[a] <= in.hi[a]) break;
      x[a] = in.lo[a];
    }
  }
}

StateVector evolve_schedule(const std::vector<const WalkDefinition*>& factors,
                            const StateVector& xi, long t) {
  if (t < 0) throw std::invalid_argument("negative time");
  for (const auto* w : factors) check_state(*w, xi);
  if (t == 0) return xi;
  int rmax = 0;
  for (const auto* w : factors) rmax = std::max(rmax, propagation_radius(*w));
  std::vector<std::vector<Term>> terms;
  terms.reserve(factors.size());
  for (const auto* w : factors) terms.push_back(term_list(*w));

  Box cur = box_from_state(xi, t, rmax);
  Box next = cur;
  for (long s = 0; s < t; ++s) {
    box_step(cur, next, terms[s % factors.size()]);
    std::swap(cur.data, next.data);
  }
  return box_to_state(cur);
}

}  // namespace

StateVector step(const WalkDefinition& w, const StateVector& xi) {
  check_state(w, xi);
  StateVector out;
  out.d = xi.d;
  out.n = xi.n;
  const auto terms = term_list(w);
  for (const auto& [key, spinor] : xi.amplitudes) {
    const auto x = unpack_position(key, xi.d);
    for (const auto& t : terms) {
      const cd v = spinor[t.j];
      if (v == cd(0.0, 0.0)) continue;
      std::vector<int> y(x);
      for (int a = 0; a < xi.d; ++a) y[a] += t.shift[a];
      out.add(y, t.i, t.coeff * v);
    }
  }
  out.truncate(0.0);
  return out;
}

StateVector evolve(const WalkDefinition& w, const StateVector& xi, long t) {
  return evolve_schedule({&w}, xi, t);
}

StateVector periodic_evolve(const PeriodicSchedule& s, const StateVector& xi, long t) {
  if (s.factors.empty()) throw DimensionMismatch("empty schedule");
  std::vector<const WalkDefinition*> fs;
  for (const auto& w : s.factors) fs.push_back(&w);
  return evolve_schedule(fs, xi, t);
}

PositionDistribution position_distribution(const StateVector& xi) {
  const double nrm = xi.norm();
  if (std::abs(nrm - 1.0) > 1e-10)
    throw NotNormalized("state norm is " + std::to_string(nrm));
  PositionDistribution mu;
  mu.d = xi.d;
  for (const auto& [key, spinor] : xi.amplitudes) {
    const double m = spinor.squaredNorm();
    if (m > 0.0) mu.mass[key] += m;
  }
  return mu;
}

std::vector<std::pair<std::vector<int>, double>> PositionDistribution::sorted() const {
  std::vector<std::pair<std::vector<int>, double>> out;
  out.reserve(mass.size());
  for (const auto& [key, m] : mass) out.emplace_back(unpack_position(key, d), m);
  std::sort(out.begin(), out.end());
  return out;
}

VelocityDistribution velocity_distribution(const StateVector& evolved, long t) {
  if (t <= 0) throw std::invalid_argument("velocity distribution needs t >= 1");
  const PositionDistribution mu = position_distribution(evolved);
  VelocityDistribution nu;
  nu.d = evolved.d;
  nu.t = t;
  nu.mass = mu.mass;
  return nu;
}

std::vector<std::pair<std::vector<double>, double>> VelocityDistribution::sorted() const {
  std::vector<std::pair<std::vector<double>, double>> out;
  out.reserve(mass.size());
  for (const auto& [key, m] : mass) {
    const auto x = unpack_position(key, d);
    std::vector<double> v(x.size());
    for (size_t a = 0; a < x.size(); ++a) v[a] = static_cast<double>(x[a]) / t;
    out.emplace_back(std::move(v), m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<double, double>> VelocityDistribution::atoms1d() const {
  if (d != 1) throw NotSupported("scalar atoms need d = 1");
  std::vector<std::pair<double, double>> out;
  out.reserve(mass.size());
  for (const auto& [key, m] : mass)
    out.emplace_back(static_cast<double>(unpack_position(key, 1)[0]) / t, m);
  std::sort(out.begin(), out.end());
  return out;
}

cd characteristic_function(const VelocityDistribution& nu, const Eigen::VectorXd& k) {
  if (k.size() != nu.d) throw DimensionMismatch("k has wrong dimension");
  cd v = 0.0;
  for (const auto& [key, m] : nu.mass) {
    const auto x = unpack_position(key, nu.d);
    double phase = 0.0;
    for (int a = 0; a < nu.d; ++a) phase += k[a] * x[a] / nu.t;
    v += m * std::polar(1.0, phase);
  }
  return v;
}

cd characteristic_function(const VelocityDistribution& nu, double k) {
  Eigen::VectorXd kv(1);
  kv << k;
  return characteristic_function(nu, kv);
}

namespace {

MomentReport moments_impl(int d, int order,
                          const std::vector<std::pair<std::vector<double>, double>>& atoms) {
  if (order < 0 || order > 8) throw std::invalid_argument("moment order must be in 0..8");
  MomentReport r;
  r.order = order;
  r.raw = Eigen::MatrixXd::Zero(d, order + 1);
  for (const auto& [x, m] : atoms)
    for (int a = 0; a < d; ++a) {
      double pw = 1.0;
      for (int q = 0; q <= order; ++q) {
        r.raw(a, q) += m * pw;
        pw *= x[a];
      }
    }
  r.mean = Eigen::VectorXd::Zero(d);
  r.variance = Eigen::VectorXd::Zero(d);
  if (order >= 1) r.mean = r.raw.col(1);
  if (order >= 2)
    for (int a = 0; a < d; ++a)
      r.variance[a] = std::max(0.0, r.raw(a, 2) - r.mean[a] * r.mean[a]);
  return r;
}

}  // namespace

MomentReport moments(const PositionDistribution& mu, int order) {
  std::vector<std::pair<std::vector<double>, double>> atoms;
  for (const auto& [key, m] : mu.mass) {
    const auto x = unpack_position(key, mu.d);
    atoms.emplace_back(std::vector<double>(x.begin(), x.end()), m);
  }
  return moments_impl(mu.d, order, atoms);
}

MomentReport moments(const VelocityDistribution& nu, int order) {
  return moments_impl(nu.d, order, nu.sorted());
}

double kolmogorov_distance(std::vector<std::pair<double, double>> a,
                           std::vector<std::pair<double, double>> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double fa = 0.0, fb = 0.0, worst = 0.0;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    const double xa = i < a.size() ? a[i].first : std::numeric_limits<double>::infinity();
    const double xb = j < b.size() ? b[j].first : std::numeric_limits<double>::infinity();
    const double x = std::min(xa, xb);
    while (i < a.size() && a[i].first == x) fa += a[i++].second;
    while (j < b.size() && b[j].first == x) fb += b[j++].second;
    worst = std::max(worst, std::abs(fa - fb));
  }
  return worst;
}

}  // namespace qw
