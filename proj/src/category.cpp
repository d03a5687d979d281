#include "qw/category.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "qw/errors.hpp"

namespace qw {

namespace {

using cd = std::complex<double>;

constexpr double kPeriodTol = 1e-9;      // periods must agree this tightly to compare
constexpr double kTranslationSup = 1e-7;  // sup-norm gate certifying lambda2 = lambda1(. - l)
constexpr double kShiftSnap = 1e-8;       // shifts this close to 0 (mod q) collapse to 0

// E(l) = sum_f |c2_f - c1_f e^{-2 pi i f l / q}|^2 via matched coefficient lists.
struct ShiftObjective {
  double q;
  double base = 0.0;                       // sum of unmatched |c|^2 plus matched moduli
  std::vector<std::pair<int, cd>> cross;   // (f, conj(c2_f) c1_f) over common frequencies

  double operator()(double l) const {
    double acc = base;
    for (const auto& [f, w] : cross)
      acc -= 2.0 * std::real(w * std::polar(1.0, -2.0 * M_PI * f * l / q));
    return acc;
  }
};

ShiftObjective make_objective(const FourierSeries& a, const FourierSeries& b, double q) {
  ShiftObjective obj;
  obj.q = q;
  std::size_t i = 0, j = 0;
  while (i < a.coeff.size() || j < b.coeff.size()) {
    if (j == b.coeff.size() || (i < a.coeff.size() && a.coeff[i].first < b.coeff[j].first)) {
      obj.base += std::norm(a.coeff[i].second);
      ++i;
    } else if (i == a.coeff.size() || b.coeff[j].first < a.coeff[i].first) {
      obj.base += std::norm(b.coeff[j].second);
      ++j;
    } else {
      obj.base += std::norm(a.coeff[i].second) + std::norm(b.coeff[j].second);
      obj.cross.emplace_back(a.coeff[i].first, std::conj(b.coeff[j].second) * a.coeff[i].second);
      ++i;
      ++j;
    }
  }
  return obj;
}

double golden_minimize(const ShiftObjective& f, double lo, double hi, int iters = 120) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iters && b - a > 1e-14; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Kuhn augmenting-path maximum bipartite matching; adj[i] lists right vertices.
bool kuhn_try(int u, const std::vector<std::vector<int>>& adj, std::vector<char>& used,
              std::vector<int>& match_r) {
  for (int v : adj[u]) {
    if (used[v]) continue;
    used[v] = 1;
    if (match_r[v] < 0 || kuhn_try(match_r[v], adj, used, match_r)) {
      match_r[v] = u;
      return true;
    }
  }
  return false;
}

std::vector<int> max_matching(int n_left, int n_right, const std::vector<std::vector<int>>& adj) {
  std::vector<int> match_r(n_right, -1);
  for (int u = 0; u < n_left; ++u) {
    std::vector<char> used(n_right, 0);
    kuhn_try(u, adj, used, match_r);
  }
  return match_r;
}

}  // namespace

std::vector<ModelWalk> split_model(const ModelWalk& m) {
  const EigenvalueFunction& lam = m.lambda;
  if (lam.constant) return {m};
  const double q = lam.minimal_period;
  const int copies = std::max(1, static_cast<int>(std::lround(lam.p / q)));
  if (copies == 1) return {m};

  // q-periodic on the length-p torus: only frequencies divisible by p/q survive.
  FourierSeries rebased;
  rebased.p = q;
  for (const auto& [f, c] : lam.fourier.coeff)
    if (f % copies == 0) rebased.coeff.emplace_back(f / copies, c);

  const int count = std::max<int>(64, static_cast<int>(lam.samples.size()) / copies);
  const std::vector<cd> resampled = series_samples(rebased, count);
  Eigen::VectorXcd sq(count);
  for (int u = 0; u < count; ++u) sq[u] = resampled[u];

  EigenvalueFunction part = make_branch(std::move(sq), q, lam.ambient_n);
  part.closure_defect = lam.closure_defect;
  return std::vector<ModelWalk>(copies, ModelWalk{part});
}

Decomposition decompose(const WalkDefinition& w, int grid) {
  Decomposition d;
  d.spectrum = track_branches(w, grid);
  for (std::size_t b = 0; b < d.spectrum.branches.size(); ++b) {
    ModelWalk whole{d.spectrum.branches[b]};
    for (auto& part : split_model(whole)) {
      d.parts.push_back(std::move(part));
      d.parent.push_back(static_cast<int>(b));
    }
  }
  return d;
}

std::optional<double> translation_shift(const EigenvalueFunction& l1,
                                        const EigenvalueFunction& l2) {
  if (l1.constant || l2.constant) return std::nullopt;
  const double q = l1.p;
  if (std::abs(l2.p - q) > kPeriodTol) return std::nullopt;

  const int count =
      static_cast<int>(std::max(l1.samples.size(), l2.samples.size()));
  const std::vector<cd> s2 = series_samples(l2.fourier, count);

  const ShiftObjective obj = make_objective(l1.fourier, l2.fourier, q);
  const double h = q / count;
  int best_j = 0;
  double best_e = obj(0.0);
  for (int j = 1; j < count; ++j) {
    const double e = obj(j * h);
    if (e < best_e) {
      best_e = e;
      best_j = j;
    }
  }
  double l = golden_minimize(obj, (best_j - 1) * h, (best_j + 1) * h);
  l = std::fmod(l, q);
  if (l < 0.0) l += q;
  if (l <= kShiftSnap || q - l <= kShiftSnap) l = 0.0;

  double sup = 0.0;
  for (int u = 0; u < count; ++u)
    sup = std::max(sup, std::abs(s2[u] - l1.fourier.eval(u * h - l)));
  if (sup > kTranslationSup) return std::nullopt;
  return l;
}

IntertwinerDescriptor intertwiner_space(const ModelWalk& m1, const ModelWalk& m2) {
  IntertwinerDescriptor out;
  if (m1.constant() && m2.constant()) {
    if (std::abs(m1.lambda.constant_value - m2.lambda.constant_value) <= kTranslationSup) {
      out.kind = IntertwinerDescriptor::Kind::Translation;
      out.shift = 0.0;
      out.family = "every multiplication operator M[f]; identical constant spectra";
    } else {
      out.family = "zero; distinct constant spectra";
    }
    return out;
  }
  if (m1.constant() != m2.constant()) {
    out.family = "zero; constant against non-constant spectrum";
    return out;
  }
  if (std::abs(m1.period() - m2.period()) > kPeriodTol) {
    out.family = "zero; minimal periods differ";
    return out;
  }
  const auto l = translation_shift(m1.lambda, m2.lambda);
  if (!l) {
    out.family = "zero; spectra are not translates";
    return out;
  }
  out.kind = IntertwinerDescriptor::Kind::Translation;
  out.shift = *l;
  std::ostringstream os;
  os << "M[f] sigma_l with f continuous on the length-" << m1.period() << " torus, l = " << *l;
  out.family = os.str();
  return out;
}

SimilarityReport has_uniform_intertwiner(const WalkDefinition& w1, const WalkDefinition& w2,
                                         int grid) {
  const Decomposition d1 = decompose(w1, grid);
  const Decomposition d2 = decompose(w2, grid);

  SimilarityReport rep;
  const int n1 = static_cast<int>(d1.parts.size());
  const int n2 = static_cast<int>(d2.parts.size());
  std::vector<std::vector<int>> adj(n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const auto desc = intertwiner_space(d1.parts[i], d2.parts[j]);
      if (desc.kind == IntertwinerDescriptor::Kind::Translation) {
        rep.witness.push_back({i, j, desc.shift});
        adj[i].push_back(j);
      }
    }
  rep.intertwiner_exists = !rep.witness.empty();

  if (n1 == n2) {
    const std::vector<int> match_r = max_matching(n1, n2, adj);
    const int size = n2 - static_cast<int>(std::count(match_r.begin(), match_r.end(), -1));
    rep.similar = size == n1;
  }
  return rep;
}

std::vector<PairedParts> maximum_pairing(const SimilarityReport& rep) {
  int n1 = 0, n2 = 0;
  for (const auto& pr : rep.witness) {
    n1 = std::max(n1, pr.part1 + 1);
    n2 = std::max(n2, pr.part2 + 1);
  }
  std::vector<std::vector<int>> adj(n1);
  for (const auto& pr : rep.witness) adj[pr.part1].push_back(pr.part2);
  std::vector<int> match_r = max_matching(n1, n2, adj);

  std::vector<PairedParts> out;
  for (const auto& pr : rep.witness)
    if (match_r[pr.part2] == pr.part1) {
      out.push_back(pr);
      match_r[pr.part2] = -2;  // take each matched edge once
    }
  return out;
}

bool is_indecomposable(const WalkDefinition& w, int grid) {
  const Decomposition d = decompose(w, grid);
  if (d.parts.size() != 1) return false;
  // A lone constant still decomposes unless there is no room to split (n = 1).
  return !d.parts[0].constant() || w.n == 1;
}

std::vector<ModelWalk> common_divisor(const WalkDefinition& w1, const WalkDefinition& w2,
                                      int grid) {
  const Decomposition d1 = decompose(w1, grid);
  const Decomposition d2 = decompose(w2, grid);
  const int n1 = static_cast<int>(d1.parts.size());
  const int n2 = static_cast<int>(d2.parts.size());
  std::vector<std::vector<int>> adj(n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      if (intertwiner_space(d1.parts[i], d2.parts[j]).kind ==
          IntertwinerDescriptor::Kind::Translation)
        adj[i].push_back(j);

  const std::vector<int> match_r = max_matching(n1, n2, adj);
  std::vector<ModelWalk> out;
  std::vector<char> taken(n1, 0);
  for (int j = 0; j < n2; ++j)
    if (match_r[j] >= 0 && !taken[match_r[j]]) {
      taken[match_r[j]] = 1;
      out.push_back(d1.parts[match_r[j]]);
    }
  return out;
}

MaterializedIntertwiner materialize_intertwiner(
    const WalkDefinition& w1, const WalkDefinition& w2, const Decomposition& d1,
    const Decomposition& d2, const std::vector<PairedParts>& pairing, int window,
    const std::vector<std::function<cd(double)>>& multipliers) {
  if (!multipliers.empty() && multipliers.size() != pairing.size())
    throw DimensionMismatch("need one multiplier per paired part");

  // Collapse part pairs onto parent-branch pairs; the window intertwiner acts
  // branchwise, so a branch may enter only with all of its copies at once.
  struct Group {
    double shift = 0.0;
    int count = 0;
    std::function<cd(double)> mult;
  };
  std::map<std::pair<int, int>, Group> groups;
  std::map<int, int> used1, used2;
  for (std::size_t e = 0; e < pairing.size(); ++e) {
    const auto& pr = pairing[e];
    const int b1 = d1.parent.at(pr.part1);
    const int b2 = d2.parent.at(pr.part2);
    auto& g = groups[{b1, b2}];
    if (g.count == 0) {
      g.shift = pr.shift;
      if (!multipliers.empty()) g.mult = multipliers[e];
    }
    ++g.count;
    ++used1[b1];
    ++used2[b2];
  }
  auto copies_of = [](const Decomposition& d, int branch) {
    return static_cast<int>(std::count(d.parent.begin(), d.parent.end(), branch));
  };
  for (const auto& [b, cnt] : used1)
    if (cnt != copies_of(d1, b))
      throw NotSupported("pairing must include every copy of a branch or none of them");
  for (const auto& [b, cnt] : used2)
    if (cnt != copies_of(d2, b))
      throw NotSupported("pairing must include every copy of a branch or none of them");
  for (const auto& [key, g] : groups) {
    const double p1 = d1.spectrum.branches[key.first].p;
    const double p2 = d2.spectrum.branches[key.second].p;
    if (std::abs(p1 - p2) > kPeriodTol)
      throw NotSupported("paired branches carry different torus lengths");
  }

  MaterializedIntertwiner mi;
  mi.win1 = centered_window(window, w1.n);
  mi.win2 = centered_window(window, w2.n);
  mi.sections2 = build_sections(w2, d2.spectrum, window, 0.0);
  for (const auto& [key, g] : groups) {
    mi.pairs.push_back({key.first, key.second, g.shift, g.mult});
    mi.sections1.push_back(build_sections(w1, d1.spectrum, window, -g.shift));
  }
  return mi;
}

StateVector MaterializedIntertwiner::apply(const StateVector& xi) const {
  const int M = win1.M;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(win2.n, M);
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& pr = pairs[idx];
    StateVector phi = xi;
    if (pr.shift != 0.0)
      for (auto& [x, amp] : phi.amplitudes)
        amp *= std::polar(1.0, -pr.shift * static_cast<double>(x));
    const Eigen::MatrixXcd f = win1.to_k(phi);

    const Eigen::MatrixXcd& s1 = sections1[idx].per_branch[pr.branch1];
    const Eigen::MatrixXcd& s2 = sections2.per_branch[pr.branch2];
    if (s1.cols() != s2.cols())
      throw DimensionMismatch("paired branches sample different domains");
    for (int u = 0; u < s1.cols(); ++u) {
      const int base = u % M;
      cd amp = s1.col(u).dot(f.col(base));  // <s1(k - l), xi_hat(k - l)>
      if (pr.multiplier) amp *= pr.multiplier(2.0 * M_PI * u / M);
      out.col(base) += amp * s2.col(u);
    }
  }
  return win2.from_k(out);
}

double verify_intertwiner(const WalkDefinition& w1, const WalkDefinition& w2,
                          const std::vector<PairedParts>& pairing, int window, int trials,
                          unsigned seed, int grid,
                          const std::vector<std::function<cd(double)>>& multipliers) {
  const Decomposition d1 = decompose(w1, grid);
  const Decomposition d2 = decompose(w2, grid);
  const MaterializedIntertwiner mi =
      materialize_intertwiner(w1, w2, d1, d2, pairing, window, multipliers);

  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    StateVector xi;
    xi.d = 1;
    xi.n = w1.n;
    // Live on the central half so one cyclic step matches the lattice step.
    for (int x = mi.win1.x0 + window / 4; x < mi.win1.x0 + 3 * window / 4; ++x) {
      Eigen::VectorXcd v(w1.n);
      for (int c = 0; c < w1.n; ++c) v[c] = cd(gauss(rng), gauss(rng));
      xi.amplitudes[x] = v;
    }
    xi.normalize();
    const StateVector lhs = mi.apply(cyclic_step(w1, mi.win1, xi));
    const StateVector rhs = cyclic_step(w2, mi.win2, mi.apply(xi));
    worst = std::max(worst, state_distance(lhs, rhs));
  }
  return worst;
}

}  // namespace qw
