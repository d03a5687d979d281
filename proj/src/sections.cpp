#include "qw/sections.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <functional>
#include <numeric>

#include "qw/detail/assignment.hpp"
#include "qw/errors.hpp"

namespace qw {

namespace {

constexpr double kClusterTol = 1e-8;

void canonical_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-12) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
}

}  // namespace

BranchSections build_sections(const WalkDefinition& w, const SpectrumDecomposition& spec,
                              int base_grid, double offset) {
  if (w.d != 1) throw NotSupported("sections are 1-d only");
  const int M = base_grid;
  const int n = w.n;
  const int B = static_cast<int>(spec.branches.size());
  const double h = 2.0 * M_PI / M;

  // branch eigenvalue targets resampled on this harness
  std::vector<std::vector<cd>> targets(B);
  for (int b = 0; b < B; ++b) {
    const auto& lam = spec.branches[b];
    if (lam.constant)
      targets[b].assign(static_cast<size_t>(M) * lam.translates, lam.constant_value);
    else
      targets[b] = series_samples(lam.fourier, M * lam.translates, offset);
  }

  // slot list: one per (branch, translate); sums to n
  struct Slot {
    int b, l;
  };
  std::vector<Slot> slots;
  for (int b = 0; b < B; ++b)
    for (int l = 0; l < spec.branches[b].translates; ++l) slots.push_back({b, l});
  if (static_cast<int>(slots.size()) != n)
    throw DimensionMismatch("branch translates do not cover the fiber");

  BranchSections out;
  out.base_grid = M;
  out.offset = offset;
  out.per_branch.resize(B);
  for (int b = 0; b < B; ++b)
    out.per_branch[b] = Eigen::MatrixXcd::Zero(n, M * spec.branches[b].translates);

  // start the sweep at the best separated base momentum
  std::vector<std::vector<cd>> eigs(M);
  std::vector<Eigen::MatrixXcd> bases(M);
  int istart = 0;
  double best = -1.0;
  for (int i = 0; i < M; ++i) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(evaluate_symbol(w, offset + i * h), true);
    bases[i] = schur.matrixU();
    eigs[i].resize(n);
    for (int c = 0; c < n; ++c) eigs[i][c] = schur.matrixT()(c, c);
    double gap = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a)
      for (int c = a + 1; c < n; ++c) gap = std::min(gap, std::abs(eigs[i][a] - eigs[i][c]));
    if (n == 1) gap = 1.0;
    if (gap > best) {
      best = gap;
      istart = i;
    }
  }

  const int L = n;  // columns per base point
  for (int s = 0; s < M; ++s) {
    const int i = (istart + s) % M;
    // match slots to Schur columns by eigenvalue
    Eigen::MatrixXd cost(L, L);
    for (int sl = 0; sl < L; ++sl) {
      const auto [b, l] = slots[sl];
      const cd target = targets[b][i + static_cast<size_t>(l) * M];
      for (int c = 0; c < L; ++c) cost(sl, c) = std::abs(target - eigs[i][c]);
    }
    const auto match = detail::min_cost_assignment(cost);

    // near-degenerate clusters of columns (union by eigenvalue proximity)
    std::vector<int> cluster(L);
    std::iota(cluster.begin(), cluster.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return cluster[x] == x ? x : cluster[x] = find(cluster[x]);
    };
    for (int a = 0; a < L; ++a)
      for (int c = a + 1; c < L; ++c)
        if (std::abs(eigs[i][a] - eigs[i][c]) <= kClusterTol) cluster[find(a)] = find(c);

    std::vector<std::vector<int>> groups(L);
    for (int c = 0; c < L; ++c) groups[find(c)].push_back(c);

    for (const auto& cols : groups) {
      if (cols.empty()) continue;
      // slots mapped into this cluster
      std::vector<int> members;
      for (int sl = 0; sl < L; ++sl)
        if (std::find(cols.begin(), cols.end(), match[sl]) != cols.end()) members.push_back(sl);

      Eigen::MatrixXcd Qc(n, cols.size());
      for (size_t c = 0; c < cols.size(); ++c) Qc.col(c) = bases[i].col(cols[c]);

      if (s == 0) {
        for (size_t c = 0; c < members.size(); ++c) {
          const auto [b, l] = slots[members[c]];
          Eigen::VectorXcd v = Qc.col(c);
          canonical_phase(v);
          out.per_branch[b].col(i + static_cast<size_t>(l) * M) = v;
        }
        continue;
      }

      // previous section of each member slot: domain predecessor (u - 1 mod)
      Eigen::MatrixXcd P(n, members.size());
      for (size_t c = 0; c < members.size(); ++c) {
        const auto [b, l] = slots[members[c]];
        const int dom = M * spec.branches[b].translates;
        const int u_prev = ((i + l * M - 1) % dom + dom) % dom;
        P.col(c) = out.per_branch[b].col(u_prev);
      }
      // unitary Procrustes: rotate the cluster basis onto the predecessors
      const Eigen::MatrixXcd Bm = Qc.adjoint() * P;
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Bm, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Eigen::MatrixXcd rotated = Qc * (svd.matrixU() * svd.matrixV().adjoint());
      for (size_t c = 0; c < members.size(); ++c) {
        const auto [b, l] = slots[members[c]];
        out.per_branch[b].col(i + static_cast<size_t>(l) * M) = rotated.col(c);
      }
    }
  }

  // per-branch phase smoothing: consecutive overlaps real positive, closing
  // holonomy spread evenly along the domain
  for (int b = 0; b < B; ++b) {
    auto& sec = out.per_branch[b];
    const int dom = static_cast<int>(sec.cols());
    for (int u = 1; u < dom; ++u) {
      const cd ov = sec.col(u - 1).dot(sec.col(u));
      if (std::abs(ov) > 1e-12) sec.col(u) *= std::conj(ov) / std::abs(ov);
    }
    const cd closing = sec.col(dom - 1).dot(sec.col(0));
    if (std::abs(closing) > 1e-12) {
      const double alpha = std::arg(closing);
      for (int u = 0; u < dom; ++u) sec.col(u) *= std::polar(1.0, alpha * u / dom);
    }
  }
  return out;
}

LimitDistribution limit_velocity_distribution(const WalkDefinition& w, const StateVector& xi,
                                              int grid_size) {
  if (w.d != 1) throw NotSupported("limit distribution is 1-d only");
  if (xi.d != 1 || xi.n != w.n) throw DimensionMismatch("state does not match the walk");
  if (std::abs(xi.norm() - 1.0) > 1e-10) throw NotNormalized("limit law needs a unit state");

  const SpectrumDecomposition spec = track_branches(w, grid_size);
  const BranchSections sections = build_sections(w, spec, grid_size);
  const int N = grid_size;
  const double h = 2.0 * M_PI / N;

  // xi_hat(k_i) = sum_x xi(x) e^{i k_i x}, one column per base momentum
  Eigen::MatrixXcd xihat = Eigen::MatrixXcd::Zero(w.n, N);
  for (const auto& [key, spinor] : xi.amplitudes) {
    const int x = unpack_position(key, 1)[0];
    for (int i = 0; i < N; ++i) xihat.col(i) += std::polar(1.0, i * h * x) * spinor;
  }

  LimitDistribution lim;
  for (size_t b = 0; b < spec.branches.size(); ++b) {
    const auto& lam = spec.branches[b];
    const int dom = static_cast<int>(lam.samples.size());
    std::vector<cd> deriv;
    if (!lam.constant) {
      deriv = series_samples(lam.fourier.derivative(), dom);
    }
    for (int u = 0; u < dom; ++u) {
      const cd amp = sections.per_branch[b].col(u).dot(xihat.col(u % N));
      const double mass = std::norm(amp) / N;
      const double v = lam.constant ? 0.0 : std::imag(std::conj(lam.samples[u]) * deriv[u]);
      lim.atoms.emplace_back(v, mass);
    }
  }
  std::sort(lim.atoms.begin(), lim.atoms.end());
  for (const auto& [v, m] : lim.atoms) lim.total_mass += m;
  return lim;
}

}  // namespace qw
