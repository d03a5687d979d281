#include "qw/walk.hpp"

#include <sstream>

#include "qw/errors.hpp"

namespace qw {

Eigen::MatrixXcd evaluate_symbol(const WalkDefinition& w, const Eigen::VectorXd& k) {
  if (k.size() != w.d) throw DimensionMismatch("momentum has wrong dimension");
  Eigen::MatrixXcd U(w.n, w.n);
  for (int i = 0; i < w.n; ++i)
    for (int j = 0; j < w.n; ++j) U(i, j) = w.at(i, j).eval(k.data(), w.d);
  return U;
}

Eigen::MatrixXcd evaluate_symbol(const WalkDefinition& w, double k) {
  Eigen::VectorXd kv(1);
  kv << k;
  return evaluate_symbol(w, kv);
}

int propagation_radius(const WalkDefinition& w) {
  int r = 0;
  for (const auto& e : w.entries) r = std::max(r, e.radius());
  return r;
}

RegularityClass classify_regularity(const WalkDefinition& w) {
  RegularityClass c;
  c.radius = propagation_radius(w);
  return c;
}

WalkDefinition direct_sum(const WalkDefinition& w1, const WalkDefinition& w2) {
  if (w1.d != w2.d) throw DimensionMismatch("direct sum needs equal lattice dimension");
  WalkDefinition w;
  w.name = w1.name + "+" + w2.name;
  w.d = w1.d;
  w.n = w1.n + w2.n;
  w.entries.assign(static_cast<size_t>(w.n) * w.n, LaurentPoly{});
  for (int i = 0; i < w1.n; ++i)
    for (int j = 0; j < w1.n; ++j) w.at(i, j) = w1.at(i, j);
  for (int i = 0; i < w2.n; ++i)
    for (int j = 0; j < w2.n; ++j) w.at(w1.n + i, w1.n + j) = w2.at(i, j);
  w.unitarity_defect = std::max(w1.unitarity_defect, w2.unitarity_defect);
  return w;
}

double validate_walk(WalkDefinition& w, int points_per_axis, double tol) {
  if (w.n < 1 || w.d < 1) throw SchemaError("walk needs n >= 1, d >= 1");
  if (w.entries.size() != static_cast<size_t>(w.n) * w.n)
    throw SchemaError("entry count is not n*n");
  for (const auto& e : w.entries)
    for (const auto& t : e.terms)
      if (static_cast<int>(t.shift.size()) != w.d)
        throw SchemaError("term shift has wrong dimension");

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(w.n, w.n);
  double worst = 0.0;
  Eigen::VectorXd worst_k = Eigen::VectorXd::Zero(w.d);
  Eigen::VectorXd k(w.d);
  std::vector<int> idx(w.d, 0);
  const double h = 2.0 * M_PI / points_per_axis;
  while (true) {
    for (int a = 0; a < w.d; ++a) k[a] = idx[a] * h;
    const Eigen::MatrixXcd U = evaluate_symbol(w, k);
    const double defect = (U.adjoint() * U - id).cwiseAbs().maxCoeff();
    if (defect > worst) {
      worst = defect;
      worst_k = k;
    }
    int a = 0;
    while (a < w.d && ++idx[a] == points_per_axis) idx[a++] = 0;
    if (a == w.d) break;
  }
  w.unitarity_defect = worst;
  if (worst > tol) {
    std::ostringstream os;
    os << "symbol is not unitary: defect " << worst << " at k = (";
    for (int a = 0; a < w.d; ++a) os << (a ? ", " : "") << worst_k[a];
    os << ")";
    throw NonUnitaryError(os.str());
  }
  return worst;
}

WalkDefinition make_walk(std::string name, int d, int n, std::vector<LaurentPoly> entries) {
  WalkDefinition w;
  w.name = std::move(name);
  w.d = d;
  w.n = n;
  w.entries = std::move(entries);
  for (auto& e : w.entries) e.normalize();
  validate_walk(w);
  return w;
}

}  // namespace qw
