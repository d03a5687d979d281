#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qw/errors.hpp"

namespace qw {

using cd = std::complex<double>;

// One monomial c * S_1^{s_1} ... S_d^{s_d} of a symbol entry.
struct LaurentTerm {
  std::vector<int> shift;
  cd coeff;
};

inline bool operator==(const LaurentTerm& a, const LaurentTerm& b) {
  return a.shift == b.shift && a.coeff == b.coeff;
}

// Finite Laurent polynomial in d commuting shifts.  Terms carry pairwise
// distinct shift vectors, no zero coefficients, sorted lexicographically,
// so structural equality is semantic equality.
struct LaurentPoly {
  std::vector<LaurentTerm> terms;

  void normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const LaurentTerm& a, const LaurentTerm& b) { return a.shift < b.shift; });
    std::vector<LaurentTerm> out;
    for (const auto& t : terms) {
      if (!out.empty() && out.back().shift == t.shift)
        out.back().coeff += t.coeff;
      else
        out.push_back(t);
    }
    std::erase_if(out, [](const LaurentTerm& t) { return t.coeff == cd(0.0, 0.0); });
    terms = std::move(out);
  }

  void add_term(std::vector<int> shift, cd c) {
    terms.push_back({std::move(shift), c});
    normalize();
  }

  static LaurentPoly constant(int d, cd c) {
    LaurentPoly p;
    if (c != cd(0.0, 0.0)) p.terms.push_back({std::vector<int>(d, 0), c});
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  bool is_constant() const {
    return terms.empty() ||
           (terms.size() == 1 &&
            std::all_of(terms[0].shift.begin(), terms[0].shift.end(),
                        [](int s) { return s == 0; }));
  }

  // sum_s c_s exp(i s.k)
  cd eval(const double* k, int d) const {
    cd v = 0.0;
    for (const auto& t : terms) {
      double phase = 0.0;
      for (int a = 0; a < d; ++a) phase += t.shift[a] * k[a];
      v += t.coeff * std::polar(1.0, phase);
    }
    return v;
  }

  int radius() const {
    int r = 0;
    for (const auto& t : terms)
      for (int s : t.shift) r = std::max(r, std::abs(s));
    return r;
  }
};

inline bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  return a.terms == b.terms;
}

// p * q (shifts add, coefficients multiply)
inline LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly r;
  for (const auto& a : p.terms)
    for (const auto& b : q.terms) {
      std::vector<int> s(a.shift.size());
      for (size_t i = 0; i < s.size(); ++i) s[i] = a.shift[i] + b.shift[i];
      r.terms.push_back({std::move(s), a.coeff * b.coeff});
    }
  r.normalize();
  return r;
}

inline LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly r = p;
  r.terms.insert(r.terms.end(), q.terms.begin(), q.terms.end());
  r.normalize();
  return r;
}

}  // namespace qw
