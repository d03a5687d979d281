#include "qw/state.hpp"

#include <algorithm>
#include <cmath>

#include "qw/errors.hpp"

namespace qw {

int64_t pack_position(const std::vector<int>& x) {
  switch (x.size()) {
    case 1:
      return x[0];
    case 2:
      return (static_cast<int64_t>(static_cast<uint32_t>(x[0])) << 32) |
             static_cast<uint32_t>(x[1]);
    case 3: {
      constexpr int64_t B = 1 << 20;  // per-axis range (-B, B)
      for (int a : x)
        if (a <= -B || a >= B) throw NotSupported("3-d site out of packable range");
      return ((x[0] + B) * (2 * B) + (x[1] + B)) * (2 * B) + (x[2] + B);
    }
    default:
      throw NotSupported("dynamics supports d <= 3");
  }
}

std::vector<int> unpack_position(int64_t key, int d) {
  switch (d) {
    case 1:
      return {static_cast<int>(key)};
    case 2:
      return {static_cast<int>(static_cast<int32_t>(key >> 32)),
              static_cast<int>(static_cast<int32_t>(key & 0xffffffff))};
    case 3: {
      constexpr int64_t B = 1 << 20;
      const int z = static_cast<int>(key % (2 * B)) - B;
      key /= 2 * B;
      const int y = static_cast<int>(key % (2 * B)) - B;
      key /= 2 * B;
      return {static_cast<int>(key) - static_cast<int>(B), y, z};
    }
    default:
      throw NotSupported("dynamics supports d <= 3");
  }
}

cd StateVector::amplitude(const std::vector<int>& x, int comp) const {
  auto it = amplitudes.find(pack_position(x));
  return it == amplitudes.end() ? cd(0.0, 0.0) : it->second[comp];
}

void StateVector::add(const std::vector<int>& x, int comp, cd v) {
  auto& spinor = amplitudes[pack_position(x)];
  if (spinor.size() == 0) spinor = Eigen::VectorXcd::Zero(n);
  spinor[comp] += v;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& [k, a] : amplitudes) s += a.squaredNorm();
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double s = norm();
  if (s == 0.0) throw NotNormalized("cannot normalize the zero state");
  for (auto& [k, a] : amplitudes) a /= s;
}

void StateVector::truncate(double eps) {
  std::erase_if(amplitudes, [eps](const auto& kv) { return kv.second.norm() <= eps; });
}

std::vector<int64_t> StateVector::sorted_support() const {
  std::vector<int64_t> keys;
  keys.reserve(amplitudes.size());
  for (const auto& [k, a] : amplitudes) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), [this](int64_t a, int64_t b) {
    return unpack_position(a, d) < unpack_position(b, d);
  });
  return keys;
}

bool StateVector::bounding_box(std::vector<int>& lo, std::vector<int>& hi) const {
  if (amplitudes.empty()) return false;
  lo.assign(d, 0);
  hi.assign(d, 0);
  bool first = true;
  for (const auto& [key, a] : amplitudes) {
    const auto x = unpack_position(key, d);
    for (int i = 0; i < d; ++i) {
      lo[i] = first ? x[i] : std::min(lo[i], x[i]);
      hi[i] = first ? x[i] : std::max(hi[i], x[i]);
    }
    first = false;
  }
  return true;
}

StateVector delta_state(int d, int n, const std::vector<int>& x, int comp) {
  StateVector s;
  s.d = d;
  s.n = n;
  s.add(x, comp, 1.0);
  return s;
}

}  // namespace qw
