#include "qw/walk_io.hpp"

#include <fstream>

#include "qw/errors.hpp"

namespace qw {

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double need_num(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number()) throw SchemaError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

WalkDefinition parse_walk(const json& j) {
  WalkDefinition w;
  w.name = j.value("name", "walk");
  w.d = need_int(j, "d");
  w.n = need_int(j, "n");
  if (w.d < 1 || w.n < 1) throw SchemaError("d and n must be positive");
  const json& rows = need(j, "entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != w.n)
    throw SchemaError("entries must be an n x n array");
  w.entries.assign(static_cast<size_t>(w.n) * w.n, LaurentPoly{});
  for (int i = 0; i < w.n; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != w.n)
      throw SchemaError("entries must be an n x n array");
    for (int jj = 0; jj < w.n; ++jj) {
      const json& terms = row.at(jj);
      if (!terms.is_array()) throw SchemaError("entry must be a term list");
      LaurentPoly p;
      for (const json& t : terms) {
        const json& shift = need(t, "shift");
        if (!shift.is_array() || static_cast<int>(shift.size()) != w.d)
          throw SchemaError("term shift must have d components");
        std::vector<int> s;
        for (const json& c : shift) {
          if (!c.is_number_integer()) throw SchemaError("shift components must be integers");
          s.push_back(c.get<int>());
        }
        p.terms.push_back({std::move(s), cd(need_num(t, "re"), need_num(t, "im"))});
      }
      p.normalize();
      w.at(i, jj) = p;
    }
  }
  validate_walk(w);
  return w;
}

json serialize_walk(const WalkDefinition& w) {
  json rows = json::array();
  for (int i = 0; i < w.n; ++i) {
    json row = json::array();
    for (int jj = 0; jj < w.n; ++jj) {
      json terms = json::array();
      for (const auto& t : w.at(i, jj).terms)
        terms.push_back({{"shift", t.shift}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
      row.push_back(std::move(terms));
    }
    rows.push_back(std::move(row));
  }
  return {{"name", w.name}, {"d", w.d}, {"n", w.n}, {"entries", std::move(rows)}};
}

StateVector parse_state(const json& j) {
  StateVector s;
  s.d = need_int(j, "d");
  s.n = need_int(j, "n");
  if (s.d < 1 || s.n < 1) throw SchemaError("d and n must be positive");
  const json& amps = need(j, "amplitudes");
  if (!amps.is_array()) throw SchemaError("amplitudes must be an array");
  for (const json& a : amps) {
    const json& pos = need(a, "pos");
    if (!pos.is_array() || static_cast<int>(pos.size()) != s.d)
      throw SchemaError("pos must have d components");
    std::vector<int> x;
    for (const json& c : pos) {
      if (!c.is_number_integer()) throw SchemaError("pos components must be integers");
      x.push_back(c.get<int>());
    }
    const int comp = need_int(a, "comp");
    if (comp < 0 || comp >= s.n) throw SchemaError("comp out of range");
    s.add(x, comp, cd(need_num(a, "re"), need_num(a, "im")));
  }
  return s;
}

json serialize_state(const StateVector& s) {
  json amps = json::array();
  for (int64_t key : s.sorted_support()) {
    const auto x = unpack_position(key, s.d);
    const auto& spinor = s.amplitudes.at(key);
    for (int c = 0; c < s.n; ++c)
      if (spinor[c] != cd(0.0, 0.0))
        amps.push_back({{"pos", x},
                        {"comp", c},
                        {"re", spinor[c].real()},
                        {"im", spinor[c].imag()}});
  }
  return {{"d", s.d}, {"n", s.n}, {"amplitudes", std::move(amps)}};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IOError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

WalkDefinition load_walk(const std::string& path) { return parse_walk(load_json(path)); }
StateVector load_state(const std::string& path) {
  StateVector s = parse_state(load_json(path));
  return s;
}

}  // namespace qw
