#include "qw/registry.hpp"

#include <cmath>
#include <sstream>

#include "qw/errors.hpp"

namespace qw {

namespace {

LaurentPoly poly1(std::initializer_list<std::pair<int, cd>> terms) {
  LaurentPoly p;
  for (const auto& [s, c] : terms) p.terms.push_back({{s}, c});
  p.normalize();
  return p;
}

LaurentPoly poly2(std::initializer_list<std::pair<std::pair<int, int>, cd>> terms) {
  LaurentPoly p;
  for (const auto& [s, c] : terms) p.terms.push_back({{s.first, s.second}, c});
  p.normalize();
  return p;
}

double coin_param(const std::vector<double>& args, const std::string& name) {
  if (args.size() != 1) throw SchemaError(name + " takes one parameter a");
  const double a = args[0];
  if (!(a > 0.0 && a < 1.0)) throw SchemaError(name + " needs 0 < a < 1");
  return a;
}

WalkDefinition coin_walk(double a) {
  const double b = std::sqrt(1.0 - a * a);
  std::ostringstream name;
  name << "coin(" << a << ")";
  return make_walk(name.str(), 1, 2,
                   {poly1({{1, a}}), poly1({{1, -b}}),
                    poly1({{0, b}}), poly1({{0, a}})});
}

WalkDefinition coin_split(double a, const std::string& label) {
  const double b = std::sqrt(1.0 - a * a);
  std::ostringstream name;
  name << label << "(" << a << ")";
  return make_walk(name.str(), 1, 2,
                   {poly1({{-1, a}}), poly1({{-1, -b}}),
                    poly1({{1, b}}), poly1({{1, a}})});
}

WalkDefinition grover3_walk() {
  const double u = 1.0 / 3.0;
  return make_walk("grover3", 1, 3,
                   {poly1({{-1, u}}), poly1({{-1, -2 * u}}), poly1({{-1, -2 * u}}),
                    poly1({{0, -2 * u}}), poly1({{0, u}}), poly1({{0, -2 * u}}),
                    poly1({{1, -2 * u}}), poly1({{1, -2 * u}}), poly1({{1, u}})});
}

WalkDefinition grover4_walk() {
  const int shift[4] = {-3, -1, 1, 3};
  std::vector<LaurentPoly> e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e.push_back(poly1({{shift[i], i == j ? 0.5 : -0.5}}));
  return make_walk("grover4", 1, 4, std::move(e));
}

WalkDefinition cube_walk() {
  std::vector<LaurentPoly> e(9);
  e[0 * 3 + 1] = poly1({{1, 1.0}});
  e[1 * 3 + 2] = poly1({{1, 1.0}});
  e[2 * 3 + 0] = poly1({{0, 1.0}});
  return make_walk("cube", 1, 3, std::move(e));
}

WalkDefinition shift_walk() {
  return make_walk("shift", 1, 1, {poly1({{1, 1.0}})});
}

WalkDefinition s3_walk() {
  const LaurentPoly off = poly1({{1, 0.5}, {-1, -0.5}});
  return make_walk("s3-walk", 1, 2,
                   {poly1({{3, 0.5}, {1, 0.5}}), off,
                    off, poly1({{-1, 0.5}, {-3, 0.5}})});
}

WalkDefinition grover2d_walk() {
  return make_walk("grover2d", 2, 2,
                   {poly2({{{1, 0}, 0.5}, {{0, 1}, 0.5}}),
                    poly2({{{-1, 0}, -0.5}, {{0, -1}, 0.5}}),
                    poly2({{{1, 0}, 0.5}, {{0, 1}, -0.5}}),
                    poly2({{{-1, 0}, 0.5}, {{0, -1}, 0.5}})});
}

WalkDefinition grover2d4_walk() {
  const std::pair<int, int> shift[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::vector<LaurentPoly> e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e.push_back(poly2({{shift[i], i == j ? 0.5 : -0.5}}));
  return make_walk("grover2d-4state", 2, 4, std::move(e));
}

}  // namespace

const std::vector<RegistryEntry>& registry_entries() {
  static const std::vector<RegistryEntry> entries = {
      {"coin", "a", 1, 2, "coined walk, one 4pi eigenvalue branch, winding 1"},
      {"coin-decomposable", "a", 1, 2, "coined walk splitting into two 2pi branches"},
      {"coin-realizable", "a", 1, 2, "coined walk with zero windings, CTQW-realizable"},
      {"grover3", "", 1, 3, "3-state Grover walk, constant -1 branch plus a 4pi branch"},
      {"grover4", "", 1, 4, "4-state Grover walk, windings +1/-1, not CTQW-realizable"},
      {"cube", "", 1, 3, "cyclic shift walk, branch period 6pi with minimal period 3pi"},
      {"shift", "", 1, 1, "bilateral shift, ballistic transport at v = 1"},
      {"s3-walk", "", 1, 2, "2-state walk sharing the Grover-4 moving branches"},
      {"grover2d", "", 2, 2, "2-state Grover-type walk on the plane"},
      {"grover2d-4state", "", 2, 4, "4-state Grover walk on the plane"},
  };
  return entries;
}

WalkDefinition make_registry_walk(const std::string& name, const std::vector<double>& args) {
  auto no_args = [&](const char* nm) {
    if (!args.empty()) throw SchemaError(std::string(nm) + " takes no parameters");
  };
  if (name == "coin") return coin_walk(coin_param(args, name));
  if (name == "coin-decomposable") return coin_split(coin_param(args, name), "coin-decomposable");
  if (name == "coin-realizable") return coin_split(coin_param(args, name), "coin-realizable");
  if (name == "grover3") { no_args("grover3"); return grover3_walk(); }
  if (name == "grover4") { no_args("grover4"); return grover4_walk(); }
  if (name == "cube") { no_args("cube"); return cube_walk(); }
  if (name == "shift") { no_args("shift"); return shift_walk(); }
  if (name == "s3-walk") { no_args("s3-walk"); return s3_walk(); }
  if (name == "grover2d") { no_args("grover2d"); return grover2d_walk(); }
  if (name == "grover2d-4state") { no_args("grover2d-4state"); return grover2d4_walk(); }
  throw SchemaError("unknown registry walk '" + name + "'");
}

bool is_registry_ref(const std::string& token) {
  return !token.empty() && token[0] == '@';
}

WalkDefinition resolve_registry(const std::string& token) {
  if (!is_registry_ref(token)) throw SchemaError("registry references start with '@'");
  std::string body = token.substr(1);
  std::string name = body;
  std::vector<double> args;
  const auto open = body.find('(');
  if (open != std::string::npos) {
    if (body.back() != ')') throw SchemaError("unbalanced parentheses in '" + token + "'");
    name = body.substr(0, open);
    std::string inner = body.substr(open + 1, body.size() - open - 2);
    std::istringstream is(inner);
    std::string piece;
    while (std::getline(is, piece, ',')) {
      try {
        size_t used = 0;
        args.push_back(std::stod(piece, &used));
        while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used]))) ++used;
        if (used != piece.size()) throw std::invalid_argument(piece);
      } catch (const std::exception&) {
        throw SchemaError("bad numeric argument '" + piece + "' in '" + token + "'");
      }
    }
  }
  return make_registry_walk(name, args);
}

}  // namespace qw
