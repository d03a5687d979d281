#include "qw/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <string>
#include <tuple>

#include "qw/category.hpp"
#include "qw/ctqw.hpp"
#include "qw/dynamics.hpp"
#include "qw/errors.hpp"
#include "qw/registry.hpp"
#include "qw/report.hpp"
#include "qw/spectral.hpp"
#include "qw/walk_io.hpp"

namespace qw {

namespace {

using nlohmann::json;

WalkDefinition load_input(const std::string& token) {
  if (is_registry_ref(token)) return resolve_registry(token);
  return load_walk(token);
}

StateVector initial_state(const RunConfig& cfg, const WalkDefinition& w) {
  if (cfg.init_path.empty()) return delta_state(w.d, w.n, std::vector<int>(w.d, 0), 0);
  StateVector xi = load_state(cfg.init_path);
  if (xi.d != w.d || xi.n != w.n)
    throw DimensionMismatch("initial state does not match the walk lattice");
  if (std::abs(xi.norm() - 1.0) > 1e-10)
    throw NotNormalized("initial state must be a unit vector");
  return xi;
}

void check_grid(int grid) {
  if (grid < 512 || (grid & (grid - 1)) != 0)
    throw std::invalid_argument("--grid must be a power of two >= 512");
}

int pick_window(const RunConfig& cfg, int fallback, int radius) {
  const int m = cfg.window > 0 ? cfg.window : fallback;
  if (m < 8 || m % 2 != 0) throw std::invalid_argument("--window must be even and >= 8");
  if (m < 4 * radius)
    throw std::invalid_argument("--window too small for the walk's propagation radius");
  return m;
}

json config_echo(const RunConfig& cfg) {
  return json{{"command", cfg.command}, {"inputs", cfg.inputs},   {"init", cfg.init_path},
              {"grid", cfg.grid},       {"window", cfg.window},   {"t", cfg.t},
              {"seed", cfg.seed},       {"trials", cfg.trials},   {"kgrid", cfg.kgrid},
              {"build", cfg.build},     {"verify", cfg.verify},   {"format", cfg.format}};
}

std::string chosen_format(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  if (cfg.out_path.size() >= 4 && cfg.out_path.compare(cfg.out_path.size() - 4, 4, ".csv") == 0)
    return "csv";
  return "json";
}

void emit(const RunConfig& cfg, const json& results, const json& provenance,
          const std::string& csv = "") {
  if (cfg.out_path.empty()) return;
  if (chosen_format(cfg) == "csv") {
    if (csv.empty()) throw std::invalid_argument("this command has no CSV form; use json");
    write_text_file(cfg.out_path, csv);
  } else {
    const json rep = make_report(cfg.command, config_echo(cfg), results, provenance);
    write_text_file(cfg.out_path, rep.dump(2) + "\n");
  }
}

json cjson(cd v) { return json{{"im", v.imag()}, {"re", v.real()}}; }

json branch_json(const EigenvalueFunction& b, int index, bool with_samples) {
  json j{{"index", index},
         {"period", b.p},
         {"translates", b.translates},
         {"constant", b.constant},
         {"minimal_period", b.minimal_period},
         {"winding", b.winding},
         {"winding_residual", b.winding_residual},
         {"closure_defect", b.closure_defect}};
  if (b.constant) j["value"] = cjson(b.constant_value);
  if (with_samples && !b.constant) {
    json s = json::array();
    for (Eigen::Index u = 0; u < b.samples.size(); ++u)
      s.push_back(json::array({b.samples[u].real(), b.samples[u].imag()}));
    j["samples"] = s;
  }
  return j;
}

json part_json(const Decomposition& d, int i) {
  const ModelWalk& pt = d.parts[i];
  json j{{"index", i}, {"parent_branch", d.parent[i]}, {"constant", pt.constant()}};
  if (pt.constant()) {
    j["value"] = cjson(pt.lambda.constant_value);
  } else {
    j["period"] = pt.period();
    j["winding"] = pt.lambda.winding;
  }
  return j;
}

std::string part_label(const ModelWalk& pt) {
  std::ostringstream os;
  if (pt.constant()) {
    os << "constant " << pt.lambda.constant_value.real();
    if (std::abs(pt.lambda.constant_value.imag()) > 1e-12)
      os << (pt.lambda.constant_value.imag() > 0 ? "+" : "") << pt.lambda.constant_value.imag()
         << "i";
  } else {
    os << "model period " << pt.period() << " winding " << pt.lambda.winding;
  }
  return os.str();
}

int cmd_validate(const RunConfig& cfg) {
  json walks = json::array();
  bool all_ok = true;
  for (const auto& token : cfg.inputs) {
    try {
      const WalkDefinition w = load_input(token);
      const RegularityClass rc = classify_regularity(w);
      std::printf("%s: d=%d n=%d radius=%d%s%s%s%s; unitarity defect %.3e\n", w.name.c_str(),
                  w.d, w.n, rc.radius, rc.finite_propagation ? " finite-propagation" : "",
                  rc.analytic ? " analytic" : "", rc.smooth ? " smooth" : "",
                  rc.uniform ? " uniform" : "", w.unitarity_defect);
      walks.push_back(json{{"input", token},
                           {"name", w.name},
                           {"d", w.d},
                           {"n", w.n},
                           {"radius", rc.radius},
                           {"finite_propagation", rc.finite_propagation},
                           {"analytic", rc.analytic},
                           {"smooth", rc.smooth},
                           {"uniform", rc.uniform},
                           {"unitary", true},
                           {"unitarity_defect", w.unitarity_defect}});
    } catch (const NonUnitaryError& e) {
      all_ok = false;
      std::printf("%s: fails unitarity: %s\n", token.c_str(), e.what());
      walks.push_back(json{{"input", token}, {"unitary", false}, {"detail", e.what()}});
    }
  }
  emit(cfg, json{{"walks", walks}},
       json{{"unitarity_defect", "max over 256 momenta per axis of ||U(k)U(k)* - I||_max"},
            {"radius", "largest max-norm shift with a nonzero coefficient"}});
  return all_ok ? 0 : 3;
}

int cmd_simulate(const RunConfig& cfg, bool as_velocity) {
  const WalkDefinition w = load_input(cfg.inputs[0]);
  const StateVector xi = initial_state(cfg, w);
  if (cfg.t < 0 || (as_velocity && cfg.t < 1))
    throw std::invalid_argument("--t must be nonnegative (positive for velocity)");
  const StateVector evolved = evolve(w, xi, cfg.t);

  std::ostringstream csv;
  json atoms = json::array();
  json results;
  if (!as_velocity) {
    const PositionDistribution mu = position_distribution(evolved);
    const MomentReport mom = moments(mu, 2);
    for (int a = 0; a < w.d; ++a) csv << "x" << (w.d > 1 ? std::to_string(a + 1) : "") << ",";
    csv << "mass\n";
    for (const auto& [x, m] : mu.sorted()) {
      json row{{"mass", m}, {"x", x}};
      atoms.push_back(row);
      for (int a = 0; a < w.d; ++a) csv << x[a] << ",";
      csv << csv_number(m) << "\n";
    }
    std::printf("%s: t=%lld sites=%zu mean=(", w.name.c_str(), cfg.t, atoms.size());
    for (int a = 0; a < w.d; ++a) std::printf("%s%.6f", a ? ", " : "", mom.mean[a]);
    std::printf(") variance=(");
    for (int a = 0; a < w.d; ++a) std::printf("%s%.6f", a ? ", " : "", mom.variance[a]);
    std::printf(")\n");
    results = json{{"t", cfg.t},
                   {"distribution", atoms},
                   {"mean", std::vector<double>(mom.mean.data(), mom.mean.data() + w.d)},
                   {"variance",
                    std::vector<double>(mom.variance.data(), mom.variance.data() + w.d)}};
  } else {
    const VelocityDistribution nu = velocity_distribution(evolved, cfg.t);
    const MomentReport mom = moments(nu, 2);
    for (int a = 0; a < w.d; ++a) csv << "v" << (w.d > 1 ? std::to_string(a + 1) : "") << ",";
    csv << "mass\n";
    for (const auto& [v, m] : nu.sorted()) {
      json row{{"mass", m}, {"v", v}};
      atoms.push_back(row);
      for (int a = 0; a < w.d; ++a) csv << csv_number(v[a]) << ",";
      csv << csv_number(m) << "\n";
    }
    std::printf("%s: t=%lld atoms=%zu mean=(", w.name.c_str(), cfg.t, atoms.size());
    for (int a = 0; a < w.d; ++a) std::printf("%s%.6f", a ? ", " : "", mom.mean[a]);
    std::printf(") variance=(");
    for (int a = 0; a < w.d; ++a) std::printf("%s%.6f", a ? ", " : "", mom.variance[a]);
    std::printf(")\n");
    results = json{{"t", cfg.t},
                   {"distribution", atoms},
                   {"mean", std::vector<double>(mom.mean.data(), mom.mean.data() + w.d)},
                   {"variance",
                    std::vector<double>(mom.variance.data(), mom.variance.data() + w.d)}};
  }
  emit(cfg, results,
       json{{"distribution", as_velocity
                                 ? "exact sparse evolution pushed forward by x -> x/t"
                                 : "exact sparse evolution; atoms are exact masses"},
            {"mean", "first raw moment of the atom list"},
            {"variance", "second central moment of the atom list"}},
       csv.str());
  return 0;
}

std::tuple<double, double, int> parse_kgrid(const std::string& s) {
  if (s.empty()) return {-M_PI, M_PI, 33};
  std::istringstream is(s);
  std::string pa, pb, pm;
  if (!std::getline(is, pa, ':') || !std::getline(is, pb, ':') || !std::getline(is, pm))
    throw std::invalid_argument("--kgrid expects a:b:m");
  try {
    const double a = std::stod(pa), b = std::stod(pb);
    const int m = std::stoi(pm);
    if (m < 1) throw std::invalid_argument("--kgrid needs m >= 1");
    return {a, b, m};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("--kgrid expects numbers a:b:m");
  }
}

int cmd_charfn(const RunConfig& cfg) {
  const WalkDefinition w = load_input(cfg.inputs[0]);
  if (w.d != 1) throw NotSupported("charfn export covers d = 1; call the library for d > 1");
  const StateVector xi = initial_state(cfg, w);
  if (cfg.t < 1) throw std::invalid_argument("--t must be >= 1");
  const VelocityDistribution nu = velocity_distribution(evolve(w, xi, cfg.t), cfg.t);

  const auto [a, b, m] = parse_kgrid(cfg.kgrid);
  std::ostringstream csv;
  csv << "k,re,im\n";
  json points = json::array();
  for (int j = 0; j < m; ++j) {
    const double k = m == 1 ? a : a + (b - a) * j / (m - 1);
    const cd phi = characteristic_function(nu, k);
    points.push_back(json{{"im", phi.imag()}, {"k", k}, {"re", phi.real()}});
    csv << csv_number(k) << "," << csv_number(phi.real()) << "," << csv_number(phi.imag())
        << "\n";
  }
  std::printf("%s: t=%lld charfn on %d points in [%g, %g]\n", w.name.c_str(), cfg.t, m, a, b);
  emit(cfg, json{{"t", cfg.t}, {"points", points}},
       json{{"points", "sum over velocity atoms of mass times e^{i k v}"}}, csv.str());
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  check_grid(cfg.grid);
  const WalkDefinition w = load_input(cfg.inputs[0]);
  const SpectrumDecomposition spec = track_branches(w, cfg.grid);

  std::ostringstream csv;
  csv << "branch,k,re,im\n";
  json branches = json::array();
  for (std::size_t b = 0; b < spec.branches.size(); ++b) {
    const EigenvalueFunction& lam = spec.branches[b];
    if (lam.constant)
      std::printf("branch %zu: constant %.12g%+.12gi\n", b, lam.constant_value.real(),
                  lam.constant_value.imag());
    else
      std::printf(
          "branch %zu: period %.12g minimal_period %.12g winding %d closure_defect %.3e\n", b,
          lam.p, lam.minimal_period, lam.winding, lam.closure_defect);
    branches.push_back(branch_json(lam, static_cast<int>(b), true));
    const double h = lam.constant ? 2.0 * M_PI / spec.grid : lam.grid_step();
    for (Eigen::Index u = 0; u < lam.samples.size(); ++u)
      csv << b << "," << csv_number(h * u) << "," << csv_number(lam.samples[u].real()) << ","
          << csv_number(lam.samples[u].imag()) << "\n";
  }
  emit(cfg, json{{"grid", spec.grid}, {"branches", branches}},
       json{{"branches",
             "one dense eigensolve per grid momentum, glued into closed branches by "
             "extrapolation-guided matching with bisection at crossings"},
            {"minimal_period", "smallest p/m passing a sup-norm translate test"},
            {"winding", "unwrapped phase total over one minimal period divided by 2 pi"},
            {"closure_defect", "max spectral mismatch at 64 off-grid momenta"}},
       csv.str());
  return 0;
}

int cmd_limit(const RunConfig& cfg) {
  check_grid(cfg.grid);
  const WalkDefinition w = load_input(cfg.inputs[0]);
  const StateVector xi = initial_state(cfg, w);
  const LimitDistribution ld = limit_velocity_distribution(w, xi, cfg.grid);

  double mean = 0.0;
  std::ostringstream csv;
  csv << "v,mass\n";
  json atoms = json::array();
  for (const auto& [v, m] : ld.atoms) {
    mean += v * m;
    atoms.push_back(json{{"mass", m}, {"v", v}});
    csv << csv_number(v) << "," << csv_number(m) << "\n";
  }
  std::printf("%s: limit atoms=%zu total_mass=%.12f mean_velocity=%.9f\n", w.name.c_str(),
              ld.atoms.size(), ld.total_mass, mean);
  emit(cfg, json{{"atoms", atoms}, {"total_mass", ld.total_mass}, {"mean_velocity", mean}},
       json{{"atoms",
             "group velocity atoms weighted by squared overlaps with branch sections on the "
             "momentum grid"}},
       csv.str());
  return 0;
}

int cmd_decompose(const RunConfig& cfg) {
  check_grid(cfg.grid);
  const WalkDefinition w = load_input(cfg.inputs[0]);
  const Decomposition d = decompose(w, cfg.grid);

  json branches = json::array();
  for (std::size_t b = 0; b < d.spectrum.branches.size(); ++b)
    branches.push_back(branch_json(d.spectrum.branches[b], static_cast<int>(b), false));
  json parts = json::array();
  std::printf("%s: %zu branch(es), %zu part(s)\n", w.name.c_str(), d.spectrum.branches.size(),
              d.parts.size());
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    std::printf("  part %zu: %s (branch %d)\n", i, part_label(d.parts[i]).c_str(), d.parent[i]);
    parts.push_back(part_json(d, static_cast<int>(i)));
  }
  const bool indecomposable =
      d.parts.size() == 1 && (!d.parts[0].constant() || w.n == 1);
  std::printf("indecomposable: %s\n", indecomposable ? "yes" : "no");
  emit(cfg, json{{"grid", cfg.grid}, {"branches", branches}, {"parts", parts},
                 {"indecomposable", indecomposable}},
       json{{"parts", "tracked branches split into copies at their minimal periods"}});
  return 0;
}

int cmd_intertwine(const RunConfig& cfg) {
  check_grid(cfg.grid);
  const WalkDefinition w1 = load_input(cfg.inputs[0]);
  const WalkDefinition w2 = load_input(cfg.inputs[1]);
  const SimilarityReport rep = has_uniform_intertwiner(w1, w2, cfg.grid);
  const std::vector<PairedParts> pairing = maximum_pairing(rep);

  std::printf("uniform intertwiner: %s\n", rep.intertwiner_exists ? "exists" : "none");
  std::printf("unitarily equivalent: %s\n", rep.similar ? "yes" : "no");
  json witness = json::array();
  for (const auto& pr : rep.witness) {
    std::printf("  parts %d ~ %d, shift l = %.12g\n", pr.part1, pr.part2, pr.shift);
    witness.push_back(json{{"part1", pr.part1}, {"part2", pr.part2}, {"shift", pr.shift}});
  }
  json matched = json::array();
  for (const auto& pr : pairing)
    matched.push_back(json{{"part1", pr.part1}, {"part2", pr.part2}, {"shift", pr.shift}});

  json results{{"exists", rep.intertwiner_exists},
               {"similar", rep.similar},
               {"witness", witness},
               {"pairing", matched}};
  if (cfg.verify && rep.intertwiner_exists) {
    const int window =
        pick_window(cfg, 256, std::max(propagation_radius(w1), propagation_radius(w2)));
    const double defect =
        verify_intertwiner(w1, w2, pairing, window, cfg.trials, cfg.seed, cfg.grid);
    std::printf("materialized defect on window %d: %.3e\n", window, defect);
    results["window"] = window;
    results["defect"] = defect;
  } else if (cfg.verify) {
    std::printf("nothing to verify: the intertwiner space is zero\n");
  }
  emit(cfg, results,
       json{{"witness", "part spectra compared as torus translates via a Fourier objective"},
            {"defect",
             "max over seeded random window states of ||W U1 xi - U2 W xi|| with cyclic steps"}});
  return rep.intertwiner_exists ? 0 : 3;
}

int cmd_ctqw(const RunConfig& cfg) {
  check_grid(cfg.grid);
  const WalkDefinition w = load_input(cfg.inputs[0]);
  const RealizabilityVerdict v = realizable(w, cfg.grid);

  std::printf("continuous-time realizable: %s\n", v.realizable ? "yes" : "no");
  json winds = json::array();
  for (const auto& [part, wind] : v.windings) {
    std::printf("  part %d winding %d\n", part, wind);
    winds.push_back(json{{"part", part}, {"winding", wind}});
  }
  json results{{"realizable", v.realizable}, {"windings", winds}, {"obstruction", v.obstruction}};

  if (v.realizable && (cfg.build || cfg.verify)) {
    const PhaseGenerator g = build_generator(w, cfg.grid);
    json gbranches = json::array();
    for (std::size_t b = 0; b < g.phase_samples.size(); ++b) {
      json samples = json::array();
      for (Eigen::Index u = 0; u < g.phase_samples[b].size(); ++u)
        samples.push_back(g.phase_samples[b][u]);
      gbranches.push_back(json{{"branch", static_cast<int>(b)},
                               {"period", g.decomposition.spectrum.branches[b].p},
                               {"phase_samples", samples}});
    }
    results["generator"] = json{{"branches", gbranches}};
    std::printf("generator built: %zu branch phase function(s)\n", g.phase_samples.size());
    if (cfg.verify) {
      const int window = pick_window(cfg, 512, propagation_radius(w));
      const double defect = verify_realization(g, window, cfg.trials, cfg.seed);
      std::printf("realization defect on window %d: %.3e\n", window, defect);
      results["window"] = window;
      results["defect"] = defect;
    }
  }
  emit(cfg, results,
       json{{"windings", "unwrapped phase totals per indecomposable part"},
            {"generator", "branchwise phase h with e^{ih} = lambda, h(0) in (-pi, pi]"},
            {"defect",
             "max over seeded random window states of ||e^{iH} xi - U xi|| against one lattice "
             "step"}});
  return v.realizable ? 0 : 3;
}

int cmd_examples(const RunConfig& cfg) {
  json walks = json::array();
  for (const auto& e : registry_entries()) {
    const std::string shown = e.params.empty() ? e.name : e.name + "(" + e.params + ")";
    std::printf("@%-24s d=%d n=%d  %s\n", shown.c_str(), e.d, e.n, e.blurb.c_str());
    walks.push_back(
        json{{"name", e.name}, {"params", e.params}, {"d", e.d}, {"n", e.n}, {"blurb", e.blurb}});
  }
  emit(cfg, json{{"walks", walks}}, json{{"walks", "built-in registry"}});
  return 0;
}

}  // namespace

int run(const RunConfig& cfg) {
  const auto need_inputs = [&](std::size_t n) {
    if (cfg.inputs.size() != n)
      throw std::invalid_argument(cfg.command + " expects " + std::to_string(n) + " input(s)");
  };
  if (cfg.command == "validate") {
    if (cfg.inputs.empty()) throw std::invalid_argument("validate expects at least one input");
    return cmd_validate(cfg);
  }
  if (cfg.command == "simulate") {
    need_inputs(1);
    return cmd_simulate(cfg, false);
  }
  if (cfg.command == "velocity") {
    need_inputs(1);
    return cmd_simulate(cfg, true);
  }
  if (cfg.command == "charfn") {
    need_inputs(1);
    return cmd_charfn(cfg);
  }
  if (cfg.command == "spectrum") {
    need_inputs(1);
    return cmd_spectrum(cfg);
  }
  if (cfg.command == "limit") {
    need_inputs(1);
    return cmd_limit(cfg);
  }
  if (cfg.command == "decompose") {
    need_inputs(1);
    return cmd_decompose(cfg);
  }
  if (cfg.command == "intertwine") {
    need_inputs(2);
    return cmd_intertwine(cfg);
  }
  if (cfg.command == "ctqw") {
    need_inputs(1);
    return cmd_ctqw(cfg);
  }
  if (cfg.command == "examples") {
    return cmd_examples(cfg);
  }
  throw std::invalid_argument("unknown command: " + cfg.command);
}

int run_cli(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"categorical analysis of space-homogeneous quantum walks"};
  app.require_subcommand(1);

  const auto add_out = [&](CLI::App* s) {
    s->add_option("--out", cfg.out_path, "report file (JSON, or CSV table with --format csv)");
    s->add_option("--format", cfg.format, "output format for --out")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  const auto add_grid = [&](CLI::App* s) {
    s->add_option("--grid", cfg.grid, "momentum grid size, power of two >= 512");
  };
  const auto add_init = [&](CLI::App* s) {
    s->add_option("--init", cfg.init_path, "initial state file; default delta at the origin");
  };
  const auto name_cmd = [&](CLI::App* s, const char* name) {
    s->callback([&cfg, name] { cfg.command = name; });
  };

  auto* validate = app.add_subcommand("validate", "unitarity check and regularity class");
  validate->add_option("walks", cfg.inputs, "walk files or @registry refs")->required();
  add_out(validate);
  name_cmd(validate, "validate");

  auto* simulate = app.add_subcommand("simulate", "evolve and export the position law");
  simulate->add_option("walk", cfg.inputs)->required()->expected(1);
  add_init(simulate);
  simulate->add_option("--t", cfg.t, "number of steps")->required();
  add_out(simulate);
  name_cmd(simulate, "simulate");

  auto* velocity = app.add_subcommand("velocity", "evolve and export the velocity law x/t");
  velocity->add_option("walk", cfg.inputs)->required()->expected(1);
  add_init(velocity);
  velocity->add_option("--t", cfg.t, "number of steps")->required();
  add_out(velocity);
  name_cmd(velocity, "velocity");

  auto* charfn = app.add_subcommand("charfn", "characteristic function of the velocity law");
  charfn->add_option("walk", cfg.inputs)->required()->expected(1);
  add_init(charfn);
  charfn->add_option("--t", cfg.t, "number of steps")->required();
  charfn->add_option("--kgrid", cfg.kgrid, "wavenumber sweep a:b:m (default -pi:pi:33)");
  add_out(charfn);
  name_cmd(charfn, "charfn");

  auto* spectrum = app.add_subcommand("spectrum", "track eigenvalue branches");
  spectrum->add_option("walk", cfg.inputs)->required()->expected(1);
  add_grid(spectrum);
  add_out(spectrum);
  name_cmd(spectrum, "spectrum");

  auto* limit = app.add_subcommand("limit", "spectral weak-limit velocity distribution");
  limit->add_option("walk", cfg.inputs)->required()->expected(1);
  add_init(limit);
  add_grid(limit);
  add_out(limit);
  name_cmd(limit, "limit");

  auto* decomp = app.add_subcommand("decompose", "split into constant and model parts");
  decomp->add_option("walk", cfg.inputs)->required()->expected(1);
  add_grid(decomp);
  add_out(decomp);
  name_cmd(decomp, "decompose");

  auto* inter = app.add_subcommand("intertwine", "decide uniform intertwiner existence");
  inter->add_option("walks", cfg.inputs)->required()->expected(2);
  add_grid(inter);
  inter->add_flag("--verify", cfg.verify, "materialize on a window and measure the defect");
  inter->add_option("--window", cfg.window, "window size for --verify (default 256)");
  inter->add_option("--trials", cfg.trials, "random states for --verify");
  inter->add_option("--seed", cfg.seed, "random seed");
  add_out(inter);
  name_cmd(inter, "intertwine");

  auto* ctqw = app.add_subcommand("ctqw", "continuous-time realizability verdict");
  ctqw->add_option("walk", cfg.inputs)->required()->expected(1);
  add_grid(ctqw);
  ctqw->add_flag("--build", cfg.build, "build the phase generator when realizable");
  ctqw->add_flag("--verify", cfg.verify, "check e^{iH} against one walk step on a window");
  ctqw->add_option("--window", cfg.window, "window size for --verify (default 512)");
  ctqw->add_option("--trials", cfg.trials, "random states for --verify");
  ctqw->add_option("--seed", cfg.seed, "random seed");
  add_out(ctqw);
  name_cmd(ctqw, "ctqw");

  auto* examples = app.add_subcommand("examples", "list the built-in walk registry");
  add_out(examples);
  name_cmd(examples, "examples");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    // Collapse parser exit codes onto the documented contract: 0 for help,
    // 1 for any malformed invocation.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    return run(cfg);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace qw
