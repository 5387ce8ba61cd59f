#include "hca/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hca/action.hpp"
#include "hca/automaton.hpp"
#include "hca/conservation.hpp"
#include "hca/errors.hpp"
#include "hca/multipartite.hpp"
#include "hca/random_instance.hpp"
#include "hca/trajectory_io.hpp"

namespace hca {

namespace {

const std::vector<std::pair<Kind, std::string>> kKindNames = {
    {Kind::evolve, "evolve"}, {Kind::audit, "audit"}, {Kind::reconstruct, "reconstruct"},
    {Kind::converge, "converge"}, {Kind::multi, "multi"}, {Kind::bell, "bell"}, {Kind::leibniz, "leibniz"}};

const std::set<std::string>& allowed_fields(Kind k) {
  static const std::map<Kind, std::set<std::string>> table = {
      {Kind::evolve, {"kind", "output", "hamiltonians", "seeds", "random_instance", "steps"}},
      {Kind::audit, {"kind", "output", "hamiltonians", "seeds", "random_instance", "steps", "observables"}},
      {Kind::reconstruct,
       {"kind", "output", "hamiltonians", "seeds", "random_instance", "steps", "scale_l", "window", "times"}},
      {Kind::converge,
       {"kind", "output", "hamiltonians", "initial_state", "time", "scales", "window", "seed_rule", "min_order"}},
      {Kind::multi, {"kind", "output", "hamiltonians", "seeds", "steps", "interaction"}},
      {Kind::bell, {"kind", "output", "hamiltonians", "seeds", "steps", "slice_clocks"}},
      {Kind::leibniz, {"kind", "output", "sequences"}},
  };
  return table.at(k);
}

class Parser {
 public:
  Parser(const json& root, Kind kind, ExperimentConfig& cfg) : root_(root), kind_(kind), cfg_(cfg) {}

  std::vector<ValidationIssue> issues;

  void fail(std::string path, std::string reason) { issues.push_back({std::move(path), std::move(reason)}); }

  bool has(const char* key) const { return root_.contains(key); }

  void require(const char* key) {
    if (!has(key)) fail(key, "required for kind " + to_string(kind_));
  }

  std::optional<std::size_t> count(const json& j, const std::string& path, std::size_t min) {
    if (!j.is_number_integer() || (j.is_number_integer() && j.get<std::int64_t>() < static_cast<std::int64_t>(min))) {
      fail(path, "expected an integer >= " + std::to_string(min));
      return std::nullopt;
    }
    return j.get<std::size_t>();
  }

  std::optional<double> positive(const json& j, const std::string& path) {
    if (!j.is_number() || !(j.get<double>() > 0) || !std::isfinite(j.get<double>())) {
      fail(path, "expected a positive finite number");
      return std::nullopt;
    }
    return j.get<double>();
  }

  std::optional<GIMatrix> matrix(const json& j, const std::string& path) {
    try {
      return matrix_from_json(j);
    } catch (const std::exception& e) {
      fail(path, e.what());
      return std::nullopt;
    }
  }

  std::optional<HermitianMatrix> hermitian(const json& j, const std::string& path) {
    auto m = matrix(j, path);
    if (!m) return std::nullopt;
    try {
      return HermitianMatrix(std::move(*m));
    } catch (const std::exception& e) {
      fail(path, e.what());
      return std::nullopt;
    }
  }

  std::optional<GIVector> vector(const json& j, const std::string& path) {
    try {
      return vector_from_json(j);
    } catch (const std::exception& e) {
      fail(path, e.what());
      return std::nullopt;
    }
  }

  void parse() {
    for (const auto& [key, value] : root_.items()) {
      if (!allowed_fields(kind_).count(key)) fail(key, "unknown field for kind " + to_string(kind_));
    }
    parse_output();
    switch (kind_) {
      case Kind::evolve:
      case Kind::audit:
      case Kind::reconstruct:
        parse_single();
        break;
      case Kind::converge:
        parse_converge();
        break;
      case Kind::multi:
        parse_multi();
        break;
      case Kind::bell:
        parse_bell();
        break;
      case Kind::leibniz:
        parse_leibniz();
        break;
    }
  }

 private:
  void parse_output() {
    if (!has("output")) return;
    const json& o = root_.at("output");
    if (!o.is_object()) return fail("output", "expected an object {path, format}");
    for (const auto& [key, value] : o.items()) {
      if (key != "path" && key != "format") fail("output." + key, "unknown field");
    }
    if (o.contains("path")) {
      if (!o.at("path").is_string() || o.at("path").get<std::string>().empty()) {
        fail("output.path", "expected a non-empty string");
      } else {
        cfg_.output_path = o.at("path").get<std::string>();
      }
    }
    if (o.contains("format")) {
      const json& f = o.at("format");
      if (!f.is_string() || (f != "csv" && f != "json")) {
        fail("output.format", "expected \"csv\" or \"json\"");
      } else {
        cfg_.format = f.get<std::string>();
      }
    }
  }

  void parse_hamiltonians(std::size_t min_count, std::optional<std::size_t> exact) {
    const json& hs = root_.at("hamiltonians");
    if (!hs.is_array() || hs.size() < min_count || (exact && hs.size() != *exact)) {
      fail("hamiltonians", exact ? "expected a list of exactly " + std::to_string(*exact) + " matrix literal(s)"
                                 : "expected a list of at least " + std::to_string(min_count) + " matrix literal(s)");
      return;
    }
    for (std::size_t k = 0; k < hs.size(); ++k) {
      if (auto h = hermitian(hs[k], "hamiltonians[" + std::to_string(k) + "]")) cfg_.hamiltonians.push_back(*h);
    }
  }

  // Seeds grouped in pairs; pair k must match dims[k].
  void parse_seeds(const std::vector<std::size_t>& dims, std::size_t per_part) {
    const json& ss = root_.at("seeds");
    const std::size_t want = dims.size() * per_part;
    if (!ss.is_array() || ss.size() != want) {
      fail("seeds", "expected a list of exactly " + std::to_string(want) + " vector literals");
      return;
    }
    for (std::size_t k = 0; k < ss.size(); ++k) {
      const std::string path = "seeds[" + std::to_string(k) + "]";
      auto v = vector(ss[k], path);
      if (!v) continue;
      const std::size_t d = dims[k / per_part];
      if (v->size() != d) {
        fail(path, "dimension " + std::to_string(v->size()) + " does not match Hamiltonian dimension " +
                       std::to_string(d));
        continue;
      }
      cfg_.seeds.push_back(std::move(*v));
    }
  }

  std::vector<std::size_t> hamiltonian_dims() const {
    std::vector<std::size_t> dims;
    for (const auto& h : cfg_.hamiltonians) dims.push_back(h.dim());
    return dims;
  }

  void parse_steps(std::size_t parts, std::size_t min) {
    require("steps");
    if (!has("steps")) return;
    const json& s = root_.at("steps");
    if (s.is_array()) {
      if (s.size() != parts) return fail("steps", "expected one count per part (" + std::to_string(parts) + ")");
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (auto c = count(s[k], "steps[" + std::to_string(k) + "]", min)) cfg_.steps.push_back(*c);
      }
      return;
    }
    if (auto c = count(s, "steps", min)) cfg_.steps.assign(parts, *c);
  }

  void parse_single() {
    const bool explicit_instance = has("hamiltonians") || has("seeds");
    if (has("random_instance")) {
      if (explicit_instance) fail("random_instance", "give either random_instance or hamiltonians+seeds, not both");
      const json& r = root_.at("random_instance");
      if (!r.is_object()) {
        fail("random_instance", "expected an object {dim, max_entry}");
      } else {
        RandomInstanceSpec spec;
        for (const auto& [key, value] : r.items()) {
          if (key != "dim" && key != "max_entry") fail("random_instance." + key, "unknown field");
        }
        if (r.contains("dim")) {
          if (auto d = count(r.at("dim"), "random_instance.dim", 1)) spec.dim = *d;
        }
        if (r.contains("max_entry")) {
          if (auto m = count(r.at("max_entry"), "random_instance.max_entry", 0)) spec.max_entry = static_cast<long>(*m);
        }
        cfg_.random_instance = spec;
      }
    } else {
      require("hamiltonians");
      require("seeds");
      if (has("hamiltonians")) parse_hamiltonians(1, 1);
      if (has("seeds") && cfg_.hamiltonians.size() == 1) parse_seeds(hamiltonian_dims(), 2);
    }
    parse_steps(1, 0);

    if (kind_ == Kind::audit && has("observables")) parse_observables();
    if (kind_ == Kind::reconstruct) {
      require("scale_l");
      if (has("scale_l")) cfg_.scale_l = positive(root_.at("scale_l"), "scale_l");
      parse_window();
      if (has("times")) parse_reals("times", cfg_.times, false);
    }
  }

  void parse_window() {
    if (!has("window")) return;
    if (auto w = count(root_.at("window"), "window", 1)) cfg_.window = *w;
  }

  void parse_reals(const char* key, std::vector<double>& out, bool require_positive) {
    const json& a = root_.at(key);
    if (!a.is_array() || a.empty()) return fail(key, "expected a non-empty list of numbers");
    for (std::size_t k = 0; k < a.size(); ++k) {
      const std::string path = std::string(key) + "[" + std::to_string(k) + "]";
      if (require_positive) {
        if (auto v = positive(a[k], path)) out.push_back(*v);
      } else if (!a[k].is_number() || !std::isfinite(a[k].get<double>())) {
        fail(path, "expected a finite number");
      } else {
        out.push_back(a[k].get<double>());
      }
    }
  }

  void parse_observables() {
    const json& os = root_.at("observables");
    if (!os.is_array()) return fail("observables", "expected a list of {label, matrix} objects or matrix literals");
    for (std::size_t k = 0; k < os.size(); ++k) {
      const std::string path = "observables[" + std::to_string(k) + "]";
      std::string label = "G" + std::to_string(k);
      const json* m = &os[k];
      if (os[k].is_object()) {
        for (const auto& [key, value] : os[k].items()) {
          if (key != "label" && key != "matrix") fail(path + "." + key, "unknown field");
        }
        if (!os[k].contains("matrix")) {
          fail(path + ".matrix", "required");
          continue;
        }
        if (os[k].contains("label")) {
          if (!os[k].at("label").is_string()) {
            fail(path + ".label", "expected a string");
          } else {
            label = os[k].at("label").get<std::string>();
          }
        }
        m = &os[k].at("matrix");
      }
      auto g = hermitian(*m, os[k].is_object() ? path + ".matrix" : path);
      if (!g) continue;
      const std::size_t want = cfg_.random_instance ? cfg_.random_instance->dim
                               : cfg_.hamiltonians.empty() ? g->dim()
                                                           : cfg_.hamiltonians[0].dim();
      if (g->dim() != want) {
        fail(path, "dimension " + std::to_string(g->dim()) + " does not match Hamiltonian dimension " +
                       std::to_string(want));
        continue;
      }
      cfg_.observables.push_back({label, *g});
    }
  }

  void parse_converge() {
    require("hamiltonians");
    require("initial_state");
    require("scales");
    if (has("hamiltonians")) parse_hamiltonians(1, 1);
    if (has("initial_state")) {
      cfg_.initial_state = vector(root_.at("initial_state"), "initial_state");
      if (cfg_.initial_state && cfg_.hamiltonians.size() == 1 && cfg_.initial_state->size() != cfg_.hamiltonians[0].dim()) {
        fail("initial_state", "dimension does not match the Hamiltonian");
      }
      if (cfg_.initial_state && cfg_.initial_state->is_zero()) fail("initial_state", "must be nonzero");
    }
    if (has("scales")) parse_reals("scales", cfg_.scales, true);
    if (has("time")) {
      const json& t = root_.at("time");
      if (!t.is_number() || t.get<double>() < 0 || !std::isfinite(t.get<double>())) {
        fail("time", "expected a finite number >= 0");
      } else {
        cfg_.time = t.get<double>();
      }
    }
    parse_window();
    if (has("seed_rule")) {
      const json& r = root_.at("seed_rule");
      if (r == "oracle_slice") {
        cfg_.seed_rule = SeedRule::oracle_slice;
      } else if (r == "exact_mode") {
        cfg_.seed_rule = SeedRule::exact_mode;
      } else {
        fail("seed_rule", "expected \"oracle_slice\" or \"exact_mode\"");
      }
    }
    if (has("min_order")) {
      if (auto m = positive(root_.at("min_order"), "min_order")) cfg_.min_order = *m;
    }
    if (!cfg_.hamiltonians.empty() && cfg_.hamiltonians[0].dim() > 64) {
      fail("hamiltonians[0]", "dimension exceeds 64");
    }
  }

  void parse_multi() {
    require("hamiltonians");
    require("seeds");
    if (has("hamiltonians")) parse_hamiltonians(1, std::nullopt);
    const std::size_t parts = cfg_.hamiltonians.size();
    if (has("seeds") && parts > 0) parse_seeds(hamiltonian_dims(), 2);
    if (parts > 0) parse_steps(parts, 1);
    if (has("interaction")) {
      cfg_.interaction = matrix(root_.at("interaction"), "interaction");
      if (cfg_.interaction) {
        std::size_t d = 1;
        for (auto k : hamiltonian_dims()) d *= k;
        if (cfg_.interaction->dim() != d) {
          fail("interaction", "order " + std::to_string(cfg_.interaction->dim()) +
                                  " does not match the product dimension " + std::to_string(d));
        } else if (!cfg_.interaction->is_self_adjoint()) {
          fail("interaction", "not self-adjoint");
        }
      }
    }
  }

  void parse_bell() {
    require("hamiltonians");
    require("seeds");
    if (has("hamiltonians")) parse_hamiltonians(1, 1);
    if (cfg_.hamiltonians.size() == 1 && cfg_.hamiltonians[0].dim() != 2) {
      fail("hamiltonians[0]", "bell states need a two-level Hamiltonian");
      return;
    }
    if (has("seeds") && cfg_.hamiltonians.size() == 1) parse_seeds({2, 2}, 2);
    parse_steps(1, 1);
    if (has("slice_clocks")) {
      const json& c = root_.at("slice_clocks");
      if (!c.is_array() || c.size() != 2) return fail("slice_clocks", "expected [n1, n2]");
      cfg_.slice_clocks.clear();
      for (std::size_t k = 0; k < 2; ++k) {
        const std::string path = "slice_clocks[" + std::to_string(k) + "]";
        auto n = count(c[k], path, 0);
        if (!n) continue;
        if (!cfg_.steps.empty() && *n > cfg_.steps[0] + 1) fail(path, "outside the clock range [0, steps + 1]");
        cfg_.slice_clocks.push_back(static_cast<std::int64_t>(*n));
      }
    }
  }

  void parse_leibniz() {
    require("sequences");
    if (!has("sequences")) return;
    const json& s = root_.at("sequences");
    if (!s.is_object()) return fail("sequences", "expected an object {a, b}");
    for (const auto& [key, value] : s.items()) {
      if (key != "a" && key != "b") fail("sequences." + key, "unknown field");
    }
    auto read = [&](const char* key, std::vector<GaussianInt>& out) {
      const std::string path = std::string("sequences.") + key;
      if (!s.contains(key)) return fail(path, "required");
      const json& a = s.at(key);
      if (!a.is_array() || a.size() < 3) return fail(path, "expected a list of at least 3 Gaussian integers");
      for (std::size_t k = 0; k < a.size(); ++k) {
        try {
          out.push_back(gaussian_from_json(a[k]));
        } catch (const std::exception& e) {
          fail(path + "[" + std::to_string(k) + "]", e.what());
        }
      }
    };
    read("a", cfg_.sequence_a);
    read("b", cfg_.sequence_b);
    if (cfg_.sequence_a.size() >= 3 && cfg_.sequence_b.size() >= 3 && cfg_.sequence_a.size() != cfg_.sequence_b.size()) {
      fail("sequences", "a and b differ in length");
    }
  }

  const json& root_;
  Kind kind_;
  ExperimentConfig& cfg_;
};

// ---- running ----

struct SingleInstance {
  HermitianMatrix h;
  GIVector seed0;
  GIVector seed1;
};

SingleInstance single_instance(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.random_instance) {
    Rng rng(seed);
    const auto& spec = *cfg.random_instance;
    HermitianMatrix h = random_hermitian(rng, spec.dim, spec.max_entry);
    GIVector s0 = random_vector(rng, spec.dim, spec.max_entry);
    GIVector s1 = random_vector(rng, spec.dim, spec.max_entry);
    return {std::move(h), std::move(s0), std::move(s1)};
  }
  return {cfg.hamiltonians.at(0), cfg.seeds.at(0), cfg.seeds.at(1)};
}

Check verdict(std::string name, bool ok, json detail = json::object()) {
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

Check info(std::string name, json detail) { return {std::move(name), CheckStatus::info, std::move(detail)}; }

json location_json(const ClockPoint& clocks, const MultiIndex& indices) {
  return json{{"clocks", clocks}, {"indices", indices}};
}

json residual_detail(const ResidualField& r) {
  json d{{"zero", r.is_zero()}};
  if (auto first = r.first_nonzero()) {
    d["first_nonzero"] = location_json(first->first, first->second);
    d["first_nonzero"]["value"] = to_json(r.values.at(first->first, first->second));
  }
  return d;
}

void add_trajectory_artifact(RunReport& report, const ExperimentConfig& cfg, const Trajectory& traj) {
  if (cfg.format == "json") {
    report.artifacts["trajectory.json"] = to_json(traj).dump(2) + "\n";
  } else {
    report.artifacts["trajectory.csv"] = to_csv(traj);
  }
}

void evolve_checks(RunReport& report, const ExperimentConfig& cfg, const SingleInstance& inst, const Trajectory& traj) {
  json eq{{"steps", cfg.steps.at(0)}};
  std::optional<std::size_t> bad;
  if (traj.size() >= 3) bad = first_equation_violation(traj, inst.h);
  eq["first_violating_site"] = bad ? json(*bad) : json(nullptr);
  report.checks.push_back(verdict("equation_of_motion", !bad, eq));

  const std::size_t n = traj.last_index();
  const Trajectory back = evolve_backward(traj[n - 1], traj[n], inst.h, n - 1);
  std::optional<std::size_t> mismatch;
  for (std::size_t k = 0; k < traj.size() && !mismatch; ++k) {
    if (!(back[k] == traj[k])) mismatch = k;
  }
  report.checks.push_back(verdict("reversibility", !mismatch,
                                  {{"first_mismatch", mismatch ? json(*mismatch) : json(nullptr)}}));

  const BigInt q0 = norm_like_invariant(traj, 1);
  std::optional<std::size_t> drift;
  for (std::size_t k = 2; k <= n && !drift; ++k) {
    if (norm_like_invariant(traj, k) != q0) drift = k;
  }
  report.checks.push_back(verdict("norm_like_invariant_constant", !drift,
                                  {{"value", to_json(q0)}, {"first_drift_site", drift ? json(*drift) : json(nullptr)}}));
}

void run_single(RunReport& report, const ExperimentConfig& cfg, std::uint64_t seed) {
  const SingleInstance inst = single_instance(cfg, seed);
  const Trajectory traj = evolve(inst.seed0, inst.seed1, inst.h, cfg.steps.at(0));
  if (cfg.random_instance) {
    report.checks.push_back(info("instance", {{"hamiltonian", to_json(inst.h.matrix())},
                                              {"seeds", {to_json(inst.seed0), to_json(inst.seed1)}}}));
  }
  evolve_checks(report, cfg, inst, traj);
  add_trajectory_artifact(report, cfg, traj);

  if (cfg.kind == Kind::audit) {
    std::vector<LabeledObservable> obs;
    if (cfg.observables.empty()) {
      obs = commutant_basis(inst.h);
    } else {
      for (const auto& o : cfg.observables) obs.push_back({o.label, o.matrix});
    }
    const AuditReport audit = audit_conservation(traj, inst.h, obs);
    for (const auto& o : audit.observables) {
      json d{{"commutes", o.commutes}, {"conserved", o.conserved}, {"bilinear_vanishes", o.bilinear_vanishes}};
      if (o.conserved) {
        d["value"] = to_json(o.values_by_n.front());
      } else {
        d["first_drift_site"] = *o.first_drift_site;
      }
      const std::string name = "q_conserved[" + o.label + "]";
      if (o.commutes) {
        report.checks.push_back(verdict(name, o.conserved && o.bilinear_vanishes, d));
      } else {
        report.checks.push_back(info(name, d));
      }
    }
    if (traj.size() >= 3) {
      const ActionValue a = action_evaluate(traj, inst.h);
      report.checks.push_back(verdict("action_vanishes", a.value.is_zero(), {{"value", to_json(a.value)}}));
      const StationarityReport st = verify_stationarity(traj, inst.h, kDefaultDeltas);
      json d{{"sites_checked", st.sites_checked}, {"variations_checked", st.variations_checked},
             {"violations", st.violations.size()}};
      if (!st.violations.empty()) d["first_violating_site"] = st.violations.front().site;
      report.checks.push_back(verdict("stationarity", st.stationary() && st.delta_independent, d));
    } else {
      report.checks.push_back(info("action_vanishes", {{"skipped", "needs at least 3 slices"}}));
    }
    if (cfg.format == "json") {
      report.artifacts["audit.json"] = to_json(audit).dump(2) + "\n";
    } else {
      report.artifacts["q_values.csv"] = values_csv(audit);
    }
  }

  if (cfg.kind == Kind::reconstruct) {
    const DiscretenessScale scale(*cfg.scale_l);
    const ContinuumSignal signal = ContinuumSignal::from_trajectory(traj, scale, cfg.window);
    double worst = 0;
    for (std::size_t n = 0; n < traj.size(); ++n) {
      const ComplexVector got = reconstruct(signal, static_cast<double>(n) * scale.value()).values;
      double diff = 0, ref = 0;
      for (std::size_t a = 0; a < got.size(); ++a) {
        diff += std::norm(got[a] - signal.samples[n][a]);
        ref += std::norm(signal.samples[n][a]);
      }
      worst = std::max(worst, ref > 0 ? std::sqrt(diff / ref) : std::sqrt(diff));
    }
    report.checks.push_back(verdict("sample_fidelity", worst <= 1e-12, {{"max_relative_error", worst}, {"tolerance", 1e-12}}));

    double q_worst = 0;
    for (std::size_t n = 1; n + 1 < traj.size(); ++n) {
      const double discrete = to_double(symmetrized_q(traj, n));
      const double cont = continuum_q(signal, static_cast<double>(n) * scale.value(), QTruncation::exact_cosh);
      double mag = 0;
      for (std::size_t a = 0; a < traj.dim(); ++a) {
        mag += std::abs(signal.samples[n][a]) * (std::abs(signal.samples[n + 1][a]) + std::abs(signal.samples[n - 1][a])) / 2;
      }
      q_worst = std::max(q_worst, std::abs(cont - discrete) / std::max(1.0, mag));
    }
    if (traj.size() >= 3) {
      report.checks.push_back(verdict("continuum_q_matches_discrete", q_worst <= 1e-10,
                                      {{"max_relative_error", q_worst}, {"tolerance", 1e-10}}));
    }

    std::vector<double> times = cfg.times;
    if (times.empty()) {
      for (std::size_t k = 0; k <= 2 * traj.last_index(); ++k) times.push_back(static_cast<double>(k) * scale.value() / 2);
    }
    if (cfg.format == "json") {
      json rows = json::array();
      for (double t : times) {
        const Reconstruction r = reconstruct(signal, t);
        json values = json::array();
        for (const auto& z : r.values) values.push_back({z.real(), z.imag()});
        rows.push_back({{"t", t}, {"values", values}, {"extrapolated", r.extrapolated}, {"window_clipped", r.window_clipped}});
      }
      report.artifacts["reconstruction.json"] = rows.dump(2) + "\n";
    } else {
      report.artifacts["reconstruction.csv"] = reconstruction_csv(signal, times);
    }
  }
}

void run_converge(RunReport& report, const ExperimentConfig& cfg) {
  const HermitianMatrix& h = cfg.hamiltonians.at(0);
  ConvergenceOptions opt{cfg.time, cfg.scales, cfg.window, cfg.seed_rule};
  const ConvergenceReport conv = convergence_study(h, to_complex(*cfg.initial_state), opt);
  for (const auto& p : conv.points) {
    if (!p.included) report.checks.push_back(info("scale_excluded[" + format_double(p.l) + "]", {{"note", p.note}}));
  }
  json d{{"fitted_order", conv.fitted_order ? json(*conv.fitted_order) : json(nullptr)}, {"min_order", cfg.min_order}};
  report.checks.push_back(verdict("fitted_order", conv.fitted_order && *conv.fitted_order >= cfg.min_order, d));
  if (cfg.format == "json") {
    report.artifacts["convergence.json"] = to_json(conv).dump(2) + "\n";
  } else {
    report.artifacts["convergence.csv"] = to_csv(conv);
  }
}

void run_multi(RunReport& report, const ExperimentConfig& cfg) {
  const std::size_t m = cfg.hamiltonians.size();
  std::vector<FactorSpec> parts;
  std::vector<std::size_t> dims;
  std::vector<GIVector> s0, s1;
  for (std::size_t k = 0; k < m; ++k) {
    parts.push_back({cfg.hamiltonians[k], cfg.seeds[2 * k], cfg.seeds[2 * k + 1], cfg.steps[k]});
    dims.push_back(cfg.hamiltonians[k].dim());
    s0.push_back(cfg.seeds[2 * k]);
    s1.push_back(cfg.seeds[2 * k + 1]);
  }
  const FactorizedEvolution fe = evolve_factorized(parts);
  report.checks.push_back(verdict("product_residual_zero", fe.certified, residual_detail(fe.residual)));

  const InteractionTensor interaction =
      cfg.interaction ? InteractionTensor(dims, HermitianMatrix(*cfg.interaction)) : InteractionTensor::zero(dims);
  if (!interaction.is_zero()) {
    report.checks.push_back(
        info("interacting_product_residual", residual_detail(many_time_residual(fe.field, cfg.hamiltonians, interaction))));
  }

  std::size_t sync_steps = 1;
  for (auto s : cfg.steps) sync_steps = std::max(sync_steps, s);
  const Trajectory sync =
      evolve_synchronized(tensor_product(s0), tensor_product(s1), cfg.hamiltonians, interaction, sync_steps);
  const ClockPoint two(m, 2);
  const GIVector product2 = fe.field.slice(two);
  json d{{"differs", !(sync[2] == product2)}};
  for (std::size_t f = 0; f < product2.size(); ++f) {
    if (!(sync[2][f] == product2[f])) {
      d["first_difference"] = {{"indices", fe.field.multi_index(f)},
                               {"synchronized", to_json(sync[2][f])},
                               {"product", to_json(product2[f])}};
      break;
    }
  }
  report.checks.push_back(info("synchronized_vs_product_at_n2", d));

  const HermitianMatrix total = total_hamiltonian(cfg.hamiltonians, interaction);
  const LabeledObservable one{"1", HermitianMatrix::identity(total.dim())};
  const AuditReport audit = audit_conservation(sync, total, std::span(&one, 1));
  report.checks.push_back(verdict("synchronized_q1_conserved", audit.observables[0].conserved,
                                  {{"value", to_json(audit.observables[0].values_by_n.front())}}));

  if (cfg.format == "json") {
    report.artifacts["field.json"] = to_json(fe.field).dump(2) + "\n";
  } else {
    report.artifacts["residual.csv"] = fe.residual.to_csv();
  }
}

void run_bell(RunReport& report, const ExperimentConfig& cfg) {
  const HermitianMatrix& h = cfg.hamiltonians.at(0);
  const Trajectory psi = evolve(cfg.seeds[0], cfg.seeds[1], h, cfg.steps[0]);
  const Trajectory phi = evolve(cfg.seeds[2], cfg.seeds[3], h, cfg.steps[0]);
  const MultiWave bell = bell_state(psi, phi);
  const std::vector<HermitianMatrix> hs{h, h};
  const ResidualField residual = many_time_residual(bell, hs, InteractionTensor::zero({2, 2}));
  report.checks.push_back(verdict("bell_residual_zero", residual.is_zero(), residual_detail(residual)));

  bool antisymmetric = true;
  for (std::int64_t n = 0; n <= static_cast<std::int64_t>(psi.last_index()); ++n) {
    const std::int64_t c[] = {n, n};
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        const std::size_t ab[] = {a, b};
        const std::size_t ba[] = {b, a};
        if (!(bell.at(c, ab) == -bell.at(c, ba))) antisymmetric = false;
      }
    }
  }
  report.checks.push_back(verdict("bell_antisymmetric_at_equal_clocks", antisymmetric));

  const std::int64_t n1 = cfg.slice_clocks[0], n2 = cfg.slice_clocks[1];
  const WitnessResult w = factorizability_witness(bipartite_slice(bell, n1, n2));
  json wd = to_json(w);
  wd["clocks"] = {n1, n2};
  report.checks.push_back(verdict("bell_slice_entangled", !w.factorizable, wd));

  const std::vector<Trajectory> factors{psi, phi};
  const WitnessResult pw = factorizability_witness(bipartite_slice(product_field(factors), n1, n2));
  report.checks.push_back(verdict("product_slice_factorizable", pw.factorizable, to_json(pw)));

  if (cfg.format == "json") {
    report.artifacts["bell.json"] = to_json(bell).dump(2) + "\n";
  } else {
    report.artifacts["bell_residual.csv"] = residual.to_csv();
  }
}

void run_leibniz(RunReport& report, const ExperimentConfig& cfg) {
  const LeibnizReport lr = leibniz_failure_demo(cfg.sequence_a, cfg.sequence_b);
  std::optional<std::size_t> bad;
  for (const auto& r : lr.rows) {
    if (!r.identity_holds && !bad) bad = r.n;
  }
  report.checks.push_back(verdict("product_identity_holds", lr.identity_holds_everywhere,
                                  {{"first_violating_site", bad ? json(*bad) : json(nullptr)}}));
  report.checks.push_back(info("naive_leibniz_rule",
                               {{"fails", lr.first_naive_failure.has_value()},
                                {"first_failure_site", lr.first_naive_failure ? json(*lr.first_naive_failure) : json(nullptr)}}));
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& r : lr.rows) {
      rows.push_back({{"n", r.n},
                      {"lhs", to_json(r.lhs)},
                      {"middle", to_string(r.middle)},
                      {"naive", to_json(r.naive)},
                      {"identity_holds", r.identity_holds},
                      {"naive_matches", r.naive_matches}});
    }
    report.artifacts["leibniz.json"] = rows.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "n,lhs,middle,naive,identity_holds,naive_matches\n";
    for (const auto& r : lr.rows) {
      os << r.n << ',' << r.lhs.to_string() << ',' << to_string(r.middle) << ',' << r.naive.to_string() << ','
         << (r.identity_holds ? "true" : "false") << ',' << (r.naive_matches ? "true" : "false") << '\n';
    }
    report.artifacts["leibniz.csv"] = os.str();
  }
}

}  // namespace

std::string to_string(Kind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<Kind> kind_from_string(const std::string& s) {
  for (const auto& [kind, name] : kKindNames) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

ConfigError::ConfigError(std::vector<ValidationIssue> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid config:";
        for (const auto& i : issues) msg += "\n  " + i.path + ": " + i.reason;
        return msg;
      }()),
      issues_(std::move(issues)) {}

ExperimentConfig parse_config(const json& j, std::optional<Kind> verb) {
  if (!j.is_object()) throw ConfigError(std::vector<ValidationIssue>{{"$", "config must be a JSON object"}});
  std::optional<Kind> kind = verb;
  if (j.contains("kind")) {
    const json& k = j.at("kind");
    const auto named = k.is_string() ? kind_from_string(k.get<std::string>()) : std::nullopt;
    if (!named) throw ConfigError(std::vector<ValidationIssue>{{"kind", "expected one of evolve, audit, reconstruct, converge, multi, bell, leibniz"}});
    if (verb && *verb != *named) {
      throw ConfigError(std::vector<ValidationIssue>{{"kind", "config kind \"" + to_string(*named) + "\" does not match verb \"" + to_string(*verb) + "\""}});
    }
    kind = named;
  }
  if (!kind) throw ConfigError(std::vector<ValidationIssue>{{"kind", "required when no verb is given"}});

  ExperimentConfig cfg;
  cfg.kind = *kind;
  cfg.source = j;
  Parser p(j, *kind, cfg);
  p.parse();
  if (!p.issues.empty()) throw ConfigError(std::move(p.issues));
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<Kind> verb) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::vector<ValidationIssue>{{"$", "cannot read " + path.string()}});
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::vector<ValidationIssue>{{"$", std::string("JSON parse error: ") + e.what()}});
  }
  return parse_config(j, verb);
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::info:
      return "info";
  }
  return "?";
}

bool RunReport::all_pass() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail) return false;
  }
  return true;
}

RunReport run(const ExperimentConfig& config, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.kind = config.kind;
  report.config = config.source;
  report.seed = seed;
  switch (config.kind) {
    case Kind::evolve:
    case Kind::audit:
    case Kind::reconstruct:
      run_single(report, config, seed);
      break;
    case Kind::converge:
      run_converge(report, config);
      break;
    case Kind::multi:
      run_multi(report, config);
      break;
    case Kind::bell:
      run_bell(report, config);
      break;
    case Kind::leibniz:
      run_leibniz(report, config);
      break;
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

json to_json(const RunReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  }
  json artifacts = json::array();
  for (const auto& [name, content] : report.artifacts) artifacts.push_back(name);
  return json{{"kind", to_string(report.kind)},
              {"config", report.config},
              {"seed", report.seed},
              {"checks", std::move(checks)},
              {"artifacts", std::move(artifacts)},
              {"all_pass", report.all_pass()},
              {"exit_code", report.exit_code()}};
}

std::vector<std::filesystem::path> emit_report(const RunReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::string& name, const std::string& content) {
    const auto path = out_dir / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
  };
  for (const auto& [name, content] : report.artifacts) write(name, content);
  write("report.json", to_json(report).dump(2) + "\n");
  return written;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Exact Hamiltonian cellular automaton experiments"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::uint64_t seed = 1;
  for (const auto& [kind, name] : kKindNames) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (default: config output.path)");
    sub->add_option("--seed", seed, "seed for random instances")->capture_default_str();
    sub->add_option("--format", format, "artifact format")->check(CLI::IsMember({"csv", "json"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const auto verb = kind_from_string(app.get_subcommands().front()->get_name());

  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path, verb);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  if (!format.empty()) cfg.format = format;
  if (out_dir.empty()) out_dir = cfg.output_path;

  try {
    const RunReport report = run(cfg, seed);
    emit_report(report, out_dir);
    for (const auto& c : report.checks) std::cout << to_string(c.status) << "  " << c.name << '\n';
    std::cout << "wall time " << std::fixed << std::setprecision(3) << report.wall_seconds << " s; report at "
              << (std::filesystem::path(out_dir) / "report.json").string() << '\n';
    return report.exit_code();
  } catch (const std::exception& e) {
    std::cerr << to_string(cfg.kind) << " failed: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hca
