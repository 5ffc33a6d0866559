// entx: ensemble- and time-averaged entanglement of bipartite systems.
//
//   entx mean FILE
//   entx oracle FILE [--kind linear|von-neumann] [--samples N] [--seed S]
//   entx model two-spin --energies e1,e2,e3,e4 --state FILE {mean|timeseries|report}
//   entx model jc --omega W --omega0 W0 --kappa K --n-max N [--init-fock n | --state FILE] {mean|timeseries|report}
//
// Exit codes: 0 success, 2 invalid input, 1 internal error.

#include "entx/entx.hpp"
#include "entx/io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using entx::io::json;

constexpr std::uint64_t default_seed = 12345;
constexpr std::uint64_t default_samples = 100000;

struct Options {
  std::string file;
  std::string output;
  entx::EntropyKind kind = entx::EntropyKind::Linear;
  std::uint64_t samples = default_samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> horizon;
  std::optional<double> step;
  std::optional<double> t_max;
  std::optional<double> dt;

  // model parameters
  std::vector<double> energies;
  std::string state;
  double omega = 1.0;
  double omega0 = 1.0;
  double kappa = 0.05;
  int n_max = 4;
  std::optional<int> init_fock;
  std::string action;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("ENTX_SEED")) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw entx::ValidationError(std::string("ENTX_SEED is not an unsigned integer: ") + env);
  }
  return default_seed;
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw entx::ValidationError("cannot write '" + o.output + "'");
  out << text;
}

void add_common(CLI::App* app, Options& o) {
  const std::map<std::string, entx::EntropyKind> kinds{{"linear", entx::EntropyKind::Linear},
                                                       {"von-neumann", entx::EntropyKind::VonNeumann},
                                                       {"vonneumann", entx::EntropyKind::VonNeumann}};
  app->add_option("--kind", o.kind, "entropy for the oracle and time averages")
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
  app->add_option("--samples", o.samples, "Monte Carlo phase samples")->check(CLI::Range(std::uint64_t{2}, UINT64_MAX));
  app->add_option("--seed", o.seed, "oracle seed (fallback: $ENTX_SEED, then 12345)");
  app->add_option("--output", o.output, "write to this file instead of stdout");
}

void add_time_options(CLI::App* app, Options& o) {
  app->add_option("--horizon", o.horizon, "time-average horizon")->check(CLI::PositiveNumber);
  app->add_option("--step", o.step, "time-average step")->check(CLI::PositiveNumber);
  app->add_option("--t-max", o.t_max, "time-series end time")->check(CLI::NonNegativeNumber);
  app->add_option("--dt", o.dt, "time-series spacing")->check(CLI::PositiveNumber);
}

json closed_form_json(const entx::MicrocanonicalEnsemble& e) {
  json out;
  entx::io::add_report(out, entx::mean_entanglement_closed_form(e));
  return out;
}

int cmd_mean(const Options& o) {
  const auto e = entx::io::ensemble_from_json(entx::io::read_file(o.file));
  json out = closed_form_json(e);
  out["input"] = entx::io::ensemble_to_json(e);
  emit(o, entx::io::dump(out) + "\n");
  return 0;
}

int cmd_oracle(const Options& o) {
  const auto e = entx::io::ensemble_from_json(entx::io::read_file(o.file));
  const auto seed = resolve_seed(o);
  json out = closed_form_json(e);
  out["input"] = entx::io::ensemble_to_json(e);
  out["kind"] = entx::to_string(o.kind);
  out["oracle"] = entx::io::estimate_to_json(entx::phase_average_oracle(e, o.kind, o.samples, seed));
  emit(o, entx::io::dump(out) + "\n");
  return 0;
}

struct ModelRun {
  entx::SpectralDecomposition spectrum;
  entx::PureState initial;
  json description;
  std::optional<entx::JaynesCummingsModel> jc;
  std::optional<int> jc_level;
  std::optional<entx::TwoSpinModel> two_spin;
};

ModelRun build_two_spin(const Options& o) {
  if (o.energies.size() != 4) throw entx::ValidationError("--energies needs exactly 4 values");
  if (o.state.empty()) throw entx::ValidationError("two-spin needs --state FILE");
  auto psi = entx::io::state_from_json(entx::io::read_file(o.state));
  if (psi.dim_a() != 2 || psi.dim_b() != 2) throw entx::DimensionError("two-spin state must have dim_a = dim_b = 2");
  auto sys = entx::two_spin({o.energies[0], o.energies[1], o.energies[2], o.energies[3]});
  json desc{{"name", "two-spin"}, {"energies", o.energies}};
  return {std::move(sys.spectrum), std::move(psi), std::move(desc), std::nullopt, std::nullopt, std::move(sys.model)};
}

ModelRun build_jc(const Options& o) {
  auto sys = entx::jaynes_cummings(o.omega, o.omega0, o.kappa, o.n_max);
  std::optional<int> level;
  std::optional<entx::PureState> psi;
  if (!o.state.empty()) {
    if (o.init_fock) throw entx::ValidationError("use either --init-fock or --state, not both");
    psi = entx::io::state_from_json(entx::io::read_file(o.state));
  } else {
    level = o.init_fock.value_or(0);
    psi = entx::jc_excited_fock_state(sys.model, *level);
  }
  json desc{{"name", "jc"},       {"omega", o.omega}, {"omega0", o.omega0},
            {"kappa", o.kappa},   {"n_max", o.n_max}};
  if (level) desc["init_fock"] = *level;
  return {std::move(sys.spectrum), std::move(*psi), std::move(desc), std::move(sys.model), level, std::nullopt};
}

json model_summary(const ModelRun& run, const entx::MicrocanonicalEnsemble& e) {
  json out = closed_form_json(e);
  out["model"] = run.description;
  out["state"] = entx::io::state_to_json(run.initial);
  out["ensemble_weights"] = e.weights();
  if (run.jc && run.jc_level) {
    const auto n = static_cast<std::size_t>(*run.jc_level);
    out["analytic"] = {{"theta", run.jc->theta[n]},
                       {"gamma", run.jc->gamma[n]},
                       {"mean", entx::jc_mean_entanglement_reference(*run.jc, *run.jc_level)}};
  }
  if (run.two_spin) {
    const auto p = run.two_spin->bell_weights(run.initial);
    out["analytic"] = {{"bell_weights", p},
                       {"nondegenerate_mean", entx::two_spin_mean_reference(p)},
                       {"parallel_antiparallel_degenerate_mean",
                        entx::two_spin_degenerate_mean_reference(run.initial)}};
  }
  return out;
}

int cmd_model(const Options& o, bool jc) {
  const ModelRun run = jc ? build_jc(o) : build_two_spin(o);

  if (o.action == "timeseries") {
    const auto grid = entx::default_time_grid(run.initial, run.spectrum, 10.0);
    const auto times = entx::uniform_times(o.t_max.value_or(grid.horizon), o.dt.value_or(grid.step));
    const entx::Propagator prop(run.initial, run.spectrum);
    std::vector<double> ent, w;
    for (const double t : times) {
      const auto psi_t = prop.at(t);
      ent.push_back(entx::entanglement(psi_t, o.kind));
      if (jc) w.push_back(entx::partial_trace(psi_t, entx::Subsystem::B)(entx::atom::ground, entx::atom::ground).real());
    }
    std::ostringstream csv;
    if (jc) entx::io::write_csv(csv, {"t", "entanglement", "w_ground"}, {times, ent, w});
    else entx::io::write_csv(csv, {"t", "entanglement"}, {times, ent});
    emit(o, csv.str());
    return 0;
  }

  const auto e = entx::form_ensemble(run.initial, run.spectrum);
  json out = model_summary(run, e);
  if (o.action == "report") {
    const auto grid = entx::default_time_grid(run.initial, run.spectrum);
    const double horizon = o.horizon.value_or(grid.horizon);
    const double step = o.step.value_or(std::min(grid.step, 0.5 * horizon));
    const auto exact = entx::time_average_exact_linear(run.initial, run.spectrum);
    const double numeric = entx::time_average_numeric(run.initial, run.spectrum, o.kind, horizon, step);
    out["time_average"] = {{"numeric", numeric},
                           {"numeric_kind", entx::to_string(o.kind)},
                           {"horizon", horizon},
                           {"step", step},
                           {"exact", exact.value},
                           {"resonances_found", exact.nontrivial_resonances},
                           {"exact_minus_closed_form", exact.value - out["mean_closed_form"].get<double>()}};
    const auto seed = resolve_seed(o);
    out["oracle"] = entx::io::estimate_to_json(entx::phase_average_oracle(e, o.kind, o.samples, seed));
    out["oracle"]["kind"] = entx::to_string(o.kind);
  }
  emit(o, entx::io::dump(out) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ensemble- and time-averaged entanglement of bipartite quantum systems"};
  app.require_subcommand(1);
  Options o;

  auto* mean = app.add_subcommand("mean", "closed-form mean entanglement of an ensemble file");
  mean->add_option("file", o.file, "ensemble JSON")->required();
  mean->add_option("--output", o.output, "write to this file instead of stdout");

  auto* oracle = app.add_subcommand("oracle", "Monte Carlo phase average of an ensemble file");
  oracle->add_option("file", o.file, "ensemble JSON")->required();
  add_common(oracle, o);

  auto* model = app.add_subcommand("model", "bundled models");
  model->require_subcommand(1);
  const std::vector<std::string> actions{"mean", "timeseries", "report"};

  auto* two = model->add_subcommand("two-spin", "two spins diagonal in the Bell-type basis");
  two->add_option("--energies", o.energies, "four energies, comma separated")->delimiter(',')->required();
  two->add_option("--state", o.state, "initial state JSON")->required();
  two->add_option("action", o.action, "mean | timeseries | report")->required()->check(CLI::IsMember(actions));
  add_common(two, o);
  add_time_options(two, o);

  auto* jc = model->add_subcommand("jc", "Jaynes-Cummings model with a Fock cutoff");
  jc->add_option("--omega", o.omega, "cavity frequency")->capture_default_str();
  jc->add_option("--omega0", o.omega0, "two-level splitting")->capture_default_str();
  jc->add_option("--kappa", o.kappa, "coupling")->capture_default_str();
  jc->add_option("--n-max", o.n_max, "Fock cutoff")->capture_default_str();
  jc->add_option("--init-fock", o.init_fock, "initial state |e> (x) |n> (default n = 0)");
  jc->add_option("--state", o.state, "initial state JSON (oscillator x atom)");
  jc->add_option("action", o.action, "mean | timeseries | report")->required()->check(CLI::IsMember(actions));
  add_common(jc, o);
  add_time_options(jc, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*mean) return cmd_mean(o);
    if (*oracle) return cmd_oracle(o);
    if (*two) return cmd_model(o, false);
    if (*jc) return cmd_model(o, true);
    return 2;
  } catch (const entx::ValidationError& e) {
    std::cerr << "entx: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "entx: internal error: " << e.what() << '\n';
    return 1;
  }
}
