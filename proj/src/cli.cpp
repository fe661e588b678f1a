#include "momentflow/cli.hpp"

#include "momentflow/catalog.hpp"
#include "momentflow/flows.hpp"
#include "momentflow/hesselink.hpp"
#include "momentflow/io.hpp"
#include "momentflow/random.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace momentflow::cli {

namespace {

using io::Json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Flags and defaults; the config file fills anything not given on the command line.
struct CliConfig {
  std::string family;
  int n = 0;
  std::string vector;
  std::string weights;
  std::string group = "GL";
  std::string format;
  std::string label;
  std::string partition;
  std::string preset;
  std::string d_matrix;
  std::string h0;
  std::string eta;
  std::uint64_t seed = 42;
  double t_max = -1.0;  // per-command default
  double dt0 = 1e-2;
  double tol = 1e-9;
  double stride = 0.1;
  double zero_tol = 1e-12;
  int cap = 20;
  bool raw = false;
  bool full = false;
  bool random_h0 = false;
  bool flow_first = false;
};

template <class F>
auto as_usage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON for ") + what + ": " + e.what());
  }
}

RepSpec spec_from(const CliConfig& c) {
  return as_usage([&] {
    if (c.family.empty()) throw UsageError("--family is required");
    const Family f = parse_family(c.family);
    if (f == Family::TorusWeights) {
      if (c.weights.empty()) throw UsageError("TorusWeights needs --weights");
      return RepSpec::torus(parse_json(io::read_argument(c.weights), "--weights").get<std::vector<WeightVector>>());
    }
    if (c.n < 1) throw UsageError("--n must be a positive integer");
    return RepSpec::make(f, c.n);
  });
}

/// --vector may be an inline array, or a file holding an array or a full vector document.
RepVector vector_from(const CliConfig& c) {
  return as_usage([&] {
    if (c.vector.empty()) throw UsageError("--vector is required");
    const Json j = parse_json(io::read_argument(c.vector), "--vector");
    if (j.is_object()) return io::rep_vector_from_json(j);
    RepVector v{spec_from(c), io::vector_from_json(j)};
    if (v.coords.size() != rep_dim(v.spec))
      throw UsageError("--vector has " + std::to_string(v.coords.size()) + " coordinates, expected " +
                       std::to_string(rep_dim(v.spec)));
    return v;
  });
}

FlowParams flow_params(const CliConfig& c, double default_t_max) {
  FlowParams p;
  p.dt0 = c.dt0;
  p.t_max = c.t_max > 0 ? c.t_max : default_t_max;
  p.residual_tol = c.tol;
  p.sample_stride = c.stride;
  p.renormalize = !c.raw;
  p.stop_at_critical = !c.full;
  as_usage([&] {
    p.validate();
    return 0;
  });
  return p;
}

CartanContext context_for(const CliConfig& c, const RepSpec& spec) {
  return as_usage([&] { return build_context(spec.n, parse_group(c.group)); });
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int cmd_rep_info(const CliConfig& c, std::ostream& out) {
  const RepSpec spec = spec_from(c);
  Json weights = Json::array();
  for (const auto& w : weights_of(spec)) weights.push_back(io::weight_to_json(w));
  emit(out, Json{{"family", to_string(spec.family)},
                 {"n", spec.n},
                 {"dim", rep_dim(spec)},
                 {"basis", basis_labels(spec)},
                 {"weights", weights}});
  return 0;
}

int cmd_moment(const CliConfig& c, std::ostream& out) {
  const RepVector v = vector_from(c);
  const CartanContext ctx = context_for(c, v.spec);
  const MomentValue m = moment(ctx, v.spec, v.coords);
  Json j = io::to_json(m);
  j["criticality_residual"] = criticality_residual(v.spec, v.coords, m);
  if (v.spec.family != Family::TorusWeights && ctx.group() == GroupKind::GL)
    j["closed_form"] = io::to_json(closed_form_moment(v.spec, v.coords));
  emit(out, j);
  return 0;
}

int cmd_flow(const CliConfig& c, std::ostream& out) {
  const RepVector v = vector_from(c);
  const CartanContext ctx = context_for(c, v.spec);
  const FlowParams p = flow_params(c, 1e3);
  const std::string format = c.format.empty() ? "csv" : c.format;
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
  const FlowResult r = gradient_flow(ctx, v.spec, v.coords, p);

  if (format == "csv") {
    out << "t,F,residual";
    for (const auto& label : basis_labels(v.spec)) out << ',' << label;
    out << '\n';
    for (const auto& s : r.samples) {
      out << io::format_double(s.t) << ',' << io::format_double(s.energy) << ',' << io::format_double(s.residual);
      for (Eigen::Index k = 0; k < s.v.size(); ++k) out << ',' << io::format_double(s.v[k]);
      out << '\n';
    }
    return 0;
  }
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back(Json{{"t", s.t}, {"F", s.energy}, {"residual", s.residual}, {"v", io::to_json(s.v)}});
  emit(out, Json{{"converged", r.converged},
                 {"steps", r.steps},
                 {"final_residual", r.final_residual},
                 {"max_energy_increase", r.max_energy_increase},
                 {"diagnostic", r.diagnostic},
                 {"limit", io::to_json(r.limit)},
                 {"limit_moment", io::to_json(r.limit_moment)},
                 {"samples", samples}});
  return 0;
}

int cmd_verify_flows(const CliConfig& c, std::ostream& out) {
  const RepVector v = vector_from(c);
  const CartanContext ctx = context_for(c, v.spec);
  const FlowParams p = flow_params(c, 5.0);
  Matrix h0 = Matrix::Identity(v.spec.n, v.spec.n);
  if (!c.h0.empty()) {
    h0 = as_usage([&] { return io::matrix_from_json(parse_json(io::read_argument(c.h0), "--h0")); });
  } else if (c.random_h0) {
    Rng rng(c.seed);
    h0 = random_well_conditioned(v.spec.n, rng);
  }
  const auto report = verify_flow_equivalence(ctx, v.spec, v.coords, h0, p.t_max, p);
  emit(out, Json{{"horizon", p.t_max},
                 {"h0", io::to_json(h0)},
                 {"max_dev_v", report.max_dev_v},
                 {"max_dev_S", report.max_dev_s},
                 {"passed", report.passed}});
  return 0;
}

int cmd_label(const CliConfig& c, std::ostream& out) {
  const RepVector v = vector_from(c);
  const GroupKind g = as_usage([&] { return parse_group(c.group); });
  const auto label = optimal_class(v.spec, v.coords, g, c.zero_tol);
  emit(out, label ? io::to_json(*label) : io::semistable_json());
  return 0;
}

int cmd_labels_enumerate(const CliConfig& c, std::ostream& out) {
  const RepSpec spec = spec_from(c);
  const auto e = enumerate_labels(spec, c.cap);
  Json labels = Json::array();
  for (const auto& l : e.labels) labels.push_back(io::to_json(l));
  emit(out, Json{{"family", to_string(spec.family)}, {"n", spec.n}, {"includes_zero", e.includes_zero}, {"labels", labels}});
  return 0;
}

int cmd_stratum(const CliConfig& c, std::ostream& out) {
  const RepVector v = vector_from(c);
  if (c.label.empty()) throw UsageError("--label is required");
  const auto label =
      as_usage([&] { return io::label_from_json(parse_json(io::read_argument(c.label), "--label")); });
  if (!label) throw UsageError("--label is the semistable marker; stratum membership needs a nonzero label");
  emit(out, io::to_json(stratum_membership(v.spec, v.coords, *label, c.zero_tol)));
  return 0;
}

int cmd_jordan(const CliConfig& c, std::ostream& out) {
  if (c.partition.empty()) throw UsageError("--partition is required");
  const Partition p = as_usage([&] { return Partition::parse(c.partition); });
  Json j{{"partition", p.parts()}, {"n", p.n()}};
  const Json label = io::to_json(jordan_label(p));
  for (const auto& [k, val] : label.items()) j[k] = val;
  emit(out, j);
  return 0;
}

int cmd_bracket(const CliConfig& c, std::ostream& out) {
  if (c.preset.empty()) throw UsageError("--preset is required");
  const int n = c.n > 0 ? c.n : 3;
  const BracketTensor mu =
      as_usage([&] { return bracket_preset(parse_bracket_preset(c.preset), n); });
  const CartanContext ctx = context_for(c, mu.spec());

  Json j{{"preset", c.preset}, {"n", n}, {"coords", io::to_json(mu.coords())}, {"jacobi_residual", mu.jacobi_residual()}};
  const MomentValue m = moment(ctx, mu.spec(), mu.coords());
  j["moment"] = io::to_json(m);
  const double residual = criticality_residual(mu.spec(), mu.coords(), m);
  j["criticality_residual"] = residual;

  if (!c.d_matrix.empty()) {
    const Matrix d = as_usage([&] { return io::matrix_from_json(parse_json(io::read_argument(c.d_matrix), "--D")); });
    j["derivation"] = io::to_json(derivation_report(mu, d));
  }

  if (residual <= 1e-9) {
    j["critical_check"] = io::to_json(critical_bracket_check(ctx, mu));
  } else if (c.flow_first) {
    FlowParams p = flow_params(c, 1e4);
    p.residual_tol = std::min(p.residual_tol, 1e-12);
    const FlowResult r = gradient_flow(ctx, mu.spec(), mu.coords(), p);
    j["flow"] = Json{{"converged", r.converged}, {"final_residual", r.final_residual}, {"limit", io::to_json(r.limit)}};
    if (!r.converged) throw std::runtime_error("gradient flow did not converge: " + r.diagnostic);
    const BracketTensor limit(n, r.limit);
    const auto check = critical_bracket_check(ctx, limit);
    j["critical_check"] = io::to_json(check);
    j["limit_derivation"] = io::to_json(derivation_report(limit, check.beta_plus));
  }
  emit(out, j);
  return 0;
}

int cmd_project_sl(const CliConfig& c, std::ostream& out) {
  if (c.eta.empty()) throw UsageError("--eta is required");
  const RationalVector eta =
      as_usage([&] { return io::rational_vector_from_json(parse_json(io::read_argument(c.eta), "--eta")); });
  emit(out, Json{{"eta", io::to_json(eta)}, {"projected", io::to_json(project_to_sl(eta))}});
  return 0;
}

void add_rep_options(CLI::App* sub, CliConfig& c, bool with_vector) {
  sub->add_option("--family", c.family, "standard|dual|adjoint|lambda2|brackets|torusweights");
  sub->add_option("--n", c.n, "matrix size");
  sub->add_option("--weights", c.weights, "TorusWeights weight list (inline JSON or @file)");
  sub->add_option("--group", c.group, "GL or SL")->capture_default_str();
  if (with_vector) sub->add_option("--vector", c.vector, "coordinates (inline JSON, @file, or a vector document)");
}

void add_flow_options(CLI::App* sub, CliConfig& c) {
  sub->add_option("--t-max", c.t_max, "integration horizon");
  sub->add_option("--dt0", c.dt0, "initial step")->capture_default_str();
  sub->add_option("--tol", c.tol, "criticality residual threshold")->capture_default_str();
  sub->add_option("--stride", c.stride, "time between samples")->capture_default_str();
}

/// Appends config-file entries as flags unless already present on the command line.
std::vector<std::string> apply_config(std::vector<std::string> args, CLI::App& app) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (std::next(it) == args.end()) throw CLI::ArgumentMismatch("--config needs a file argument");
  const std::string path = *std::next(it);
  args.erase(it, std::next(it, 2));

  const auto entries = as_usage([&] { return io::parse_config(io::read_argument("@" + path)); });
  CLI::App* sub = nullptr;
  for (const auto& a : args)
    if (!a.empty() && a[0] != '-') {
      sub = app.get_subcommand_no_throw(a);
      break;
    }
  if (!sub) return args;
  for (const auto& [key, value] : entries) {
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    if (!sub->get_option_no_throw(flag)) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"momentflow: moment maps, gradient flows and Hesselink strata for GL_n / SL_n representations"};
  app.require_subcommand(1);
  app.add_option("--config", "key=value config file; command-line flags take precedence");

  auto* rep_info = app.add_subcommand("rep-info", "dimension, basis order and torus weights of a representation");
  add_rep_options(rep_info, c, false);

  auto* moment_cmd = app.add_subcommand("moment", "moment map m(v), energy and criticality residual");
  add_rep_options(moment_cmd, c, true);

  auto* flow = app.add_subcommand("flow", "negative gradient flow of the energy");
  add_rep_options(flow, c, true);
  add_flow_options(flow, c);
  flow->add_option("--format", c.format, "csv (default) or json");
  flow->add_flag("--raw", c.raw, "do not renormalize to the unit sphere");
  flow->add_flag("--full", c.full, "integrate to --t-max even after reaching a critical point");

  auto* verify = app.add_subcommand("verify-flows", "check gradient, group and metric flow equivalence");
  add_rep_options(verify, c, true);
  add_flow_options(verify, c);
  verify->add_option("--h0", c.h0, "initial group element (JSON matrix)");
  verify->add_flag("--random-h0", c.random_h0, "draw a well-conditioned h0 from --seed");
  verify->add_option("--seed", c.seed, "random seed")->capture_default_str();

  auto* label = app.add_subcommand("label", "Hesselink optimal class for the diagonal torus");
  add_rep_options(label, c, true);
  label->add_option("--zero-tol", c.zero_tol)->capture_default_str();

  auto* enumerate = app.add_subcommand("labels-enumerate", "all Hesselink labels of a representation");
  add_rep_options(enumerate, c, false);
  enumerate->add_option("--cap", c.cap, "maximum number of distinct weights")->capture_default_str();

  auto* stratum = app.add_subcommand("stratum", "grading and V/U membership for a label");
  add_rep_options(stratum, c, true);
  stratum->add_option("--label", c.label, "label JSON (inline, @file, or - for stdin)");
  stratum->add_option("--zero-tol", c.zero_tol)->capture_default_str();

  auto* jordan = app.add_subcommand("jordan", "label and identities for a nilpotent Jordan type");
  jordan->add_option("--partition", c.partition, "block sizes, e.g. 3,2");

  auto* bracket = app.add_subcommand("bracket", "bracket presets, derivations and the critical check");
  bracket->add_option("--preset", c.preset, "heisenberg|chain");
  bracket->add_option("--n", c.n, "dimension (default 3)");
  bracket->add_option("--group", c.group, "GL or SL")->capture_default_str();
  bracket->add_option("--D", c.d_matrix, "candidate derivation (JSON matrix)");
  bracket->add_flag("--flow", c.flow_first, "flow to a critical direction before the critical check");
  add_flow_options(bracket, c);

  auto* project = app.add_subcommand("project-sl", "orthogonal projection of a label onto the SL_n torus");
  project->add_option("--eta", c.eta, "rational vector, e.g. '[\"1/1\",\"0/1\"]' or '[1,0]'");

  for (auto* sub : {rep_info, moment_cmd, flow, verify, label, enumerate, stratum, jordan, bracket, project})
    sub->add_option("--config", "key=value config file");

  try {
    auto args = apply_config(args_in, app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (rep_info->parsed()) return cmd_rep_info(c, out);
    if (moment_cmd->parsed()) return cmd_moment(c, out);
    if (flow->parsed()) return cmd_flow(c, out);
    if (verify->parsed()) return cmd_verify_flows(c, out);
    if (label->parsed()) return cmd_label(c, out);
    if (enumerate->parsed()) return cmd_labels_enumerate(c, out);
    if (stratum->parsed()) return cmd_stratum(c, out);
    if (jordan->parsed()) return cmd_jordan(c, out);
    if (bracket->parsed()) return cmd_bracket(c, out);
    if (project->parsed()) return cmd_project_sl(c, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace momentflow::cli
