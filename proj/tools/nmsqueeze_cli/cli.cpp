#include "nmsqueeze_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "nmsqueeze/errors.hpp"
#include "nmsqueeze/fock_oracle.hpp"
#include "nmsqueeze/squeeze_algebra.hpp"
#include "nmsqueeze/wigner.hpp"
#include "nmsqueeze_cli/format.hpp"
#include "nmsqueeze_cli/verify.hpp"

namespace nmsqueeze::cli {
namespace {

struct Report {
  std::string text;
  int status = 0;
};

Json header(const CliConfig& config) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = config.command;
  doc["n"] = config.n;
  doc["lambda"] = config.lambda;
  return doc;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("cannot parse ") + what + " value '" + item + "'");
    }
  }
  return out;
}

void require_format(const CliConfig& config, bool csv_allowed) {
  if (config.format == Format::csv && !csv_allowed) {
    throw InvalidArgument("--format csv is only available for matrices and wigner");
  }
}

Report cmd_matrices(const CliConfig& config) {
  require_format(config, true);
  const SqueezeParams params(config.n, config.lambda);
  const auto transform = heisenberg_transform(params);
  const auto form = normal_ordered_form(params);
  const Matrix gram = symmetric_gram(params.n(), params.lambda());
  const Matrix gram_inverse = symmetric_gram(params.n(), -params.lambda());

  const std::vector<std::pair<std::string, const Matrix*>> blocks = {
      {"lambda_matrix", &transform.q_matrix}, {"exp_lambda_a", &transform.p_matrix},
      {"gram", &gram},                        {"gram_inverse", &gram_inverse},
      {"n_matrix", &form.n_matrix},           {"n_inverse", &form.n_inverse},
      {"f", &form.f},                         {"e", &form.e},
      {"d", &form.d},
  };

  if (config.format == Format::csv) {
    std::ostringstream out;
    out << "# schema_version=" << kSchemaVersion << " command=matrices n=" << config.n
        << " lambda=" << format_double(config.lambda) << '\n';
    out << "# prefactor=" << format_double(form.prefactor) << " det_n=" << format_double(form.det_n) << '\n';
    for (const auto& [name, m] : blocks) out << matrix_csv_block(name, *m);
    return {out.str(), 0};
  }
  Json doc = header(config);
  doc["prefactor"] = form.prefactor;
  doc["det_n"] = form.det_n;
  for (const auto& [name, m] : blocks) doc[name] = matrix_json(*m);
  return {dump(doc), 0};
}

Report cmd_variances(const CliConfig& config) {
  require_format(config, false);
  const SqueezeParams params(config.n, config.lambda);
  const auto v = quadrature_variances(params);
  Json doc = header(config);
  doc["var_x1"] = v.var_x1;
  doc["var_x2"] = v.var_x2;
  doc["product"] = v.product();
  doc["reference_x1"] = std::exp(-2.0 * config.lambda) / 4.0;
  doc["reference_x2"] = std::exp(2.0 * config.lambda) / 4.0;
  doc["reference_product"] = 1.0 / 16.0;
  return {dump(doc), 0};
}

Report cmd_state(const CliConfig& config) {
  require_format(config, false);
  const SqueezeParams params(config.n, config.lambda);
  const auto vacuum = squeezed_vacuum(params);
  Json doc = header(config);
  doc["prefactor"] = vacuum.prefactor;
  doc["f"] = matrix_json(vacuum.f);
  if (config.oracle) {
    const int cutoff = config.cutoff > 0 ? config.cutoff : default_cutoff(config.n);
    const auto psi = fock::apply_squeeze(fock::build_generator(params, cutoff));
    const auto amps = fock::extract_pair_amplitudes(psi);
    const Eigen::MatrixXcd ratio = amps.pairs / amps.vac;
    Json oracle;
    oracle["cutoff"] = cutoff;
    oracle["dim"] = psi.basis.dim();
    oracle["leakage"] = psi.leakage;
    oracle["vacuum_amplitude"] = {amps.vac.real(), amps.vac.imag()};
    oracle["pairs_over_vacuum_real"] = matrix_json(ratio.real());
    oracle["pairs_over_vacuum_imag"] = matrix_json(ratio.imag());
    oracle["max_abs_residual_vs_f"] = (ratio - vacuum.f.cast<std::complex<double>>()).cwiseAbs().maxCoeff();
    doc["oracle"] = std::move(oracle);
  }
  return {dump(doc), 0};
}

GridSliceSpec grid_spec(const CliConfig& config) {
  const auto comma = config.axes.find(',');
  if (comma == std::string::npos) throw InvalidArgument("--axes needs two names, e.g. q1,q2");
  GridSliceSpec spec;
  spec.axis_a = Axis::parse(config.axes.substr(0, comma), config.n);
  spec.axis_b = Axis::parse(config.axes.substr(comma + 1), config.n);

  const auto ra = parse_numbers(config.range_a, "--range-a");
  const auto rb = parse_numbers(config.range_b, "--range-b");
  if (ra.size() != 2 || rb.size() != 2) throw InvalidArgument("--range-a/--range-b take lo,hi");
  const auto steps = parse_numbers(config.steps, "--steps");
  if (steps.empty() || steps.size() > 2) throw InvalidArgument("--steps takes N or Na,Nb");
  for (double s : steps) {
    if (s != std::floor(s) || s < 2 || s > 1e6) throw InvalidArgument("--steps must be integers >= 2");
  }
  spec.range_a = {ra[0], ra[1], static_cast<int>(steps[0])};
  spec.range_b = {rb[0], rb[1], static_cast<int>(steps.back())};

  spec.fixed_values.assign(2 * config.n, 0.0);
  for (const auto& entry : config.fixed) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--fixed entries look like p1=0.5, got '" + entry + "'");
    const Axis axis = Axis::parse(entry.substr(0, eq), config.n);
    const auto value = parse_numbers(entry.substr(eq + 1), "--fixed");
    if (value.size() != 1) throw InvalidArgument("--fixed entries take one value");
    if (axis.flat_index(config.n) == spec.axis_a.flat_index(config.n) ||
        axis.flat_index(config.n) == spec.axis_b.flat_index(config.n)) {
      throw InvalidArgument("--fixed " + axis.name() + " is a slice axis");
    }
    spec.fixed_values[axis.flat_index(config.n)] = value[0];
  }
  return spec;
}

Report cmd_wigner(const CliConfig& config) {
  const SqueezeParams params(config.n, config.lambda);
  const auto slice = slice_grid(wigner_state(params), grid_spec(config));
  const auto& spec = slice.spec;

  if (config.format == Format::csv) {
    std::ostringstream out;
    out << "# schema_version=" << kSchemaVersion << " command=wigner n=" << config.n
        << " lambda=" << format_double(config.lambda) << " axis_a=" << spec.axis_a.name()
        << " axis_b=" << spec.axis_b.name() << " fixed=";
    for (int i = 0; i < 2 * config.n; ++i) {
      const Axis axis{i < config.n ? Axis::Kind::q : Axis::Kind::p, i % config.n};
      if (i == spec.axis_a.flat_index(config.n) || i == spec.axis_b.flat_index(config.n)) continue;
      out << axis.name() << ':' << format_double(spec.fixed_values[i]) << ';';
    }
    out << "\ncoord_a,coord_b,w\n";
    for (const auto& row : slice.rows) {
      out << format_double(row.coord_a) << ',' << format_double(row.coord_b) << ',' << format_double(row.w)
          << '\n';
    }
    return {out.str(), 0};
  }

  Json doc = header(config);
  doc["axis_a"] = spec.axis_a.name();
  doc["axis_b"] = spec.axis_b.name();
  Json fixed = Json::object();
  for (int i = 0; i < 2 * config.n; ++i) {
    if (i == spec.axis_a.flat_index(config.n) || i == spec.axis_b.flat_index(config.n)) continue;
    const Axis axis{i < config.n ? Axis::Kind::q : Axis::Kind::p, i % config.n};
    fixed[axis.name()] = spec.fixed_values[i];
  }
  doc["fixed"] = std::move(fixed);
  doc["columns"] = {"coord_a", "coord_b", "w"};
  Json rows = Json::array();
  for (const auto& row : slice.rows) rows.push_back({row.coord_a, row.coord_b, row.w});
  doc["rows"] = std::move(rows);
  return {dump(doc), 0};
}

Report cmd_identities(const CliConfig& config) {
  require_format(config, false);
  if (config.l_max < 0 || config.l_max > 12) throw InvalidArgument("--l-max must lie in [0, 12]");
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = config.command;
  doc["n"] = config.n;
  doc["l_max"] = config.l_max;
  bool all_equal = true;
  Json rows = Json::array();
  for (int l = 0; l <= config.l_max; ++l) {
    const auto identity = entry_sum_power_identity(config.n, l);
    const bool equal = identity.lhs == identity.rhs;
    all_equal = all_equal && equal;
    rows.push_back({{"l", l}, {"lhs", identity.lhs}, {"rhs", identity.rhs}, {"equal", equal}});
  }
  doc["entry_sum_identity"] = std::move(rows);
  if (config.lambda_given) {
    const SqueezeParams params(config.n, config.lambda);
    const auto sums = gram_entry_sum(params);
    doc["lambda"] = config.lambda;
    doc["gram_entry_sum"] = sums.sum;
    doc["gram_inverse_entry_sum"] = sums.inverse_sum;
    doc["reference_gram_entry_sum"] = config.n * std::exp(-2.0 * config.lambda);
    doc["reference_gram_inverse_entry_sum"] = config.n * std::exp(2.0 * config.lambda);
  }
  doc["pass"] = all_equal;
  return {dump(doc), all_equal ? 0 : 1};
}

Report cmd_verify(const CliConfig& config) {
  require_format(config, false);
  const auto checks = run_checks(config);
  Json doc = header(config);
  doc["oracle"] = config.oracle;
  if (config.oracle) doc["cutoff"] = config.cutoff > 0 ? config.cutoff : default_cutoff(config.n);
  Json list = Json::array();
  bool all = true;
  for (const auto& check : checks) {
    all = all && check.pass();
    Json entry;
    entry["name"] = check.name;
    // JSON has no NaN/Inf; non-finite residuals are written as null.
    if (std::isfinite(check.residual)) {
      entry["residual"] = check.residual;
    } else {
      entry["residual"] = nullptr;
    }
    entry["tolerance"] = check.tolerance;
    entry["pass"] = check.pass();
    list.push_back(std::move(entry));
  }
  doc["checks"] = std::move(list);
  doc["pass"] = all;
  return {dump(doc), all ? 0 : 1};
}

void add_common(CLI::App* sub, CliConfig& config, bool with_lambda = true) {
  sub->add_option("--n", config.n, "Mode count (>= 2)")->required();
  if (with_lambda) {
    sub->add_option("--lambda", config.lambda, "Squeezing parameter")->required();
  }
  sub->add_option_function<std::string>(
         "--format", [&config](const std::string& text) { config.format = text == "csv" ? Format::csv : Format::json; },
         "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}).description(""))
      ->option_text("{json,csv}");
  sub->add_option("--output", config.output, "Write output to this path instead of standard output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig config;
  CLI::App app{"n-mode cyclic squeezing operator toolkit", "nmsqueeze"};
  app.require_subcommand(1);

  auto* matrices = app.add_subcommand("matrices", "Heisenberg, gram and normal-ordered matrices");
  add_common(matrices, config);
  auto* variances = app.add_subcommand("variances", "Quadrature variances of the squeezed vacuum");
  add_common(variances, config);
  auto* state = app.add_subcommand("state", "Squeezed vacuum prefactor and two-photon matrix F");
  add_common(state, config);
  state->add_flag("--oracle", config.oracle, "Compare against the truncated Fock-space oracle");
  state->add_option("--cutoff", config.cutoff, "Photons per mode for the oracle");

  auto* wigner = app.add_subcommand("wigner", "2-D slice of the Wigner function");
  add_common(wigner, config);
  wigner->add_option("--axes", config.axes, "Two varying coordinates, e.g. q1,q2")->capture_default_str();
  wigner->add_option("--range-a", config.range_a, "lo,hi for the first axis")->capture_default_str();
  wigner->add_option("--range-b", config.range_b, "lo,hi for the second axis")->capture_default_str();
  wigner->add_option("--steps", config.steps, "Grid nodes per axis: N or Na,Nb")->capture_default_str();
  wigner->add_option("--fixed", config.fixed, "Fixed coordinates, e.g. p1=0.5 (others are 0)")->delimiter(',');

  auto* identities = app.add_subcommand("identities", "Cyclic entry-sum identities");
  add_common(identities, config, /*with_lambda=*/false);
  identities->add_option("--l-max", config.l_max, "Largest power l (<= 12)")->capture_default_str();
  auto* identities_lambda = identities->add_option("--lambda", config.lambda, "Also report gram entry sums");

  auto* verify = app.add_subcommand("verify", "Run all self-consistency checks");
  add_common(verify, config);
  verify->add_flag("--oracle", config.oracle, "Include the Fock-space oracle checks");
  verify->add_option("--cutoff", config.cutoff, "Photons per mode for the oracle");
  verify->add_option("--tol", config.tol, "Replace every check tolerance with this value");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e, out, err);
    err << "nmsqueeze: " << e.what() << '\n';
    return 2;
  }
  config.command = app.get_subcommands().front()->get_name();
  config.lambda_given = config.command != "identities" || identities_lambda->count() > 0;

  Report report;
  try {
    if (config.command == "matrices") report = cmd_matrices(config);
    if (config.command == "variances") report = cmd_variances(config);
    if (config.command == "state") report = cmd_state(config);
    if (config.command == "wigner") report = cmd_wigner(config);
    if (config.command == "identities") report = cmd_identities(config);
    if (config.command == "verify") report = cmd_verify(config);
  } catch (const Error& e) {
    err << "nmsqueeze " << config.command << ": " << e.what() << '\n';
    return 2;
  }

  if (config.output.empty()) {
    out << report.text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!(file << report.text)) {
      err << "nmsqueeze " << config.command << ": cannot write " << config.output << '\n';
      return 2;
    }
  }
  return report.status;
}

}  // namespace nmsqueeze::cli
