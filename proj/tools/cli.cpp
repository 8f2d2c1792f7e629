#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrg/error.hpp"
#include "qrg/exact_diag.hpp"
#include "qrg/lattice.hpp"
#include "qrg/measures.hpp"
#include "qrg/rg_flow.hpp"
#include "qrg/scaling.hpp"

namespace qrg::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string valid_models() {
  std::string out;
  for (auto kind : kAllLattices) {
    if (!out.empty()) out += ", ";
    out += lattice_name(kind);
  }
  return out;
}

// Output goes to --out when given, stdout otherwise. The file is opened before
// any computation so an unwritable path fails fast.
class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback) : out_(&fallback) {
    if (path) {
      file_.open(*path, std::ios::out | std::ios::trunc | std::ios::binary);
      if (!file_) throw IoError("cannot open output file '" + *path + "'");
      out_ = &file_;
      path_ = *path;
    }
  }
  bool is_file() const { return file_.is_open(); }
  void write(const std::string& text) {
    *out_ << text;
    out_->flush();
    if (!*out_) throw IoError("write failed" + (path_.empty() ? std::string() : " on '" + path_ + "'"));
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
  std::string path_;
};

void check_row(bool ok, const std::string& what, const json& row) {
  if (!ok) throw NumericalError(what + "\n  offending record: " + row.dump());
}

void check_measure_value(Measure measure, double value, const json& row) {
  check_row(std::isfinite(value), "non-finite measure value", row);
  if (measure == Measure::Tau)
    check_row(value >= -1e-10 && value <= 1.0 + 1e-10, "tau outside [-1e-10, 1] (monogamy violated)", row);
  else
    check_row(value >= 0.0 && value <= 1.0, "coherence outside [0, 1]", row);
}

// Renders records as CSV (fixed column order) or as a JSON array of objects.
std::string render(const std::vector<std::string>& columns, const std::vector<json>& rows,
                   const std::string& format) {
  if (format == "json") return json(rows).dump(2) + "\n";
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ",";
      const auto& v = row.at(columns[c]);
      if (v.is_number_float())
        out += format_number(v.get<double>());
      else if (v.is_string())
        out += v.get<std::string>();
      else
        out += v.dump();
    }
    out += "\n";
  }
  return out;
}

json edge_list(const LatticeModel& m) {
  json edges = json::array();
  for (auto [i, j] : m.edges) edges.push_back({i + 1, j + 1});
  return edges;
}

int cmd_critical(const RunConfig& cfg, std::ostream& out) {
  Sink sink(cfg.output_path, out);
  const auto& m = lattice(*parse_lattice(cfg.model));
  const auto c = critical_data(m);
  if (cfg.format == "json") {
    json report = {{"model", cfg.model},           {"g_c", c.g_c},
                   {"nu", c.nu},                   {"mu_analytic", c.mu_analytic},
                   {"dimension", m.dimension},     {"rescale", m.rescale},
                   {"flow_slope", c.flow_slope},   {"cluster_size", m.cluster_size},
                   {"node_site", m.node_site + 1}, {"edges", edge_list(m)}};
    sink.write(report.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream s;
  s << "model        " << cfg.model << "\n"
    << "g_c          " << format_number(c.g_c) << "\n"
    << "nu           " << format_number(c.nu) << "\n"
    << "mu_analytic  " << format_number(c.mu_analytic) << "\n"
    << "dimension    " << format_number(m.dimension) << "\n"
    << "rescale      " << format_number(m.rescale) << "\n"
    << "flow_slope   " << format_number(c.flow_slope) << "\n"
    << "cluster      " << m.cluster_size << " sites, node " << m.node_site + 1 << "\n"
    << "edges       ";
  for (auto [i, j] : m.edges) s << " (" << i + 1 << "," << j + 1 << ")";
  s << "\n";
  sink.write(s.str());
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  Sink sink(cfg.output_path, out);
  const auto& m = lattice(*parse_lattice(cfg.model));
  const auto measure = *parse_measure(cfg.measure);
  Window w = fixed_window(critical_data(m));
  if (cfg.g_min) w = {*cfg.g_min, *cfg.g_max};
  std::vector<json> rows;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const auto curve = sweep(m, measure, n, w.lo, w.hi, cfg.steps, cfg.threads);
    for (const auto& s : curve.samples) {
      json row = {{"model", cfg.model}, {"measure", cfg.measure}, {"n", n},
                  {"N", curve.system_size}, {"g", s.g}, {"value", s.value},
                  {"dvalue_dg", s.derivative}};
      check_measure_value(measure, s.value, row);
      check_row(std::isfinite(s.derivative), "non-finite derivative", row);
      rows.push_back(std::move(row));
    }
  }
  sink.write(render({"model", "measure", "n", "N", "g", "value", "dvalue_dg"}, rows, cfg.format));
  return kOk;
}

ScalingOptions scaling_options(const RunConfig& cfg) {
  ScalingOptions o;
  o.n_min = cfg.n_min;
  o.n_max = cfg.n_max;
  o.steps = cfg.steps;
  o.threads = cfg.threads;
  if (cfg.g_min) o.window = Window{*cfg.g_min, *cfg.g_max};
  return o;
}

int cmd_scaling(const RunConfig& cfg, std::ostream& out) {
  Sink sink(cfg.output_path, out);
  const auto& m = lattice(*parse_lattice(cfg.model));
  const auto measure = *parse_measure(cfg.measure);
  const auto a = scaling_analysis(m, measure, scaling_options(cfg));

  std::vector<json> points;
  for (std::size_t i = 0; i < a.curves.size(); ++i) {
    const auto& curve = a.curves[i];
    for (const auto* fit : {&a.growth, &a.drift}) {
      json row = {{"model", cfg.model},
                  {"measure", cfg.measure},
                  {"fit", fit->kind == FitKind::DerivativeGrowth ? "growth" : "drift"},
                  {"n", curve.n},
                  {"N", curve.system_size},
                  {"g_ext", a.extrema[i].g},
                  {"dvalue_dg_ext", a.extrema[i].value},
                  {"ln_N", fit->points[i].log_size},
                  {"ln_quantity", fit->points[i].log_quantity}};
      check_row(std::isfinite(fit->points[i].log_quantity), "non-finite fit point", row);
      points.push_back(std::move(row));
    }
  }

  json fits = json::array();
  for (const auto* fit : {&a.growth, &a.drift}) {
    const double rel = (fit->exponent - fit->mu_analytic) / fit->mu_analytic;
    fits.push_back({{"fit", fit->kind == FitKind::DerivativeGrowth ? "growth" : "drift"},
                    {"exponent", fit->exponent},
                    {"stderr", fit->stderr_slope},
                    {"intercept", fit->intercept},
                    {"mu_analytic", fit->mu_analytic},
                    {"relative_deviation", rel}});
  }

  std::ostringstream report;
  if (cfg.format == "json") {
    report << json({{"model", cfg.model}, {"measure", cfg.measure}, {"n_min", cfg.n_min},
                    {"n_max", cfg.n_max}, {"steps", cfg.steps}, {"g_c", a.critical.g_c},
                    {"nu", a.critical.nu}, {"fits", fits}})
                  .dump(2)
           << "\n";
  } else {
    report << "model=" << cfg.model << " measure=" << cfg.measure << " n=" << cfg.n_min << ".."
           << cfg.n_max << " steps=" << cfg.steps << "\n";
    report << "fit     exponent           stderr             mu_analytic        rel_deviation\n";
    for (const auto& f : fits) {
      report << (f["fit"] == "growth" ? "growth  " : "drift   ")
             << format_number(f["exponent"].get<double>()) << "  "
             << format_number(f["stderr"].get<double>()) << "  "
             << format_number(f["mu_analytic"].get<double>()) << "  "
             << format_number(f["relative_deviation"].get<double>()) << "\n";
    }
  }
  const std::string table =
      render({"model", "measure", "fit", "n", "N", "g_ext", "dvalue_dg_ext", "ln_N", "ln_quantity"},
             points, cfg.format);
  if (sink.is_file()) {
    out << report.str();
    sink.write(table);
  } else {
    sink.write(report.str() + "\n" + table);
  }
  return kOk;
}

int cmd_collapse(const RunConfig& cfg, std::ostream& out) {
  Sink sink(cfg.output_path, out);
  const auto& m = lattice(*parse_lattice(cfg.model));
  const auto measure = *parse_measure(cfg.measure);
  const double nu = cfg.nu.value_or(critical_data(m).nu);
  std::vector<int> ns(static_cast<std::size_t>(cfg.n_max - cfg.n_min + 1));
  std::iota(ns.begin(), ns.end(), cfg.n_min);
  const auto result = collapse(m, measure, ns, nu, scaling_options(cfg));

  std::vector<json> rows;
  for (const auto& p : result.points) {
    json row = {{"n", p.n}, {"N", p.system_size}, {"x", p.x}, {"y", p.y}};
    check_row(std::isfinite(p.x) && std::isfinite(p.y), "non-finite collapse point", row);
    rows.push_back(std::move(row));
  }
  check_row(std::isfinite(result.quality), "non-finite collapse quality", json{{"nu", nu}});
  if (cfg.format == "json") {
    rows.push_back({{"quality_score", result.quality}, {"nu", nu}});
    sink.write(json(rows).dump(2) + "\n");
  } else {
    sink.write(render({"n", "N", "x", "y"}, rows, "csv") + "# quality_score=" +
               format_number(result.quality) + " nu=" + format_number(nu) + "\n");
  }
  return kOk;
}

int cmd_cluster(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Sink sink(cfg.output_path, out);
  const auto& m = lattice(*parse_lattice(cfg.model));
  const double gn = renormalized_coupling(m, cfg.g, cfg.n);
  const auto state = cluster_ground_state(m, gn);
  if (state.degenerate)
    err << "warning: spectral gap " << state.gap << " below " << kDegeneracyGap
        << "; ground state taken in the flip-symmetric sector\n";
  const auto set = measure_set(state, m.node_site);
  std::vector<json> rows;
  for (auto [partner, eof] : set.pairwise_eof) {
    json row = {{"model", cfg.model},
                {"g", cfg.g},
                {"n", cfg.n},
                {"N", system_size(m, cfg.n)},
                {"g_n", gn},
                {"energy", state.energy},
                {"gap", state.gap},
                {"tau", set.tau},
                {"one_vs_rest_eof", set.one_vs_rest_eof},
                {"coherence", set.coherence},
                {"partner", partner + 1},
                {"pairwise_eof", eof}};
    check_measure_value(Measure::Tau, set.tau, row);
    check_measure_value(Measure::Coherence, set.coherence, row);
    rows.push_back(std::move(row));
  }
  sink.write(render({"model", "g", "n", "N", "g_n", "energy", "gap", "tau", "one_vs_rest_eof",
                     "coherence", "partner", "pairwise_eof"},
                    rows, cfg.format));
  return kOk;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return buf;
}

std::vector<std::string> validate(const RunConfig& cfg) {
  std::vector<std::string> errors;
  const auto kind = parse_lattice(cfg.model);
  if (!kind) errors.push_back("unknown model '" + cfg.model + "' (valid models: " + valid_models() + ")");
  if (cfg.format != "csv" && cfg.format != "json")
    errors.push_back("--format must be csv or json, got '" + cfg.format + "'");
  if (cfg.threads < 0) errors.push_back("--threads must be >= 0");
  if (cfg.command == "critical") return errors;

  if (cfg.command == "cluster") {
    if (!(cfg.g >= 0.0 && cfg.g <= kCouplingCap))
      errors.push_back("--g must lie in [0, 1e6]");
    if (cfg.n < 0) errors.push_back("--n must be >= 0");
    if (kind && cfg.n > max_size_iteration(lattice(*kind)))
      errors.push_back("--n exceeds the largest iteration with a 64-bit system size");
    return errors;
  }

  if (!parse_measure(cfg.measure))
    errors.push_back("unknown measure '" + cfg.measure + "' (valid: tau, coherence)");
  if (cfg.steps < kMinSweepSteps)
    errors.push_back("--steps must be >= " + std::to_string(kMinSweepSteps) + ", got " + std::to_string(cfg.steps));
  if (cfg.n_min < 0) errors.push_back("--n-min must be >= 0");
  if (cfg.n_max < cfg.n_min) errors.push_back("--n-max must be >= --n-min (empty iteration range)");
  if (kind && cfg.n_max > max_size_iteration(lattice(*kind)))
    errors.push_back("--n-max exceeds the largest iteration with a 64-bit system size (" +
                     std::to_string(max_size_iteration(lattice(*kind))) + ")");
  if (cfg.command == "scaling" && cfg.n_max - cfg.n_min < 2)
    errors.push_back("scaling needs --n-max - --n-min >= 2");
  if (cfg.command == "collapse" && cfg.n_max == cfg.n_min)
    errors.push_back("collapse needs at least two iterations (--n-max > --n-min)");
  if (cfg.g_min.has_value() != cfg.g_max.has_value())
    errors.push_back("--g-min and --g-max must be given together");
  if (cfg.g_min && cfg.g_max && !(*cfg.g_min >= 0.0 && *cfg.g_min < *cfg.g_max && *cfg.g_max <= kCouplingCap))
    errors.push_back("sweep window must satisfy 0 <= g-min < g-max <= 1e6");
  if (cfg.nu && !(*cfg.nu > 0.0)) errors.push_back("--nu must be positive");
  return errors;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum renormalization group analysis of transverse-field Ising clusters"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "triangular | sierpinski-triangle | sierpinski-pyramid");
    sub->add_option("--out", cfg.output_path, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv | json");
    sub->add_option("--threads", cfg.threads, "worker threads, 0 = auto");
  };
  auto sweeping = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--measure", cfg.measure, "tau | coherence");
    sub->add_option("--n-min", cfg.n_min, "first RG iteration");
    sub->add_option("--n-max", cfg.n_max, "last RG iteration");
    sub->add_option("--g-min", cfg.g_min, "sweep window start");
    sub->add_option("--g-max", cfg.g_max, "sweep window end");
    sub->add_option("--steps", cfg.steps, "grid points per sweep");
  };

  auto* critical = app.add_subcommand("critical", "fixed point, nu and 1/(nu d) of a lattice");
  common(critical);
  auto* sweep_cmd = app.add_subcommand("sweep", "renormalized measure and derivative vs g");
  sweeping(sweep_cmd);
  auto* scaling_cmd = app.add_subcommand("scaling", "finite-size scaling fits of the derivative extremum");
  sweeping(scaling_cmd);
  auto* collapse_cmd = app.add_subcommand("collapse", "data-collapse coordinates and quality score");
  sweeping(collapse_cmd);
  collapse_cmd->add_option("--nu", cfg.nu, "correlation-length exponent (default: from the RG map)");
  auto* cluster_cmd = app.add_subcommand("cluster", "all measures for one (model, g, n)");
  common(cluster_cmd);
  cluster_cmd->add_option("--g", cfg.g, "bare coupling J/h");
  cluster_cmd->add_option("--n", cfg.n, "RG iterations");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  const auto problems = validate(cfg);
  if (!problems.empty()) {
    err << "usage error:\n";
    for (const auto& p : problems) err << "  " << p << "\n";
    err << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (cfg.command == "critical") return cmd_critical(cfg, out);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out);
    if (cfg.command == "scaling") return cmd_scaling(cfg, out);
    if (cfg.command == "collapse") return cmd_collapse(cfg, out);
    return cmd_cluster(cfg, out, err);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const BoundaryExtremumError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "numerical consistency failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace qrg::cli
