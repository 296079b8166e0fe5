#include "oar/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oar/csv.hpp"
#include "oar/dataset.hpp"
#include "oar/harness.hpp"
#include "oar/model.hpp"
#include "oar/recourse.hpp"

namespace oar {
namespace {

struct Options {
  std::string data;
  std::string label_col;
  std::vector<std::string> features;
  bool embeddings = false;
  bool standardize = false;
  double alpha = 0.25;
  int goal_class = 1;
  int base_class = 2;
  std::optional<double> epsilon;
  std::string eps_grid = "0:1:0.1";
  int steps = 500;
  std::optional<double> step_size;
  std::string mode = "ball";
  std::string init = "zero";
  std::uint64_t seed = 0;
  std::string kind;
  std::string out;
  std::string plot;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_data_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--data", o.data, "Input CSV")->required();
  cmd->add_option("--label-col", o.label_col, "Label column name");
  cmd->add_option("--features", o.features, "Feature column subset, comma separated")
      ->delimiter(',');
  cmd->add_flag("--embeddings", o.embeddings,
                "Input is an embedding CSV (e0..e{d-1}, integer label column)");
  cmd->add_flag("--standardize", o.standardize, "Z-score each feature before fitting");
}

void add_query_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--alpha", o.alpha, "Query interpolation weight on the goal centroid")
      ->capture_default_str();
  cmd->add_option("--goal-class", o.goal_class, "Class the query wants")->capture_default_str();
  cmd->add_option("--base-class", o.base_class, "Class the query starts near")
      ->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--steps", o.steps, "Gradient steps")->capture_default_str()->check(
      CLI::PositiveNumber);
  cmd->add_option("--step-size", o.step_size, "Step size (default 0.05 * epsilon)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mode", o.mode, "Projection: ball or sphere")
      ->capture_default_str()
      ->check(CLI::IsMember({"ball", "sphere"}));
  cmd->add_option("--init", o.init, "Initial perturbation: zero or random")
      ->capture_default_str()
      ->check(CLI::IsMember({"zero", "random"}));
  cmd->add_option("--seed", o.seed, "Seed for random init")->capture_default_str();
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? csv::format_double(*v) : std::string("auto");
}

std::string config_echo(const std::string& cmd, const Options& o) {
  std::ostringstream s;
  s << "# config: cmd=" << cmd << " data=" << o.data
    << " labels=" << (o.embeddings ? std::string("embedding") : o.label_col) << " features=";
  if (o.features.empty()) s << "all";
  for (std::size_t i = 0; i < o.features.size(); ++i) s << (i ? "," : "") << o.features[i];
  s << " standardize=" << (o.standardize ? "true" : "false");
  if (cmd != "fit") {
    s << " alpha=" << csv::format_double(o.alpha) << " goal=" << o.goal_class
      << " base=" << o.base_class;
  }
  if (cmd == "recourse") s << " kind=" << o.kind << " epsilon=" << fmt_opt(o.epsilon);
  if (cmd == "sweep") s << " eps_grid=" << o.eps_grid;
  if (cmd == "recourse" || cmd == "sweep") {
    s << " steps=" << o.steps << " step_size=" << fmt_opt(o.step_size) << " mode=" << o.mode
      << " init=" << o.init << " seed=" << o.seed;
  }
  return s.str();
}

void validate(const std::string& cmd, const Options& o) {
  if (!o.embeddings && o.label_col.empty()) {
    throw UsageError("--label-col is required unless --embeddings is set");
  }
  if (o.embeddings && !o.features.empty()) {
    throw UsageError("--features cannot be combined with --embeddings");
  }
  if (cmd == "recourse" && !o.epsilon) throw UsageError("--epsilon is required for recourse");
  if (cmd == "sweep") {
    try {
      parse_eps_grid(o.eps_grid);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--eps-grid: ") + e.what());
    }
  }
}

LabeledBatch load(const Options& o) {
  LabeledBatch batch = [&] {
    if (o.embeddings) return load_embeddings(o.data);
    std::optional<std::vector<std::string>> cols;
    if (!o.features.empty()) cols = o.features;
    return load_csv(o.data, o.label_col, cols);
  }();
  return o.standardize ? standardize(batch) : batch;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.steps = o.steps;
  cfg.step_size = o.step_size;
  cfg.projection = o.mode == "sphere" ? ProjectionMode::Sphere : ProjectionMode::Ball;
  cfg.init = o.init == "random" ? InitMode::Random : InitMode::Zero;
  cfg.seed = o.seed;
  return cfg;
}

void print_vector(std::ostream& out, const Vector& v) {
  for (Eigen::Index j = 0; j < v.size(); ++j) out << (j ? "," : "") << csv::format_double(v[j]);
}

void run_fit(const Options& o, std::ostream& out) {
  const auto batch = load(o);
  const auto theta = fit(batch);
  out << "N=" << batch.size() << " d=" << batch.dim() << " k=" << batch.num_classes() << '\n';
  for (int y = 0; y < theta.num_classes(); ++y) {
    out << "centroid " << y << " (" << batch.class_names()[y] << "): ";
    print_vector(out, theta.mu().row(y).transpose());
    out << '\n';
  }
  out << "training_accuracy=" << csv::format_double(training_accuracy(batch, theta)) << '\n';
  if (!o.out.empty()) write_centroids_csv(theta, o.out, batch.feature_names());
}

void run_query(const Options& o, std::ostream& out) {
  const auto batch = load(o);
  const auto theta = fit(batch);
  const auto q = make_query(theta, o.goal_class, o.base_class, o.alpha);
  out << "x_q=";
  print_vector(out, q.x_q);
  out << "\ngoal_class=" << q.goal_class << " base_prediction=" << predict(q.x_q, theta)
      << " baseline_loss=" << csv::format_double(nll_loss(q.x_q, q.goal_class, theta)) << '\n';
}

void run_recourse(const Options& o, std::ostream& out) {
  const auto batch = load(o);
  const auto theta = fit(batch);
  const auto q = make_query(theta, o.goal_class, o.base_class, o.alpha);
  const EpsilonBudget budget{*o.epsilon};
  const auto cfg = solver_config(o);
  const auto result = o.kind == "individual" ? individual_recourse(q, theta, budget, cfg)
                                             : collective_recourse(batch, q, budget, cfg);
  double max_norm = 0.0;
  for (Eigen::Index i = 0; i < result.perturbation.delta.rows(); ++i) {
    max_norm = std::max(max_norm, result.perturbation.delta.row(i).norm());
  }
  out << "baseline_loss=" << csv::format_double(nll_loss(q.x_q, q.goal_class, theta)) << '\n'
      << "achieved_loss=" << csv::format_double(result.achieved_loss) << '\n'
      << "flipped=" << (result.flipped ? "true" : "false") << '\n'
      << "max_row_norm=" << csv::format_double(max_norm) << '\n';
  if (o.kind == "individual") {
    out << "delta=";
    print_vector(out, result.delta());
    out << '\n';
  } else {
    for (int y = 0; y < result.post_centroids.num_classes(); ++y) {
      out << "post_centroid " << y << ": ";
      print_vector(out, result.post_centroids.mu().row(y).transpose());
      out << '\n';
    }
  }
  if (!o.out.empty()) write_perturbation_csv(result.perturbation, o.out, batch.feature_names());
}

void run_sweep(const Options& o, std::ostream& out) {
  const auto grid = parse_eps_grid(o.eps_grid);
  const auto batch = load(o);
  const auto theta = fit(batch);
  const auto q = make_query(theta, o.goal_class, o.base_class, o.alpha);
  const auto report = sweep_epsilon(batch, q, grid, solver_config(o));
  if (!o.out.empty()) {
    write_report_csv(report, o.out);
    out << "wrote " << report.rows.size() << " rows to " << o.out << '\n';
  } else {
    out << kReportHeader << '\n';
    for (const auto& r : report.rows) {
      out << csv::format_double(r.epsilon) << ',' << csv::format_double(r.baseline_loss) << ','
          << csv::format_double(r.individual_loss) << ','
          << csv::format_double(r.collective_loss) << ','
          << (r.individual_flipped ? "true" : "false") << ','
          << (r.collective_flipped ? "true" : "false") << '\n';
    }
  }
  if (!o.plot.empty()) {
    render_plot_svg(report, o.plot);
    out << "wrote plot to " << o.plot << '\n';
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Individual and collective recourse for a nearest-centroid classifier", "oar"};
  app.require_subcommand(1);
  Options o;

  auto* fit_cmd = app.add_subcommand("fit", "Fit centroids and report training accuracy");
  add_data_flags(fit_cmd, o);
  fit_cmd->add_option("--out", o.out, "Write centroids CSV");

  auto* query_cmd = app.add_subcommand("query", "Print the interpolated query point");
  add_data_flags(query_cmd, o);
  add_query_flags(query_cmd, o);

  auto* recourse_cmd = app.add_subcommand("recourse", "Solve one recourse problem");
  add_data_flags(recourse_cmd, o);
  add_query_flags(recourse_cmd, o);
  add_solver_flags(recourse_cmd, o);
  recourse_cmd->add_option("--kind", o.kind, "individual or collective")
      ->required()
      ->check(CLI::IsMember({"individual", "collective"}));
  recourse_cmd->add_option("--epsilon", o.epsilon, "L2 budget per perturbation")
      ->check(CLI::NonNegativeNumber);
  recourse_cmd->add_option("--out", o.out, "Write perturbation CSV");

  auto* sweep_cmd = app.add_subcommand("sweep", "Compare both solvers over an epsilon grid");
  add_data_flags(sweep_cmd, o);
  add_query_flags(sweep_cmd, o);
  add_solver_flags(sweep_cmd, o);
  sweep_cmd->add_option("--eps-grid", o.eps_grid, "start:stop:step, inclusive")
      ->capture_default_str();
  sweep_cmd->add_option("--out", o.out, "Write report CSV (stdout otherwise)");
  sweep_cmd->add_option("--plot", o.plot, "Write SVG plot");

  CLI::App* active = &app;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    for (auto* sub : app.get_subcommands()) active = sub;
    err << "error: " << e.what() << "\n\n" << active->help();
    return 1;
  }
  active = app.get_subcommands().front();
  const std::string cmd = active->get_name();

  try {
    validate(cmd, o);
    out << config_echo(cmd, o) << '\n';
    if (cmd == "fit") run_fit(o, out);
    else if (cmd == "query") run_query(o, out);
    else if (cmd == "recourse") run_recourse(o, out);
    else run_sweep(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace oar
