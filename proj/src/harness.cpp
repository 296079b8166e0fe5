#include "oar/harness.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oar/csv.hpp"
#include "oar/error.hpp"

namespace oar {

QuerySpec make_query(const Centroids& theta, int class_a, int class_b, double alpha) {
  const int k = theta.num_classes();
  if (class_a < 0 || class_a >= k || class_b < 0 || class_b >= k) {
    throw std::invalid_argument("query classes must lie in [0, " + std::to_string(k - 1) + "]");
  }
  if (class_a == class_b) throw std::invalid_argument("query classes must differ");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  QuerySpec q;
  q.x_q = alpha * theta.mu().row(class_a).transpose() +
          (1.0 - alpha) * theta.mu().row(class_b).transpose();
  q.goal_class = class_a;
  return q;
}

std::vector<double> parse_eps_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(csv::parse_double(item, "eps grid"));
  if (parts.size() != 3) throw std::invalid_argument("eps grid must be start:stop:step");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (start < 0.0) throw std::invalid_argument("eps grid start must be >= 0");
  if (!(step > 0.0)) throw std::invalid_argument("eps grid step must be > 0");
  if (stop < start) throw std::invalid_argument("eps grid stop must be >= start");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double e = start + static_cast<double>(i) * step;
    if (e > stop + 1e-12) break;
    out.push_back(e);
  }
  return out;
}

SweepReport sweep_epsilon(const LabeledBatch& batch, const QuerySpec& query,
                          const std::vector<double>& epsilons, const SolverConfig& cfg) {
  if (epsilons.empty()) throw std::invalid_argument("epsilon list is empty");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] >= 0.0) || !std::isfinite(epsilons[i])) {
      throw std::invalid_argument("epsilon values must be finite and >= 0");
    }
    if (i > 0 && !(epsilons[i] > epsilons[i - 1])) {
      throw std::invalid_argument("epsilon values must be strictly increasing");
    }
  }

  const Centroids theta = fit(batch);
  const double baseline = nll_loss(query.x_q, query.goal_class, theta);
  const bool warm = cfg.projection == ProjectionMode::Ball;

  SweepReport report;
  std::optional<Vector> prev_individual;
  std::optional<Matrix> prev_collective;
  for (double eps : epsilons) {
    try {
      const EpsilonBudget budget{eps};
      auto ind = individual_recourse(query, theta, budget, cfg, prev_individual);
      auto col = collective_recourse(batch, query, budget, cfg, std::nullopt, prev_collective);
      report.rows.push_back(
          {eps, baseline, ind.achieved_loss, col.achieved_loss, ind.flipped, col.flipped});
      if (warm) {
        prev_individual = ind.delta();
        prev_collective = col.perturbation.delta;
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep failed at epsilon = " + csv::format_double(eps) + ": " +
                               e.what());
    }
  }
  return report;
}

void write_report_csv(const SweepReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << kReportHeader << '\n';
  for (const auto& r : report.rows) {
    out << csv::format_double(r.epsilon) << ',' << csv::format_double(r.baseline_loss) << ','
        << csv::format_double(r.individual_loss) << ',' << csv::format_double(r.collective_loss)
        << ',' << (r.individual_flipped ? "true" : "false") << ','
        << (r.collective_flipped ? "true" : "false") << '\n';
  }
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

SweepReport read_report_csv(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  std::ostringstream header;
  for (std::size_t j = 0; j < table.header.size(); ++j) header << (j ? "," : "") << table.header[j];
  if (header.str() != kReportHeader) throw DataError(path.string() + ": unexpected report header");

  auto flag = [&](const std::string& text, std::size_t line) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw DataError(path.string() + ": row " + std::to_string(line) + ": bad boolean '" + text + "'");
  };
  SweepReport report;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& c = table.rows[i];
    const auto where = path.string() + ": row " + std::to_string(table.line_numbers[i]);
    report.rows.push_back({csv::parse_double(c[0], where), csv::parse_double(c[1], where),
                           csv::parse_double(c[2], where), csv::parse_double(c[3], where),
                           flag(c[4], table.line_numbers[i]), flag(c[5], table.line_numbers[i])});
  }
  return report;
}

}  // namespace oar
