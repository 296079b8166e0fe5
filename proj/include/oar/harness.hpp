#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "oar/dataset.hpp"
#include "oar/model.hpp"
#include "oar/recourse.hpp"

namespace oar {

struct SweepRow {
  double epsilon = 0.0;
  double baseline_loss = 0.0;
  double individual_loss = 0.0;
  double collective_loss = 0.0;
  bool individual_flipped = false;
  bool collective_flipped = false;

  bool operator==(const SweepRow&) const = default;
};

/// Rows sorted by strictly increasing epsilon.
struct SweepReport {
  std::vector<SweepRow> rows;
};

/// x_q = alpha * mu_a + (1 - alpha) * mu_b with goal class a.
QuerySpec make_query(const Centroids& theta, int class_a, int class_b, double alpha);

/// Parses "start:stop:step" into start + i * step for every i with
/// start + i * step <= stop + 1e-12.
std::vector<double> parse_eps_grid(const std::string& spec);

/// Runs individual and collective recourse at every epsilon with the same
/// config. In ball mode each solve is warm-started from the previous
/// epsilon's solution, which makes both loss columns non-increasing.
SweepReport sweep_epsilon(const LabeledBatch& batch, const QuerySpec& query,
                          const std::vector<double>& epsilons, const SolverConfig& cfg);

inline constexpr const char* kReportHeader =
    "epsilon,baseline_loss,individual_loss,collective_loss,individual_flipped,collective_flipped";

void write_report_csv(const SweepReport& report, const std::filesystem::path& path);
SweepReport read_report_csv(const std::filesystem::path& path);

/// Loss-vs-epsilon chart with one series per solver (individual, collective).
void render_plot_svg(const SweepReport& report, const std::filesystem::path& path);

}  // namespace oar
