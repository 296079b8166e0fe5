#include "oar/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "oar/csv.hpp"
#include "oar/error.hpp"
#include "oar/rng.hpp"

namespace oar {

LabeledBatch LabeledBatch::make(Matrix features, std::vector<int> labels, int num_classes,
                                std::vector<std::string> feature_names,
                                std::vector<std::string> class_names) {
  if (num_classes < 2) throw DataError("need at least 2 classes, got " + std::to_string(num_classes));
  if (features.rows() == 0) throw DataError("no rows");
  if (features.cols() == 0) throw DataError("no feature columns");
  if (static_cast<Eigen::Index>(labels.size()) != features.rows()) {
    throw DataError("label count " + std::to_string(labels.size()) + " does not match row count " +
                    std::to_string(features.rows()));
  }
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      if (!std::isfinite(features(i, j))) {
        throw DataError("non-finite feature at row " + std::to_string(i) + ", column " +
                        std::to_string(j));
      }
    }
  }

  std::vector<int> counts(num_classes, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw DataError("label " + std::to_string(labels[i]) + " at row " + std::to_string(i) +
                      " outside [0, " + std::to_string(num_classes - 1) + "]");
    }
    ++counts[labels[i]];
  }
  for (int y = 0; y < num_classes; ++y) {
    if (counts[y] == 0) throw DataError("empty class " + std::to_string(y));
  }

  if (feature_names.empty()) feature_names = csv::default_header(features.cols());
  if (static_cast<Eigen::Index>(feature_names.size()) != features.cols()) {
    throw DataError("feature name count does not match column count");
  }
  if (class_names.empty()) {
    for (int y = 0; y < num_classes; ++y) class_names.push_back(std::to_string(y));
  }
  if (static_cast<int>(class_names.size()) != num_classes) {
    throw DataError("class name count does not match class count");
  }

  LabeledBatch batch;
  batch.features_ = std::move(features);
  batch.labels_ = std::move(labels);
  batch.num_classes_ = num_classes;
  batch.class_counts_ = std::move(counts);
  batch.feature_names_ = std::move(feature_names);
  batch.class_names_ = std::move(class_names);
  return batch;
}

namespace {

std::string cell_location(const std::filesystem::path& path, std::size_t line,
                          const std::string& column) {
  return path.string() + ": row " + std::to_string(line) + ", column '" + column + "'";
}

Matrix parse_features(const std::filesystem::path& path, const csv::Table& table,
                      const std::vector<std::size_t>& columns) {
  Matrix features(table.rows.size(), columns.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const auto c = columns[j];
      features(i, j) = csv::parse_double(
          table.rows[i][c], cell_location(path, table.line_numbers[i], table.header[c]));
    }
  }
  return features;
}

csv::Table read_nonempty(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw DataError(path.string() + ": file not found");
  auto table = csv::read(path);
  if (table.rows.empty()) throw DataError(path.string() + ": no rows");
  return table;
}

std::size_t find_column(const std::filesystem::path& path, const csv::Table& table,
                        const std::string& name) {
  try {
    return table.column(name);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace

LabeledBatch load_csv(const std::filesystem::path& path, const std::string& label_column,
                      const std::optional<std::vector<std::string>>& feature_columns) {
  const auto table = read_nonempty(path);
  const auto label_idx = find_column(path, table, label_column);

  std::vector<std::size_t> columns;
  if (feature_columns) {
    for (const auto& name : *feature_columns) columns.push_back(find_column(path, table, name));
  } else {
    for (std::size_t j = 0; j < table.header.size(); ++j) {
      if (j != label_idx) columns.push_back(j);
    }
  }
  if (columns.empty()) throw DataError(path.string() + ": no feature columns");

  std::map<std::string, int> index_of;
  std::vector<std::string> class_names;
  std::vector<int> labels;
  labels.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& text = table.rows[i][label_idx];
    if (text.empty()) {
      throw DataError(cell_location(path, table.line_numbers[i], label_column) + ": empty label");
    }
    auto [it, inserted] = index_of.emplace(text, static_cast<int>(class_names.size()));
    if (inserted) class_names.push_back(text);
    labels.push_back(it->second);
  }

  std::vector<std::string> names;
  for (auto c : columns) names.push_back(table.header[c]);
  const int k = static_cast<int>(class_names.size());
  if (k < 2) throw DataError(path.string() + ": need at least 2 classes, found " + std::to_string(k));
  return LabeledBatch::make(parse_features(path, table, columns), std::move(labels), k,
                            std::move(names), std::move(class_names));
}

LabeledBatch load_embeddings(const std::filesystem::path& path) {
  const auto table = read_nonempty(path);
  const auto label_idx = find_column(path, table, "label");

  std::vector<std::size_t> columns;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (j == label_idx) continue;
    columns.push_back(j);
    names.push_back(table.header[j]);
  }
  if (columns.empty()) throw DataError(path.string() + ": no embedding columns");

  std::vector<int> labels;
  labels.reserve(table.rows.size());
  int max_label = -1;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto where = cell_location(path, table.line_numbers[i], "label");
    const double v = csv::parse_double(table.rows[i][label_idx], where);
    if (v < 0 || v != std::floor(v) || v > 1e6) {
      throw DataError(where + ": label must be a nonnegative integer");
    }
    labels.push_back(static_cast<int>(v));
    max_label = std::max(max_label, labels.back());
  }
  const int k = max_label + 1;
  std::vector<bool> seen(k, false);
  for (int y : labels) seen[y] = true;
  for (int y = 0; y < k; ++y) {
    if (!seen[y]) throw DataError(path.string() + ": empty class " + std::to_string(y));
  }
  return LabeledBatch::make(parse_features(path, table, columns), std::move(labels), k,
                            std::move(names));
}

void write_batch_csv(const LabeledBatch& batch, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  for (const auto& name : batch.feature_names()) out << name << ',';
  out << "label\n";
  const auto& x = batch.features();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) out << csv::format_double(x(i, j)) << ',';
    out << batch.class_names()[batch.labels()[i]] << '\n';
  }
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

LabeledBatch standardize(const LabeledBatch& batch) {
  Matrix x = batch.features();
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mean = x.col(j).sum() / n;
    x.col(j).array() -= mean;
    const double sd = std::sqrt(x.col(j).squaredNorm() / n);
    if (sd > 0.0) x.col(j) /= sd;
  }
  return LabeledBatch::make(std::move(x), batch.labels(), batch.num_classes(),
                            batch.feature_names(), batch.class_names());
}

LabeledBatch synth_blobs(const SyntheticSpec& spec) {
  if (spec.points_per_class < 1) throw DataError("points_per_class must be >= 1");
  if (!(spec.noise_scale >= 0.0)) throw DataError("noise_scale must be >= 0");
  const auto k = spec.centers.rows();
  const auto d = spec.centers.cols();
  if (k < 2 || d < 1) throw DataError("centers must be k x d with k >= 2, d >= 1");

  Rng rng(spec.seed);
  Matrix x(k * spec.points_per_class, d);
  std::vector<int> labels;
  labels.reserve(x.rows());
  Eigen::Index row = 0;
  for (Eigen::Index y = 0; y < k; ++y) {
    for (int p = 0; p < spec.points_per_class; ++p, ++row) {
      for (Eigen::Index j = 0; j < d; ++j) {
        x(row, j) = spec.centers(y, j) + spec.noise_scale * rng.normal();
      }
      labels.push_back(static_cast<int>(y));
    }
  }
  return LabeledBatch::make(std::move(x), std::move(labels), static_cast<int>(k));
}

}  // namespace oar
