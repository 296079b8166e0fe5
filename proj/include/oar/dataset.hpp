#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "oar/linalg.hpp"

namespace oar {

/// Features of N data subjects (N x d) with class labels in [0, k).
///
/// Construct through `LabeledBatch::make` (or the loaders), which enforce
/// finite features, matching row counts and a non-empty population for every
/// class. Instances are immutable afterwards.
class LabeledBatch {
 public:
  static LabeledBatch make(Matrix features, std::vector<int> labels, int num_classes,
                           std::vector<std::string> feature_names = {},
                           std::vector<std::string> class_names = {});

  const Matrix& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  int num_classes() const { return num_classes_; }
  Eigen::Index size() const { return features_.rows(); }
  Eigen::Index dim() const { return features_.cols(); }

  /// Rows per class.
  const std::vector<int>& class_counts() const { return class_counts_; }

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  /// Original label text per class index (decimal index for embedding files).
  const std::vector<std::string>& class_names() const { return class_names_; }

 private:
  LabeledBatch() = default;

  Matrix features_;
  std::vector<int> labels_;
  int num_classes_ = 0;
  std::vector<int> class_counts_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> class_names_;
};

/// Loads a headered CSV. Labels are mapped to 0..k-1 in order of first
/// appearance. `feature_columns` selects and orders the features; by default
/// every non-label column is used in file order. No standardization.
LabeledBatch load_csv(const std::filesystem::path& path, const std::string& label_column,
                      const std::optional<std::vector<std::string>>& feature_columns = {});

/// Loads a canonical embedding CSV: columns e0..e{d-1} then an integer
/// `label` column holding the class index directly. k = max label + 1 and
/// every index below it must occur.
LabeledBatch load_embeddings(const std::filesystem::path& path);

/// Writes the batch as CSV (features then a `label` column with the class
/// name). Values use 17 significant digits so reloading is bit-exact.
void write_batch_csv(const LabeledBatch& batch, const std::filesystem::path& path);

/// Per-column z-score (population standard deviation). Constant columns are
/// centred only.
LabeledBatch standardize(const LabeledBatch& batch);

struct SyntheticSpec {
  Matrix centers;  // k x d
  int points_per_class = 1;
  double noise_scale = 0.0;
  std::uint64_t seed = 0;
};

/// Isotropic Gaussian blobs around `spec.centers`, emitted class by class.
/// Deterministic for a fixed seed on every platform (see oar::Rng).
LabeledBatch synth_blobs(const SyntheticSpec& spec);

}  // namespace oar
