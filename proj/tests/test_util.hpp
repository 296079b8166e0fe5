#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "oar/dataset.hpp"
#include "oar/linalg.hpp"

namespace oar::test {

inline std::filesystem::path data_file(const std::string& name) {
  return std::filesystem::path(OAR_DATA_DIR) / name;
}

/// Fresh per-test scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "oar_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path write_text(const std::filesystem::path& path,
                                        const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline double relative_error(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Random batch with `per_class` rows per class, features in [-2, 2].
inline LabeledBatch random_batch(std::mt19937_64& gen, int k, int d, int per_class) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix x(k * per_class, d);
  std::vector<int> labels;
  for (int y = 0; y < k; ++y) {
    for (int p = 0; p < per_class; ++p) {
      for (int j = 0; j < d; ++j) x(y * per_class + p, j) = u(gen);
      labels.push_back(y);
    }
  }
  return LabeledBatch::make(std::move(x), std::move(labels), k);
}

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  Eigen::Index j = 0;
  for (double x : v) out[j++] = x;
  return out;
}

}  // namespace oar::test
