#pragma once

#include <stdexcept>
#include <string>

namespace oar {

/// Malformed or invalid input data (files, batches). Messages carry the
/// file/row/column location when one exists.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oar
