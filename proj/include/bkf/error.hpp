#pragma once

#include <stdexcept>
#include <string>

namespace bkf {

// Bad input data or a semantic violation (CLI exit code 1).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing files, unwritable directories and the like (CLI exit code 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bkf
