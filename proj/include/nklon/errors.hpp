#pragma once

#include <stdexcept>
#include <string>

namespace nklon {

// invalid (n, k, configuration, ...) arguments
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// a file failed to parse or violates an instance invariant on load
struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// request exceeds the exhaustive-analysis limits
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a structural property that must hold on every optima network failed
struct invariant_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nklon
