#pragma once

#include <stdexcept>
#include <string>

namespace fklab {

// Invalid arguments are reported with std::invalid_argument; the classes
// below cover the remaining failure kinds.

class unsupported_operation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class resource_limit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditioning on an edge state that has probability exactly 0 or 1.
class degenerate_conditioning : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace fklab
