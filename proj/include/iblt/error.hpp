#pragma once

#include <stdexcept>
#include <string>

namespace iblt {

/// A computation refused because it would exceed a configured size guard.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace iblt
