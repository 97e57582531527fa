#pragma once

#include <stdexcept>
#include <string>

namespace topsurg::kernel {

/// Raised when a complex violates the manifold conditions of its type.
class ManifoldError : public std::invalid_argument {
 public:
  explicit ManifoldError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a surgery site or gluing cannot be applied to a complex.
class SiteError : public std::invalid_argument {
 public:
  explicit SiteError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace topsurg::kernel
