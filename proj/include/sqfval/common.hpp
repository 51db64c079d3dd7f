#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace sqfval {

/// Degree of the zero polynomial. Strictly below every attainable degree and
/// safe to add to ordinary degrees without wrapping.
inline constexpr int kNegInfDeg = std::numeric_limits<int>::min() / 4;

/// Violation of an identity the algebra guarantees (e.g. an exact division
/// with a nonzero remainder). Always a bug, never a user error.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sqfval
