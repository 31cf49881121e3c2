#ifndef LATVA_ERRORS_HPP
#define LATVA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latva {

// Raised whenever a requested coefficient (or a whole window) cannot be
// certified at the current truncation / weight cutoff.  Callers must widen
// the truncation, never interpret missing data as zero.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace latva

#endif
