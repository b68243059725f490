#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsee::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Bad flags, bad config documents, invalid parameter values.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Entry point shared by the executable and the tests. args[0] is the
/// program name. Errors are reported on `err` as one JSON line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Locale-independent shortest form with 12 significant digits.
std::string format_real(double v);

/// min, min + step, ... up to max inclusive (with a 1e-9 relative slack).
/// Throws UsageError when the grid would be empty.
std::vector<double> grid(double min, double max, double step);

}  // namespace nsee::cli
