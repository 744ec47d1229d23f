#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "chdyn/dynamics.hpp"
#include "chdyn/extended_complex.hpp"

namespace chdyn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUndecided = 3;

/// Runs one subcommand (args exclude the program name). Reports go to out,
/// diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a+bi", "a-bi", "a", "bi", "i", "-i". Throws InvalidArgument.
Complex parse_complex(std::string_view text);
/// parse_complex, or "inf" for the point at infinity.
ExtendedComplex parse_point(std::string_view text);
/// "re_min,re_max,im_min,im_max" and "WxH".
GridWindow parse_window(std::string_view bounds, std::string_view size);

}  // namespace chdyn::cli
