#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "jacobi/types.hpp"

namespace jacobi {

/// "re,im" or "re". Throws ParseError.
Complex parse_complex(std::string_view text);

/// The jacobi_fn command line. `args` excludes the program name. Returns the
/// exit status: 0 success, 1 domain or verification failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Fixtures file selftest reads when --fixtures is not given.
std::string default_fixtures_path();

}  // namespace jacobi
