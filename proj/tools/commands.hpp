#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace matcount::cli {

enum ExitCode {
  kOk = 0,
  kValidationFailure = 1,
  kBudgetExceeded = 2,
  kMalformedInput = 64,
  kDuplicateBasis = 65,
  kWrongPopcount = 66,
  kExchangeFailure = 67,
};

// args excludes the program name. in feeds free-erect / erections when no path is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// "7" or "2..8"
std::pair<int, int> parse_range(const std::string& text);

}  // namespace matcount::cli
