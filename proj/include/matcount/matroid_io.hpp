#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "matcount/matroid.hpp"

namespace matcount {

// Version-tagged text format:
//   matroid 1
//   n <n> r <r>
//   bases <count>
//   <one basis per line, ascending 1-based elements, lines in lexicographic order>
// Lines starting with '#' are comments and ignored by the parser.
enum class FormatError {
  malformed = 1,
  duplicate_basis = 2,
  wrong_popcount = 3,
  exchange_failure = 4,
};

class MatroidFormatError : public std::runtime_error {
 public:
  MatroidFormatError(FormatError code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  FormatError code() const { return code_; }

 private:
  FormatError code_;
};

std::string to_text(const Matroid& m);
Matroid parse_matroid(std::string_view text);

}  // namespace matcount
