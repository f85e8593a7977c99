#include "matcount/matroid_io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

namespace matcount {
namespace {

[[noreturn]] void malformed(const std::string& why) {
  throw MatroidFormatError(FormatError::malformed, "malformed matroid text: " + why);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() != '#') lines.push_back(line);
    start = end + 1;
  }
  // a trailing newline leaves one empty line behind
  if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n')
    lines.pop_back();
  return lines;
}

std::vector<int> parse_ints(std::string_view line) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    const std::string_view tok = line.substr(pos, end - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      malformed("bad integer token '" + std::string(tok) + "'");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

int expect_keyword_value(std::string_view line, std::string_view key) {
  if (line.substr(0, key.size()) != key || line.size() <= key.size() || line[key.size()] != ' ')
    malformed("expected '" + std::string(key) + " <value>'");
  const auto v = parse_ints(line.substr(key.size() + 1));
  if (v.size() != 1) malformed("expected a single value after '" + std::string(key) + "'");
  return v.front();
}

}  // namespace

std::string to_text(const Matroid& m) {
  std::vector<std::vector<int>> rows;
  rows.reserve(m.bases().size());
  for (SubsetWord b : m.bases()) rows.push_back(elements_of(b));
  std::sort(rows.begin(), rows.end());
  std::ostringstream out;
  out << "matroid 1\n"
      << "n " << m.ground_size() << " r " << m.rank() << "\n"
      << "bases " << rows.size() << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
    out << "\n";
  }
  return out.str();
}

Matroid parse_matroid(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 3) malformed("missing header lines");
  if (lines[0] != "matroid 1") malformed("first line must be 'matroid 1'");
  const auto header = lines[1];
  const std::size_t rpos = header.find(" r ");
  if (rpos == std::string_view::npos) malformed("expected 'n <n> r <r>'");
  const int n = expect_keyword_value(header.substr(0, rpos), "n");
  const int r = expect_keyword_value(header.substr(rpos + 1), "r");
  const int count = expect_keyword_value(lines[2], "bases");
  if (n < 0 || n > kMaxGroundSet) malformed("n outside [0, 16]");
  if (r < 0 || r > n) malformed("r outside [0, n]");
  if (count < 1) malformed("basis count must be positive");
  if (static_cast<int>(lines.size()) != 3 + count) malformed("basis count does not match body");

  std::vector<SubsetWord> bases;
  bases.reserve(count);
  for (int i = 0; i < count; ++i) {
    const auto elems = parse_ints(lines[3 + i]);
    SubsetWord w = 0;
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (elems[j] < 1 || elems[j] > n) malformed("element outside 1..n");
      if (j > 0 && elems[j] <= elems[j - 1]) malformed("basis elements must be strictly ascending");
      w |= element_bit(elems[j]);
    }
    if (static_cast<int>(elems.size()) != r)
      throw MatroidFormatError(FormatError::wrong_popcount,
                               "basis " + to_string(w) + " does not have r elements");
    bases.push_back(w);
  }
  std::sort(bases.begin(), bases.end());
  if (auto dup = std::adjacent_find(bases.begin(), bases.end()); dup != bases.end())
    throw MatroidFormatError(FormatError::duplicate_basis, "duplicate basis " + to_string(*dup));
  if (!validate_bases(n, bases))
    throw MatroidFormatError(FormatError::exchange_failure, "basis exchange fails");
  return Matroid::from_sorted_bases_unchecked(n, r, std::move(bases));
}

}  // namespace matcount
