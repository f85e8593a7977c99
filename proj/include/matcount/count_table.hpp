#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matcount/bigcomb.hpp"
#include "matcount/enumerate.hpp"

namespace matcount {

enum class Iso { labeled, nonisomorphic };

std::string iso_name(Iso iso);

struct TableKey {
  int n = 0;
  int r = 0;
  int k = 0;
  Iso iso = Iso::labeled;

  friend auto operator<=>(const TableKey&, const TableKey&) = default;
};

// The eight published tables: four families, each labeled and up to isomorphism.
enum class TableFamily { all, loopless, simple, paving };

std::string family_name(TableFamily family);
// Smallest rank (and ground-set size) tabulated for the family.
int family_min_rank(TableFamily family);
// Class parameter k of the family at rank r. Paving rows use k = max(2, r-1),
// so the rank-2 row counts simple paving matroids.
int family_k(TableFamily family, int r);

// {0, 1, 2, r-1, r} restricted to 0..r, ascending.
std::vector<int> table_k_values(int r);

struct CountTable {
  int max_n = -1;
  std::map<TableKey, BigCount> entries;

  std::optional<BigCount> find(int n, int r, int k, Iso iso) const;
  // Throws std::out_of_range if absent.
  const BigCount& at(int n, int r, int k, Iso iso) const;
  // Family entry at (n, r); zero when r > n.
  BigCount family_entry(TableFamily family, Iso iso, int n, int r) const;
  // Sum of a family's column over its tabulated ranks.
  BigCount family_total(TableFamily family, Iso iso, int n) const;
};

struct PublishedTable {
  std::string title;
  TableFamily family;
  Iso iso;
  int min_n;
  int min_r;
  // rows[r - min_r][n - min_n]; zero where r > n.
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::uint64_t> totals;

  int max_n() const { return min_n + static_cast<int>(totals.size()) - 1; }
  std::uint64_t entry(int n, int r) const;
  std::uint64_t total(int n) const;
  // Sum of the printed column; differs from total(n) where the printed total is a typo.
  std::uint64_t column_sum(int n) const;
};

// The embedded expected values, n <= 8.
const std::vector<PublishedTable>& published_tables();
// Published value for the key, if some table covers it.
std::optional<std::uint64_t> published_entry(const TableKey& key);

struct Mismatch {
  std::string where;
  BigCount expected;
  BigCount actual;
};

struct TotalTypo {
  std::string title;
  int n = 0;
  std::uint64_t printed = 0;
  std::uint64_t column_sum = 0;
};

// Printed totals that disagree with their own column sums.
std::vector<TotalTypo> published_total_typos();

// Every published entry and column sum with n <= table.max_n that differs.
std::vector<Mismatch> compare_with_published(const CountTable& table);

struct TableOptions {
  int workers = 1;
  bool long_run = false;
  std::uint64_t node_budget = 0;
  std::function<void(const std::string&)> progress;
  // Labeled n = 8 pass resumes from here when set.
  std::string checkpoint_path;
};

class LongRunRequired : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// All entries for n <= max_n, every r, k in table_k_values(r), both iso flags.
CountTable build_tables(int max_n, const TableOptions& options = {});

// CSV: header "n,r,k,iso,count", rows sorted by (n, r, k, iso).
std::string to_csv(const CountTable& table);
// The eight tables as markdown: rows r, columns n, then a totals row.
std::string to_markdown(const CountTable& table);
// Plain aligned text with the same layout as the markdown output.
std::string to_text(const CountTable& table);

struct IdentityCheck {
  std::string name;
  int n = 0;
  int r = 0;
  BigCount lhs;
  BigCount rhs;
  bool holds = false;
};

struct CrossValidationReport {
  std::vector<IdentityCheck> checks;
  bool all_hold() const;
  std::size_t failures() const;
};

// The binomial, Stirling and isomorphism-sum identities for every (n, r) the
// table covers, plus the six unit identities.
CrossValidationReport cross_validate(const CountTable& table);

}  // namespace matcount
