#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matcount/bigcomb.hpp"
#include "matcount/count_table.hpp"
#include "matcount/enumerate.hpp"
#include "matcount/matroid.hpp"

namespace matcount {

struct FormulaRow {
  std::string id;       // "i.a", "iii" ...
  std::string formula;  // human-readable right-hand side
  TableKey key;
  BigCount predicted;
  std::optional<BigCount> enumerated;
  bool match() const { return enumerated && *enumerated == predicted; }
};

struct ClosedFormReport {
  int n = 0;
  std::vector<FormulaRow> rows;
  // Every row has a count attached and equals it.
  bool all_match() const;
};

// Rank 1 and 2 closed forms, n >= 2:
// NI M0^1 = n, NI M0^2 = p(1)+..+p(n)-n, M0^1 = 2^n-1, M0^2 = b(n+1)-2^n,
// M1^2 = b(n)-1, NI M1^2 = p(n)-1.
ClosedFormReport low_rank_forms(int n);
// Simple matroids of rank n-1 and n-2, n >= 5.
ClosedFormReport simple_corank_forms(int n);

// Fills enumerated values from the table where it covers the key.
void attach_counts(ClosedFormReport& report, const CountTable& table);
// Fills enumerated values from the embedded published tables.
void attach_published(ClosedFormReport& report);

enum class LogConvexItem { i, ii, iii, iv, v, vi };

std::string item_name(LogConvexItem item);
LogConvexItem parse_item(const std::string& name);
// The smallest n from which the inequality is claimed to hold.
int claimed_threshold(LogConvexItem item);
// Smallest n at which the item's closed forms are defined.
int item_min_n(LogConvexItem item);

struct LogConvexValue {
  BigCount lhs;  // a_{k-1} a_{k+1}
  BigCount rhs;  // a_k^2
  bool holds = false;  // lhs > rhs
};

// Items i, ii, v, vi from closed forms. Items iii and iv throw
// std::invalid_argument: use paving_bound_sufficient_check.
LogConvexValue logconvex_values(LogConvexItem item, int n);
bool logconvex_check(LogConvexItem item, int n);
// Smallest n0 in [lo, hi] with the inequality true for every n in [n0, hi];
// nullopt if it fails at hi.
std::optional<int> logconvex_threshold(LogConvexItem item, int lo, int hi);

// Sufficient condition for items iii (labeled) and iv (iso), n >= 3:
// labeled: 2^((n-1)(n-2)) > (b(n)-1)^24
// iso:     2^((n-1)(n-2)) > (n! (p(n)-1)^2)^12
bool paving_bound_sufficient_check(int n, bool iso);
std::optional<int> paving_bound_threshold(bool iso, int lo, int hi);

struct ChainCheck {
  std::string name;
  int n = 0;
  std::vector<BigCount> values;
  bool holds = false;
};

// The six non-decreasing prefix chains at n, read from the table (n >= 3).
std::vector<ChainCheck> prefix_chain_check(const CountTable& table, int n);

struct PlpVerdict {
  BigCount w1, w2, w3;
  BigCount lhs;      // W2^2
  BigCount rhs_num;  // 3 (W1-1) W1 W3
  BigCount rhs_den;  // 2 (W1-2)
  bool holds = false;
  bool equality = false;
  bool all_planes_trivial = false;  // F_3 is every 3-subset
};

// Points-lines-planes inequality W2^2 >= 3(W1-1)/(2(W1-2)) W1 W3 in exact
// integers. Requires a simple rank-4 matroid.
PlpVerdict plp_evaluate(const Matroid& m);
PlpVerdict plp_evaluate(const FlatLattice& lattice);

struct PlpScanReport {
  int n = 0;
  std::uint64_t scanned = 0;
  std::uint64_t violations = 0;
  std::uint64_t equalities = 0;
  std::uint64_t planes_trivial = 0;
  // Instances where equality and all_planes_trivial disagree.
  std::uint64_t equality_mismatches = 0;
  bool ok() const { return violations == 0 && equality_mismatches == 0; }
};

// Every matroid in M_2^4(S_n), n <= 7.
PlpScanReport plp_scan(int n, const EnumerationOptions& options = {});

struct DominanceReport {
  int n = 0;
  std::uint64_t rank3_scanned = 0;
  std::uint64_t erections_checked = 0;
  std::uint64_t trivial_free = 0;
  // Some erection has more hyperplanes than Free(M), or M has erections but a
  // trivial free erection.
  std::uint64_t dominance_violations = 0;
  // Free(M) is nontrivial but not among the erections found by search.
  std::uint64_t free_not_erection = 0;
  std::uint64_t rank4_scanned = 0;
  // Simple rank-4 matroids with 2 W3 > W2^2.
  std::uint64_t plane_bound_violations = 0;
  bool ok() const {
    return dominance_violations == 0 && free_not_erection == 0 && plane_bound_violations == 0;
  }
};

// n <= 6.
DominanceReport dominance_scan(int n, const EnumerationOptions& options = {});

struct ErectibleCensus {
  int n = 0;
  BigCount erectible;      // simple rank-3 matroids with a nontrivial free erection
  BigCount free_images;    // distinct Free(M)
  BigCount simple_rank3;   // |M_2^3(S_n)|
  BigCount simple_rank4;   // |M_2^4(S_n)|
  bool ok() const { return free_images <= simple_rank3 && free_images <= simple_rank4; }
};

// n <= 6.
ErectibleCensus erectible_census(int n, const EnumerationOptions& options = {});

}  // namespace matcount
