#include "matcount/analysis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "matcount/erection.hpp"

namespace matcount {
namespace {

void need_n(int n, int lo, const char* what) {
  if (n < lo) throw std::invalid_argument(std::string(what) + " needs n >= " + std::to_string(lo));
}

BigCount corank1_labeled(int n) { return pow2(n) - 1 - binomial(n + 1, 2); }

BigCount corank2_labeled(int n) {
  return bell(n + 1) + binomial(n + 3, 4) + 2 * binomial(n + 1, 4) - pow2(n) -
         binomial(n + 1, 2) * pow2(n - 1);
}

Matroid lattice_matroid(const FlatLattice& lattice) {
  return Matroid::from_sorted_bases_unchecked(lattice.n, lattice.rank(), bases_from_flats_unchecked(lattice));
}

}  // namespace

bool ClosedFormReport::all_match() const {
  return std::all_of(rows.begin(), rows.end(), [](const FormulaRow& r) { return r.match(); });
}

ClosedFormReport low_rank_forms(int n) {
  need_n(n, 2, "low_rank_forms");
  const auto L = Iso::labeled;
  const auto N = Iso::nonisomorphic;
  ClosedFormReport rep{n, {}};
  rep.rows.push_back({"i.a", "n", {n, 1, 0, N}, BigCount(n), {}});
  rep.rows.push_back({"i.b", "p(1)+...+p(n)-n", {n, 2, 0, N}, partition_prefix_sum(n) - n, {}});
  rep.rows.push_back({"ii.a", "2^n-1", {n, 1, 0, L}, pow2(n) - 1, {}});
  rep.rows.push_back({"ii.b", "b(n+1)-2^n", {n, 2, 0, L}, bell(n + 1) - pow2(n), {}});
  rep.rows.push_back({"iii.a", "b(n)-1", {n, 2, 1, L}, bell(n) - 1, {}});
  rep.rows.push_back({"iii.b", "p(n)-1", {n, 2, 1, N}, partition_count(n) - 1, {}});
  return rep;
}

ClosedFormReport simple_corank_forms(int n) {
  need_n(n, 5, "simple_corank_forms");
  const auto L = Iso::labeled;
  const auto N = Iso::nonisomorphic;
  ClosedFormReport rep{n, {}};
  rep.rows.push_back({"i", "2^n-1-C(n+1,2)", {n, n - 1, 2, L}, corank1_labeled(n), {}});
  rep.rows.push_back({"ii", "n-2", {n, n - 1, 2, N}, BigCount(n - 2), {}});
  rep.rows.push_back({"iii", "b(n+1)+C(n+3,4)+2C(n+1,4)-2^n-C(n+1,2)2^(n-1)", {n, n - 2, 2, L},
                      corank2_labeled(n), {}});
  rep.rows.push_back(
      {"iv", "p(1)+...+p(n)+6-4n", {n, n - 2, 2, N}, partition_prefix_sum(n) + 6 - 4 * n, {}});
  return rep;
}

void attach_counts(ClosedFormReport& report, const CountTable& table) {
  for (auto& row : report.rows) {
    auto v = table.find(row.key.n, row.key.r, row.key.k, row.key.iso);
    if (v) row.enumerated = *v;
  }
}

void attach_published(ClosedFormReport& report) {
  for (auto& row : report.rows) {
    auto v = published_entry(row.key);
    if (v) row.enumerated = BigCount(*v);
  }
}

std::string item_name(LogConvexItem item) {
  static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi"};
  return names[static_cast<int>(item)];
}

LogConvexItem parse_item(const std::string& name) {
  for (int i = 0; i < 6; ++i)
    if (item_name(static_cast<LogConvexItem>(i)) == name) return static_cast<LogConvexItem>(i);
  throw std::invalid_argument("unknown item '" + name + "'");
}

int claimed_threshold(LogConvexItem item) {
  static const int t[] = {4, 9, 94, 67, 11, 8};
  return t[static_cast<int>(item)];
}

int item_min_n(LogConvexItem item) {
  static const int t[] = {2, 2, 3, 3, 5, 5};
  return t[static_cast<int>(item)];
}

LogConvexValue logconvex_values(LogConvexItem item, int n) {
  need_n(n, item_min_n(item), "logconvex item");
  LogConvexValue v;
  switch (item) {
    case LogConvexItem::i:
      v.lhs = bell(n + 1) - pow2(n);
      v.rhs = ipow(pow2(n) - 1, 2);
      break;
    case LogConvexItem::ii:
      v.lhs = partition_prefix_sum(n) - n;
      v.rhs = BigCount(n) * n;
      break;
    case LogConvexItem::v:
      v.lhs = corank2_labeled(n);
      v.rhs = ipow(corank1_labeled(n), 2);
      break;
    case LogConvexItem::vi:
      v.lhs = partition_prefix_sum(n) + 6 - 4 * n;
      v.rhs = BigCount(n - 2) * (n - 2);
      break;
    default:
      throw std::invalid_argument("items iii and iv have no closed form; use the sufficient condition");
  }
  v.holds = v.lhs > v.rhs;
  return v;
}

bool logconvex_check(LogConvexItem item, int n) { return logconvex_values(item, n).holds; }

namespace {

template <typename Pred>
std::optional<int> threshold(int lo, int hi, const Pred& holds) {
  if (lo > hi || !holds(hi)) return std::nullopt;
  int n0 = hi;
  while (n0 > lo && holds(n0 - 1)) --n0;
  return n0;
}

}  // namespace

std::optional<int> logconvex_threshold(LogConvexItem item, int lo, int hi) {
  lo = std::max(lo, item_min_n(item));
  return threshold(lo, hi, [&](int n) { return logconvex_check(item, n); });
}

bool paving_bound_sufficient_check(int n, bool iso) {
  need_n(n, 3, "sufficient check");
  const BigCount lhs = pow2(static_cast<unsigned>((n - 1) * (n - 2)));
  if (!iso) return lhs > ipow(bell(n) - 1, 24);
  return lhs > ipow(factorial(n) * ipow(partition_count(n) - 1, 2), 12);
}

std::optional<int> paving_bound_threshold(bool iso, int lo, int hi) {
  lo = std::max(lo, 3);
  return threshold(lo, hi, [&](int n) { return paving_bound_sufficient_check(n, iso); });
}

std::vector<ChainCheck> prefix_chain_check(const CountTable& table, int n) {
  need_n(n, 3, "prefix_chain_check");
  if (n > table.max_n) throw std::invalid_argument("table does not cover n");
  const auto L = Iso::labeled;
  const auto N = Iso::nonisomorphic;
  struct Spec {
    const char* name;
    int k;
    Iso iso;
    int r_lo;
  };
  const Spec specs[] = {{"i", 0, L, 0}, {"ii", 0, N, 0}, {"iii", 1, L, 1},
                        {"iv", 1, N, 1}, {"v", 2, L, 2}, {"vi", 2, N, 2}};
  std::vector<ChainCheck> out;
  for (const auto& s : specs) {
    ChainCheck c{s.name, n, {}, true};
    for (int r = s.r_lo; r <= 3; ++r) c.values.push_back(table.at(n, r, s.k, s.iso));
    for (std::size_t i = 1; i < c.values.size(); ++i) c.holds = c.holds && c.values[i - 1] <= c.values[i];
    out.push_back(std::move(c));
  }
  return out;
}

PlpVerdict plp_evaluate(const FlatLattice& lattice) {
  if (lattice.rank() != 4 || !classify(lattice).simple)
    throw std::invalid_argument("points-lines-planes needs a simple rank-4 matroid");
  PlpVerdict v;
  v.w1 = lattice.levels[1].size();
  v.w2 = lattice.levels[2].size();
  v.w3 = lattice.levels[3].size();
  v.lhs = v.w2 * v.w2;
  v.rhs_num = 3 * (v.w1 - 1) * v.w1 * v.w3;
  v.rhs_den = 2 * (v.w1 - 2);
  const BigCount scaled = v.lhs * v.rhs_den;
  v.holds = scaled >= v.rhs_num;
  v.equality = scaled == v.rhs_num;
  const auto& planes = lattice.levels[3];
  v.all_planes_trivial = v.w3 == binomial(lattice.n, 3) &&
                         std::all_of(planes.begin(), planes.end(), [](SubsetWord w) { return popcount(w) == 3; });
  return v;
}

PlpVerdict plp_evaluate(const Matroid& m) {
  if (m.rank() != 4 || !classify(m).simple)
    throw std::invalid_argument("points-lines-planes needs a simple rank-4 matroid");
  return plp_evaluate(flat_lattice(m));
}

PlpScanReport plp_scan(int n, const EnumerationOptions& options) {
  if (n < 0 || n > 7) throw std::invalid_argument("plp_scan needs n <= 7");
  PlpScanReport rep;
  rep.n = n;
  if (n < 4) return rep;
  for_each_matroid(
      n, 4, 2,
      [&](const FlatLattice& lattice) {
        const PlpVerdict v = plp_evaluate(lattice);
        ++rep.scanned;
        rep.violations += v.holds ? 0 : 1;
        rep.equalities += v.equality ? 1 : 0;
        rep.planes_trivial += v.all_planes_trivial ? 1 : 0;
        rep.equality_mismatches += v.equality != v.all_planes_trivial ? 1 : 0;
      },
      options);
  return rep;
}

DominanceReport dominance_scan(int n, const EnumerationOptions& options) {
  if (n < 0 || n > 6) throw std::invalid_argument("dominance_scan needs n <= 6");
  DominanceReport rep;
  rep.n = n;
  if (n < 3) return rep;
  for_each_matroid(
      n, 3, 2,
      [&](const FlatLattice& lattice) {
        ++rep.rank3_scanned;
        const FreeErectionResult free = free_erection(lattice_matroid(lattice));
        std::optional<std::vector<SubsetWord>> free_level;
        if (is_trivial(free)) {
          ++rep.trivial_free;
        } else {
          free_level = flats_of_rank(std::get<Matroid>(free), 3);
        }
        bool found_free = false;
        for_each_erection(lattice, [&](std::span<const SubsetWord> level) {
          ++rep.erections_checked;
          if (!free_level || level.size() > free_level->size()) ++rep.dominance_violations;
          if (free_level && std::equal(level.begin(), level.end(), free_level->begin(), free_level->end()))
            found_free = true;
        });
        if (free_level && !found_free) ++rep.free_not_erection;
      },
      options);
  if (n >= 4) {
    for_each_matroid(
        n, 4, 2,
        [&](const FlatLattice& lattice) {
          ++rep.rank4_scanned;
          const auto w2 = lattice.levels[2].size();
          const auto w3 = lattice.levels[3].size();
          if (2 * w3 > w2 * w2) ++rep.plane_bound_violations;
        },
        options);
  }
  return rep;
}

ErectibleCensus erectible_census(int n, const EnumerationOptions& options) {
  if (n < 0 || n > 6) throw std::invalid_argument("erectible_census needs n <= 6");
  ErectibleCensus c;
  c.n = n;
  if (n < 3) return c;
  std::set<std::vector<SubsetWord>> images;
  std::uint64_t erectible = 0;
  std::uint64_t rank3 = 0;
  for_each_matroid(
      n, 3, 2,
      [&](const FlatLattice& lattice) {
        ++rank3;
        const FreeErectionResult free = free_erection(lattice_matroid(lattice));
        if (is_trivial(free)) return;
        ++erectible;
        images.insert(std::get<Matroid>(free).bases());
      },
      options);
  c.erectible = erectible;
  c.free_images = images.size();
  c.simple_rank3 = rank3;
  c.simple_rank4 = n >= 4 ? count_labeled(n, 4, 2, options) : BigCount(0);
  return c;
}

}  // namespace matcount
