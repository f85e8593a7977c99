#include "matcount/paving.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace matcount {
namespace {

void check_args(int r, int n) {
  xor_dimension(n);
  if (r < 3 || r > n) throw std::invalid_argument("need 3 <= r <= n, got r=" + std::to_string(r));
}

BigCount exact_div(const BigCount& num, const BigCount& den, int r, int n) {
  if (num % den != 0 || num < 0)
    throw RecursionInconsistency("non-exact recursion step at r=" + std::to_string(r) +
                                 " n=" + std::to_string(n) + ": " + to_decimal(num) + " / " +
                                 to_decimal(den));
  return num / den;
}

// Every subset of word of size k, ascending.
std::vector<SubsetWord> subsets_of(SubsetWord word, int k) {
  const auto elems = elements_of(word);
  std::vector<SubsetWord> out;
  const int m = static_cast<int>(elems.size());
  if (k < 0 || k > m) return out;
  if (k == 0) return {0};
  for (SubsetWord pick = full_set(k); pick != 0; pick = next_same_popcount(pick, m)) {
    SubsetWord w = 0;
    for (int i = 0; i < m; ++i)
      if (pick >> i & 1) w |= element_bit(elems[i]);
    out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int xor_dimension(int n) {
  if (n < 3 || n > kMaxXorGroundSet || !std::has_single_bit(static_cast<unsigned>(n) + 1))
    throw std::invalid_argument("n must be 2^m - 1 with 3 <= n <= 31, got " + std::to_string(n));
  return std::countr_zero(static_cast<unsigned>(n) + 1);
}

bool xor_zero(SubsetWord w) {
  unsigned acc = 0;
  for (; w != 0; w &= w - 1) acc ^= static_cast<unsigned>(std::countr_zero(w) + 1);
  return acc == 0;
}

XorFamily u_set(int r, int n) {
  check_args(r, n);
  if (binomial(n, r) > kMaxXorScan)
    throw std::invalid_argument("u_set scan of C(" + std::to_string(n) + "," + std::to_string(r) +
                                ") subsets exceeds the materialization cap");
  XorFamily f{n, r, {}};
  for (SubsetWord w = full_set(r); w != 0; w = next_same_popcount(w, n))
    if (xor_zero(w)) f.members.push_back(w);
  std::sort(f.members.begin(), f.members.end());
  return f;
}

std::vector<BigCount> u_sizes_recursive(int rmax, int n) {
  check_args(3, n);
  if (rmax < 3 || rmax > n) throw std::invalid_argument("need 3 <= rmax <= n");
  std::vector<BigCount> u;
  u.push_back(exact_div(binomial(n, 3), n - 2, 3, n));
  if (rmax >= 4) u.push_back(exact_div(binomial(n, 4), n - 2, 4, n));
  for (int r = 4; r < rmax; ++r) {
    // u[r-3] = |U(r)|, u[r-4] = |U(r-1)|
    BigCount num = binomial(n, r) - u[r - 3] - BigCount(n - r + 1) * u[r - 4];
    u.push_back(exact_div(num, r + 1, r + 1, n));
  }
  return u;
}

BigCount u_size_recursive(int r, int n) {
  check_args(r, n);
  return u_sizes_recursive(r, n).back();
}

unsigned lower_bound_exponent(int r, int n) {
  const BigCount u = u_size_recursive(r, n);
  if (u > 1'000'000) throw std::out_of_range("lower bound exponent too large to materialize");
  return u.convert_to<unsigned>();
}

BigCount lower_bound(int r, int n) { return pow2(lower_bound_exponent(r, n)); }

DPartition completion_blocks(const std::vector<SubsetWord>& v, int r, int n) {
  check_args(r, n);
  std::vector<SubsetWord> chosen = v;
  std::sort(chosen.begin(), chosen.end());
  if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end())
    throw std::invalid_argument("V has repeated members");
  for (SubsetWord w : chosen)
    if (popcount(w) != r || !is_subset(w, full_set(n)) || !xor_zero(w))
      throw std::invalid_argument("V member " + to_string(w) + " is not in U(r, n)");
  if (binomial(n, r - 1) > kMaxXorScan) throw std::invalid_argument("completion too large");

  std::vector<SubsetWord> covered;
  for (SubsetWord w : chosen) {
    auto sub = subsets_of(w, r - 1);
    covered.insert(covered.end(), sub.begin(), sub.end());
  }
  std::sort(covered.begin(), covered.end());

  DPartition p{n, r - 1, chosen};
  for (SubsetWord w = full_set(r - 1); w != 0; w = next_same_popcount(w, n))
    if (!std::binary_search(covered.begin(), covered.end(), w)) p.blocks.push_back(w);
  std::sort(p.blocks.begin(), p.blocks.end());
  return p;
}

Matroid complete_to_paving(const std::vector<SubsetWord>& v, int r, int n) {
  if (n > kMaxGroundSet) throw std::invalid_argument("matroids need n <= 16");
  const DPartition p = completion_blocks(v, r, n);
  std::vector<SubsetWord> bases;
  for (SubsetWord w = full_set(r); w != 0; w = next_same_popcount(w, n)) {
    bool inside = false;
    for (SubsetWord b : p.blocks)
      if (popcount(b) >= r && is_subset(w, b)) {
        inside = true;
        break;
      }
    if (!inside) bases.push_back(w);
  }
  if (bases.empty()) throw std::invalid_argument("completion covers every r-subset: no bases");
  // the hyperplanes of a paving matroid are exactly an (r-1)-partition
  if (!is_d_partition(p)) throw std::logic_error("completion is not an (r-1)-partition");
  return Matroid::from_sorted_bases_unchecked(n, r, std::move(bases));
}

bool is_d_partition(const DPartition& p) {
  if (p.d < 0 || p.d > p.n || p.n > kMaxXorGroundSet) return false;
  for (SubsetWord b : p.blocks)
    if (popcount(b) < p.d || !is_subset(b, full_set(p.n))) return false;
  auto check = [&](SubsetWord w) {
    int hits = 0;
    for (SubsetWord b : p.blocks) hits += is_subset(w, b) ? 1 : 0;
    return hits == 1;
  };
  if (p.d == 0) return check(0);
  for (SubsetWord w = full_set(p.d); w != 0; w = next_same_popcount(w, p.n))
    if (!check(w)) return false;
  return true;
}

int compare_with_paving_bound(const BigCount& value, int n, int r, bool divide_by_factorial) {
  // value vs 2^(a/b)  <=>  value^b vs 2^a
  const BigCount a = binomial(n, r);
  const unsigned b = static_cast<unsigned>(2 * n);
  if (a > 100'000'000) throw std::out_of_range("bound exponent too large");
  BigCount left = divide_by_factorial ? value * factorial(n) : value;
  const BigCount lhs = ipow(left, b);
  const BigCount rhs = pow2(a.convert_to<unsigned>());
  return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

}  // namespace matcount
