#pragma once

#include <stdexcept>
#include <vector>

#include "matcount/bigcomb.hpp"
#include "matcount/matroid.hpp"

namespace matcount {

// r-subsets of {1..n}, n = 2^m - 1, whose element values XOR to zero.
struct XorFamily {
  int n = 0;
  int r = 0;
  std::vector<SubsetWord> members;  // sorted
};

// Blocks of size >= d; every d-subset lies in exactly one block.
struct DPartition {
  int n = 0;
  int d = 0;
  std::vector<SubsetWord> blocks;  // sorted
};

class RecursionInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr int kMaxXorGroundSet = 31;
// u_set refuses to scan more r-subsets than this.
inline constexpr long long kMaxXorScan = 50'000'000;

// m with n = 2^m - 1, m >= 2; throws std::invalid_argument otherwise.
int xor_dimension(int n);

XorFamily u_set(int r, int n);
bool xor_zero(SubsetWord w);

// |U(r, n)| from |U(3,n)| = C(n,3)/(n-2) and |U(4,n)| = C(n,4)/(n-2) via
// (r+1)|U(r+1,n)| = C(n,r) - |U(r,n)| - (n-r+1)|U(r-1,n)|.
BigCount u_size_recursive(int r, int n);
// |U(3..rmax, n)|, index 0 holding r = 3.
std::vector<BigCount> u_sizes_recursive(int rmax, int n);

// 2^|U(r, n)|
BigCount lower_bound(int r, int n);
unsigned lower_bound_exponent(int r, int n);

// V plus every (r-1)-subset lying in no member of V. Throws if V is not
// contained in u_set(r, n).
DPartition completion_blocks(const std::vector<SubsetWord>& v, int r, int n);
// The rank-r paving matroid whose hyperplanes are completion_blocks(v, r, n).
Matroid complete_to_paving(const std::vector<SubsetWord>& v, int r, int n);

bool is_d_partition(const DPartition& p);

// Sign of value - 2^(C(n,r) / 2n), or of value - 2^(C(n,r) / 2n) / n! when
// divide_by_factorial is set. Exact: both sides are raised to the power 2n.
int compare_with_paving_bound(const BigCount& value, int n, int r, bool divide_by_factorial);

}  // namespace matcount
