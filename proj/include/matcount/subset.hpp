#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace matcount {

// Element i of the ground set {1..n} is bit i-1.
using SubsetWord = std::uint32_t;

inline constexpr int kMaxGroundSet = 16;

constexpr SubsetWord full_set(int n) {
  return n >= 32 ? ~SubsetWord{0} : (SubsetWord{1} << n) - 1;
}

constexpr SubsetWord element_bit(int element) { return SubsetWord{1} << (element - 1); }

constexpr int popcount(SubsetWord w) { return std::popcount(w); }

constexpr bool is_subset(SubsetWord a, SubsetWord b) { return (a & ~b) == 0; }

constexpr bool is_proper_subset(SubsetWord a, SubsetWord b) { return a != b && is_subset(a, b); }

constexpr SubsetWord lowest_bit(SubsetWord w) { return w & (~w + 1); }

// Gosper's hack; returns 0 past the last k-subset of an n-set.
constexpr SubsetWord next_same_popcount(SubsetWord w, int n) {
  const SubsetWord c = lowest_bit(w);
  const SubsetWord r = w + c;
  const SubsetWord next = (((r ^ w) >> 2) / c) | r;
  if (r == 0 || next > full_set(n)) return 0;
  return next;
}

// All k-subsets of {1..n}, ascending as unsigned words.
std::vector<SubsetWord> k_subsets(int n, int k);

// 1-based ascending element list.
std::vector<int> elements_of(SubsetWord w);

SubsetWord word_from_elements(const std::vector<int>& elements);

// "{1,2,4}"
std::string to_string(SubsetWord w);

}  // namespace matcount
