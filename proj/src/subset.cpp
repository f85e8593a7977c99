#include "matcount/subset.hpp"

namespace matcount {

std::vector<SubsetWord> k_subsets(int n, int k) {
  std::vector<SubsetWord> out;
  if (k < 0 || k > n) return out;
  if (k == 0) return {0};
  for (SubsetWord w = full_set(k); w != 0; w = next_same_popcount(w, n)) out.push_back(w);
  return out;
}

std::vector<int> elements_of(SubsetWord w) {
  std::vector<int> out;
  while (w) {
    out.push_back(std::countr_zero(w) + 1);
    w &= w - 1;
  }
  return out;
}

SubsetWord word_from_elements(const std::vector<int>& elements) {
  SubsetWord w = 0;
  for (int e : elements) w |= element_bit(e);
  return w;
}

std::string to_string(SubsetWord w) {
  std::string s = "{";
  bool first = true;
  for (int e : elements_of(w)) {
    if (!first) s += ',';
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

}  // namespace matcount
