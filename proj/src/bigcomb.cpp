#include "matcount/bigcomb.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace matcount {
namespace {

void check_index(int n, const char* what) {
  if (n < 0) throw std::out_of_range(std::string(what) + ": negative index");
  if (n > kMaxSequenceIndex)
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(n) + " exceeds cap " +
                            std::to_string(kMaxSequenceIndex));
}

// Memo tables grow on demand under one lock; returned values are copies.
struct SequenceMemo {
  std::mutex lock;
  std::vector<BigCount> bell{1};          // b(0)
  std::vector<BigCount> bell_row{1};      // last row of the Bell triangle
  std::vector<BigCount> partitions{1};    // p(0)
  std::vector<BigCount> partition_sums{0};
  std::vector<BigCount> factorials{1};
  std::vector<std::vector<BigCount>> stirling{{1}};
};

SequenceMemo& memo() {
  static SequenceMemo m;
  return m;
}

}  // namespace

BigCount binomial(int n, int k) {
  check_index(n, "binomial");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigCount result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigCount bell(int n) {
  check_index(n, "bell");
  auto& m = memo();
  std::lock_guard guard(m.lock);
  // Bell triangle: each row starts with the last entry of the previous row.
  while (static_cast<int>(m.bell.size()) <= n) {
    std::vector<BigCount> next;
    next.reserve(m.bell_row.size() + 1);
    next.push_back(m.bell_row.back());
    for (const auto& v : m.bell_row) next.push_back(next.back() + v);
    m.bell_row = std::move(next);
    m.bell.push_back(m.bell_row.front());
  }
  return m.bell[n];
}

BigCount partition_count(int n) {
  check_index(n, "partition_count");
  auto& m = memo();
  std::lock_guard guard(m.lock);
  // Euler's pentagonal number recurrence.
  for (int i = static_cast<int>(m.partitions.size()); i <= n; ++i) {
    BigCount p = 0;
    for (int j = 1;; ++j) {
      const int g1 = j * (3 * j - 1) / 2;
      if (g1 > i) break;
      const bool add = (j % 2) == 1;
      const int g2 = j * (3 * j + 1) / 2;
      if (add) {
        p += m.partitions[i - g1];
        if (g2 <= i) p += m.partitions[i - g2];
      } else {
        p -= m.partitions[i - g1];
        if (g2 <= i) p -= m.partitions[i - g2];
      }
    }
    m.partitions.push_back(p);
  }
  return m.partitions[n];
}

BigCount partition_prefix_sum(int n) {
  if (n < 1) throw std::invalid_argument("partition_prefix_sum: n must be >= 1");
  check_index(n, "partition_prefix_sum");
  partition_count(n);
  auto& m = memo();
  std::lock_guard guard(m.lock);
  for (int i = static_cast<int>(m.partition_sums.size()); i <= n; ++i)
    m.partition_sums.push_back(m.partition_sums.back() + m.partitions[i]);
  return m.partition_sums[n];
}

BigCount stirling2(int n, int k) {
  check_index(n, "stirling2");
  if (k < 0 || k > n) return 0;
  auto& m = memo();
  std::lock_guard guard(m.lock);
  while (static_cast<int>(m.stirling.size()) <= n) {
    const auto& prev = m.stirling.back();
    const int row = static_cast<int>(m.stirling.size());
    std::vector<BigCount> next(row + 1, 0);
    for (int j = 1; j <= row; ++j) {
      BigCount v = prev.size() > static_cast<std::size_t>(j - 1) ? prev[j - 1] : BigCount(0);
      if (static_cast<std::size_t>(j) < prev.size()) v += j * prev[j];
      next[j] = v;
    }
    m.stirling.push_back(std::move(next));
  }
  return m.stirling[n][k];
}

BigCount factorial(int n) {
  check_index(n, "factorial");
  auto& m = memo();
  std::lock_guard guard(m.lock);
  while (static_cast<int>(m.factorials.size()) <= n)
    m.factorials.push_back(m.factorials.back() * static_cast<int>(m.factorials.size()));
  return m.factorials[n];
}

BigCount pow2(unsigned exponent) {
  BigCount v = 1;
  v <<= exponent;
  return v;
}

BigCount ipow(const BigCount& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

std::string to_decimal(const BigCount& value) { return value.str(); }

}  // namespace matcount
