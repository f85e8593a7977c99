#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace matcount {

// Exact unbounded integer. Counts are nonnegative; the signed backing type
// lets closed forms with subtracted terms be evaluated directly.
using BigCount = boost::multiprecision::cpp_int;

inline constexpr int kMaxSequenceIndex = 10000;

BigCount binomial(int n, int k);
BigCount bell(int n);
BigCount partition_count(int n);
// p(1) + ... + p(n)
BigCount partition_prefix_sum(int n);
BigCount stirling2(int n, int k);
BigCount factorial(int n);
BigCount pow2(unsigned exponent);
BigCount ipow(const BigCount& base, unsigned exponent);

std::string to_decimal(const BigCount& value);

}  // namespace matcount
