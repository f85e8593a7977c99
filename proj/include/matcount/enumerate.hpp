#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matcount/bigcomb.hpp"
#include "matcount/canonical.hpp"
#include "matcount/matroid.hpp"

namespace matcount {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Progress {
  std::size_t units_done = 0;
  std::size_t units_total = 0;
  std::uint64_t nodes = 0;
};

struct EnumerationOptions {
  int workers = 1;
  // Erection-tree nodes allowed before BudgetExceeded; 0 means unlimited.
  std::uint64_t node_budget = 0;
  std::function<void(const Progress&)> progress;
  // Labeled counting only: completed work units are appended here and skipped on rerun.
  std::string checkpoint_path;
};

// counts[r][k] = number of labeled rank-r matroids on S_n with every k-set independent.
using RankClassCounts = std::vector<std::vector<std::uint64_t>>;

// Deterministic depth-first walk of the erection tree restricted to M_k^r(S_n):
// each rank-(j+1) matroid is visited as an erection of its rank-j truncation.
void for_each_matroid(int n, int r, int k, const std::function<void(const FlatLattice&)>& visit,
                      const EnumerationOptions& options = {});

// Same stream, materialized; order is independent of options.workers.
std::vector<Matroid> enumerate_matroids(int n, int r, int k, const EnumerationOptions& options = {});

BigCount count_labeled(int n, int r, int k, const EnumerationOptions& options = {});
BigCount count_nonisomorphic(int n, int r, int k, const EnumerationOptions& options = {});

// One labeled pass over every rank.
RankClassCounts count_all_labeled(int n, const EnumerationOptions& options = {});

struct IsoClass {
  CanonicalForm form;
  std::uint64_t automorphisms = 1;
  int k_level = 0;
  FlatLattice representative;
};

// Isomorphism classes of every rank up to max_rank (default n), each rank sorted
// by canonical form. Classes of rank j+1 are found among erections of rank-j
// representatives; only classes with k_level >= min(k, rank) are kept.
std::vector<std::vector<IsoClass>> iso_classes(int n, const EnumerationOptions& options = {},
                                               int k = 0, int max_rank = -1);

void check_enumeration_args(int n, int r, int k);

}  // namespace matcount
