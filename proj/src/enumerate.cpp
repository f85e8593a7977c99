#include "matcount/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "matcount/erection.hpp"

namespace matcount {
namespace {

constexpr int kSplitRank = 2;

class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t budget) : budget_(budget) {}
  void tick() {
    const std::uint64_t seen = ++nodes_;
    if (budget_ != 0 && seen > budget_)
      throw BudgetExceeded("enumeration node budget of " + std::to_string(budget_) + " exceeded");
  }
  std::uint64_t nodes() const { return nodes_.load(); }

 private:
  std::uint64_t budget_;
  std::atomic<std::uint64_t> nodes_{0};
};

FlatLattice rank_zero_lattice(int n) { return FlatLattice{n, {{full_set(n)}}}; }

// Runs work(i) for every unit on a pool of workers. Results land in their unit
// slot, so the merged output never depends on scheduling.
template <typename Result, typename Work>
std::vector<Result> run_units(std::size_t units, int workers, const Work& work, NodeCounter& counter,
                              const std::function<void(const Progress&)>& progress,
                              const std::vector<bool>& skip = {}) {
  std::vector<Result> results(units);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex report_lock;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    while (!failed) {
      const std::size_t i = next++;
      if (i >= units) return;
      if (!skip.empty() && skip[i]) {
        ++done;
        continue;
      }
      try {
        results[i] = work(i);
      } catch (...) {
        std::lock_guard guard(report_lock);
        if (!failure) failure = std::current_exception();
        failed = true;
        return;
      }
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard guard(report_lock);
        progress(Progress{finished, units, counter.nodes()});
      }
    }
  };

  const int count = std::max(1, workers);
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

// Visits `node` and its erection subtree up to max_rank. Children must keep
// k_level >= min(k, rank); a truncation keeps every k-set of its erection independent.
void walk(const FlatLattice& node, int max_rank, int k, NodeCounter& counter,
          const std::function<void(const FlatLattice&, int)>& visit) {
  counter.tick();
  const int level = k_level(node);
  visit(node, level);
  if (node.rank() >= max_rank) return;
  for_each_erection(node, [&](std::span<const SubsetWord> top) {
    FlatLattice child = erect(node, top);
    if (k_level(child) >= std::min(k, child.rank())) walk(child, max_rank, k, counter, visit);
  });
}

// Nodes of rank exactly `depth` in walk order; shallower nodes go to `shallow`.
std::vector<FlatLattice> frontier(int n, int depth, int k, NodeCounter& counter,
                                  const std::function<void(const FlatLattice&, int)>& shallow) {
  std::vector<FlatLattice> out;
  std::function<void(const FlatLattice&)> grow = [&](const FlatLattice& node) {
    if (node.rank() == depth) {
      out.push_back(node);
      return;
    }
    counter.tick();
    shallow(node, k_level(node));
    for_each_erection(node, [&](std::span<const SubsetWord> top) {
      FlatLattice child = erect(node, top);
      if (k_level(child) >= std::min(k, child.rank())) grow(child);
    });
  };
  grow(rank_zero_lattice(n));
  return out;
}

RankClassCounts empty_counts(int n) {
  RankClassCounts c(n + 1);
  for (int r = 0; r <= n; ++r) c[r].assign(r + 1, 0);
  return c;
}

void tally(RankClassCounts& counts, const FlatLattice& node, int level) {
  for (int k = 0; k <= level; ++k) ++counts[node.rank()][k];
}

std::string checkpoint_header(int n, std::size_t units) {
  return "matcount-checkpoint n=" + std::to_string(n) + " units=" + std::to_string(units);
}

std::map<std::size_t, RankClassCounts> load_checkpoint(const std::string& path, int n, std::size_t units) {
  std::map<std::size_t, RankClassCounts> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  if (!std::getline(in, line)) return done;
  if (line != checkpoint_header(n, units))
    throw std::runtime_error("checkpoint " + path + " belongs to a different run");
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::size_t unit = 0;
    if (!(fields >> unit) || unit >= units) continue;
    RankClassCounts c = empty_counts(n);
    bool complete = true;
    for (auto& row : c)
      for (auto& v : row) complete = complete && static_cast<bool>(fields >> v);
    std::string end;
    if (complete && fields >> end && end == "done") done[unit] = std::move(c);
  }
  return done;
}

}  // namespace

void check_enumeration_args(int n, int r, int k) {
  if (n < 0 || n > 8 || r < 0 || r > n || k < 0 || k > r)
    throw std::invalid_argument("enumeration needs 0 <= k <= r <= n <= 8");
}

void for_each_matroid(int n, int r, int k, const std::function<void(const FlatLattice&)>& visit,
                      const EnumerationOptions& options) {
  check_enumeration_args(n, r, k);
  NodeCounter counter(options.node_budget);
  const int depth = std::min(r, kSplitRank);
  auto emit_if_target = [&](const FlatLattice& node, int level) {
    if (node.rank() == r && level >= k) visit(node);
  };
  if (options.workers <= 1) {
    walk(rank_zero_lattice(n), r, k, counter, emit_if_target);
    return;
  }
  const auto units = frontier(n, depth, k, counter, emit_if_target);
  auto results = run_units<std::vector<FlatLattice>>(
      units.size(), options.workers,
      [&](std::size_t i) {
        std::vector<FlatLattice> found;
        walk(units[i], r, k, counter, [&](const FlatLattice& node, int level) {
          if (node.rank() == r && level >= k) found.push_back(node);
        });
        return found;
      },
      counter, options.progress);
  for (const auto& unit : results)
    for (const auto& lattice : unit) visit(lattice);
}

std::vector<Matroid> enumerate_matroids(int n, int r, int k, const EnumerationOptions& options) {
  std::vector<Matroid> out;
  for_each_matroid(
      n, r, k,
      [&](const FlatLattice& lattice) {
        out.push_back(Matroid::from_sorted_bases_unchecked(n, r, bases_from_flats_unchecked(lattice)));
      },
      options);
  return out;
}

BigCount count_labeled(int n, int r, int k, const EnumerationOptions& options) {
  check_enumeration_args(n, r, k);
  NodeCounter counter(options.node_budget);
  std::uint64_t shallow = 0;
  auto count_target = [&](const FlatLattice& node, int level) {
    if (node.rank() == r && level >= k) ++shallow;
  };
  const auto units = frontier(n, std::min(r, kSplitRank), k, counter, count_target);
  const auto results = run_units<std::uint64_t>(
      units.size(), options.workers,
      [&](std::size_t i) {
        std::uint64_t c = 0;
        walk(units[i], r, k, counter, [&](const FlatLattice& node, int level) {
          if (node.rank() == r && level >= k) ++c;
        });
        return c;
      },
      counter, options.progress);
  BigCount total = shallow;
  for (auto c : results) total += c;
  return total;
}

RankClassCounts count_all_labeled(int n, const EnumerationOptions& options) {
  check_enumeration_args(n, 0, 0);
  NodeCounter counter(options.node_budget);
  RankClassCounts counts = empty_counts(n);
  const auto units = frontier(n, std::min(n, kSplitRank), 0, counter,
                              [&](const FlatLattice& node, int level) { tally(counts, node, level); });

  std::map<std::size_t, RankClassCounts> resumed;
  std::vector<bool> skip(units.size(), false);
  std::ofstream checkpoint;
  std::mutex checkpoint_lock;
  if (!options.checkpoint_path.empty()) {
    resumed = load_checkpoint(options.checkpoint_path, n, units.size());
    for (const auto& [unit, c] : resumed) skip[unit] = true;
    const bool fresh = resumed.empty();
    if (fresh) {
      std::ofstream(options.checkpoint_path, std::ios::trunc) << checkpoint_header(n, units.size()) << "\n";
    }
    checkpoint.open(options.checkpoint_path, std::ios::app);
    // a torn last line from an interrupted run must not swallow the next record
    if (!fresh) checkpoint << '\n';
  }

  auto results = run_units<RankClassCounts>(
      units.size(), options.workers,
      [&](std::size_t i) {
        RankClassCounts local = empty_counts(n);
        walk(units[i], n, 0, counter, [&](const FlatLattice& node, int level) { tally(local, node, level); });
        if (checkpoint.is_open()) {
          std::ostringstream line;
          line << i;
          for (const auto& row : local)
            for (auto v : row) line << ' ' << v;
          line << " done\n";
          std::lock_guard guard(checkpoint_lock);
          checkpoint << line.str() << std::flush;
        }
        return local;
      },
      counter, options.progress, skip);
  for (auto& [unit, c] : resumed) results[unit] = std::move(c);
  for (const auto& local : results)
    for (int r = 0; r <= n; ++r)
      for (int k = 0; k <= r; ++k) counts[r][k] += local.empty() ? 0 : local[r][k];
  return counts;
}

std::vector<std::vector<IsoClass>> iso_classes(int n, const EnumerationOptions& options, int k, int max_rank) {
  if (max_rank < 0) max_rank = n;
  check_enumeration_args(n, max_rank, std::min(k, max_rank));
  NodeCounter counter(options.node_budget);
  std::vector<std::vector<IsoClass>> by_rank;
  {
    FlatLattice root = rank_zero_lattice(n);
    counter.tick();
    auto canon = canonicalize(root);
    by_rank.push_back({IsoClass{std::move(canon.form), canon.automorphisms, k_level(root), std::move(root)}});
  }
  for (int rank = 0; rank < max_rank; ++rank) {
    const auto& parents = by_rank.back();
    auto results = run_units<std::vector<IsoClass>>(
        parents.size(), options.workers,
        [&](std::size_t i) {
          std::map<CanonicalForm, IsoClass> found;
          for_each_erection(parents[i].representative, [&](std::span<const SubsetWord> top) {
            counter.tick();
            FlatLattice child = erect(parents[i].representative, top);
            const int level = k_level(child);
            if (level < std::min(k, child.rank())) return;
            auto canon = canonicalize(child);
            if (found.contains(canon.form)) return;
            CanonicalForm key = canon.form;
            found.emplace(std::move(key),
                          IsoClass{std::move(canon.form), canon.automorphisms, level, std::move(child)});
          });
          std::vector<IsoClass> out;
          out.reserve(found.size());
          for (auto& [form, cls] : found) out.push_back(std::move(cls));
          return out;
        },
        counter, options.progress);
    std::vector<IsoClass> next;
    for (auto& unit : results)
      for (auto& cls : unit) next.push_back(std::move(cls));
    std::sort(next.begin(), next.end(), [](const IsoClass& a, const IsoClass& b) { return a.form < b.form; });
    by_rank.push_back(std::move(next));
  }
  return by_rank;
}

BigCount count_nonisomorphic(int n, int r, int k, const EnumerationOptions& options) {
  check_enumeration_args(n, r, k);
  const auto classes = iso_classes(n, options, k, r);
  std::uint64_t count = 0;
  for (const auto& cls : classes[r]) count += cls.k_level >= k ? 1 : 0;
  return count;
}

}  // namespace matcount
