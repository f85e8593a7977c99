// Acceptance run: one PASS / FAIL line per criterion.
//   acceptance              criteria 1 and 3-10, n <= 7
//   acceptance --long-run   also criterion 2 (the n = 8 columns; roughly ten minutes per worker count)

#include <chrono>
#include <cstring>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "matcount/analysis.hpp"
#include "matcount/count_table.hpp"
#include "matcount/enumerate.hpp"
#include "matcount/erection.hpp"
#include "matcount/paving.hpp"

using namespace matcount;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::string transcript;  // compared across worker counts
};

struct Run {
  int workers = 1;
  bool long_run = false;
  std::optional<CountTable> table7;
  std::optional<CountTable> table8;

  const CountTable& small() {
    if (!table7) {
      TableOptions o;
      o.workers = workers;
      table7 = build_tables(7, o);
    }
    return *table7;
  }
  const CountTable& large() {
    if (!table8) {
      TableOptions o;
      o.workers = workers;
      o.long_run = true;
      table8 = build_tables(8, o);
    }
    return *table8;
  }
  EnumerationOptions enum_opts() const {
    EnumerationOptions o;
    o.workers = workers;
    return o;
  }
};

std::string dec(const BigCount& v) { return to_decimal(v); }

void expect(Outcome& o, bool ok, const std::string& what) {
  o.transcript += what + (ok ? " ok\n" : " FAILED\n");
  if (!ok) {
    o.pass = false;
    if (!o.summary.empty()) o.summary += "; ";
    o.summary += what;
  }
}

void expect_eq(Outcome& o, const std::string& what, const BigCount& got, const BigCount& want) {
  expect(o, got == want, what + " = " + dec(got) + " (want " + dec(want) + ")");
}

void table_checks(Outcome& o, const CountTable& t, int max_n) {
  const auto mismatches = compare_with_published(t);
  for (const auto& m : mismatches) expect(o, false, m.where + ": expected " + dec(m.expected) + ", got " + dec(m.actual));
  std::size_t entries = 0;
  for (const auto& pt : published_tables())
    for (int n = pt.min_n; n <= std::min(max_n, pt.max_n()); ++n)
      entries += static_cast<std::size_t>(n - pt.min_r + 1);
  expect(o, mismatches.empty(), std::to_string(entries) + " published entries and column sums for n <= " +
                                    std::to_string(max_n) + " reproduced");
}

Outcome criterion1(Run& run) {
  Outcome o;
  const CountTable& t = run.small();
  table_checks(o, t, 7);
  expect_eq(o, "M0^3(S7)", t.at(7, 3, 0, Iso::labeled), 33442);
  expect_eq(o, "M1^3(S7)", t.at(7, 3, 1, Iso::labeled), 22172);
  expect_eq(o, "M2^4(S7)", t.at(7, 4, 2, Iso::labeled), 18700);
  expect_eq(o, "paving M3^4(S7)", t.at(7, 4, 3, Iso::labeled), 6149);
  expect_eq(o, "labeled total n=7", t.family_total(TableFamily::all, Iso::labeled, 7), 75164);
  expect_eq(o, "non-isomorphic total n=7", t.family_total(TableFamily::all, Iso::nonisomorphic, 7), 306);
  for (const auto& typo : published_total_typos())
    o.transcript += "note: " + typo.title + " n=" + std::to_string(typo.n) + " printed total " +
                    std::to_string(typo.printed) + ", column sums to " + std::to_string(typo.column_sum) + "\n";
  o.transcript += to_csv(t);
  if (o.pass) o.summary = "all eight tables for n <= 7 match; printed total 165 at n=5 (loopless) is a typo for 185";
  return o;
}

Outcome criterion2(Run& run) {
  Outcome o;
  const CountTable& t = run.large();
  table_checks(o, t, 8);
  expect_eq(o, "labeled total n=8", t.family_total(TableFamily::all, Iso::labeled, 8), 10607540);
  expect_eq(o, "non-isomorphic total n=8", t.family_total(TableFamily::all, Iso::nonisomorphic, 8), 1724);
  expect_eq(o, "paving labeled total n=8", t.family_total(TableFamily::paving, Iso::labeled, 8), 5137322);
  expect_eq(o, "paving non-isomorphic total n=8", t.family_total(TableFamily::paving, Iso::nonisomorphic, 8), 439);
  o.transcript += to_csv(t);
  if (o.pass) o.summary = "n = 8 columns match: totals 10607540 / 1724, paving 5137322 / 439";
  return o;
}

Outcome criterion3(Run& run) {
  Outcome o;
  auto record = [&](const ClosedFormReport& rep) {
    for (const auto& row : rep.rows)
      expect(o, row.match(),
             "n=" + std::to_string(rep.n) + " " + row.id + " " + row.formula + " = " + dec(row.predicted) +
                 " vs " + (row.enumerated ? dec(*row.enumerated) : std::string("missing")));
  };
  for (int n = 2; n <= 7; ++n) {
    auto rep = low_rank_forms(n);
    attach_counts(rep, run.small());
    record(rep);
  }
  for (int n = 5; n <= 8; ++n) {
    auto rep = simple_corank_forms(n);
    if (n <= 7)
      attach_counts(rep, run.small());
    else if (run.long_run)
      attach_counts(rep, run.large());
    else
      attach_published(rep);
    record(rep);
    if (n == 8) {
      std::vector<BigCount> got;
      for (const auto& row : rep.rows) got.push_back(row.predicted);
      expect(o, got == std::vector<BigCount>{219, 6, 16865, 40}, "n=8 corank values 219, 6, 16865, 40");
    }
  }
  if (o.pass)
    o.summary = std::string("low-rank forms n = 2..7 and corank forms n = 5..8 exact (n = 8 against ") +
                (run.long_run ? "enumeration)" : "embedded table)");
  return o;
}

Outcome criterion4(Run& run) {
  Outcome o;
  const auto rep = cross_validate(run.small());
  std::set<std::pair<int, int>> binomial, stirling, isosum;
  for (const auto& c : rep.checks) {
    expect(o, c.holds, c.name + " n=" + std::to_string(c.n) + " r=" + std::to_string(c.r) + ": " + dec(c.lhs) +
                           " = " + dec(c.rhs));
    if (c.name == "binomial") binomial.insert({c.n, c.r});
    if (c.name == "stirling") stirling.insert({c.n, c.r});
    if (c.name == "isomorphism-sum") isosum.insert({c.n, c.r});
  }
  bool covered = true;
  for (int n = 1; n <= 7; ++n)
    for (int r = 1; r <= n; ++r) {
      covered = covered && binomial.count({n, r}) && isosum.count({n, r});
      if (r >= 2) covered = covered && stirling.count({n, r});
    }
  expect(o, covered, "every (n, r) with n <= 7 covered by all three relations");
  if (o.pass) o.summary = std::to_string(rep.checks.size()) + " identity checks hold";
  return o;
}

Outcome criterion5(Run&) {
  Outcome o;
  auto compare = [&](int n, int rmax) {
    std::vector<BigCount> rec;
    try {
      rec = u_sizes_recursive(n, n);
    } catch (const RecursionInconsistency& e) {
      expect(o, false, e.what());
      return;
    }
    expect(o, true, "recursion exact through r=" + std::to_string(n) + " at n=" + std::to_string(n));
    for (int r = 3; r <= rmax; ++r)
      expect(o, rec[r - 3] == BigCount(u_set(r, n).members.size()),
             "|U(" + std::to_string(r) + "," + std::to_string(n) + ")| = " + dec(rec[r - 3]));
  };
  compare(7, 7);
  compare(15, 15);
  compare(31, 5);
  const auto u = u_set(3, 7).members;
  std::set<Matroid> seen;
  bool valid = true;
  for (unsigned pick = 0; pick < (1u << u.size()); ++pick) {
    std::vector<SubsetWord> v;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (pick >> i & 1) v.push_back(u[i]);
    const Matroid m = complete_to_paving(v, 3, 7);
    valid = valid && validate_bases(7, m.bases()) && classify(m).paving && m.rank() == 3 &&
            is_d_partition(completion_blocks(v, 3, 7));
    seen.insert(m);
  }
  expect(o, valid, "every completion at (3,7) is a valid rank-3 paving matroid");
  expect(o, seen.size() == 128, std::to_string(seen.size()) + " distinct completions of 128");
  if (o.pass) o.summary = "recursion matches enumeration at n = 7, 15, 31; 128 distinct paving completions";
  return o;
}

Outcome criterion6(Run&) {
  Outcome o;
  for (int n = 1; n <= 7; ++n) {
    PolicyRng rng(1000 + n);
    std::size_t agree = 0;
    for (int inst = 0; inst < 200; ++inst) {
      RandomPolicy p;
      p.seed = rng.next();
      const FlatLattice lat = knuth_random_lattice(n, p);
      const int level = static_cast<int>(rng.below(static_cast<std::uint64_t>(lat.rank())));
      const SetFamily prev{n, lat.levels[level]};
      SetFamily t = expand(prev);
      const SetFamily extra = random_supersets(prev, p, rng);
      t.members.insert(t.members.end(), extra.members.begin(), extra.members.end());
      t = SetFamily::of(n, t.members);
      const SetFamily expected = refine(t, prev);
      bool all = true;
      for (int order = 0; order < 20; ++order) all = all && refine_random_order(t, prev, rng.next()) == expected;
      agree += all;
    }
    expect(o, agree == 200, "refine confluence n=" + std::to_string(n) + ": " + std::to_string(agree) + "/200");

    std::size_t good = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      RandomPolicy p;
      p.seed = seed;
      p.superset_rule = seed % 2 ? SupersetRule::single_element : SupersetRule::uniform_subset;
      const FlatLattice lat = knuth_random_lattice(n, p);
      bool ok = true;
      try {
        check_flat_axioms(lat);
        const Matroid m = from_flats(lat);
        ok = validate_bases(n, m.bases()) && flat_lattice(m) == lat;
      } catch (const std::exception&) {
        ok = false;
      }
      good += ok;
    }
    expect(o, good == 1000, "random matroids n=" + std::to_string(n) + ": " + std::to_string(good) + "/1000 valid");
  }
  for (int n = 1; n <= 4; ++n) {
    std::size_t total = 0, reached = 0;
    for (int r = 1; r <= n; ++r)
      for (const Matroid& target : enumerate_matroids(n, r, 1)) {
        const FlatLattice want = flat_lattice(target);
        const FlatLattice got = knuth_lattice(
            n, [&](const SetFamily&, int i) { return SetFamily{n, want.levels[std::min(i + 1, want.rank())]}; });
        ++total;
        reached += got == want;
      }
    expect(o, reached == total,
           "targeted injection n=" + std::to_string(n) + ": " + std::to_string(reached) + "/" + std::to_string(total));
  }
  if (o.pass) o.summary = "confluence 200x20 per n, 7000 random matroids valid, every loopless matroid n <= 4 reached";
  return o;
}

Outcome criterion7(Run& run) {
  Outcome o;
  std::uint64_t total = 0;
  for (int n = 4; n <= 7; ++n) {
    const auto r = plp_scan(n, run.enum_opts());
    total += r.scanned;
    expect(o, r.ok(),
           "n=" + std::to_string(n) + " scanned=" + std::to_string(r.scanned) + " violations=" +
               std::to_string(r.violations) + " equalities=" + std::to_string(r.equalities) +
               " planes_trivial=" + std::to_string(r.planes_trivial) +
               " mismatches=" + std::to_string(r.equality_mismatches));
  }
  if (o.pass) o.summary = std::to_string(total) + " simple rank-4 matroids, no violations, equality iff all planes trivial";
  return o;
}

Outcome criterion8(Run& run) {
  Outcome o;
  std::uint64_t scanned = 0, checked = 0;
  for (int n = 3; n <= 6; ++n) {
    const auto d = dominance_scan(n, run.enum_opts());
    scanned += d.rank3_scanned;
    checked += d.erections_checked;
    expect(o, d.dominance_violations == 0 && d.free_not_erection == 0,
           "n=" + std::to_string(n) + " rank3=" + std::to_string(d.rank3_scanned) +
               " erections=" + std::to_string(d.erections_checked) +
               " violations=" + std::to_string(d.dominance_violations) +
               " free_not_erection=" + std::to_string(d.free_not_erection));
  }
  if (o.pass)
    o.summary = std::to_string(scanned) + " simple rank-3 matroids, " + std::to_string(checked) +
                " erections, zero violations";
  return o;
}

Outcome criterion9(Run&) {
  Outcome o;
  struct Item {
    LogConvexItem item;
    int threshold;
    int fails_at;
  };
  for (const Item& it : {Item{LogConvexItem::ii, 9, 8}, Item{LogConvexItem::v, 11, 10}, Item{LogConvexItem::vi, 8, 7}}) {
    const auto th = logconvex_threshold(it.item, item_min_n(it.item), 200);
    const std::string name = "item " + item_name(it.item);
    expect(o, th == it.threshold,
           name + " holds for n in [" + (th ? std::to_string(*th) : std::string("none")) + ", 200]");
    expect(o, logconvex_check(it.item, it.threshold), name + " holds at n=" + std::to_string(it.threshold));
    expect(o, !logconvex_check(it.item, it.fails_at), name + " fails at n=" + std::to_string(it.fails_at));
  }
  expect(o, paving_bound_sufficient_check(94, false), "sufficient condition (labeled) at n=94");
  expect(o, paving_bound_sufficient_check(67, true), "sufficient condition (iso) at n=67");
  const auto first = logconvex_threshold(LogConvexItem::i, item_min_n(LogConvexItem::i), 200);
  o.transcript += "item i reported: claimed from n=" + std::to_string(claimed_threshold(LogConvexItem::i)) +
                  ", holds from n=" + (first ? std::to_string(*first) : std::string("none")) + "\n";
  if (o.pass)
    o.summary = "items ii, v, vi exact at 9, 11, 8 through 200; sufficient checks at 94 and 67; item i holds only from n=" +
                (first ? std::to_string(*first) : std::string("none")) + " (reported)";
  return o;
}

using Criterion = Outcome (*)(Run&);

struct Timed {
  Outcome outcome;
  double seconds = 0;
};

Timed timed(Criterion c, Run& run) {
  const auto start = std::chrono::steady_clock::now();
  Timed t;
  try {
    t.outcome = c(run);
  } catch (const std::exception& e) {
    t.outcome.pass = false;
    t.outcome.summary = std::string("exception: ") + e.what();
    t.outcome.transcript = t.outcome.summary;
  }
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  bool long_run = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--long-run") == 0) {
      long_run = true;
    } else {
      std::cerr << "usage: acceptance [--long-run]\n";
      return 64;
    }
  }
  const std::vector<std::pair<int, Criterion>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}};

  bool all = true;
  std::map<int, std::string> reference;
  Run base{1, long_run, {}, {}};
  for (const auto& [id, fn] : criteria) {
    if (id == 2 && !long_run) {
      std::cout << "SKIP criterion 2: n = 8 columns need --long-run" << std::endl;
      continue;
    }
    const Timed t = timed(fn, base);
    all = all && t.outcome.pass;
    reference[id] = t.outcome.transcript;
    std::ostringstream line;
    line.precision(1);
    line << std::fixed << (t.outcome.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << t.outcome.summary
         << " [" << t.seconds << " s]";
    std::cout << line.str() << std::endl;
  }

  std::vector<std::string> diverged;
  for (int workers : {4, 16}) {
    Run other{workers, long_run, {}, {}};
    for (const auto& [id, fn] : criteria) {
      if (!reference.count(id)) continue;
      if (timed(fn, other).outcome.transcript != reference[id])
        diverged.push_back(std::to_string(id) + "@" + std::to_string(workers));
    }
  }
  std::string covered;
  for (const auto& [id, _] : reference) covered += (covered.empty() ? "" : ",") + std::to_string(id);
  if (diverged.empty()) {
    std::cout << "PASS criterion 10: criteria " << covered << " byte-identical under 1, 4 and 16 workers" << std::endl;
  } else {
    all = false;
    std::string list;
    for (const auto& d : diverged) list += " " + d;
    std::cout << "FAIL criterion 10: transcripts differ at" << list << std::endl;
  }
  return all ? 0 : 1;
}
