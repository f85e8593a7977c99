#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "matcount/analysis.hpp"
#include "matcount/count_table.hpp"
#include "matcount/enumerate.hpp"
#include "matcount/erection.hpp"
#include "matcount/matroid_io.hpp"
#include "matcount/paving.hpp"

namespace matcount::cli {
namespace {

struct RunConfig {
  std::string command;
  int max_n = 7;
  std::string n_range;
  std::optional<int> r;
  std::optional<int> k;
  std::string iso = "both";
  bool long_run = false;
  int workers = 1;
  std::uint64_t seed = 0;
  std::string format;
  std::string out_path;
  std::uint64_t budget = 0;
  std::string checkpoint;
  bool progress = false;
  std::string check = "all";
  int rmax = 0;
  std::string input;
  std::string policy = "geometric";
  std::string superset = "uniform-subset";
  int max_per_level = 64;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

EnumerationOptions enum_options(const RunConfig& c) {
  EnumerationOptions o;
  o.workers = c.workers;
  o.node_budget = c.budget;
  return o;
}

std::string format_or(const RunConfig& c, const std::string& fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "csv" && f != "md" && f != "text") throw UsageError("unknown format '" + f + "'");
  return f;
}

std::pair<int, int> range_or(const RunConfig& c, int lo, int hi) {
  if (c.n_range.empty()) return {lo, hi};
  return parse_range(c.n_range);
}

std::string read_input(const RunConfig& c, std::istream& in) {
  if (c.input.empty() || c.input == "-")
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  std::ifstream file(c.input);
  if (!file) throw UsageError("cannot read " + c.input);
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_tables(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::string fmt = format_or(c, "text");
  if (c.r) {
    // Single entry: --n N --r R [--k K] [--iso ...]
    if (c.n_range.empty()) throw UsageError("--r needs --n");
    const auto [lo, hi] = parse_range(c.n_range);
    if (lo != hi) throw UsageError("--r needs a single --n");
    if (lo == 8 && !c.long_run) throw UsageError("n = 8 needs --long-run");
    const int k = c.k.value_or(0);
    check_enumeration_args(lo, *c.r, k);
    out << "n,r,k,iso,count\n";
    int status = kOk;
    for (Iso iso : {Iso::labeled, Iso::nonisomorphic}) {
      if (c.iso != "both" && c.iso != iso_name(iso)) continue;
      const BigCount v = iso == Iso::labeled ? count_labeled(lo, *c.r, k, enum_options(c))
                                             : count_nonisomorphic(lo, *c.r, k, enum_options(c));
      out << lo << ',' << *c.r << ',' << k << ',' << iso_name(iso) << ',' << v << '\n';
      auto expected = published_entry(TableKey{lo, *c.r, k, iso});
      if (expected && BigCount(*expected) != v) {
        err << "mismatch: expected " << *expected << '\n';
        status = kValidationFailure;
      }
    }
    return status;
  }
  if (c.max_n > 7 && !c.long_run) throw UsageError("--max-n 8 needs --long-run");
  TableOptions opts;
  opts.workers = c.workers;
  opts.long_run = c.long_run;
  opts.node_budget = c.budget;
  opts.checkpoint_path = c.checkpoint;
  if (c.progress) opts.progress = [&err](const std::string& line) { err << line << '\n'; };
  const CountTable table = build_tables(c.max_n, opts);
  if (fmt == "csv")
    out << to_csv(table);
  else if (fmt == "md")
    out << to_markdown(table);
  else
    out << to_text(table);
  const auto mismatches = compare_with_published(table);
  for (const auto& typo : published_total_typos())
    if (typo.n <= c.max_n)
      err << "note: " << typo.title << " n=" << typo.n << ": printed total " << typo.printed
          << ", column sums to " << typo.column_sum << '\n';
  for (const auto& m : mismatches)
    err << "mismatch " << m.where << ": expected " << m.expected << ", got " << m.actual << '\n';
  return mismatches.empty() ? kOk : kValidationFailure;
}

// Counts for closed-form checks: enumerated through n <= 7 (n = 8 with long-run), published beyond.
struct CountSource {
  std::optional<CountTable> table;
  bool has(int n) const { return table && n <= table->max_n; }
};

CountSource build_source(const RunConfig& c, int hi) {
  CountSource s;
  const int top = std::min(hi, c.long_run ? 8 : 7);
  if (top < 0) return s;
  TableOptions opts;
  opts.workers = c.workers;
  opts.long_run = c.long_run;
  opts.node_budget = c.budget;
  s.table = build_tables(top, opts);
  return s;
}

void emit_forms(const std::string& check, ClosedFormReport rep, const CountSource& src, std::ostream& out,
                bool& ok) {
  std::string source = "published";
  if (src.has(rep.n)) {
    attach_counts(rep, *src.table);
    source = "enumerated";
  } else {
    attach_published(rep);
  }
  for (const auto& row : rep.rows) {
    out << check << ',' << rep.n << ',' << row.id << ',' << row.formula << ',' << row.predicted << ',';
    if (row.enumerated) out << *row.enumerated;
    out << ',' << source << ',' << yes_no(row.match()) << '\n';
    ok = ok && row.match();
  }
}

int cmd_formulas(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::string fmt = format_or(c, "csv");
  if (fmt == "md") throw UsageError("formulas supports csv and text");
  static const std::vector<std::string> all = {"low-rank", "corank", "relations", "chains", "logconvex"};
  std::vector<std::string> checks;
  if (c.check == "all")
    checks = all;
  else if (std::find(all.begin(), all.end(), c.check) != all.end())
    checks = {c.check};
  else
    throw UsageError("unknown check '" + c.check + "'");

  std::map<int, CountSource> sources;
  auto source_for = [&](int hi) -> const CountSource& {
    const int top = std::min(hi, c.long_run ? 8 : 7);
    auto it = sources.find(top);
    if (it == sources.end()) it = sources.emplace(top, build_source(c, top)).first;
    return it->second;
  };

  bool ok = true;
  std::ostringstream body;
  for (const auto& check : checks) {
    if (check == "low-rank" || check == "corank") {
      const bool low = check == "low-rank";
      auto [lo, hi] = range_or(c, low ? 2 : 5, low ? 7 : 8);
      lo = std::max(lo, low ? 2 : 5);
      if (hi > 8) throw UsageError("closed-form comparison needs n <= 8");
      const CountSource& src = source_for(hi);
      body << "check,n,id,formula,predicted,actual,source,match\n";
      for (int n = lo; n <= hi; ++n)
        emit_forms(check, low ? low_rank_forms(n) : simple_corank_forms(n), src, body, ok);
    } else if (check == "relations") {
      auto [lo, hi] = range_or(c, 0, 7);
      if (hi > 8) throw UsageError("relations need n <= 8");
      const CountSource& src = source_for(hi);
      if (!src.table) continue;
      const auto report = cross_validate(*src.table);
      body << "relation,n,r,lhs,rhs,holds\n";
      for (const auto& chk : report.checks) {
        if (chk.n < lo || chk.n > hi) continue;
        body << chk.name << ',' << chk.n << ',' << chk.r << ',' << chk.lhs << ',' << chk.rhs << ','
             << yes_no(chk.holds) << '\n';
        ok = ok && chk.holds;
      }
    } else if (check == "chains") {
      auto [lo, hi] = range_or(c, 6, 7);
      lo = std::max(lo, 6);
      if (hi > 8) throw UsageError("chains need n <= 8");
      const CountSource& src = source_for(hi);
      body << "chain,n,values,holds\n";
      for (int n = lo; n <= hi && src.has(n); ++n) {
        for (const auto& ch : prefix_chain_check(*src.table, n)) {
          body << ch.name << ',' << n << ',';
          for (std::size_t i = 0; i < ch.values.size(); ++i) body << (i ? " <= " : "") << ch.values[i];
          body << ',' << yes_no(ch.holds) << '\n';
          ok = ok && ch.holds;
        }
      }
    } else {
      auto [lo, hi] = range_or(c, 2, 200);
      body << "item,method,claimed_from,computed_from,scanned_to,status\n";
      for (int i = 0; i < 6; ++i) {
        const auto item = static_cast<LogConvexItem>(i);
        const bool sufficient = item == LogConvexItem::iii || item == LogConvexItem::iv;
        const auto from = sufficient ? paving_bound_threshold(item == LogConvexItem::iv, lo, hi)
                                     : logconvex_threshold(item, lo, hi);
        const int claimed = claimed_threshold(item);
        std::string status;
        if (claimed > hi)
          status = "out-of-range";
        else if (from && *from == claimed)
          status = "confirmed";
        else
          status = "discrepancy";
        // The first item's claim is known not to hold as stated; it is reported only.
        const bool asserted = item != LogConvexItem::i && claimed <= hi;
        if (asserted && status != "confirmed") ok = false;
        body << item_name(item) << ',' << (sufficient ? "sufficient-condition" : "closed-form") << ','
             << claimed << ',' << (from ? std::to_string(*from) : "none") << ',' << hi << ',' << status
             << (asserted ? "" : " (reported)") << '\n';
      }
    }
  }
  if (fmt == "csv") {
    out << body.str();
  } else {
    std::istringstream lines(body.str());
    std::string line;
    while (std::getline(lines, line)) {
      for (char& ch : line)
        if (ch == ',') ch = '\t';
      out << line << '\n';
    }
  }
  if (!ok) err << "formulas: at least one check failed\n";
  return ok ? kOk : kValidationFailure;
}

int cmd_paving_bound(const RunConfig& c, std::ostream& out, std::ostream&) {
  format_or(c, "csv");
  if (c.n_range.empty()) throw UsageError("paving-bound needs --n");
  const auto [n, n_hi] = parse_range(c.n_range);
  if (n != n_hi) throw UsageError("paving-bound needs a single --n");
  const int rmax = c.rmax > 0 ? c.rmax : n;
  const auto sizes = u_sizes_recursive(rmax, n);
  out << "r,u_size,lower_bound\n";
  for (int r = 3; r <= rmax; ++r) out << r << ',' << sizes[r - 3] << ",2^" << sizes[r - 3] << '\n';
  return kOk;
}

int cmd_plp(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::string fmt = format_or(c, "csv");
  auto [lo, hi] = range_or(c, 4, 7);
  bool ok = true;
  if (fmt == "text") {
    for (int n = lo; n <= hi; ++n) {
      const auto rep = plp_scan(n, enum_options(c));
      out << "n=" << n << ": " << rep.scanned << " simple rank-4 matroids, " << rep.violations
          << " violations, " << rep.equalities << " equality cases, " << rep.planes_trivial
          << " with all planes trivial: " << (rep.ok() ? "PASS" : "FAIL") << '\n';
      ok = ok && rep.ok();
    }
  } else {
    out << "n,scanned,violations,equalities,planes_trivial,equality_mismatches,ok\n";
    for (int n = lo; n <= hi; ++n) {
      const auto rep = plp_scan(n, enum_options(c));
      out << n << ',' << rep.scanned << ',' << rep.violations << ',' << rep.equalities << ','
          << rep.planes_trivial << ',' << rep.equality_mismatches << ',' << yes_no(rep.ok()) << '\n';
      ok = ok && rep.ok();
    }
  }
  if (!ok) err << "plp: inequality violated or equality case mismatch\n";
  return ok ? kOk : kValidationFailure;
}

int cmd_dominance(const RunConfig& c, std::ostream& out, std::ostream& err) {
  format_or(c, "csv");
  auto [lo, hi] = range_or(c, 3, 6);
  bool ok = true;
  out << "n,rank3,erections,trivial_free,dominance_violations,free_not_erection,rank4,plane_bound_violations,"
         "erectible,free_images,simple_rank3,simple_rank4,ok\n";
  for (int n = lo; n <= hi; ++n) {
    const auto d = dominance_scan(n, enum_options(c));
    const auto e = erectible_census(n, enum_options(c));
    const bool row_ok = d.ok() && e.ok();
    out << n << ',' << d.rank3_scanned << ',' << d.erections_checked << ',' << d.trivial_free << ','
        << d.dominance_violations << ',' << d.free_not_erection << ',' << d.rank4_scanned << ','
        << d.plane_bound_violations << ',' << e.erectible << ',' << e.free_images << ',' << e.simple_rank3 << ','
        << e.simple_rank4 << ',' << yes_no(row_ok) << '\n';
    ok = ok && row_ok;
  }
  if (!ok) err << "dominance: violation found\n";
  return ok ? kOk : kValidationFailure;
}

int cmd_random_matroid(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.n_range.empty()) throw UsageError("random-matroid needs --n");
  const auto [n, n_hi] = parse_range(c.n_range);
  if (n != n_hi || n < 1 || n > kMaxGroundSet) throw UsageError("random-matroid needs a single --n in 1..16");
  RandomPolicy p;
  p.seed = c.seed;
  if (c.policy == "geometric")
    p.count_distribution = CountDistribution::geometric_half;
  else if (c.policy == "none")
    p.count_distribution = CountDistribution::none;
  else
    throw UsageError("unknown policy '" + c.policy + "'");
  if (c.superset == "uniform-subset")
    p.superset_rule = SupersetRule::uniform_subset;
  else if (c.superset == "single-element")
    p.superset_rule = SupersetRule::single_element;
  else
    throw UsageError("unknown superset rule '" + c.superset + "'");
  p.max_per_level = c.max_per_level;
  out << to_text(knuth_random_matroid(n, p));
  out << "# seed=" << p.seed << " policy=" << p.describe() << '\n';
  return kOk;
}

int cmd_free_erect(const RunConfig& c, std::istream& in, std::ostream& out, std::ostream&) {
  const Matroid m = parse_matroid(read_input(c, in));
  const auto result = free_erection(m);
  if (is_trivial(result))
    out << "trivial\n";
  else
    out << to_text(std::get<Matroid>(result));
  return kOk;
}

int cmd_erections(const RunConfig& c, std::istream& in, std::ostream& out, std::ostream&) {
  const Matroid m = parse_matroid(read_input(c, in));
  const auto all = erections(m);
  out << "# erections " << all.size() << '\n';
  for (const auto& e : all) out << to_text(e);
  return kOk;
}

// Appends the flags of a --config file that the command line does not set itself.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (path.empty()) return out;
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read config " + path);
  auto given = [&](const std::string& flag) {
    return std::any_of(out.begin(), out.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  std::vector<std::string> extra;
  std::string line;
  while (std::getline(file, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") + 1 - first);
    std::string key = line;
    std::string value;
    const auto sep = line.find_first_of("= \t");
    if (sep != std::string::npos) {
      key = line.substr(0, sep);
      const auto v = line.find_first_not_of("= \t", sep);
      if (v != std::string::npos) value = line.substr(v);
    }
    if (key.rfind("--", 0) != 0) key = "--" + key;
    if (given(key) || value == "false") continue;
    extra.push_back(key);
    if (!value.empty() && value != "true") extra.push_back(value);
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1, 256));
  sub->add_option("--format", c.format, "csv, md or text");
  sub->add_option("--out", c.out_path, "Write output to this file");
  sub->add_option("--budget", c.budget, "Enumeration node budget (0 = unlimited)");
}

}  // namespace

std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw UsageError("bad range '" + text + "'");
    }
    if (used != s.size()) throw UsageError("bad range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, dots));
  const int hi = to_int(text.substr(dots + 2));
  if (lo > hi) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact matroid enumeration and verification", "matcount"};
  app.require_subcommand(1);
  app.footer("Any subcommand also takes --config FILE: one 'flag = value' per line; '#' starts a comment.");

  auto* tables = app.add_subcommand("tables", "Build and verify the count tables");
  add_common(tables, c);
  tables->add_option("--max-n", c.max_n, "Largest ground set")->check(CLI::Range(0, 8));
  tables->add_flag("--long-run", c.long_run, "Allow n = 8");
  tables->add_option("--n", c.n_range, "Single ground-set size (with --r)");
  tables->add_option("--r", c.r, "Rank of a single entry");
  tables->add_option("--k", c.k, "Independence class of a single entry");
  tables->add_option("--iso", c.iso, "labeled, nonisomorphic or both")
      ->check(CLI::IsMember({"labeled", "nonisomorphic", "both"}));
  tables->add_option("--checkpoint", c.checkpoint, "Resumable checkpoint file for the n = 8 labeled pass");
  tables->add_flag("--progress", c.progress, "Report progress on stderr");

  auto* formulas = app.add_subcommand("formulas", "Check closed forms, relations and inequalities");
  add_common(formulas, c);
  formulas->add_option("--check", c.check, "low-rank, corank, relations, chains, logconvex or all");
  formulas->add_option("--n", c.n_range, "Range such as 2..8");
  formulas->add_flag("--long-run", c.long_run, "Enumerate n = 8 instead of using embedded values");

  auto* paving = app.add_subcommand("paving-bound", "Sizes of the XOR families and the lower bound");
  add_common(paving, c);
  paving->add_option("--n", c.n_range, "Ground-set size 2^m - 1")->required();
  paving->add_option("--rmax", c.rmax, "Largest r");

  auto* plp = app.add_subcommand("plp", "Points-lines-planes scan of simple rank-4 matroids");
  add_common(plp, c);
  plp->add_option("--n", c.n_range, "Range, n <= 7");

  auto* dominance = app.add_subcommand("dominance", "Free-erection dominance scan");
  add_common(dominance, c);
  dominance->add_option("--n", c.n_range, "Range, n <= 6");

  auto* random = app.add_subcommand("random-matroid", "Random matroid by expand / random / refine");
  add_common(random, c);
  random->add_option("--n", c.n_range, "Ground-set size")->required();
  random->add_option("--seed", c.seed, "Seed");
  random->add_option("--policy", c.policy, "geometric or none");
  random->add_option("--superset", c.superset, "uniform-subset or single-element");
  random->add_option("--max-per-level", c.max_per_level, "Cap on injected sets per level")
      ->check(CLI::Range(0, 1 << 20));

  auto* free = app.add_subcommand("free-erect", "Free erection of a matroid file");
  add_common(free, c);
  free->add_option("input", c.input, "Matroid file (default stdin)");

  auto* erect = app.add_subcommand("erections", "All erections of a matroid file");
  add_common(erect, c);
  erect->add_option("input", c.input, "Matroid file (default stdin)");

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kMalformedInput;
  }
  std::vector<const char*> argv{"matcount"};
  for (const auto& a : expanded) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << e.what() << '\n';
    return kMalformedInput;
  }

  std::ostringstream buffer;
  int status = kOk;
  try {
    if (tables->parsed())
      status = cmd_tables(c, buffer, err);
    else if (formulas->parsed())
      status = cmd_formulas(c, buffer, err);
    else if (paving->parsed())
      status = cmd_paving_bound(c, buffer, err);
    else if (plp->parsed())
      status = cmd_plp(c, buffer, err);
    else if (dominance->parsed())
      status = cmd_dominance(c, buffer, err);
    else if (random->parsed())
      status = cmd_random_matroid(c, buffer, err);
    else if (free->parsed())
      status = cmd_free_erect(c, in, buffer, err);
    else if (erect->parsed())
      status = cmd_erections(c, in, buffer, err);
  } catch (const BudgetExceeded& e) {
    err << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const MatroidFormatError& e) {
    err << e.what() << '\n';
    switch (e.code()) {
      case FormatError::duplicate_basis: return kDuplicateBasis;
      case FormatError::wrong_popcount: return kWrongPopcount;
      case FormatError::exchange_failure: return kExchangeFailure;
      default: return kMalformedInput;
    }
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kMalformedInput;
  } catch (const std::invalid_argument& e) {
    // arguments outside a command's domain, including LongRunRequired
    err << e.what() << '\n';
    return kMalformedInput;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kValidationFailure;
  }

  if (c.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) {
      err << "cannot write " << c.out_path << '\n';
      return kMalformedInput;
    }
    file << buffer.str();
  }
  return status;
}

}  // namespace matcount::cli
