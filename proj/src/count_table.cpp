#include "matcount/count_table.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace matcount {

std::string iso_name(Iso iso) { return iso == Iso::labeled ? "labeled" : "nonisomorphic"; }

std::string family_name(TableFamily family) {
  switch (family) {
    case TableFamily::all: return "all";
    case TableFamily::loopless: return "loopless";
    case TableFamily::simple: return "simple";
    case TableFamily::paving: return "paving";
  }
  return "?";
}

int family_min_rank(TableFamily family) {
  switch (family) {
    case TableFamily::all: return 0;
    case TableFamily::loopless: return 1;
    default: return 2;
  }
}

int family_k(TableFamily family, int r) {
  switch (family) {
    case TableFamily::all: return 0;
    case TableFamily::loopless: return 1;
    case TableFamily::simple: return 2;
    case TableFamily::paving: return std::max(2, r - 1);
  }
  return 0;
}

std::vector<int> table_k_values(int r) {
  std::vector<int> ks;
  for (int k : {0, 1, 2, r - 1, r})
    if (k >= 0 && k <= r) ks.push_back(k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

std::optional<BigCount> CountTable::find(int n, int r, int k, Iso iso) const {
  auto it = entries.find(TableKey{n, r, k, iso});
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

const BigCount& CountTable::at(int n, int r, int k, Iso iso) const {
  auto it = entries.find(TableKey{n, r, k, iso});
  if (it == entries.end())
    throw std::out_of_range("no table entry n=" + std::to_string(n) + " r=" + std::to_string(r) +
                            " k=" + std::to_string(k) + " " + iso_name(iso));
  return it->second;
}

BigCount CountTable::family_entry(TableFamily family, Iso iso, int n, int r) const {
  if (r > n) return 0;
  return at(n, r, family_k(family, r), iso);
}

BigCount CountTable::family_total(TableFamily family, Iso iso, int n) const {
  BigCount sum = 0;
  for (int r = family_min_rank(family); r <= n; ++r) sum += family_entry(family, iso, n, r);
  return sum;
}

std::uint64_t PublishedTable::entry(int n, int r) const {
  if (n < min_n || n > max_n() || r < min_r || r > n) return 0;
  return rows.at(r - min_r).at(n - min_n);
}

std::uint64_t PublishedTable::total(int n) const { return totals.at(n - min_n); }

std::uint64_t PublishedTable::column_sum(int n) const {
  std::uint64_t sum = 0;
  for (int r = min_r; r <= n; ++r) sum += entry(n, r);
  return sum;
}

const std::vector<PublishedTable>& published_tables() {
  static const std::vector<PublishedTable> tables = {
      {"|M_0^r(S_n)|", TableFamily::all, Iso::labeled, 0, 0,
       {
          {1, 1, 1, 1, 1, 1, 1, 1, 1},
          {0, 1, 3, 7, 15, 31, 63, 127, 255},
          {0, 0, 1, 7, 36, 171, 813, 4012, 20891},
          {0, 0, 0, 1, 15, 171, 2053, 33442, 1022217},
          {0, 0, 0, 0, 1, 31, 813, 33442, 8520812},
          {0, 0, 0, 0, 0, 1, 63, 4012, 1022217},
          {0, 0, 0, 0, 0, 0, 1, 127, 20891},
          {0, 0, 0, 0, 0, 0, 0, 1, 255},
          {0, 0, 0, 0, 0, 0, 0, 0, 1},
       },
       {1, 2, 5, 16, 68, 406, 3807, 75164, 10607540}},
      {"|NI M_0^r(S_n)|", TableFamily::all, Iso::nonisomorphic, 0, 0,
       {
          {1, 1, 1, 1, 1, 1, 1, 1, 1},
          {0, 1, 2, 3, 4, 5, 6, 7, 8},
          {0, 0, 1, 3, 7, 13, 23, 37, 58},
          {0, 0, 0, 1, 4, 13, 38, 108, 325},
          {0, 0, 0, 0, 1, 5, 23, 108, 940},
          {0, 0, 0, 0, 0, 1, 6, 37, 325},
          {0, 0, 0, 0, 0, 0, 1, 7, 58},
          {0, 0, 0, 0, 0, 0, 0, 1, 8},
          {0, 0, 0, 0, 0, 0, 0, 0, 1},
       },
       {1, 2, 4, 8, 17, 38, 98, 306, 1724}},
      {"|M_1^r(S_n)|", TableFamily::loopless, Iso::labeled, 1, 1,
       {
          {1, 1, 1, 1, 1, 1, 1, 1},
          {0, 1, 4, 14, 51, 202, 876, 4139},
          {0, 0, 1, 11, 106, 1232, 22172, 803583},
          {0, 0, 0, 1, 26, 642, 28367, 8274374},
          {0, 0, 0, 0, 1, 57, 3592, 991829},
          {0, 0, 0, 0, 0, 1, 120, 19903},
          {0, 0, 0, 0, 0, 0, 1, 247},
          {0, 0, 0, 0, 0, 0, 0, 1},
       },
       {1, 2, 6, 27, 165, 2135, 55129, 10094077}},
      {"|NI M_1^r(S_n)|", TableFamily::loopless, Iso::nonisomorphic, 1, 1,
       {
          {1, 1, 1, 1, 1, 1, 1, 1},
          {0, 1, 2, 4, 6, 10, 14, 21},
          {0, 0, 1, 3, 9, 25, 70, 217},
          {0, 0, 0, 1, 4, 18, 85, 832},
          {0, 0, 0, 0, 1, 5, 31, 288},
          {0, 0, 0, 0, 0, 1, 6, 51},
          {0, 0, 0, 0, 0, 0, 1, 7},
          {0, 0, 0, 0, 0, 0, 0, 1},
       },
       {1, 2, 4, 9, 21, 60, 208, 1418}},
      {"|M_2^r(S_n)|", TableFamily::simple, Iso::labeled, 2, 2,
       {
          {1, 1, 1, 1, 1, 1, 1},
          {0, 1, 5, 31, 352, 8389, 433038},
          {0, 0, 1, 16, 337, 18700, 7642631},
          {0, 0, 0, 1, 42, 2570, 907647},
          {0, 0, 0, 0, 1, 99, 16865},
          {0, 0, 0, 0, 0, 1, 219},
          {0, 0, 0, 0, 0, 0, 1},
       },
       {1, 2, 7, 49, 733, 29760, 9000402}},
      {"|NI M_2^r(S_n)|", TableFamily::simple, Iso::nonisomorphic, 2, 2,
       {
          {1, 1, 1, 1, 1, 1, 1},
          {0, 1, 2, 4, 9, 23, 68},
          {0, 0, 1, 3, 11, 49, 617},
          {0, 0, 0, 1, 4, 22, 217},
          {0, 0, 0, 0, 1, 5, 40},
          {0, 0, 0, 0, 0, 1, 6},
          {0, 0, 0, 0, 0, 0, 1},
       },
       {1, 2, 4, 9, 26, 101, 950}},
      {"|M_{r-1}^r(S_n)| (paving)", TableFamily::paving, Iso::labeled, 2, 2,
       {
          {1, 1, 1, 1, 1, 1, 1},
          {0, 1, 5, 31, 352, 8389, 433038},
          {0, 0, 1, 6, 82, 6149, 4464328},
          {0, 0, 0, 1, 7, 239, 239173},
          {0, 0, 0, 0, 1, 8, 772},
          {0, 0, 0, 0, 0, 1, 9},
          {0, 0, 0, 0, 0, 0, 1},
       },
       {1, 2, 7, 39, 443, 14787, 5137322}},
      {"|NI M_{r-1}^r(S_n)| (paving)", TableFamily::paving, Iso::nonisomorphic, 2, 2,
       {
          {1, 1, 1, 1, 1, 1, 1},
          {0, 1, 2, 4, 9, 23, 68},
          {0, 0, 1, 2, 5, 18, 322},
          {0, 0, 0, 1, 2, 5, 39},
          {0, 0, 0, 0, 1, 2, 6},
          {0, 0, 0, 0, 0, 1, 2},
          {0, 0, 0, 0, 0, 0, 1},
       },
       {1, 2, 4, 8, 18, 50, 439}},
  };
  return tables;
}

std::optional<std::uint64_t> published_entry(const TableKey& key) {
  for (const auto& pub : published_tables()) {
    if (pub.iso != key.iso || key.r < pub.min_r || key.n < pub.min_n || key.n > pub.max_n()) continue;
    if (family_k(pub.family, key.r) != key.k) continue;
    return pub.entry(key.n, key.r);
  }
  return std::nullopt;
}

std::vector<TotalTypo> published_total_typos() {
  std::vector<TotalTypo> out;
  for (const auto& pub : published_tables())
    for (int n = pub.min_n; n <= pub.max_n(); ++n)
      if (pub.total(n) != pub.column_sum(n)) out.push_back({pub.title, n, pub.total(n), pub.column_sum(n)});
  return out;
}

std::vector<Mismatch> compare_with_published(const CountTable& table) {
  std::vector<Mismatch> out;
  for (const auto& pub : published_tables()) {
    const std::string label = family_name(pub.family) + " " + iso_name(pub.iso);
    for (int n = pub.min_n; n <= std::min(pub.max_n(), table.max_n); ++n) {
      for (int r = pub.min_r; r <= n; ++r) {
        BigCount actual = table.family_entry(pub.family, pub.iso, n, r);
        if (actual != pub.entry(n, r))
          out.push_back({label + " n=" + std::to_string(n) + " r=" + std::to_string(r), pub.entry(n, r), actual});
      }
      BigCount actual = table.family_total(pub.family, pub.iso, n);
      if (actual != pub.column_sum(n))
        out.push_back({label + " n=" + std::to_string(n) + " total", pub.column_sum(n), actual});
    }
  }
  return out;
}

CountTable build_tables(int max_n, const TableOptions& options) {
  if (max_n < 0 || max_n > 8) throw std::invalid_argument("tables need 0 <= max_n <= 8");
  if (max_n == 8 && !options.long_run)
    throw LongRunRequired("n = 8 enumeration requires the long-run flag");
  CountTable table;
  table.max_n = max_n;
  for (int n = 0; n <= max_n; ++n) {
    EnumerationOptions eo;
    eo.workers = options.workers;
    eo.node_budget = options.node_budget;
    if (n == 8) eo.checkpoint_path = options.checkpoint_path;
    if (options.progress) {
      eo.progress = [&, n](const Progress& p) {
        options.progress("n=" + std::to_string(n) + " unit " + std::to_string(p.units_done) + "/" +
                         std::to_string(p.units_total) + " nodes " + std::to_string(p.nodes));
      };
    }
    const RankClassCounts labeled = count_all_labeled(n, eo);
    eo.checkpoint_path.clear();
    const auto classes = iso_classes(n, eo);
    for (int r = 0; r <= n; ++r) {
      for (int k : table_k_values(r)) {
        table.entries[TableKey{n, r, k, Iso::labeled}] = labeled[r][k];
        std::uint64_t iso = 0;
        for (const auto& c : classes[r]) iso += c.k_level >= k ? 1 : 0;
        table.entries[TableKey{n, r, k, Iso::nonisomorphic}] = iso;
      }
    }
    if (options.progress) options.progress("n=" + std::to_string(n) + " done");
  }
  return table;
}

std::string to_csv(const CountTable& table) {
  std::ostringstream out;
  out << "n,r,k,iso,count\n";
  for (const auto& [key, value] : table.entries)
    out << key.n << ',' << key.r << ',' << key.k << ',' << iso_name(key.iso) << ',' << value << '\n';
  return out.str();
}

namespace {

struct Grid {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<Grid> grids(const CountTable& table) {
  std::vector<Grid> out;
  for (const auto& pub : published_tables()) {
    Grid g;
    g.title = pub.title;
    g.header.push_back("r \\ n");
    const int lo = pub.min_n;
    const int hi = table.max_n;
    for (int n = lo; n <= hi; ++n) g.header.push_back(std::to_string(n));
    for (int r = pub.min_r; r <= hi; ++r) {
      std::vector<std::string> row{std::to_string(r)};
      for (int n = lo; n <= hi; ++n)
        row.push_back(r > n ? "" : to_decimal(table.family_entry(pub.family, pub.iso, n, r)));
      g.rows.push_back(std::move(row));
    }
    std::vector<std::string> total{"Total"};
    for (int n = lo; n <= hi; ++n) total.push_back(to_decimal(table.family_total(pub.family, pub.iso, n)));
    g.rows.push_back(std::move(total));
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

std::string to_markdown(const CountTable& table) {
  std::ostringstream out;
  bool first = true;
  for (const auto& g : grids(table)) {
    if (!first) out << '\n';
    first = false;
    out << "### " << g.title << "\n\n|";
    for (const auto& h : g.header) out << ' ' << h << " |";
    out << "\n|";
    for (std::size_t i = 0; i < g.header.size(); ++i) out << (i == 0 ? "---|" : "---:|");
    out << '\n';
    for (const auto& row : g.rows) {
      out << '|';
      for (const auto& cell : row) out << ' ' << cell << " |";
      out << '\n';
    }
  }
  return out.str();
}

std::string to_text(const CountTable& table) {
  std::ostringstream out;
  bool first = true;
  for (const auto& g : grids(table)) {
    if (!first) out << '\n';
    first = false;
    std::vector<std::size_t> width(g.header.size(), 0);
    for (std::size_t i = 0; i < g.header.size(); ++i) width[i] = g.header[i].size();
    for (const auto& row : g.rows)
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    out << g.title << '\n';
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i == 0)
          out << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
        else
          out << "  " << std::right << std::setw(static_cast<int>(width[i])) << cells[i];
      }
      out << '\n';
    };
    line(g.header);
    for (const auto& row : g.rows) line(row);
  }
  return out.str();
}

bool CrossValidationReport::all_hold() const { return failures() == 0; }

std::size_t CrossValidationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const IdentityCheck& c) { return !c.holds; }));
}

CrossValidationReport cross_validate(const CountTable& table) {
  CrossValidationReport report;
  auto add = [&](std::string name, int n, int r, BigCount lhs, BigCount rhs) {
    const bool holds = lhs == rhs;
    report.checks.push_back({std::move(name), n, r, std::move(lhs), std::move(rhs), holds});
  };
  const auto L = Iso::labeled;
  const auto N = Iso::nonisomorphic;
  for (int n = 0; n <= table.max_n; ++n) {
    add("M0^0 = 1", n, 0, table.at(n, 0, 0, L), 1);
    add("NI M0^0 = 1", n, 0, table.at(n, 0, 0, N), 1);
    if (n >= 1) {
      add("M1^1 = 1", n, 1, table.at(n, 1, 1, L), 1);
      add("NI M1^1 = 1", n, 1, table.at(n, 1, 1, N), 1);
    }
    if (n >= 2) {
      add("M2^n = 1", n, n, table.at(n, n, 2, L), 1);
      add("NI M2^n = 1", n, n, table.at(n, n, 2, N), 1);
    }
    for (int r = 1; r <= n; ++r) {
      BigCount binom_sum = 0;
      BigCount iso_sum = 0;
      for (int i = r; i <= n; ++i) {
        binom_sum += binomial(n, i) * table.at(i, r, 1, L);
        iso_sum += table.at(i, r, 1, N);
      }
      add("binomial", n, r, table.at(n, r, 0, L), binom_sum);
      add("isomorphism-sum", n, r, table.at(n, r, 0, N), iso_sum);
      if (r >= 2) {
        BigCount stirling_sum = 0;
        for (int i = r; i <= n; ++i) stirling_sum += stirling2(n, i) * table.at(i, r, 2, L);
        add("stirling", n, r, table.at(n, r, 1, L), stirling_sum);
      }
    }
  }
  return report;
}

}  // namespace matcount
