#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace fs = std::filesystem;
using matcount::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream f(fs::path(MATCOUNT_GOLDEN_DIR) / name);
  REQUIRE(f);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string gpath(const std::string& name) { return (fs::path(MATCOUNT_GOLDEN_DIR) / name).string(); }

void check_golden(const std::vector<std::string>& args, const std::string& name) {
  const auto r = call(args);
  CHECK(r.code == 0);
  CHECK(r.out == golden(name));
}

}  // namespace

TEST_CASE("golden outputs") {
  check_golden({"tables", "--max-n", "5", "--format", "csv"}, "tables_5.csv");
  check_golden({"tables", "--max-n", "5", "--format", "md"}, "tables_5.md");
  check_golden({"tables", "--max-n", "5"}, "tables_5.txt");
  check_golden({"formulas", "--n", "2..6", "--format", "csv"}, "formulas_2_6.csv");
  check_golden({"paving-bound", "--n", "7"}, "paving_7.csv");
  check_golden({"paving-bound", "--n", "15", "--rmax", "8"}, "paving_15.csv");
  check_golden({"plp", "--n", "4..5", "--format", "csv"}, "plp_4_5.csv");
  check_golden({"dominance", "--n", "3..5", "--format", "csv"}, "dominance_3_5.csv");
  check_golden({"random-matroid", "--n", "5", "--seed", "42"}, "random_5_42.txt");
  check_golden({"free-erect", gpath("fano.txt")}, "free_fano.txt");
  check_golden({"free-erect", gpath("u24.txt")}, "free_u24.txt");
  check_golden({"erections", gpath("u24.txt")}, "erections_u24.txt");
}

TEST_CASE("the printed total typo is reported, not hidden") {
  const auto r = call({"tables", "--max-n", "5", "--format", "csv"});
  CHECK(r.err.find("165") != std::string::npos);
  CHECK(r.err.find("185") != std::string::npos);
  CHECK(call({"tables", "--max-n", "4"}).err.empty());
}

TEST_CASE("single entries") {
  CHECK(call({"tables", "--n", "6", "--r", "3", "--k", "2", "--iso", "labeled"}).out.find("352") != std::string::npos);
  const auto both = call({"tables", "--n", "5", "--r", "2", "--k", "1"});
  CHECK(both.code == 0);
  CHECK(both.out.find("51") != std::string::npos);
}

TEST_CASE("stdin input") {
  const auto r = call({"free-erect"}, golden("fano.txt"));
  CHECK(r.code == 0);
  CHECK(r.out == "trivial\n");
}

TEST_CASE("exit codes") {
  CHECK(call({"free-erect"}, "garbage\n").code == 64);
  CHECK(call({"free-erect"}, "matroid 1\nn 3 r 2\nbases 2\n1 2\n1 2\n").code == 65);
  CHECK(call({"free-erect"}, "matroid 1\nn 3 r 2\nbases 2\n1 2\n1 2 3\n").code == 66);
  CHECK(call({"free-erect"}, "matroid 1\nn 4 r 2\nbases 2\n1 2\n3 4\n").code == 67);
  CHECK(call({"tables", "--max-n", "6", "--budget", "100"}).code == 2);
  CHECK(call({"tables", "--max-n", "8"}).code == 64);
  CHECK(call({"nonsense"}).code == 64);
  CHECK(call({"paving-bound", "--n", "8"}).code == 64);
  CHECK(call({"free-erect", "/nonexistent/file"}).code == 64);
  CHECK(call({"plp", "--n", "8"}).code == 64);
}

TEST_CASE("config file and --out") {
  const fs::path dir = fs::temp_directory_path() / "matcount_cli_test";
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# small run\nmax-n = 4\nformat = csv\n";
  }
  const auto a = call({"tables", "--config", cfg.string()});
  const auto b = call({"tables", "--max-n", "4", "--format", "csv"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  // the command line wins over the file
  const auto c = call({"tables", "--config", cfg.string(), "--max-n", "3"});
  CHECK(c.out == call({"tables", "--max-n", "3", "--format", "csv"}).out);
  const fs::path out = dir / "t.csv";
  CHECK(call({"tables", "--max-n", "4", "--format", "csv", "--out", out.string()}).code == 0);
  std::ifstream f(out);
  std::ostringstream s;
  s << f.rdbuf();
  CHECK(s.str() == b.out);
  CHECK(call({"tables", "--config", (dir / "missing.cfg").string()}).code == 64);
  fs::remove_all(dir);
}

TEST_CASE("ranges") {
  CHECK(matcount::cli::parse_range("7") == std::pair{7, 7});
  CHECK(matcount::cli::parse_range("2..8") == std::pair{2, 8});
  CHECK_THROWS(matcount::cli::parse_range("8..2"));
  CHECK_THROWS(matcount::cli::parse_range("x"));
}
