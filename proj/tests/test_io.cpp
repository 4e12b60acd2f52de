#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "llab/io.hpp"

using namespace llab;

static std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST_CASE("atomic write round trips and leaves no temp file") {
  std::string path = "/tmp/llab_io_test.txt";
  atomic_write(path, "hello\nworld\n");
  CHECK(slurp(path) == "hello\nworld\n");
  CHECK(!std::ifstream(path + ".tmp").good());
  atomic_write(path, "second");
  CHECK(slurp(path) == "second");
  std::remove(path.c_str());
}

TEST_CASE("csv quoting") {
  CsvWriter w;
  w.row({"a", "b,c", "d\"e", "f\ng"});
  CHECK(w.str() == "a,\"b,c\",\"d\"\"e\",\"f\ng\"\n");
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-40, 123456.789, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
    CHECK(std::stod(format_double(-v)) == -v);
  }
}

TEST_CASE("svg determinism and structure") {
  std::string empty = emit_svg({}, 5.0);
  CHECK(empty.find("<rect") != std::string::npos);
  CHECK(empty.find("<polygon") == std::string::npos);

  Excursion e;
  e.n = 42;
  e.S1 = Interval::exact(3.0);
  e.S2 = Interval::exact(3.0);
  e.L = Interval::exact(4.0);
  std::string one = emit_svg({e}, 5.0);
  CHECK(one.find("<polygon") != std::string::npos);
  CHECK(one.find(">42<") != std::string::npos);
  CHECK(one == emit_svg({e}, 5.0));  // byte-identical
}
