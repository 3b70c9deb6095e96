#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "rotlink/alist.hpp"
#include "rotlink/ldpc.hpp"
#include "test_support.hpp"

using namespace rotlink;

TEST_CASE("alist: golden small file") {
  std::istringstream in(
      "4 2\n"
      "1 2\n"
      "1 1 1 1\n"
      "2 2\n"
      "1\n"
      "2\n"
      "1\n"
      "2\n"
      "1 3\n"
      "2 4\n");
  auto h = read_alist(in);
  CHECK(h.n_cols == 4);
  CHECK(h.n_rows == 2);
  CHECK(h.rows == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
}

TEST_CASE("alist: zero padding in the index lists is accepted") {
  std::istringstream in(
      "3 2\n"
      "1 2\n"
      "1 1 1\n"
      "2 1\n"
      "1\n"
      "1\n"
      "2\n"
      "1 2\n"
      "3 0\n");
  auto h = read_alist(in);
  CHECK(h.rows == std::vector<std::vector<int>>{{0, 1}, {2}});
}

TEST_CASE("alist: write then read returns the same matrix") {
  auto check_round_trip = [](const ParityCheckMatrix& h) {
    std::ostringstream out;
    write_alist(h, out);
    std::istringstream in(out.str());
    auto back = read_alist(in);
    CHECK(back.n_cols == h.n_cols);
    CHECK(back.n_rows == h.n_rows);
    CHECK(back.rows == h.rows);
    CHECK(back.cols == h.cols);
  };
  check_round_trip(peg_construct(24, 12, 3, 3));
  check_round_trip(testsup::random_full_rank(10, 5, 42));  // irregular degrees
  check_round_trip(testsup::big_code().h);
}

TEST_CASE("alist: writer emits no padding zeros") {
  auto h = testsup::random_full_rank(10, 5, 42);
  std::ostringstream out;
  write_alist(h, out);
  std::istringstream scan(out.str());
  std::string tok;
  scan >> tok >> tok >> tok >> tok;  // past "N M" and the max degrees
  while (scan >> tok) CHECK(tok != "0");
}

TEST_CASE("alist: file round trip") {
  auto h = peg_construct(16, 8, 3, 9);
  std::string path = "alist_round_trip_tmp.alist";
  write_alist_file(h, path);
  auto back = read_alist_file(path);
  CHECK(back.rows == h.rows);
  std::remove(path.c_str());
}

TEST_CASE("alist: malformed inputs name the offending line") {
  auto parse = [](const char* text) {
    std::istringstream in(text);
    return read_alist(in);
  };

  // Header with a non-positive dimension.
  CHECK_THROWS_WITH_AS(parse("0 2\n"), doctest::Contains("line 1"), std::runtime_error);
  // Non-numeric token.
  CHECK_THROWS_WITH_AS(parse("4 x\n"), doctest::Contains("non-numeric"), std::runtime_error);
  // Truncated input.
  CHECK_THROWS_AS(parse("4 2\n1 2\n1 1 1 1\n"), std::runtime_error);
  // Check index out of range (matrix has 2 rows, column list says 5).
  CHECK_THROWS_WITH_AS(
      parse("4 2\n1 2\n1 1 1 1\n2 2\n5\n2\n1\n2\n1 3\n2 4\n"),
      doctest::Contains("out of range"), std::runtime_error);
  // Degree line disagrees with the list length.
  CHECK_THROWS_WITH_AS(
      parse("4 2\n1 2\n1 1 1 1\n2 2\n1 2\n2\n1\n2\n1 3\n2 4\n"),
      doctest::Contains("degree"), std::runtime_error);
  // Column section inconsistent with the row section.
  CHECK_THROWS_WITH_AS(
      parse("4 2\n1 2\n1 1 1 1\n2 2\n2\n1\n1\n2\n1 3\n2 4\n"),
      doctest::Contains("disagree"), std::runtime_error);
}
