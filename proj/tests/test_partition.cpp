#include <doctest.h>

#include <algorithm>
#include <set>

#include "gmekit/errors.hpp"
#include "gmekit/partition.hpp"
#include "oracles.hpp"

using namespace gmekit;

namespace {

Partition P(const char* text, std::size_t m = 5) { return parse_partition(text, default_labels(m)); }

std::set<Partition> oracle_xi(const Partition& x, const Partition& y, bool inner) {
  const auto ys = y.support();
  std::set<Partition> out;
  for (const auto& g : oracle::reachable(x, true, true, inner)) {
    if (g.size() < 2) continue;
    const auto s = g.support();
    std::size_t shared = 0;
    for (int i : ys) shared += std::binary_search(s.begin(), s.end(), i);
    if (shared < ys.size()) out.insert(g);
  }
  return out;
}

}  // namespace

TEST_CASE("partition canonical form and errors") {
  const Partition p({{3, 1}, {0}});
  CHECK(p.blocks() == std::vector<Block>{{0}, {1, 3}});
  CHECK(p.support() == std::vector<int>{0, 1, 3});
  CHECK(p.block_of(3) == 1);
  CHECK(p.block_of(2) == -1);
  CHECK_FALSE(p.covers(4));
  CHECK_THROWS_AS(Partition({{0}, {}}), InvalidArgument);
  CHECK_THROWS_AS(Partition({{0, 1}, {1}}), InvalidArgument);
  CHECK_THROWS_AS(Partition(std::vector<Block>{{-1}}), InvalidArgument);
}

TEST_CASE("parse and format") {
  const auto labels = default_labels(4);
  CHECK(format_partition(parse_partition("CD|AB", labels), labels) == "AB|CD");
  CHECK(format_partition(parse_partition("BA | D", labels), labels) == "AB|D");
  CHECK_THROWS_AS(parse_partition("AB|X", labels), ParseError);
  CHECK_THROWS_AS(parse_partition("AB|A", labels), ParseError);
  CHECK_THROWS_AS(parse_partition("AB||C", labels), ParseError);
  const std::vector<std::string> multi = {"Q1", "Q2", "Q10"};
  CHECK(parse_partition("Q1Q10|Q2", multi) == Partition({{0, 2}, {1}}));
}

TEST_CASE("enumeration counts") {
  const int bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (int m = 1; m <= 6; ++m) {
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    const auto ps = all_partitions(all);
    CHECK(ps.size() == static_cast<std::size_t>(bell[m]));
    CHECK(std::set<Partition>(ps.begin(), ps.end()).size() == ps.size());
  }
  for (std::size_t m = 2; m <= 6; ++m) {
    const auto bs = all_bipartitions(m);
    CHECK(bs.size() == (std::size_t{1} << (m - 1)) - 1);
    for (const auto& b : bs) {
      CHECK(b.size() == 2);
      CHECK(b.covers(m));
    }
  }
  CHECK_THROWS_AS(all_bipartitions(1), InvalidShape);
  CHECK_THROWS_AS(all_partitions({0, 1, 2, 3, 4, 5, 6}), SizeLimitError);
  CHECK_THROWS_AS(all_partitions({0, 0}), InvalidArgument);
}

TEST_CASE("is_coarser agrees with breadth-first search over moves") {
  const auto all = oracle::every_partition(4);
  struct Mode {
    CoarsenMode mode;
    bool discard, combine, inner;
  };
  const Mode modes[] = {{CoarsenMode::discard_only(true), true, false, true},
                        {CoarsenMode::discard_only(false), true, false, false},
                        {CoarsenMode::combine_only(), false, true, true},
                        {CoarsenMode::any(true), true, true, true},
                        {CoarsenMode::any(false), true, true, false}};
  for (const auto& md : modes) {
    std::size_t mismatches = 0;
    for (const auto& x : all) {
      const auto reach = oracle::reachable(x, md.discard, md.combine, md.inner);
      for (const auto& y : all) mismatches += is_coarser(x, y, md.mode) != reach.contains(y);
      std::set<Partition> expected;
      for (const auto& y : reach)
        if (y.size() >= 2) expected.insert(y);
      const auto got = coarsenings(x, md.mode, 2);
      CHECK(std::set<Partition>(got.begin(), got.end()) == expected);
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("coarsening chains from the five-party example") {
  const auto a = CoarsenMode::discard_only(), b = CoarsenMode::combine_only();
  CHECK(is_coarser(P("A|B|C|D|E"), P("A|B|C|DE"), b));
  CHECK(is_coarser(P("A|B|C|DE"), P("A|B|C|D"), a));
  CHECK_FALSE(is_coarser(P("A|B|C|DE"), P("A|B|C|D"), CoarsenMode::discard_only(false)));
  CHECK(is_coarser(P("A|B|C|D"), P("AB|C|D"), b));
  CHECK(is_coarser(P("AB|C|D"), P("AB|CD"), b));
  CHECK(is_coarser(P("A|B|C|D|E"), P("AB|CD"), CoarsenMode::any()));
  CHECK(is_coarser(P("A|B|C|DE"), P("A|B|DE"), a));
  CHECK(is_coarser(P("A|B|C|D"), P("AC|B|D"), b));
  CHECK(is_coarser(P("AC|B|D"), P("AC|BD"), b));
  CHECK_FALSE(is_coarser(P("AB|CD"), P("A|B|CD"), CoarsenMode::any()));
  CHECK_FALSE(is_coarser(P("A|B"), P("A|B"), CoarsenMode::any()));
}

TEST_CASE("xi_set matches its definition") {
  for (bool inner : {true, false}) {
    const std::pair<const char*, const char*> pairs[] = {
        {"A|B|CD|E", "A|B"}, {"A|B|C|D", "AB|C"}, {"A|B|C|D", "AB|CD"}, {"A|B|C", "A|B|C"}, {"AB|C|D", "AB|D"}};
    for (const auto& [xs, ys] : pairs) {
      const Partition x = P(xs), y = P(ys);
      const auto got = xi_set(x, y, inner);
      CHECK(std::set<Partition>(got.begin(), got.end()) == oracle_xi(x, y, inner));
    }
  }
  CHECK(xi_set(P("A|B", 2), P("A|B", 2)).empty());
  CHECK_THROWS_AS(xi_set(P("AB|C"), P("A|B|C")), RelationError);
}

TEST_CASE("xi_set of the example contains the listed elements and the documented extras") {
  std::set<std::string> got;
  const auto labels = default_labels(5);
  for (const auto& p : xi_set(P("A|B|CD|E"), P("A|B"))) got.insert(format_partition(p, labels));
  for (const char* s : {"CD|E", "A|CD|E", "B|CD|E", "A|CD", "A|E", "B|E", "A|C", "A|D", "B|C", "B|D"})
    CHECK(got.contains(s));
  for (const char* s : {"C|E", "D|E", "B|CD"}) CHECK(got.contains(s));
  CHECK_FALSE(got.contains("A|B"));
  CHECK_FALSE(got.contains("A|B|E"));
}

TEST_CASE("xi_set is invariant under relabeling") {
  const std::vector<int> perm = {3, 0, 4, 1, 2};
  auto relabel = [&](const Partition& p) {
    std::vector<Block> bs;
    for (const auto& b : p.blocks()) {
      Block nb;
      for (int i : b) nb.push_back(perm[static_cast<std::size_t>(i)]);
      bs.push_back(nb);
    }
    return Partition(bs);
  };
  const Partition x = P("A|B|CD|E"), y = P("A|B");
  std::set<Partition> mapped;
  for (const auto& p : xi_set(x, y)) mapped.insert(relabel(p));
  const auto direct = xi_set(relabel(x), relabel(y));
  CHECK(mapped == std::set<Partition>(direct.begin(), direct.end()));
}
