#include <algorithm>
#include <iterator>
#include <random>
#include <set>

#include "constellation/affine.hpp"
#include "constellation/error.hpp"
#include "constellation/latin.hpp"
#include "doctest.h"

using namespace constellation;

namespace {

std::size_t materialized_lines(const AffineConstellation& c) {
  std::size_t n = 0;
  for (const auto& cls : c.materialized()) n += cls.size();
  return n;
}

// Violating (class, line, class, line) tuples by direct set intersection.
std::set<std::array<int, 4>> brute_force_violations(const AffineConstellation& c) {
  std::set<std::array<int, 4>> out;
  const auto& cls = c.classes();
  for (int a = 0; a < static_cast<int>(cls.size()); ++a)
    for (int i = 0; i < static_cast<int>(cls[a].size()); ++i)
      for (int b = a; b < static_cast<int>(cls.size()); ++b)
        for (int j = (a == b ? i + 1 : 0); j < static_cast<int>(cls[b].size()); ++j) {
          std::vector<int> common;
          const auto& x = cls[a].lines()[i].points();
          const auto& y = cls[b].lines()[j].points();
          std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
          const std::size_t expected = a == b ? 0 : 1;
          if (common.size() != expected) out.insert({a, i, b, j});
        }
  return out;
}

std::vector<int> kPlaneOrders = {2, 3, 4, 5, 7, 8, 9};

}  // namespace

TEST_CASE("Line invariants") {
  CHECK_NOTHROW(Line(3, {0, 1, 2}));
  CHECK_THROWS_WITH_AS(Line(3, {0, 2, 1}), doctest::Contains("MalformedLine"), Error);
  CHECK_THROWS_AS(Line(3, {0, 1}), Error);
  CHECK_THROWS_AS(Line(3, {0, 1, 9}), Error);
  CHECK_THROWS_AS(Line(3, {1, 1, 2}), Error);
  CHECK(Line::from_unsorted(3, {8, 4, 0}).points() == std::vector<int>{0, 4, 8});
}

TEST_CASE("make_plane") {
  const auto p3 = make_plane(3);
  CHECK(p3.classes().size() == 4);
  CHECK(p3.line_count() == 8);
  CHECK(materialized_lines(p3) == 12);
  CHECK(signature(p3).compact() == "⟨2⁴⟩₃");

  const auto p2 = make_plane(2);
  CHECK(materialized_lines(p2) == 6);
  CHECK(p2.materialized().size() == 3);

  CHECK_THROWS_WITH_AS(make_plane(6), doctest::Contains("NotPrimePower"), Error);
  CHECK_THROWS_AS(make_plane(1), Error);
}

TEST_CASE("planes of prime-power order satisfy everything") {
  for (int q : kPlaneOrders) {
    CAPTURE(q);
    const auto plane = make_plane(q);
    CHECK(verify_constellation(plane).valid);
    CHECK(verify_plane_axioms(plane).valid);
    CHECK(materialized_lines(plane) == static_cast<std::size_t>(q * (q + 1)));
    const auto mats = plane.materialized();
    CHECK(mats.size() == static_cast<std::size_t>(q + 1));
    CHECK(std::all_of(mats.begin(), mats.end(), [](const ParallelClass& c) { return c.is_foliation(); }));
  }
}

TEST_CASE("canonical form stores d-1 lines of a full class") {
  std::vector<Line> rows{Line(2, {0, 1}), Line(2, {2, 3})};
  const AffineConstellation c(2, {rows, {}});
  REQUIRE(c.classes().size() == 1);
  CHECK(c.classes()[0].lines() == std::vector<Line>{Line(2, {0, 1})});
  // d lines that are not a partition cannot be canonicalized
  CHECK_THROWS_WITH_AS(AffineConstellation(2, {{Line(2, {0, 1}), Line(2, {1, 3})}}),
                       doctest::Contains("MalformedClass"), Error);
}

TEST_CASE("verify_constellation") {
  CHECK(verify_constellation(table1_constellation()).valid);
  CHECK(verify_constellation(make_plane(3)).valid);

  SUBCASE("tampered table1 reports the offending pair") {
    const auto t1 = table1_constellation();
    std::vector<std::vector<Line>> classes;
    for (const auto& cls : t1.classes()) classes.push_back(cls.lines());
    // Move one point of the first second-digit line along its row.
    std::vector<int> pts = classes[3][0].points();
    const int victim = pts[0];
    int replacement = victim + 1;
    while (std::find(pts.begin(), pts.end(), replacement) != pts.end()) ++replacement;
    pts[0] = replacement;
    classes[3][0] = Line::from_unsorted(6, pts);
    const AffineConstellation tampered(6, classes);

    const auto report = verify_constellation(tampered);
    CHECK_FALSE(report.valid);
    std::set<std::array<int, 4>> reported;
    for (const auto& v : report.violations) reported.insert({v.class_a, v.line_a, v.class_b, v.line_b});
    CHECK(reported == brute_force_violations(tampered));
    const bool names_tampered_line = std::any_of(report.violations.begin(), report.violations.end(), [](const Violation& v) {
      return (v.class_a == 3 && v.line_a == 0) || (v.class_b == 3 && v.line_b == 0);
    });
    CHECK(names_tampered_line);
  }
}

TEST_CASE("verify_plane_axioms") {
  const auto report = verify_plane_axioms(table1_constellation());
  CHECK_FALSE(report.valid);
  const bool has_pair_failure = std::any_of(report.violations.begin(), report.violations.end(),
                                            [](const Violation& v) { return v.kind == Violation::Kind::PointPair; });
  CHECK(has_pair_failure);
  // 22 materialized lines cover 22 * 15 of the 630 point pairs
  const auto uncovered = std::count_if(report.violations.begin(), report.violations.end(), [](const Violation& v) {
    return v.kind == Violation::Kind::PointPair && v.observed == 0;
  });
  CHECK(uncovered == 630 - 22 * 15);

  // the 4-point plane, written out by hand
  const AffineConstellation order2(2, {{Line(2, {0, 1}), Line(2, {2, 3})},
                                       {Line(2, {0, 2}), Line(2, {1, 3})},
                                       {Line(2, {0, 3}), Line(2, {1, 2})}});
  CHECK(verify_plane_axioms(order2).valid);
  // two foliations only: (i) fails for the diagonal pairs
  const AffineConstellation partial(2, {{Line(2, {0, 1}), Line(2, {2, 3})}, {Line(2, {0, 2}), Line(2, {1, 3})}});
  CHECK_FALSE(verify_plane_axioms(partial).valid);
}

TEST_CASE("complete_parallel_class") {
  const std::vector<Line> rows{Line(3, {0, 1, 2}), Line(3, {3, 4, 5})};
  CHECK(complete_parallel_class(3, rows) == Line(3, {6, 7, 8}));

  const std::vector<Line> clash{Line(3, {0, 1, 2}), Line(3, {2, 4, 6})};
  CHECK_THROWS_WITH_AS(complete_parallel_class(3, clash), doctest::Contains("NotDisjoint"), Error);
  CHECK_THROWS_WITH_AS(complete_parallel_class(3, std::vector<Line>{rows[0]}), doctest::Contains("WrongCount"), Error);

  SUBCASE("table1 third foliation") {
    const auto t1 = table1_constellation();
    const auto& third = t1.classes()[2].lines();
    REQUIRE(third.size() == 5);
    const Line implied = complete_parallel_class(6, third);
    // the first-digit line of the grid text that is not stored
    const auto gl = parse_graeco_latin(table1_text());
    std::vector<Line> missing;
    for (int s = 0; s < 6; ++s) {
      std::vector<int> pts;
      for (int cell = 0; cell < 36; ++cell)
        if (gl.first.grid()[cell] == s) pts.push_back(cell);
      const Line line(6, pts);
      if (std::find(third.begin(), third.end(), line) == third.end()) missing.push_back(line);
    }
    REQUIRE(missing.size() == 1);
    CHECK(implied == missing[0]);
    // digit 4 sits at (0,5), so its line is the lexicographically largest
    CHECK(implied.points().front() == 5);
  }
}

TEST_CASE("implied line meets every transversal of the given lines once") {
  std::mt19937 rng(12345);
  for (int q : {2, 3, 4, 5, 7}) {
    const auto mats = make_plane(q).materialized();
    for (std::size_t ci = 0; ci < mats.size(); ++ci) {
      const auto& lines = mats[ci].lines();
      for (std::size_t drop = 0; drop < lines.size(); ++drop) {
        std::vector<Line> given;
        for (std::size_t i = 0; i < lines.size(); ++i)
          if (i != drop) given.push_back(lines[i]);
        const Line implied = complete_parallel_class(q, given);
        CHECK(implied == lines[drop]);
        for (const Line& g : given) CHECK(implied.intersection_size(g) == 0);

        // lines of other classes meet each given line once, hence the implied one once
        for (std::size_t cj = 0; cj < mats.size(); ++cj) {
          if (cj == ci) continue;
          for (const Line& other : mats[cj].lines()) CHECK(implied.intersection_size(other) == 1);
        }
        // random point sets hitting each given line exactly once
        for (int trial = 0; trial < 20; ++trial) {
          std::vector<int> pts;
          for (const Line& g : given) pts.push_back(g.points()[rng() % q]);
          std::vector<int> rest;
          for (int p = 0; p < q * q; ++p) {
            bool on_given = false;
            for (const Line& g : given) on_given = on_given || g.contains(p);
            if (!on_given) rest.push_back(p);
          }
          pts.push_back(rest[rng() % rest.size()]);
          const Line candidate = Line::from_unsorted(q, pts);
          CHECK(candidate.intersection_size(implied) == 1);
        }
      }
    }
  }
}

TEST_CASE("complete_foliation_set") {
  SUBCASE("recovers any dropped foliation") {
    for (int q : {2, 3, 4, 5, 7}) {
      const auto plane = make_plane(q);
      const auto mats = plane.materialized();
      for (std::size_t drop = 0; drop < mats.size(); ++drop) {
        std::vector<std::vector<int>> keep;
        for (std::size_t i = 0; i < plane.classes().size(); ++i) {
          std::vector<int> idx;
          if (i != drop)
            for (int j = 0; j < q - 1; ++j) idx.push_back(j);
          keep.push_back(idx);
        }
        const auto reduced = sub_constellation(plane, keep);
        const auto recovered = complete_foliation_set(reduced);
        CHECK(recovered.sorted_lines() == mats[drop].sorted_lines());
        CHECK(verify_plane_axioms(with_class(reduced, recovered)).valid);
      }
    }
  }
  SUBCASE("order 2 gives the diagonals") {
    const AffineConstellation c(2, {{Line(2, {0, 1})}, {Line(2, {0, 2})}});
    const auto diag = complete_foliation_set(c);
    CHECK(diag.sorted_lines() == std::vector<Line>{Line(2, {0, 3}), Line(2, {1, 2})});
  }
  SUBCASE("three foliations of order 6 are not enough") {
    CHECK_THROWS_WITH_AS(complete_foliation_set(table1_constellation()), doctest::Contains("NotEnoughFoliations"), Error);
  }
  SUBCASE("condition (b) failures are rejected") {
    // two copies of the row foliation for order 2
    const AffineConstellation c(2, {{Line(2, {0, 1})}, {Line(2, {0, 1})}});
    CHECK_THROWS_WITH_AS(complete_foliation_set(c), doctest::Contains("ConditionBViolated"), Error);
  }
}

TEST_CASE("sub_constellation") {
  const auto p3 = make_plane(3);
  const auto small = sub_constellation(p3, {{0, 1}, {0, 1}, {0}, {}});
  CHECK(signature(small).expanded() == "⟨2,2,1⟩₃");
  CHECK(signature(small).compact() == "⟨2²,1⟩₃");
  CHECK(verify_constellation(small).valid);
  CHECK(sub_constellation(p3, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}) == p3);
  CHECK_THROWS_WITH_AS(sub_constellation(p3, {{}, {}, {}, {}}), doctest::Contains("BadIndex"), Error);
  CHECK_THROWS_AS(sub_constellation(p3, {{0, 2}, {}, {}, {}}), Error);
  CHECK_THROWS_AS(sub_constellation(p3, {{0, 0}, {}, {}, {}}), Error);
  CHECK_THROWS_AS(sub_constellation(p3, {{0}}), Error);

  SUBCASE("random removals preserve validity") {
    std::mt19937 rng(2024);
    for (int q : {2, 3, 4, 5, 7, 8}) {
      const auto plane = make_plane(q);
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<int>> keep;
        for (const auto& cls : plane.classes()) {
          std::vector<int> idx;
          for (int j = 0; j < static_cast<int>(cls.size()); ++j)
            if (rng() % 3 != 0) idx.push_back(j);
          keep.push_back(idx);
        }
        keep[0] = {0};
        CHECK(verify_constellation(sub_constellation(plane, keep)).valid);
      }
    }
  }
}

TEST_CASE("signatures and dominance") {
  CHECK(signature(table1_constellation()).sizes() == std::vector<int>{5, 5, 5, 4});
  CHECK(signature(table1_constellation()).compact() == "⟨5³,4⟩₆");
  const Signature top(6, {5, 5, 5, 4});
  CHECK(dominates(top, Signature(6, {5, 4, 3, 2})));
  CHECK_FALSE(dominates(Signature(6, {5, 5, 3, 1}), Signature(6, {5, 4, 3, 2})));
  CHECK(dominates(Signature(6, {5, 5, 3, 1}), Signature(6, {5, 5})));
  CHECK_FALSE(dominates(Signature(6, {5, 5}), Signature(6, {5, 5, 1})));
  CHECK_THROWS_WITH_AS(dominates(Signature(6, {5}), Signature(5, {4})), doctest::Contains("OrderMismatch"), Error);
  CHECK_THROWS_AS(Signature(6, {6}), Error);
  CHECK_THROWS_AS(Signature(2, {1, 1, 1, 1}), Error);
  CHECK(Signature(6, {1, 3, 5, 5}).expanded(true) == "{5,5,3,1}₆");
  CHECK(Signature(6, {1, 3, 5, 5}).compact(true) == "{5²,3,1}₆");

  SUBCASE("partial order properties") {
    std::mt19937 rng(99);
    auto random_sig = [&] {
      std::vector<int> sizes(1 + rng() % 4);
      for (int& s : sizes) s = 1 + static_cast<int>(rng() % 3);
      return Signature(4, sizes);
    };
    for (int trial = 0; trial < 500; ++trial) {
      const auto a = random_sig(), b = random_sig(), c = random_sig();
      CHECK(dominates(a, a));
      if (dominates(a, b) && dominates(b, a)) CHECK(a == b);
      if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
    }
  }
}

TEST_CASE("table1 grid conditions") {
  const auto gl = parse_graeco_latin(table1_text());
  CHECK(validate_squares(gl.first).latin);
  CHECK(gl.second.filled() == 24);
  std::set<std::pair<int, int>> labels;
  for (int cell = 0; cell < 36; ++cell)
    if (auto s = gl.second.grid()[cell]) labels.insert({gl.first.grid()[cell], *s});
  CHECK(labels.size() == 24);

  const auto t1 = table1_constellation();
  CHECK(t1.classes().size() == 4);
  CHECK(t1.line_count() == 19);
  CHECK(materialized_lines(t1) == 22);
  CHECK(latin_to_foliation(gl.first).sorted_lines() == t1.materialized()[2].sorted_lines());
}
