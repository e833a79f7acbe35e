#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "constellation/signature.hpp"

namespace constellation {

/// A line of an order-d geometry: d distinct points of the d x d grid, stored
/// strictly increasing. Point (r, c) has index r*d + c.
class Line {
 public:
  /// Throws MalformedLine unless points is strictly increasing, of size
  /// order, with every entry below order^2.
  Line(int order, std::vector<int> points);
  /// Sorts first, then validates.
  static Line from_unsorted(int order, std::vector<int> points);

  int order() const noexcept { return order_; }
  const std::vector<int>& points() const noexcept { return points_; }
  bool contains(int point) const;
  int intersection_size(const Line& other) const;

  auto operator<=>(const Line&) const = default;
  bool operator==(const Line&) const = default;

 private:
  int order_;
  std::vector<int> points_;
};

/// An ordered list of 1..d lines of one order. Disjointness is not enforced
/// here; verify_constellation reports it.
class ParallelClass {
 public:
  ParallelClass(int order, std::vector<Line> lines);

  int order() const noexcept { return order_; }
  const std::vector<Line>& lines() const noexcept { return lines_; }
  std::size_t size() const noexcept { return lines_.size(); }
  /// d pairwise disjoint lines covering every point.
  bool is_foliation() const;
  /// The lines as a sorted set, for order-independent comparison.
  std::vector<Line> sorted_lines() const;

 private:
  int order_;
  std::vector<Line> lines_;
};

/// Sets of lines on d^2 points, in canonical form: empty classes are dropped,
/// lines inside a class are sorted, and a full foliation is stored by its d-1
/// smallest lines (the largest is implied).
class AffineConstellation {
 public:
  /// Throws MalformedClass if a class has more than d lines, or d lines that
  /// do not partition the points, or if there are more than d+1 classes.
  AffineConstellation(int order, std::vector<std::vector<Line>> classes);

  int order() const noexcept { return order_; }
  const std::vector<ParallelClass>& classes() const noexcept { return classes_; }
  std::size_t line_count() const noexcept;

  /// Classes with every implied line added back: a class of d-1 pairwise
  /// disjoint lines gains the complement of their union.
  std::vector<ParallelClass> materialized() const;

  bool operator==(const AffineConstellation& other) const;

 private:
  int order_;
  std::vector<ParallelClass> classes_;
};

struct Violation {
  enum class Kind {
    WithinClass,   // condition (a): two lines of a class intersect
    AcrossClasses, // condition (b): lines of different classes do not meet exactly once
    PointPair,     // postulate (i): a point pair is not on exactly one line
    Parallel,      // postulate (ii): not exactly one parallel through a point
    NoQuadrangle,  // postulate (iii): no four points in general position
  };
  Kind kind;
  int class_a = -1;
  int line_a = -1;
  int class_b = -1;
  int line_b = -1;
  std::vector<int> points;
  int observed = 0;
  int expected = 0;

  std::string describe() const;
};

struct VerificationReport {
  bool valid = true;
  std::vector<Violation> violations;

  void add(Violation v) {
    violations.push_back(std::move(v));
    valid = false;
  }
};

/// The affine plane AG(2, q) over GF(q): one class per slope plus the
/// vertical class. Point (x, y) sits at grid row x, column y.
AffineConstellation make_plane(int q);

/// Conditions (a) and (b) over the stored lines only.
VerificationReport verify_constellation(const AffineConstellation& c);

/// Postulates (i)-(iii) over the materialized line set.
VerificationReport verify_plane_axioms(const AffineConstellation& c);

/// The unique line parallel to d-1 pairwise disjoint lines.
Line complete_parallel_class(int order, std::span<const Line> lines);

/// Given d foliations meeting pairwise in single points, builds the
/// (d+1)-st: for a point P, the line L_P is P together with the d-1 points
/// not on any of the d given lines through P.
ParallelClass complete_foliation_set(const AffineConstellation& c);

/// Keeps keep[i] (indices into classes()[i].lines()) for each class.
AffineConstellation sub_constellation(const AffineConstellation& c,
                                      const std::vector<std::vector<int>>& keep);

/// Appends a class, canonicalizing it.
AffineConstellation with_class(const AffineConstellation& c, const ParallelClass& extra);

Signature signature(const AffineConstellation& c);

/// Graeco-Latin text of the maximal order-6 constellation: first digits give
/// a foliation, second digits (where present) four further lines.
const std::string& table1_text();

/// <5^3,4>_6: rows, columns, the first-digit foliation, the four second-digit lines.
AffineConstellation table1_constellation();

}  // namespace constellation
