#include "constellation/affine.hpp"

#include <algorithm>
#include <sstream>

#include "constellation/error.hpp"
#include "constellation/field.hpp"
#include "constellation/latin.hpp"

namespace constellation {

Line::Line(int order, std::vector<int> points) : order_(order), points_(std::move(points)) {
  if (order_ < 2) throw Error(ErrorCode::MalformedLine, "order must be at least 2");
  if (points_.size() != static_cast<std::size_t>(order_)) {
    throw Error(ErrorCode::MalformedLine, "line has " + std::to_string(points_.size()) +
                                              " points, expected " + std::to_string(order_));
  }
  const int n_points = order_ * order_;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] < 0 || points_[i] >= n_points) {
      throw Error(ErrorCode::MalformedLine, "point " + std::to_string(points_[i]) + " out of range");
    }
    if (i > 0 && points_[i] <= points_[i - 1]) {
      throw Error(ErrorCode::MalformedLine, "points not strictly increasing");
    }
  }
}

Line Line::from_unsorted(int order, std::vector<int> points) {
  std::sort(points.begin(), points.end());
  return Line(order, std::move(points));
}

bool Line::contains(int point) const {
  return std::binary_search(points_.begin(), points_.end(), point);
}

int Line::intersection_size(const Line& other) const {
  int n = 0;
  auto a = points_.begin();
  auto b = other.points_.begin();
  while (a != points_.end() && b != other.points_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++n;
      ++a;
      ++b;
    }
  }
  return n;
}

ParallelClass::ParallelClass(int order, std::vector<Line> lines)
    : order_(order), lines_(std::move(lines)) {
  if (lines_.empty() || lines_.size() > static_cast<std::size_t>(order_)) {
    throw Error(ErrorCode::MalformedClass,
                "class holds " + std::to_string(lines_.size()) + " lines, expected 1.." +
                    std::to_string(order_));
  }
  for (const Line& l : lines_) {
    if (l.order() != order_) throw Error(ErrorCode::MalformedLine, "line order differs from class order");
  }
}

bool ParallelClass::is_foliation() const {
  if (lines_.size() != static_cast<std::size_t>(order_)) return false;
  std::vector<char> seen(static_cast<std::size_t>(order_ * order_), 0);
  for (const Line& l : lines_) {
    for (int p : l.points()) {
      if (seen[p]) return false;
      seen[p] = 1;
    }
  }
  return true;
}

std::vector<Line> ParallelClass::sorted_lines() const {
  std::vector<Line> out = lines_;
  std::sort(out.begin(), out.end());
  return out;
}

AffineConstellation::AffineConstellation(int order, std::vector<std::vector<Line>> classes)
    : order_(order) {
  if (order < 2) throw Error(ErrorCode::MalformedLine, "order must be at least 2");
  for (auto& lines : classes) {
    if (lines.empty()) continue;
    if (lines.size() > static_cast<std::size_t>(order)) {
      throw Error(ErrorCode::MalformedClass, "class holds more than d lines");
    }
    std::sort(lines.begin(), lines.end());
    ParallelClass cls(order, std::move(lines));
    if (cls.size() == static_cast<std::size_t>(order)) {
      if (!cls.is_foliation()) {
        throw Error(ErrorCode::MalformedClass, "class of d lines is not a partition of the points");
      }
      std::vector<Line> kept = cls.lines();
      kept.pop_back();
      cls = ParallelClass(order, std::move(kept));
    }
    classes_.push_back(std::move(cls));
  }
  if (classes_.size() > static_cast<std::size_t>(order + 1)) {
    throw Error(ErrorCode::MalformedClass, "more than d+1 classes");
  }
}

std::size_t AffineConstellation::line_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : classes_) n += c.size();
  return n;
}

std::vector<ParallelClass> AffineConstellation::materialized() const {
  std::vector<ParallelClass> out;
  out.reserve(classes_.size());
  for (const auto& cls : classes_) {
    if (cls.size() + 1 == static_cast<std::size_t>(order_)) {
      try {
        std::vector<Line> lines = cls.lines();
        lines.push_back(complete_parallel_class(order_, cls.lines()));
        out.emplace_back(order_, std::move(lines));
        continue;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotDisjoint) throw;
      }
    }
    out.push_back(cls);
  }
  return out;
}

bool AffineConstellation::operator==(const AffineConstellation& other) const {
  if (order_ != other.order_ || classes_.size() != other.classes_.size()) return false;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].lines() != other.classes_[i].lines()) return false;
  }
  return true;
}

std::string Violation::describe() const {
  std::ostringstream os;
  auto pts = [&] {
    std::ostringstream p;
    for (std::size_t i = 0; i < points.size(); ++i) p << (i ? "," : "") << points[i];
    return p.str();
  };
  switch (kind) {
    case Kind::WithinClass:
      os << "class " << class_a << ": lines " << line_a << " and " << line_b << " share "
         << observed << " point(s), expected " << expected;
      break;
    case Kind::AcrossClasses:
      os << "class " << class_a << " line " << line_a << " and class " << class_b << " line "
         << line_b << " share " << observed << " point(s), expected " << expected;
      break;
    case Kind::PointPair:
      os << "points {" << pts() << "} lie on " << observed << " line(s), expected " << expected;
      break;
    case Kind::Parallel:
      os << "through point " << (points.empty() ? -1 : points[0]) << ", " << observed
         << " line(s) avoid class " << class_a << " line " << line_a << ", expected " << expected;
      break;
    case Kind::NoQuadrangle:
      os << "no four points with no three on a line";
      break;
  }
  return os.str();
}

AffineConstellation make_plane(int q) {
  int p = 0, k = 0;
  if (!prime_power(q, p, k)) {
    throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
  }
  const FieldTable field(p, k);
  std::vector<std::vector<Line>> classes;
  auto point = [q](int x, int y) { return x * q + y; };
  for (int m = 0; m < q; ++m) {
    std::vector<Line> cls;
    for (int b = 0; b < q; ++b) {
      std::vector<int> pts;
      for (int x = 0; x < q; ++x) {
        const auto y = field.add(field.mul(static_cast<FieldTable::Element>(m),
                                           static_cast<FieldTable::Element>(x)),
                                 static_cast<FieldTable::Element>(b));
        pts.push_back(point(x, static_cast<int>(y)));
      }
      cls.push_back(Line::from_unsorted(q, std::move(pts)));
    }
    classes.push_back(std::move(cls));
  }
  std::vector<Line> vertical;
  for (int c = 0; c < q; ++c) {
    std::vector<int> pts;
    for (int y = 0; y < q; ++y) pts.push_back(point(c, y));
    vertical.emplace_back(q, std::move(pts));
  }
  classes.push_back(std::move(vertical));
  return AffineConstellation(q, std::move(classes));
}

namespace {

void check_pairs(const std::vector<ParallelClass>& classes, VerificationReport& report) {
  for (std::size_t a = 0; a < classes.size(); ++a) {
    const auto& la = classes[a].lines();
    for (std::size_t i = 0; i < la.size(); ++i) {
      for (std::size_t j = i + 1; j < la.size(); ++j) {
        const int n = la[i].intersection_size(la[j]);
        if (n != 0) {
          report.add({Violation::Kind::WithinClass, static_cast<int>(a), static_cast<int>(i),
                      static_cast<int>(a), static_cast<int>(j), {}, n, 0});
        }
      }
      for (std::size_t b = a + 1; b < classes.size(); ++b) {
        const auto& lb = classes[b].lines();
        for (std::size_t j = 0; j < lb.size(); ++j) {
          const int n = la[i].intersection_size(lb[j]);
          if (n != 1) {
            report.add({Violation::Kind::AcrossClasses, static_cast<int>(a), static_cast<int>(i),
                        static_cast<int>(b), static_cast<int>(j), {}, n, 1});
          }
        }
      }
    }
  }
}

struct LineRef {
  int cls;
  int idx;
  const Line* line;
};

}  // namespace

VerificationReport verify_constellation(const AffineConstellation& c) {
  VerificationReport report;
  check_pairs(c.classes(), report);
  return report;
}

VerificationReport verify_plane_axioms(const AffineConstellation& c) {
  VerificationReport report;
  const int d = c.order();
  const int n_points = d * d;
  const auto classes = c.materialized();
  std::vector<LineRef> lines;
  for (std::size_t a = 0; a < classes.size(); ++a) {
    for (std::size_t i = 0; i < classes[a].lines().size(); ++i) {
      lines.push_back({static_cast<int>(a), static_cast<int>(i), &classes[a].lines()[i]});
    }
  }

  // (i) every pair of points on exactly one line
  std::vector<int> pair_count(static_cast<std::size_t>(n_points * n_points), 0);
  std::vector<int> pair_line(static_cast<std::size_t>(n_points * n_points), -1);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto& pts = lines[li].line->points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const std::size_t key = static_cast<std::size_t>(pts[i] * n_points + pts[j]);
        ++pair_count[key];
        pair_line[key] = static_cast<int>(li);
      }
    }
  }
  for (int x = 0; x < n_points; ++x) {
    for (int y = x + 1; y < n_points; ++y) {
      const int n = pair_count[static_cast<std::size_t>(x * n_points + y)];
      if (n != 1) report.add({Violation::Kind::PointPair, -1, -1, -1, -1, {x, y}, n, 1});
    }
  }

  // (ii) unique parallel through each point off a line
  std::vector<std::vector<int>> through(static_cast<std::size_t>(n_points));
  for (std::size_t li = 0; li < lines.size(); ++li) {
    for (int p : lines[li].line->points()) through[p].push_back(static_cast<int>(li));
  }
  for (const LineRef& ref : lines) {
    for (int p = 0; p < n_points; ++p) {
      if (ref.line->contains(p)) continue;
      int n = 0;
      for (int other : through[p]) {
        if (lines[other].line->intersection_size(*ref.line) == 0) ++n;
      }
      if (n != 1) report.add({Violation::Kind::Parallel, ref.cls, ref.idx, -1, -1, {p}, n, 1});
    }
  }

  // (iii) four points, no three collinear
  auto collinear = [&](int a, int b, int x) {
    if (a > b) std::swap(a, b);
    for (int li : through[a]) {
      const Line& l = *lines[li].line;
      if (l.contains(b) && l.contains(x)) return true;
    }
    return false;
  };
  bool found = false;
  for (int a = 0; a < n_points && !found; ++a) {
    for (int b = a + 1; b < n_points && !found; ++b) {
      for (int x = b + 1; x < n_points && !found; ++x) {
        if (collinear(a, b, x)) continue;
        for (int y = x + 1; y < n_points && !found; ++y) {
          if (!collinear(a, b, y) && !collinear(a, x, y) && !collinear(b, x, y)) found = true;
        }
      }
    }
  }
  if (!found) report.add({Violation::Kind::NoQuadrangle, -1, -1, -1, -1, {}, 0, 1});
  return report;
}

Line complete_parallel_class(int order, std::span<const Line> lines) {
  if (lines.size() + 1 != static_cast<std::size_t>(order)) {
    throw Error(ErrorCode::WrongCount, "expected " + std::to_string(order - 1) + " lines, got " +
                                           std::to_string(lines.size()));
  }
  std::vector<char> covered(static_cast<std::size_t>(order * order), 0);
  for (const Line& l : lines) {
    if (l.order() != order) throw Error(ErrorCode::MalformedLine, "line order differs");
    for (int p : l.points()) {
      if (covered[p]) throw Error(ErrorCode::NotDisjoint, "lines share point " + std::to_string(p));
      covered[p] = 1;
    }
  }
  std::vector<int> rest;
  for (int p = 0; p < order * order; ++p) {
    if (!covered[p]) rest.push_back(p);
  }
  return Line(order, std::move(rest));
}

ParallelClass complete_foliation_set(const AffineConstellation& c) {
  const int d = c.order();
  const int n_points = d * d;
  const auto classes = c.materialized();
  std::vector<const ParallelClass*> full;
  for (const auto& cls : classes) {
    if (cls.is_foliation()) full.push_back(&cls);
  }
  if (full.size() < static_cast<std::size_t>(d)) {
    throw Error(ErrorCode::NotEnoughFoliations,
                std::to_string(full.size()) + " foliation(s), need " + std::to_string(d));
  }
  if (classes.size() != static_cast<std::size_t>(d)) {
    throw Error(ErrorCode::WrongCount, "expected exactly d classes, got " + std::to_string(classes.size()));
  }
  for (std::size_t a = 0; a < full.size(); ++a) {
    for (std::size_t b = a + 1; b < full.size(); ++b) {
      for (const Line& la : full[a]->lines()) {
        for (const Line& lb : full[b]->lines()) {
          if (la.intersection_size(lb) != 1) {
            throw Error(ErrorCode::ConditionBViolated, "classes " + std::to_string(a) + " and " +
                                                           std::to_string(b) + " violate (b)");
          }
        }
      }
    }
  }

  // line through each point, per foliation
  std::vector<std::vector<const Line*>> through(static_cast<std::size_t>(n_points));
  for (const auto* cls : full) {
    for (const Line& l : cls->lines()) {
      for (int p : l.points()) through[p].push_back(&l);
    }
  }

  std::vector<int> assigned(static_cast<std::size_t>(n_points), -1);
  std::vector<Line> result;
  for (int p = 0; p < n_points; ++p) {
    if (assigned[p] >= 0) continue;
    std::vector<char> hit(static_cast<std::size_t>(n_points), 0);
    for (const Line* l : through[p]) {
      for (int x : l->points()) hit[x] = 1;
    }
    std::vector<int> pts{p};
    for (int x = 0; x < n_points; ++x) {
      if (!hit[x]) pts.push_back(x);
    }
    if (pts.size() != static_cast<std::size_t>(d)) {
      throw Error(ErrorCode::ConditionBViolated, "point " + std::to_string(p) + " leaves " +
                                                     std::to_string(pts.size() - 1) + " uncovered points");
    }
    for (int x : pts) {
      if (assigned[x] >= 0) {
        throw Error(ErrorCode::ConditionBViolated, "implied lines overlap at " + std::to_string(x));
      }
      assigned[x] = static_cast<int>(result.size());
    }
    result.push_back(Line::from_unsorted(d, std::move(pts)));
  }
  for (const Line& l : result) {
    for (const auto* cls : full) {
      for (const Line& m : cls->lines()) {
        if (l.intersection_size(m) != 1) {
          throw Error(ErrorCode::ConditionBViolated, "implied line meets a given line more than once");
        }
      }
    }
  }
  return ParallelClass(d, std::move(result));
}

AffineConstellation sub_constellation(const AffineConstellation& c,
                                      const std::vector<std::vector<int>>& keep) {
  if (keep.size() != c.classes().size()) {
    throw Error(ErrorCode::BadIndex, "keep lists " + std::to_string(keep.size()) + " classes, constellation has " +
                                         std::to_string(c.classes().size()));
  }
  std::vector<std::vector<Line>> classes;
  std::size_t total = 0;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const auto& lines = c.classes()[i].lines();
    std::vector<char> used(lines.size(), 0);
    std::vector<Line> kept;
    for (int idx : keep[i]) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= lines.size() || used[idx]) {
        throw Error(ErrorCode::BadIndex, "class " + std::to_string(i) + ": bad line index " + std::to_string(idx));
      }
      used[idx] = 1;
      kept.push_back(lines[idx]);
    }
    total += kept.size();
    classes.push_back(std::move(kept));
  }
  if (total == 0) throw Error(ErrorCode::BadIndex, "no lines retained");
  return AffineConstellation(c.order(), std::move(classes));
}

AffineConstellation with_class(const AffineConstellation& c, const ParallelClass& extra) {
  if (extra.order() != c.order()) throw Error(ErrorCode::OrderMismatch, "class order differs");
  std::vector<std::vector<Line>> classes;
  for (const auto& cls : c.classes()) classes.push_back(cls.lines());
  classes.push_back(extra.lines());
  return AffineConstellation(c.order(), std::move(classes));
}

Signature signature(const AffineConstellation& c) {
  std::vector<int> sizes;
  for (const auto& cls : c.classes()) sizes.push_back(static_cast<int>(cls.size()));
  return Signature(c.order(), std::move(sizes));
}

const std::string& table1_text() {
  static const std::string text =
      "54 2. 3. 63 11 42\n"
      "1. 53 64 4. 22 31\n"
      "2. 62 51 3. 44 13\n"
      "61 1. 4. 52 33 24\n"
      "32 41 23 14 5. 6.\n"
      "43 34 12 21 6. 5.\n";
  return text;
}

AffineConstellation table1_constellation() {
  constexpr int d = 6;
  const GraecoLatin gl = parse_graeco_latin(table1_text());
  std::vector<Line> rows, cols;
  for (int r = 0; r < d; ++r) {
    std::vector<int> row, col;
    for (int c = 0; c < d; ++c) {
      row.push_back(r * d + c);
      col.push_back(c * d + r);
    }
    rows.emplace_back(d, std::move(row));
    cols.emplace_back(d, std::move(col));
  }
  std::vector<Line> second;
  for (int s = 0; s < d; ++s) {
    std::vector<int> pts;
    for (int cell = 0; cell < d * d; ++cell) {
      if (gl.second.grid()[cell] == s) pts.push_back(cell);
    }
    if (!pts.empty()) second.emplace_back(d, std::move(pts));
  }
  return AffineConstellation(d, {std::move(rows), std::move(cols),
                                 latin_to_foliation(gl.first).lines(), std::move(second)});
}

}  // namespace constellation
