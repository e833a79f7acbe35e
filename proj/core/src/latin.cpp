#include "constellation/latin.hpp"

#include <algorithm>
#include <sstream>

#include "constellation/error.hpp"
#include "constellation/field.hpp"
#include "latin_internal.hpp"

namespace constellation {

bool is_latin(int n, const std::vector<int>& grid) {
  if (n < 1 || grid.size() != static_cast<std::size_t>(n * n)) return false;
  std::vector<char> seen(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c) {
      const int s = grid[static_cast<std::size_t>(r * n + c)];
      if (s < 0 || s >= n || seen[s]) return false;
      seen[s] = 1;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n; ++r) {
      const int s = grid[static_cast<std::size_t>(r * n + c)];
      if (seen[s]) return false;
      seen[s] = 1;
    }
  }
  return true;
}

LatinSquare::LatinSquare(int n, std::vector<int> grid) : n_(n), grid_(std::move(grid)) {
  if (!is_latin(n_, grid_)) throw Error(ErrorCode::NotLatin, "grid is not a Latin square of order " + std::to_string(n));
}

bool LatinSquare::is_reduced() const {
  for (int i = 0; i < n_; ++i) {
    if (at(0, i) != i || at(i, 0) != i) return false;
  }
  return true;
}

PartialSquare::PartialSquare(int n, std::vector<std::optional<int>> grid) : n_(n), grid_(std::move(grid)) {
  if (n_ < 1 || grid_.size() != static_cast<std::size_t>(n_ * n_)) {
    throw Error(ErrorCode::ParseError, "partial square has wrong shape");
  }
  for (const auto& s : grid_) {
    if (s && (*s < 0 || *s >= n_)) throw Error(ErrorCode::ParseError, "symbol out of range");
  }
  for (int i = 0; i < n_; ++i) {
    std::vector<char> row(static_cast<std::size_t>(n_), 0), col(static_cast<std::size_t>(n_), 0);
    for (int j = 0; j < n_; ++j) {
      if (auto s = at(i, j)) {
        if (row[*s]) throw Error(ErrorCode::PartialClash, "symbol repeats in row " + std::to_string(i));
        row[*s] = 1;
      }
      if (auto s = at(j, i)) {
        if (col[*s]) throw Error(ErrorCode::PartialClash, "symbol repeats in column " + std::to_string(i));
        col[*s] = 1;
      }
    }
  }
}

std::size_t PartialSquare::filled() const {
  return static_cast<std::size_t>(std::count_if(grid_.begin(), grid_.end(), [](const auto& s) { return s.has_value(); }));
}

SquareCheck validate_squares(int n, const std::vector<int>& a, const std::vector<int>* b) {
  SquareCheck out;
  out.latin = is_latin(n, a);
  if (b) {
    if (b->size() != a.size()) throw Error(ErrorCode::OrderMismatch, "squares differ in size");
    bool ortho = out.latin && is_latin(n, *b);
    if (ortho) {
      std::vector<char> seen(static_cast<std::size_t>(n * n), 0);
      for (std::size_t i = 0; i < a.size() && ortho; ++i) {
        const std::size_t key = static_cast<std::size_t>(a[i] * n + (*b)[i]);
        if (seen[key]) ortho = false;
        seen[key] = 1;
      }
    }
    out.orthogonal = ortho;
  }
  return out;
}

SquareCheck validate_squares(const LatinSquare& a, const std::optional<LatinSquare>& b) {
  if (b && b->order() != a.order()) throw Error(ErrorCode::OrderMismatch, "squares of different order");
  return validate_squares(a.order(), a.grid(), b ? &b->grid() : nullptr);
}

std::vector<LatinSquare> mols_prime_power(int q) {
  int p = 0, k = 0;
  if (!prime_power(q, p, k)) throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
  const FieldTable f(p, k);
  std::vector<LatinSquare> out;
  for (int a = 1; a < q; ++a) {
    std::vector<int> grid(static_cast<std::size_t>(q * q));
    for (int r = 0; r < q; ++r) {
      for (int c = 0; c < q; ++c) {
        grid[static_cast<std::size_t>(r * q + c)] = static_cast<int>(
            f.add(f.mul(static_cast<FieldTable::Element>(a), static_cast<FieldTable::Element>(r)),
                  static_cast<FieldTable::Element>(c)));
      }
    }
    out.emplace_back(q, std::move(grid));
  }
  return out;
}

namespace {

void require_mols(const std::vector<LatinSquare>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].order() != xs[0].order()) throw Error(ErrorCode::NotOrthogonalInput, "mixed orders");
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[j].order() != xs[i].order() || !*validate_squares(xs[i], xs[j]).orthogonal) {
        throw Error(ErrorCode::NotOrthogonalInput,
                    "squares " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal");
      }
    }
  }
}

}  // namespace

std::vector<LatinSquare> macneish_product(const std::vector<LatinSquare>& as, const std::vector<LatinSquare>& bs) {
  if (as.empty() || bs.empty()) throw Error(ErrorCode::EmptyInput, "empty MOLS list");
  require_mols(as);
  require_mols(bs);
  const int n = as[0].order();
  const int m = bs[0].order();
  const int nm = n * m;
  std::vector<LatinSquare> out;
  for (std::size_t i = 0; i < std::min(as.size(), bs.size()); ++i) {
    std::vector<int> grid(static_cast<std::size_t>(nm * nm));
    for (int r1 = 0; r1 < n; ++r1)
      for (int r2 = 0; r2 < m; ++r2)
        for (int c1 = 0; c1 < n; ++c1)
          for (int c2 = 0; c2 < m; ++c2)
            grid[static_cast<std::size_t>((r1 * m + r2) * nm + c1 * m + c2)] =
                as[i].at(r1, c1) * m + bs[i].at(r2, c2);
    out.emplace_back(nm, std::move(grid));
  }
  return out;
}

std::vector<LatinSquare> macneish_mols(int n) {
  if (n < 2) throw Error(ErrorCode::OrderOutOfRange, "order must be at least 2");
  std::vector<int> factors;
  int rest = n;
  for (int p = 2; p <= rest; ++p) {
    int pk = 1;
    while (rest % p == 0) {
      rest /= p;
      pk *= p;
    }
    if (pk > 1) factors.push_back(pk);
  }
  std::vector<LatinSquare> acc = mols_prime_power(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i) acc = macneish_product(acc, mols_prime_power(factors[i]));
  return acc;
}

ParallelClass latin_to_foliation(const LatinSquare& square) {
  const int n = square.order();
  std::vector<std::vector<int>> pts(static_cast<std::size_t>(n));
  for (int cell = 0; cell < n * n; ++cell) pts[square.grid()[cell]].push_back(cell);
  std::vector<Line> lines;
  for (auto& p : pts) lines.emplace_back(n, std::move(p));
  return ParallelClass(n, std::move(lines));
}

LatinSquare foliation_to_latin(const ParallelClass& foliation) {
  const int n = foliation.order();
  if (!foliation.is_foliation()) throw Error(ErrorCode::NotTransversalFoliation, "not a full foliation");
  std::vector<int> grid(static_cast<std::size_t>(n * n), -1);
  for (std::size_t s = 0; s < foliation.lines().size(); ++s) {
    std::vector<char> rows(static_cast<std::size_t>(n), 0), cols(static_cast<std::size_t>(n), 0);
    for (int p : foliation.lines()[s].points()) {
      if (rows[p / n] || cols[p % n]) {
        throw Error(ErrorCode::NotTransversalFoliation,
                    "line " + std::to_string(s) + " repeats a row or column");
      }
      rows[p / n] = cols[p % n] = 1;
      grid[p] = static_cast<int>(s);
    }
  }
  return LatinSquare(n, std::move(grid));
}

std::vector<std::uint64_t> transversals(const LatinSquare& square) {
  const int n = square.order();
  if (n > 8) throw Error(ErrorCode::OrderOutOfRange, "transversal search supports n <= 8");
  std::vector<std::uint64_t> out;
  // Row-by-row DFS; columns and symbols tracked as bitmasks.
  auto rec = [&](auto&& self, int row, unsigned cols, unsigned syms, std::uint64_t cells) -> void {
    if (row == n) {
      out.push_back(cells);
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (cols & (1u << c)) continue;
      const int s = square.at(row, c);
      if (syms & (1u << s)) continue;
      self(self, row + 1, cols | (1u << c), syms | (1u << s), cells | (std::uint64_t{1} << (row * n + c)));
    }
  };
  rec(rec, 0, 0u, 0u, 0);
  return out;
}

namespace {

// Exact cover of the n^2 cells by disjoint transversals. Branches on the
// uncovered cell with the fewest compatible transversals.
bool cover_cells(const std::vector<std::uint64_t>& trans, const std::vector<std::vector<int>>& by_cell,
                 int n_cells, std::uint64_t covered, std::vector<int>& chosen) {
  const std::uint64_t full = n_cells == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_cells) - 1);
  if (covered == full) return true;
  int best_cell = -1;
  std::size_t best_count = SIZE_MAX;
  for (int cell = 0; cell < n_cells; ++cell) {
    if (covered & (std::uint64_t{1} << cell)) continue;
    std::size_t count = 0;
    for (int t : by_cell[cell]) {
      if ((trans[t] & covered) == 0) ++count;
    }
    if (count < best_count) {
      best_count = count;
      best_cell = cell;
      if (count == 0) return false;
    }
  }
  for (int t : by_cell[best_cell]) {
    if (trans[t] & covered) continue;
    chosen.push_back(t);
    if (cover_cells(trans, by_cell, n_cells, covered | trans[t], chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

namespace detail {

MateOutcome mate_search(const LatinSquare& square) {
  const int n = square.order();
  const int n_cells = n * n;
  MateOutcome out;
  const auto trans = transversals(square);
  out.transversal_count = trans.size();
  if (trans.size() < static_cast<std::size_t>(n)) return out;
  std::vector<std::vector<int>> by_cell(static_cast<std::size_t>(n_cells));
  for (std::size_t t = 0; t < trans.size(); ++t) {
    for (int cell = 0; cell < n_cells; ++cell) {
      if (trans[t] & (std::uint64_t{1} << cell)) by_cell[cell].push_back(static_cast<int>(t));
    }
  }
  std::vector<int> chosen;
  if (!cover_cells(trans, by_cell, n_cells, 0, chosen)) return out;
  std::vector<int> grid(static_cast<std::size_t>(n_cells), -1);
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    for (int cell = 0; cell < n_cells; ++cell) {
      if (trans[chosen[j]] & (std::uint64_t{1} << cell)) grid[cell] = static_cast<int>(j);
    }
  }
  out.mate = LatinSquare(n, std::move(grid));
  return out;
}

}  // namespace detail

std::optional<LatinSquare> find_orthogonal_mate(const LatinSquare& square) { return detail::mate_search(square).mate; }

void enumerate_reduced_latin(int n, const std::function<bool(std::uint64_t, const LatinSquare&)>& visit) {
  if (n < 2 || n > 7) throw Error(ErrorCode::OrderOutOfRange, "order " + std::to_string(n) + " outside 2..7");
  std::vector<int> grid(static_cast<std::size_t>(n * n), -1);
  std::vector<unsigned> row_used(static_cast<std::size_t>(n), 0), col_used(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    grid[i] = i;
    grid[static_cast<std::size_t>(i * n)] = i;
    row_used[0] |= 1u << i;
    col_used[i] |= 1u << i;
    row_used[i] |= 1u << i;
    col_used[0] |= 1u << i;
  }
  std::uint64_t index = 0;
  bool stop = false;
  // cells (r, c) with r, c >= 1 filled in row-major order, symbols ascending
  auto rec = [&](auto&& self, int cell) -> void {
    if (stop) return;
    if (cell == n * n) {
      if (!visit(index++, LatinSquare(n, grid))) stop = true;
      return;
    }
    const int r = cell / n, c = cell % n;
    if (r == 0 || c == 0) {
      self(self, cell + 1);
      return;
    }
    const unsigned blocked = row_used[r] | col_used[c];
    for (int s = 0; s < n && !stop; ++s) {
      if (blocked & (1u << s)) continue;
      grid[cell] = s;
      row_used[r] |= 1u << s;
      col_used[c] |= 1u << s;
      self(self, cell + 1);
      row_used[r] &= ~(1u << s);
      col_used[c] &= ~(1u << s);
    }
    grid[cell] = -1;
  };
  rec(rec, n + 1);
}

std::uint64_t digest_square(std::uint64_t state, const LatinSquare& square) {
  auto step = [&state](unsigned char byte) {
    state ^= byte;
    state *= 0x100000001b3ULL;
  };
  step(static_cast<unsigned char>(square.order()));
  for (int s : square.grid()) step(static_cast<unsigned char>(s));
  return state;
}

GraecoLatin parse_graeco_latin(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> cells;
    std::string cell;
    while (ls >> cell) cells.push_back(cell);
    if (!cells.empty()) rows.push_back(std::move(cells));
  }
  const int n = static_cast<int>(rows.size());
  if (n < 1 || n > 9) throw Error(ErrorCode::ParseError, "expected 1..9 rows, got " + std::to_string(n));
  std::vector<int> first;
  std::vector<std::optional<int>> second;
  for (int r = 0; r < n; ++r) {
    if (rows[r].size() != static_cast<std::size_t>(n)) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(r + 1) + " has " +
                                             std::to_string(rows[r].size()) + " cells, expected " +
                                             std::to_string(n));
    }
    for (const std::string& cell : rows[r]) {
      auto symbol = [&](char ch) {
        const int s = ch - '1';
        if (s < 0 || s >= n) {
          throw Error(ErrorCode::ParseError, "cell '" + cell + "': symbol '" + std::string(1, ch) + "' outside 1.." + std::to_string(n));
        }
        return s;
      };
      if (cell.size() != 2) throw Error(ErrorCode::ParseError, "cell '" + cell + "' is not two characters");
      first.push_back(symbol(cell[0]));
      second.push_back(cell[1] == '.' ? std::nullopt : std::optional<int>(symbol(cell[1])));
    }
  }
  return {LatinSquare(n, std::move(first)), PartialSquare(n, std::move(second))};
}

std::string render_graeco_latin(const LatinSquare& first, const PartialSquare& second) {
  const int n = first.order();
  if (second.order() != n) throw Error(ErrorCode::OrderMismatch, "squares of different order");
  std::string out;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c) out += ' ';
      out += static_cast<char>('1' + first.at(r, c));
      const auto s = second.at(r, c);
      out += s ? static_cast<char>('1' + *s) : '.';
    }
    out += '\n';
  }
  return out;
}

std::string render_graeco_latin(const LatinSquare& first, const LatinSquare& second) {
  std::vector<std::optional<int>> grid(second.grid().begin(), second.grid().end());
  return render_graeco_latin(first, PartialSquare(second.order(), std::move(grid)));
}

LatinSquare parse_latin_text(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> cells;
    std::string cell;
    while (ls >> cell) cells.push_back(cell);
    if (!cells.empty()) rows.push_back(std::move(cells));
  }
  const int n = static_cast<int>(rows.size());
  if (n < 1 || n > 9) throw Error(ErrorCode::ParseError, "expected 1..9 rows");
  std::vector<int> grid;
  for (const auto& row : rows) {
    if (row.size() != static_cast<std::size_t>(n)) throw Error(ErrorCode::ParseError, "ragged rows");
    for (const auto& cell : row) {
      if (cell.empty() || cell.size() > 2) throw Error(ErrorCode::ParseError, "bad cell '" + cell + "'");
      const int s = cell[0] - '1';
      if (s < 0 || s >= n) throw Error(ErrorCode::ParseError, "bad cell '" + cell + "'");
      grid.push_back(s);
    }
  }
  return LatinSquare(n, std::move(grid));
}

}  // namespace constellation
