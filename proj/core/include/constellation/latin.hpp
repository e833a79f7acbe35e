#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "constellation/affine.hpp"

namespace constellation {

/// n x n grid of symbols 0..n-1, each row and column a permutation.
class LatinSquare {
 public:
  /// Throws NotLatin if the grid is not a Latin square of order n.
  LatinSquare(int n, std::vector<int> grid);

  int order() const noexcept { return n_; }
  int at(int r, int c) const { return grid_[static_cast<std::size_t>(r * n_ + c)]; }
  const std::vector<int>& grid() const noexcept { return grid_; }
  bool is_reduced() const;

  bool operator==(const LatinSquare&) const = default;

 private:
  int n_;
  std::vector<int> grid_;
};

/// n x n grid with optional symbols; no symbol repeats in a row or column.
class PartialSquare {
 public:
  /// Throws PartialClash on a repeat, ParseError on an out-of-range symbol.
  PartialSquare(int n, std::vector<std::optional<int>> grid);

  int order() const noexcept { return n_; }
  std::optional<int> at(int r, int c) const { return grid_[static_cast<std::size_t>(r * n_ + c)]; }
  const std::vector<std::optional<int>>& grid() const noexcept { return grid_; }
  std::size_t filled() const;

  bool operator==(const PartialSquare&) const = default;

 private:
  int n_;
  std::vector<std::optional<int>> grid_;
};

/// True iff every row and column of the n x n grid is a permutation of 0..n-1.
bool is_latin(int n, const std::vector<int>& grid);

struct SquareCheck {
  bool latin = false;
  std::optional<bool> orthogonal;
};

/// Orthogonality: the n^2 ordered pairs (a[r][c], b[r][c]) are distinct.
SquareCheck validate_squares(int n, const std::vector<int>& a,
                             const std::vector<int>* b = nullptr);
SquareCheck validate_squares(const LatinSquare& a, const std::optional<LatinSquare>& b = std::nullopt);

/// L_a[r][c] = a*r + c over GF(q) for every nonzero a, in element order.
std::vector<LatinSquare> mols_prime_power(int q);

/// Direct products As[i] x Bs[i]; symbol (x, y) is encoded as x*m + y.
std::vector<LatinSquare> macneish_product(const std::vector<LatinSquare>& as,
                                          const std::vector<LatinSquare>& bs);

/// MOLS of order n from its prime-power factorization, as many as the
/// smallest factor allows (q_min - 1).
std::vector<LatinSquare> macneish_mols(int n);

/// Line s holds the cells carrying symbol s.
ParallelClass latin_to_foliation(const LatinSquare& square);
/// Inverse of latin_to_foliation: line i of the class becomes symbol i.
LatinSquare foliation_to_latin(const ParallelClass& foliation);

/// Every transversal as a bitmask over cells r*n + c (n <= 8).
std::vector<std::uint64_t> transversals(const LatinSquare& square);

/// An orthogonal mate via transversal enumeration and exact cover.
std::optional<LatinSquare> find_orthogonal_mate(const LatinSquare& square);

/// Calls visit(index, square) for every reduced Latin square of order n in
/// lexicographic grid order until visit returns false. 2 <= n <= 7.
void enumerate_reduced_latin(int n, const std::function<bool(std::uint64_t, const LatinSquare&)>& visit);

struct MateCertificate {
  int order = 0;
  std::uint64_t squares_examined = 0;
  std::uint64_t mates_found = 0;
  /// transversal count -> number of squares with that many transversals
  std::map<std::uint64_t, std::uint64_t> transversal_histogram;
  std::uint64_t transversals_total = 0;
  double elapsed_seconds = 0.0;
  std::uint64_t digest = 0;
  bool complete = false;

  bool asserts_nonexistence() const { return complete && mates_found == 0; }
};

struct CertifyOptions {
  int workers = 1;
  /// Checkpoint path; empty disables checkpointing. An existing file resumes.
  std::string checkpoint;
  /// Squares per work batch; checkpoints are written between batches.
  std::uint64_t batch = 256;
  /// Stop after this many squares (0 = no limit); leaves complete = false.
  std::uint64_t limit = 0;
};

/// Runs the mate search over every reduced Latin square of order n.
MateCertificate certify_mates(int n, const CertifyOptions& options = {});
inline MateCertificate certify_no_mols6(const CertifyOptions& options = {}) {
  return certify_mates(6, options);
}

/// 64-bit FNV-1a step over a square's bytes (order byte then grid bytes).
std::uint64_t digest_square(std::uint64_t state, const LatinSquare& square);
inline constexpr std::uint64_t kDigestSeed = 0xcbf29ce484222325ULL;

struct GraecoLatin {
  LatinSquare first;
  PartialSquare second;
};

/// n rows of n cells; a cell is a 1-based symbol followed by a symbol or '.'.
GraecoLatin parse_graeco_latin(const std::string& text);
/// Single space between cells, newline after every row.
std::string render_graeco_latin(const LatinSquare& first, const PartialSquare& second);
std::string render_graeco_latin(const LatinSquare& first, const LatinSquare& second);

/// Reads a Latin square whose cells are single 1-based symbols, or
/// Graeco-Latin cells of which only the first symbol is used.
LatinSquare parse_latin_text(const std::string& text);

}  // namespace constellation
