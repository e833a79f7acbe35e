#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "constellation/signature.hpp"

namespace constellation {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kConstructionTolerance = 1e-12;
inline constexpr double kVerificationTolerance = 1e-10;

/// m <= d column vectors in C^d, stored as a d x m matrix.
///
/// The constructor accepts any columns; `orthonormal` additionally checks the
/// Gram matrix against the identity.
class Basis {
 public:
  explicit Basis(CMatrix columns);
  /// Throws NotOrthonormal if the Gram residual exceeds tol.
  static Basis orthonormal(CMatrix columns, double tol = kConstructionTolerance);

  int dim() const noexcept { return static_cast<int>(columns_.rows()); }
  int size() const noexcept { return static_cast<int>(columns_.cols()); }
  const CMatrix& columns() const noexcept { return columns_; }
  /// max |G - I| entrywise, G the Gram matrix of the columns.
  double orthonormality_residual() const;

  bool operator==(const Basis& other) const { return columns_ == other.columns_; }

 private:
  CMatrix columns_;
};

/// Sets of orthonormal vectors in a shared dimension.
class MUConstellation {
 public:
  MUConstellation(int dim, std::vector<Basis> bases);

  int dim() const noexcept { return dim_; }
  const std::vector<Basis>& bases() const noexcept { return bases_; }
  /// Column counts with a complete basis recorded as d-1.
  Signature signature() const;

  bool operator==(const MUConstellation&) const = default;

 private:
  int dim_;
  std::vector<Basis> bases_;
};

struct PairDefect {
  int first;
  int second;
  double defect;
};

struct DefectReport {
  std::vector<PairDefect> pair_defects;
  std::vector<double> orthonormality_residuals;
  double total = 0.0;

  double max_pair_defect() const;
  double max_residual() const;
};

/// Sum over column pairs of (|<u|v>|^2 - 1/d)^2.
double mu_defect(const Basis& a, const Basis& b);

DefectReport constellation_defect(const MUConstellation& c);

Basis standard_basis(int d);
/// Column k has entries exp(2 pi i jk/d)/sqrt(d).
Basis fourier_basis(int d);

/// Divides each column by the phase of its first entry, then each row by the
/// phase of its first entry. Zero entries leave the phase unchanged.
CMatrix dephase(const CMatrix& m);

/// The affine Fourier family of order 6, F6 with phases 2 pi a and 2 pi b
/// on the odd rows, (a, b) in full turns. Dephased; (0,0) gives F6.
Basis fourier_family6(double a, double b);

/// Tao's spectral matrix of order 6, entries in {1, w, w^2}/sqrt(6), w = exp(2 pi i/3).
Basis tao_basis();

/// Eigenbases of the clock Z, the shift X, and XZ.
MUConstellation hw_triple(int d);

/// d+1 mutually unbiased bases for d = 2 or an odd prime power.
MUConstellation wf_complete_set(int q);

/// Haar-random unitary from a seeded stream (QR of a complex Gaussian matrix).
CMatrix random_unitary(int d, std::uint64_t seed);

}  // namespace constellation
