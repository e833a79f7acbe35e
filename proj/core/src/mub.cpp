#include "constellation/mub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "constellation/error.hpp"
#include "constellation/field.hpp"
#include "constellation/random.hpp"

namespace constellation {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex root_of_unity(double turns) { return std::polar(1.0, kTwoPi * turns); }

}  // namespace

Basis::Basis(CMatrix columns) : columns_(std::move(columns)) {
  if (columns_.rows() < 1) throw Error(ErrorCode::DimensionMismatch, "empty vectors");
  if (columns_.cols() > columns_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "more columns than the dimension");
  }
}

Basis Basis::orthonormal(CMatrix columns, double tol) {
  Basis b(std::move(columns));
  const double r = b.orthonormality_residual();
  if (!(r <= tol)) {
    throw Error(ErrorCode::NotOrthonormal, "Gram residual " + std::to_string(r) + " exceeds tolerance");
  }
  return b;
}

double Basis::orthonormality_residual() const {
  const CMatrix gram = columns_.adjoint() * columns_;
  return (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

MUConstellation::MUConstellation(int dim, std::vector<Basis> bases) : dim_(dim), bases_(std::move(bases)) {
  for (const Basis& b : bases_) {
    if (b.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "basis dimension differs from constellation");
  }
}

Signature MUConstellation::signature() const {
  std::vector<int> sizes;
  for (const Basis& b : bases_) sizes.push_back(std::min(b.size(), dim_ - 1));
  return Signature(dim_, std::move(sizes));
}

double DefectReport::max_pair_defect() const {
  double m = 0.0;
  for (const auto& p : pair_defects) m = std::max(m, p.defect);
  return m;
}

double DefectReport::max_residual() const {
  double m = 0.0;
  for (double r : orthonormality_residuals) m = std::max(m, r);
  return m;
}

double mu_defect(const Basis& a, const Basis& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
  const double inv_d = 1.0 / a.dim();
  const CMatrix overlaps = a.columns().adjoint() * b.columns();
  return (overlaps.cwiseAbs2().array() - inv_d).square().sum();
}

DefectReport constellation_defect(const MUConstellation& c) {
  DefectReport report;
  const auto& bases = c.bases();
  for (const Basis& b : bases) report.orthonormality_residuals.push_back(b.orthonormality_residual());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      const double d = mu_defect(bases[i], bases[j]);
      report.pair_defects.push_back({static_cast<int>(i), static_cast<int>(j), d});
      report.total += d;
    }
  }
  return report;
}

Basis standard_basis(int d) {
  if (d < 1) throw Error(ErrorCode::DimensionTooSmall, "dimension must be positive");
  return Basis(CMatrix::Identity(d, d));
}

Basis fourier_basis(int d) {
  if (d < 2) throw Error(ErrorCode::DimensionTooSmall, "Fourier basis needs d >= 2");
  CMatrix m(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) m(j, k) = norm * root_of_unity(static_cast<double>((j * k) % d) / d);
  }
  return Basis::orthonormal(std::move(m));
}

CMatrix dephase(const CMatrix& m) {
  CMatrix out = m;
  auto unit_phase = [](Complex z) { return std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0); };
  for (Eigen::Index j = 0; j < out.cols(); ++j) out.col(j) /= unit_phase(out(0, j));
  for (Eigen::Index i = 0; i < out.rows(); ++i) out.row(i) /= unit_phase(out(i, 0));
  return out;
}

Basis fourier_family6(double a, double b) {
  constexpr int d = 6;
  CMatrix m = fourier_basis(d).columns();
  for (int r = 1; r < d; r += 2) {
    for (int c : {1, 4}) m(r, c) *= root_of_unity(a);
    for (int c : {2, 5}) m(r, c) *= root_of_unity(b);
  }
  return Basis::orthonormal(dephase(m));
}

Basis tao_basis() {
  constexpr int d = 6;
  // exponents of w = exp(2 pi i/3)
  static constexpr int pattern[d][d] = {
      {0, 0, 0, 0, 0, 0}, {0, 0, 1, 1, 2, 2}, {0, 1, 0, 2, 2, 1},
      {0, 1, 2, 0, 1, 2}, {0, 2, 2, 1, 0, 1}, {0, 2, 1, 2, 1, 0},
  };
  CMatrix m(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(r, c) = norm * root_of_unity(pattern[r][c] / 3.0);
  }
  try {
    Basis b = Basis::orthonormal(m);
    if ((m.cwiseAbs().array() - norm).abs().maxCoeff() > kConstructionTolerance) {
      throw Error(ErrorCode::ConstructionInvalid, "Tao matrix entries are not flat");
    }
    return b;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConstructionInvalid) throw;
    throw Error(ErrorCode::ConstructionInvalid, std::string("Tao matrix: ") + e.what());
  }
}

namespace {

double principal_angle(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  if (a > kTwoPi - 1e-9) a = 0.0;
  return a;
}

// Eigenvectors of a unitary with a simple spectrum, ordered by eigenvalue
// angle; each vector's first largest-modulus entry made real positive.
CMatrix unitary_eigenbasis(const CMatrix& u) {
  const int d = static_cast<int>(u.rows());
  Eigen::ComplexEigenSolver<CMatrix> solver(u);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::DegenerateSpectrum, "eigensolver failed");
  const auto& values = solver.eigenvalues();
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return principal_angle(values[x]) < principal_angle(values[y]);
  });
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (std::abs(values[i] - values[j]) < 1e-8) {
        throw Error(ErrorCode::DegenerateSpectrum, "eigenvalues closer than 1e-8");
      }
    }
  }
  CMatrix out(d, d);
  for (int k = 0; k < d; ++k) {
    Eigen::VectorXcd v = solver.eigenvectors().col(order[k]);
    v.normalize();
    const double top = v.cwiseAbs().maxCoeff();
    int lead = 0;
    while (std::abs(v[lead]) < top - 1e-9) ++lead;
    v *= std::conj(v[lead]) / std::abs(v[lead]);
    out.col(k) = v;
  }
  return out;
}

}  // namespace

MUConstellation hw_triple(int d) {
  if (d < 2) throw Error(ErrorCode::DimensionTooSmall, "Heisenberg-Weyl triple needs d >= 2");
  CMatrix z = CMatrix::Zero(d, d);
  CMatrix x = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    z(j, j) = root_of_unity(static_cast<double>(j) / d);
    x((j + 1) % d, j) = 1.0;
  }
  std::vector<Basis> bases{standard_basis(d), fourier_basis(d),
                           Basis::orthonormal(unitary_eigenbasis(x * z))};
  return MUConstellation(d, std::move(bases));
}

MUConstellation wf_complete_set(int q) {
  if (q == 2) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    CMatrix xb(2, 2), yb(2, 2);
    xb << s, s, s, -s;
    yb << s, s, s * i, -s * i;
    return MUConstellation(2, {standard_basis(2), Basis::orthonormal(xb), Basis::orthonormal(yb)});
  }
  int p = 0, k = 0;
  if (!prime_power(q, p, k)) throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
  if (p == 2) throw Error(ErrorCode::UnsupportedOrder, "even prime powers above 2 are not supported");
  const FieldTable f(p, k);
  const double norm = 1.0 / std::sqrt(static_cast<double>(q));
  std::vector<Basis> bases{standard_basis(q)};
  using E = FieldTable::Element;
  for (E a = 0; a < static_cast<E>(q); ++a) {
    CMatrix m(q, q);
    for (E b = 0; b < static_cast<E>(q); ++b) {
      for (E x = 0; x < static_cast<E>(q); ++x) {
        const E arg = f.add(f.mul(a, f.mul(x, x)), f.mul(b, x));
        m(x, b) = norm * root_of_unity(static_cast<double>(f.trace(arg)) / p);
      }
    }
    bases.push_back(Basis::orthonormal(std::move(m)));
  }
  return MUConstellation(q, std::move(bases));
}

CMatrix random_unitary(int d, std::uint64_t seed) {
  NormalStream rng(seed);
  CMatrix g(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const double re = rng.next();
      g(r, c) = Complex(re, rng.next());
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < d; ++c) {
    const Complex diag = rmat(c, c);
    if (std::abs(diag) > 0.0) q.col(c) *= diag / std::abs(diag);
  }
  return q;
}

}  // namespace constellation
