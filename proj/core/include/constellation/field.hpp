#pragma once

#include <cstdint>
#include <vector>

namespace constellation {

bool is_prime(std::int64_t n);

/// Splits n into (p, k) with n = p^k. Returns false when n is not a prime power.
bool prime_power(std::int64_t n, int& p, int& k);

/// Tables for GF(p^k).
///
/// Elements are the integers 0..q-1; the base-p digits of an element are the
/// coefficients of its polynomial residue, constant term least significant.
/// The modulus is the lexicographically smallest (low degree first) monic
/// irreducible polynomial of degree k over Z_p, so construction is
/// deterministic. Immutable after construction.
class FieldTable {
 public:
  using Element = std::uint32_t;

  static constexpr std::int64_t kMaxOrder = 1 << 16;

  FieldTable(int p, int k);

  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return k_; }
  int order() const noexcept { return q_; }
  /// Coefficients of the modulus, constant term first; size k+1, last entry 1.
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element mul(Element a, Element b) const;
  Element neg(Element a) const;
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const;
  /// Absolute trace to the prime field; the result is an integer in 0..p-1.
  int trace(Element a) const;

  /// Multiplicative order of a nonzero element.
  std::uint32_t multiplicative_order(Element a) const;

  bool operator==(const FieldTable& other) const = default;

 private:
  void check(Element a) const;

  int p_;
  int k_;
  int q_;
  std::vector<int> modulus_;
  std::vector<Element> add_;   // q*q
  std::vector<Element> neg_;   // q
  std::vector<std::uint32_t> log_;  // discrete log w.r.t. generator_, q entries (log_[0] unused)
  std::vector<Element> exp_;   // 2*(q-1) entries
  Element generator_ = 1;
};

/// Convenience wrapper matching the build_field operation.
inline FieldTable build_field(int p, int k) { return FieldTable(p, k); }

}  // namespace constellation
