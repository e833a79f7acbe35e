#include "constellation/field.hpp"

#include <string>

#include "constellation/error.hpp"

namespace constellation {

namespace {

using Poly = std::vector<int>;  // coefficients, constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over Z_p.
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
  }
  return out;
}

// Monic polynomial of degree `deg` whose lower coefficients are the base-p
// digits of `index`, most significant digit = constant term. Iterating index
// upward walks the polynomials in lexicographic order, low degree first.
Poly monic_from_index(std::int64_t index, int p, int deg) {
  Poly f(deg + 1, 0);
  f[deg] = 1;
  for (int i = deg - 1; i >= 0; --i) {
    f[i] = static_cast<int>(index % p);
    index /= p;
  }
  return f;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool irreducible(const Poly& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg <= 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int dd = 1; dd <= deg / 2; ++dd) {
    const std::int64_t count = ipow(p, dd);
    for (std::int64_t idx = 0; idx < count; ++idx) {
      if (poly_mod(f, monic_from_index(idx, p, dd), p).empty()) return false;
    }
  }
  return true;
}

Poly to_poly(std::uint32_t a, int p, int k) {
  Poly out(k, 0);
  for (int i = 0; i < k; ++i) {
    out[i] = static_cast<int>(a % p);
    a /= p;
  }
  trim(out);
  return out;
}

std::uint32_t from_poly(const Poly& a, int p) {
  std::uint32_t out = 0;
  for (std::size_t i = a.size(); i-- > 0;) out = out * p + a[i];
  return out;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool prime_power(std::int64_t n, int& p, int& k) {
  if (n < 2) return false;
  std::int64_t base = 2;
  while (n % base != 0) ++base;
  int e = 0;
  std::int64_t m = n;
  while (m % base == 0) {
    m /= base;
    ++e;
  }
  if (m != 1) return false;
  p = static_cast<int>(base);
  k = e;
  return true;
}

FieldTable::FieldTable(int p, int k) : p_(p), k_(k) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(k) + " < 1");
  std::int64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw Error(ErrorCode::OrderTooLarge, std::to_string(p) + "^" + std::to_string(k) +
                                                " exceeds " + std::to_string(kMaxOrder));
    }
  }
  q_ = static_cast<int>(q);

  const std::int64_t candidates = ipow(p, k);
  for (std::int64_t idx = 0; idx < candidates; ++idx) {
    Poly f = monic_from_index(idx, p, k);
    if (irreducible(f, p)) {
      modulus_ = std::move(f);
      break;
    }
  }

  neg_.resize(q_);
  for (int a = 0; a < q_; ++a) {
    std::uint32_t v = static_cast<std::uint32_t>(a), out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
      const int digit = static_cast<int>(v % p_);
      out += scale * ((p_ - digit) % p_);
      v /= p_;
      scale *= p_;
    }
    neg_[a] = out;
  }

  // Find the smallest generator of the multiplicative group and tabulate
  // exp/log with respect to it.
  const std::uint32_t group = static_cast<std::uint32_t>(q_ - 1);
  exp_.assign(2 * group, 0);
  log_.assign(q_, 0);
  if (q_ == 2) {
    generator_ = 1;
    exp_[0] = exp_[1] = 1;
    return;
  }
  for (std::uint32_t g = 2; g < static_cast<std::uint32_t>(q_); ++g) {
    const Poly gp = to_poly(g, p_, k_);
    Poly acc{1};
    std::uint32_t n = 0;
    bool ok = true;
    for (; n < group; ++n) {
      const std::uint32_t e = from_poly(acc, p_);
      if (n > 0 && e == 1) {
        ok = false;
        break;
      }
      exp_[n] = e;
      acc = poly_mod(poly_mul(acc, gp, p_), modulus_, p_);
    }
    if (ok) {
      generator_ = g;
      break;
    }
  }
  for (std::uint32_t n = 0; n < group; ++n) {
    exp_[n + group] = exp_[n];
    log_[exp_[n]] = n;
  }
}

void FieldTable::check(Element a) const {
  if (a >= static_cast<Element>(q_)) {
    throw Error(ErrorCode::BadElement,
                std::to_string(a) + " outside GF(" + std::to_string(q_) + ")");
  }
}

FieldTable::Element FieldTable::add(Element a, Element b) const {
  check(a);
  check(b);
  if (k_ == 1) return (a + b) % p_;
  Element out = 0, scale = 1;
  for (int i = 0; i < k_; ++i) {
    out += scale * ((a % p_ + b % p_) % p_);
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

FieldTable::Element FieldTable::neg(Element a) const {
  check(a);
  return neg_[a];
}

FieldTable::Element FieldTable::sub(Element a, Element b) const { return add(a, neg(b)); }

FieldTable::Element FieldTable::mul(Element a, Element b) const {
  check(a);
  check(b);
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

FieldTable::Element FieldTable::inv(Element a) const {
  check(a);
  if (a == 0) throw Error(ErrorCode::ZeroInverse, "0 has no multiplicative inverse");
  const std::uint32_t group = static_cast<std::uint32_t>(q_ - 1);
  return exp_[(group - log_[a]) % group];
}

FieldTable::Element FieldTable::pow(Element a, std::uint64_t e) const {
  check(a);
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t group = static_cast<std::uint64_t>(q_ - 1);
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % group)) % group];
}

int FieldTable::trace(Element a) const {
  check(a);
  Element sum = 0, term = a;
  for (int i = 0; i < k_; ++i) {
    sum = add(sum, term);
    term = pow(term, static_cast<std::uint64_t>(p_));
  }
  return static_cast<int>(sum);
}

std::uint32_t FieldTable::multiplicative_order(Element a) const {
  check(a);
  if (a == 0) throw Error(ErrorCode::ZeroInverse, "0 is not in the multiplicative group");
  std::uint32_t n = 1;
  Element x = a;
  while (x != 1) {
    x = mul(x, a);
    ++n;
  }
  return n;
}

}  // namespace constellation
