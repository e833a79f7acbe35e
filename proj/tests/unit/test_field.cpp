#include <vector>

#include "constellation/error.hpp"
#include "constellation/field.hpp"
#include "doctest.h"

using namespace constellation;
using E = FieldTable::Element;

namespace {

// Schoolbook product of two encoded elements reduced by the table's modulus;
// independent of the log/exp tables the field uses.
E slow_mul(const FieldTable& f, E a, E b) {
  const int p = f.characteristic(), k = f.degree();
  std::vector<int> x(k), y(k), prod(2 * k, 0);
  for (int i = 0; i < k; ++i) {
    x[i] = static_cast<int>(a % p);
    y[i] = static_cast<int>(b % p);
    a /= p;
    b /= p;
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  const auto& m = f.modulus();
  for (int deg = 2 * k - 1; deg >= k; --deg) {
    const int lead = prod[deg];
    for (int i = 0; i <= k; ++i) prod[deg - k + i] = ((prod[deg - k + i] - lead * m[i]) % p + p) % p;
  }
  E out = 0;
  for (int i = k - 1; i >= 0; --i) out = out * p + prod[i];
  return out;
}

const std::vector<std::pair<int, int>> kSmallFields = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2},
                                                        {11, 1}, {13, 1}, {2, 4}, {17, 1}, {5, 2}, {3, 3},
                                                        {29, 1}, {31, 1}, {2, 5}, {37, 1}, {7, 2}, {2, 6}};

}  // namespace

TEST_CASE("build_field examples") {
  const FieldTable gf2(2, 1);
  CHECK(gf2.order() == 2);
  CHECK(gf2.add(1, 1) == 0);

  const FieldTable gf4(2, 2);
  CHECK(gf4.modulus() == std::vector<int>{1, 1, 1});  // x^2 + x + 1
  CHECK(gf4.mul(2, 2) == 3);

  const FieldTable gf3(3, 1);
  CHECK(gf3.inv(2) == 2);

  CHECK_THROWS_WITH_AS(FieldTable(4, 1), doctest::Contains("NotPrime"), Error);
  CHECK_THROWS_AS(FieldTable(2, 0), Error);
  CHECK_THROWS_WITH_AS(FieldTable(2, 17), doctest::Contains("OrderTooLarge"), Error);
  CHECK_THROWS_WITH_AS(gf4.inv(0), doctest::Contains("ZeroInverse"), Error);
  CHECK_THROWS_WITH_AS(gf4.add(4, 0), doctest::Contains("BadElement"), Error);
}

TEST_CASE("modulus is the smallest monic irreducible") {
  CHECK(FieldTable(3, 2).modulus() == std::vector<int>{1, 0, 1});     // x^2 + 1
  CHECK(FieldTable(2, 3).modulus() == std::vector<int>{1, 0, 1, 1});  // x^3 + x^2 + 1
  CHECK(FieldTable(5, 2).modulus() == std::vector<int>{1, 1, 1});     // x^2 + x + 1, as -1 is a square mod 5
  // prime fields: the degree-one polynomial x
  CHECK(FieldTable(7, 1).modulus() == std::vector<int>{0, 1});
}

TEST_CASE("field axioms hold exhaustively for q <= 64") {
  for (auto [p, k] : kSmallFields) {
    const FieldTable f(p, k);
    const E q = static_cast<E>(f.order());
    CAPTURE(q);
    bool ok = true;
    for (E a = 0; a < q && ok; ++a) {
      ok = ok && f.add(a, 0) == a && f.mul(a, 1) == a && f.add(a, f.neg(a)) == 0;
      if (a != 0) ok = ok && f.mul(a, f.inv(a)) == 1;
      for (E b = 0; b < q && ok; ++b) {
        ok = ok && f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
        ok = ok && f.mul(a, b) == slow_mul(f, a, b);
        for (E c = 0; c < q && ok; ++c) {
          ok = ok && f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
          ok = ok && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
          ok = ok && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("multiplicative group is cyclic") {
  for (auto [p, k] : kSmallFields) {
    const FieldTable f(p, k);
    const auto group = static_cast<std::uint32_t>(f.order() - 1);
    bool has_generator = false;
    for (E a = 1; a < static_cast<E>(f.order()) && !has_generator; ++a) {
      has_generator = f.multiplicative_order(a) == group;
    }
    CHECK(has_generator);
  }
}

TEST_CASE("pow and trace") {
  const FieldTable f(3, 2);
  for (E a = 0; a < 9; ++a) {
    CHECK(f.pow(a, 0) == 1);
    CHECK(f.pow(a, 9) == a);
    CHECK(f.pow(a, 2) == f.mul(a, a));
    const int t = f.trace(a);
    CHECK(t >= 0);
    CHECK(t < 3);
    CHECK(static_cast<E>(t) == f.add(a, f.pow(a, 3)));
  }
  // trace is onto Z_p and balanced: each value taken q/p times
  std::vector<int> counts(3, 0);
  for (E a = 0; a < 9; ++a) ++counts[f.trace(a)];
  CHECK(counts == std::vector<int>{3, 3, 3});
}

TEST_CASE("build_field is deterministic") {
  CHECK(FieldTable(2, 4) == FieldTable(2, 4));
  CHECK(FieldTable(3, 3) == FieldTable(3, 3));
  CHECK(FieldTable(251, 1).order() == 251);
  CHECK(FieldTable(2, 16).order() == 65536);
}

TEST_CASE("prime_power") {
  int p = 0, k = 0;
  CHECK(prime_power(9, p, k));
  CHECK(p == 3);
  CHECK(k == 2);
  CHECK_FALSE(prime_power(6, p, k));
  CHECK_FALSE(prime_power(1, p, k));
  CHECK(prime_power(2, p, k));
}
