#include "doctest.h"

#include "qrr/qseries.hpp"

#include <random>

using namespace qrr;

namespace {

// independent oracle: dense integer-exponent polynomial multiplication
std::vector<long long> naive_mul(const std::vector<long long>& a,
                                 const std::vector<long long>& b, std::size_t n) {
  std::vector<long long> r(n + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

QSeries random_series(std::mt19937& rng, const Rat& ord) {
  std::uniform_int_distribution<int> nt(0, 6), num(-5, 5), den(1, 4), ex(0, 9);
  QSeries s(ord);
  int terms = nt(rng);
  for (int k = 0; k < terms; ++k) s.add_term(Rat(ex(rng), den(rng)), Rat(num(rng), den(rng)));
  return s;
}

} // namespace

TEST_CASE("geometric series inverse") {
  Rat ord = 3;
  QSeries one_minus_q = QSeries::one(ord);
  one_minus_q.add_term(1, -1);
  QSeries inv = one_minus_q.invert();
  // 1/(1-q) = 1 + q + q^2 + q^3
  for (int k = 0; k <= 3; ++k) CHECK(inv.coeff(k) == 1);
  CHECK(QSeries::agree(one_minus_q * inv, QSeries::one(ord)));
}

TEST_CASE("order propagation in products") {
  QSeries a = QSeries::one(5);
  a.add_term(1, 1);
  QSeries b = QSeries::one(7);
  b.add_term(2, 3);
  CHECK((a * b).order() == Rat(5));
  // a monomial factor shifts the reliable order
  QSeries qa = a.mul_monomial(Rat(1, 2));
  CHECK((qa * b).order() == Rat(5) + Rat(1, 2));
}

TEST_CASE("euler product (q;q)_inf matches hand multiplication") {
  // oracle: multiply (1-q)(1-q^2)...(1-q^6) with dense integer arithmetic
  std::vector<long long> acc{1};
  for (int j = 1; j <= 6; ++j) {
    std::vector<long long> f(j + 1, 0);
    f[0] = 1;
    f[j] = -1;
    acc = naive_mul(acc, f, 6);
  }
  QSeries p = pochhammer(1, 1, -1, 6);
  for (int k = 0; k <= 6; ++k) CHECK(p.coeff(k) == Rat(acc[k]));
  // pentagonal pattern 1 - q - q^2 + q^5 + ...
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(1) == -1);
  CHECK(p.coeff(2) == -1);
  CHECK(p.coeff(3) == 0);
  CHECK(p.coeff(5) == 1);
}

TEST_CASE("finite pochhammer (q)_3 and (a;q)_0") {
  QSeries p3 = pochhammer(1, 1, 3, 10);
  // (1-q)(1-q^2)(1-q^3) = 1 - q - q^2 + q^4 + q^5 - q^6
  CHECK(p3.coeff(0) == 1);
  CHECK(p3.coeff(1) == -1);
  CHECK(p3.coeff(2) == -1);
  CHECK(p3.coeff(3) == 0);
  CHECK(p3.coeff(4) == 1);
  CHECK(p3.coeff(5) == 1);
  CHECK(p3.coeff(6) == -1);
  CHECK(QSeries::agree(pochhammer(2, 1, 0, 10), QSeries::one(10)));
}

TEST_CASE("ring laws on random samples") {
  std::mt19937 rng(12345);
  for (int it = 0; it < 60; ++it) {
    QSeries a = random_series(rng, 8), b = random_series(rng, 8), c = random_series(rng, 8);
    CHECK(QSeries::agree((a * b) * c, a * (b * c)));
    CHECK(QSeries::agree(a * (b + c), a * b + a * c));
    CHECK(QSeries::agree(a + b, b + a));
    CHECK(QSeries::agree(a - a, QSeries::zero(8)));
  }
}

TEST_CASE("eta has integer coefficients after removing q^{1/24}") {
  QSeries e = eta_series(1, 8);
  QSeries shifted = e.mul_monomial(Rat(-1, 24));
  for (const auto& [ex, c] : shifted.terms()) {
    CHECK(is_integer(ex));
    CHECK(is_integer(c));
  }
  CHECK(shifted.coeff(0) == 1);
  CHECK(shifted.coeff(1) == -1);
}

TEST_CASE("theta5 and the classical sum side") {
  // q^{1/60} theta5_{,1}(z)/eta(z) = sum q^{n^2}/(q)_n as far as we truncate
  Rat ord = 20;
  QSeries lhs = theta5(1, 1, ord + 2).mul(eta_series(1, ord + 2).invert()).mul_monomial(Rat(1, 60));
  QSeries rhs(ord);
  for (long n = 0; n * n <= 20; ++n) {
    QSeries t = QSeries::monomial(n * n, 1, ord);
    rhs += t.mul(pochhammer(1, 1, n, ord).invert());
  }
  CHECK(!QSeries::first_mismatch(lhs.truncated(ord), rhs).has_value());
}

TEST_CASE("theta5 supports half-integral labels") {
  QSeries t = theta5(Rat(3, 4), 2, 10);
  CHECK(!t.is_zero());
  // lowest exponent 2*(1/2)^2/40 = 1/80
  CHECK(t.lead_exp().value() == Rat(1, 80));
}

TEST_CASE("scale_exponents matches direct scaled construction") {
  QSeries e2 = eta_series(2, 12);
  QSeries e_scaled = eta_series(1, 6).scale_exponents(2);
  CHECK(!QSeries::first_mismatch(e2, e_scaled).has_value());
}

TEST_CASE("serialization rows are sorted 4-tuples") {
  QSeries s(5);
  s.add_term(Rat(1, 2), Rat(3, 4));
  s.add_term(2, -1);
  auto rows = s.serialize();
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == 1);
  CHECK(rows[0][1] == 2);
  CHECK(rows[0][2] == 3);
  CHECK(rows[0][3] == 4);
  CHECK(rows[1][0] == 2);
  CHECK(rows[1][1] == 1);
}

TEST_CASE("invert rejects the zero series") {
  CHECK_THROWS_AS(QSeries::zero(4).invert(), std::domain_error);
}
