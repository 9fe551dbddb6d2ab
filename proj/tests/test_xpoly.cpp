#include "doctest.h"

#include "qrr/xpoly.hpp"

using namespace qrr;

TEST_CASE("rank-one mu equals its theta-product closed form") {
  auto rs = RootSystem::build("A1");
  Rat ord = 12;
  XPoly mu = mu_kernel(rs, ord);
  // (q)_inf * mu = sum_k (-1)^k q^{k(k-1)/2} X^{2k}
  XPoly expect(rs, ord);
  for (long k = -12; k <= 12; ++k) {
    Rat e = Rat(k * (k - 1), 2);
    if (e > ord) continue;
    expect.add_monomial(Weight{static_cast<int>(2 * k)}, e, (k % 2 == 0) ? 1 : -1);
  }
  CHECK(XPoly::agree(mu.mul_series(pochhammer(1, 1, -1, ord)).truncated(ord), expect));
}

TEST_CASE("constant term of mu inverts the eta-type product") {
  for (const char* name : {"A1", "A2", "B2", "C2", "G2"}) {
    auto rs = RootSystem::build(name);
    Rat ord = 10;
    QSeries ct = mu_kernel(rs, ord).constant_term();
    QSeries prod = QSeries::one(ord);
    for (int nu : rs.nu()) prod = prod.mul(pochhammer(nu, nu, -1, ord));
    CHECK(QSeries::agree(ct.mul(prod), QSeries::one(ord)));
    // and CT(mu) equals <mu> computed independently
    CHECK(QSeries::agree(ct, mu_norm(rs, ord)));
  }
}

TEST_CASE("mu at order zero is the q-free polynomial") {
  auto rs = RootSystem::build("A2");
  XPoly mu0 = mu_kernel(rs, 0);
  XPoly expect = XPoly::one(rs, 0);
  for (const auto& a : rs.positive_roots()) expect.mul_binomial(a, 0, -1);
  CHECK(XPoly::agree(mu0, expect));
}

TEST_CASE("x-monomial shift plus constant term equals coefficient extraction") {
  auto rs = RootSystem::build("A2");
  XPoly mu = mu_kernel(rs, 6);
  for (const Weight& b : {Weight{1, 0}, Weight{-1, 2}, Weight{2, -1}}) {
    QSeries direct = mu.coeff(b);
    QSeries shifted = mu.mul_x_monomial(-b, 0).constant_term();
    CHECK(QSeries::agree(direct, shifted));
  }
}

TEST_CASE("ct_pair matches multiply-then-extract") {
  auto rs = RootSystem::build("B2");
  XPoly mu = mu_kernel(rs, 6);
  XPoly f = XPoly::orbit_sum(rs, Weight{-1, 0}, 6);
  CHECK(QSeries::agree(ct_pair(f, mu), f.mul(mu).constant_term()));
}

TEST_CASE("symmetric predicate") {
  auto rs = RootSystem::build("A2");
  XPoly orb = XPoly::orbit_sum(rs, Weight{-1, -1}, 4);
  CHECK(orb.symmetric());
  XPoly mono = XPoly::monomial(rs, Weight{1, 0}, Rat(4));
  CHECK(!mono.symmetric());
}

TEST_CASE("truncation soundness: recompute mu at higher order") {
  auto rs = RootSystem::build("C2");
  XPoly lo = mu_kernel(rs, 7);
  XPoly hi = mu_kernel(rs, 12);
  CHECK(XPoly::agree(lo, hi.truncated(7)));
}
