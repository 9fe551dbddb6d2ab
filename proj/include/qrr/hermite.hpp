#ifndef QRR_HERMITE_HPP
#define QRR_HERMITE_HPP

#include "qrr/xpoly.hpp"

namespace qrr {

// Shared state for one (root system, truncation order) pair: the mu kernel,
// its normalization and the polynomials already computed.
class HermiteContext {
public:
  HermiteContext(const RootSystem& rs, Rat ord);

  const RootSystem& rs() const { return *rs_; }
  const Rat& order() const { return ord_; }
  const XPoly& mu() const { return mu_; }
  const QSeries& mu_norm_series() const { return mu_norm_; }     // <mu>
  const QSeries& mu_norm_inverse() const { return mu_norm_inv_; } // prod (q_i;q_i)_inf

  // orbit-sum-monic orthogonal polynomial labeled by antidominant b
  const XPoly& q_hermite(const Weight& b);

  // the antidominant weights b' != b with b' - b in Q_+ (all corrections)
  std::vector<Weight> correction_set(const Weight& b) const;

  // closed norm: prod_i prod_{j=1}^{-(alpha_i^vee, b)} (1 - q_i^j)
  QSeries norm_closed(const Weight& b) const;
  // <P_b P_{c'} mu_o> computed by constant term (c antidominant)
  QSeries pair_mu(const Weight& b, const Weight& c);

private:
  const RootSystem* rs_;
  Rat ord_;
  XPoly mu_;
  QSeries mu_norm_, mu_norm_inv_;
  std::map<Weight, XPoly> cache_;

  QSeries orbit_pairing(const Weight& orbit_label, const Weight& xshift) const;
};

// explicit rank-one family: P_n = M_n + sum_j [(1-q^n)...(1-q^{n-j+1}) /
// (1-q)...(1-q^j)] M_{n-2j}
XPoly q_hermite_rank1(const RootSystem& a1, long n, const Rat& ord);

// rank-one raising operator (X^2 G^{-1} - X^{-2} G)/(X - X^{-1}) with
// G: X -> q^{1/2} X; q^{n/2} R(P_n) = P_{n+1}
XPoly raising_apply(const XPoly& f);

// Demazure operator T_i = (1 - X_{alpha_i})^{-1}(s_i - 1), i = 0 allowed via
// the affine reflection s_0(X_b) = X_b X_theta^{-(b,theta)} q^{(b,theta)}
XPoly demazure(const RootSystem& rs, int i, const XPoly& f);

} // namespace qrr

#endif
