#ifndef QRR_XPOLY_HPP
#define QRR_XPOLY_HPP

#include <map>
#include "qrr/qseries.hpp"
#include "qrr/rootsys.hpp"

namespace qrr {

// Finite Laurent expression in the X-variables indexed by weights of P,
// with QSeries coefficients: X_{a+b} = X_a X_b.
class XPoly {
public:
  XPoly(const RootSystem& rs, Rat order) : rs_(&rs), ord_(std::move(order)) {}

  static XPoly zero(const RootSystem& rs, const Rat& order) { return XPoly(rs, order); }
  static XPoly one(const RootSystem& rs, const Rat& order);
  static XPoly monomial(const RootSystem& rs, const Weight& w, const QSeries& s);
  static XPoly monomial(const RootSystem& rs, const Weight& w, const Rat& order);
  // W-orbit sum of X_b
  static XPoly orbit_sum(const RootSystem& rs, const Weight& b, const Rat& order);

  const RootSystem& rs() const { return *rs_; }
  const Rat& order() const { return ord_; }
  const std::map<Weight, QSeries>& terms() const { return t_; }
  std::size_t support_size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Weight& w, const QSeries& s);
  void add_monomial(const Weight& w, const Rat& qexp, const Rat& coeff);

  QSeries coeff(const Weight& w) const;            // coefficient series of X_w
  QSeries constant_term() const { return coeff(Weight::zero(rs_->rank())); }

  XPoly& operator+=(const XPoly& o);
  XPoly& operator-=(const XPoly& o);
  friend XPoly operator+(XPoly a, const XPoly& b) { a += b; return a; }
  friend XPoly operator-(XPoly a, const XPoly& b) { a -= b; return a; }

  XPoly mul(const XPoly& o) const;
  friend XPoly operator*(const XPoly& a, const XPoly& b) { return a.mul(b); }
  // multiply by (1 + sign * coeff q^{qexp} X_w) in place
  void mul_binomial(const Weight& w, const Rat& qexp, const Rat& coeff);
  XPoly mul_series(const QSeries& s) const;
  XPoly mul_x_monomial(const Weight& w, const Rat& qexp) const;

  // image under X_b -> X_{s_i(b)}
  XPoly apply_reflection(int i) const;
  bool symmetric() const;

  // lowest q-exponent over all coefficients (order if none)
  Rat min_val_or_order() const;
  XPoly truncated(const Rat& new_order) const;

  static std::optional<std::pair<Weight, Rat>> first_mismatch(const XPoly& a, const XPoly& b);
  static bool agree(const XPoly& a, const XPoly& b) { return !first_mismatch(a, b).has_value(); }

  std::string str(std::size_t max_terms = 10) const;

private:
  const RootSystem* rs_;
  Rat ord_;
  std::map<Weight, QSeries> t_;
};

// The orthogonality kernel: product over positive roots alpha and j >= 0 of
// (1 - X_alpha q_alpha^j)(1 - X_alpha^{-1} q_alpha^{j+1}) truncated at ord.
// Factors whose minimum q-degree exceeds ord are skipped; the q-free part
// prod (1 - X_alpha) is kept whole.
XPoly mu_kernel(const RootSystem& rs, const Rat& ord);

// <mu> = prod_i prod_{j>=1} 1/(1 - q_i^j)
QSeries mu_norm(const RootSystem& rs, const Rat& ord);

inline QSeries constant_term(const XPoly& f) { return f.constant_term(); }
QSeries ct_pair(const XPoly& f, const XPoly& g);

} // namespace qrr

#endif
