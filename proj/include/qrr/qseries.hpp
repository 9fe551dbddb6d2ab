#ifndef QRR_QSERIES_HPP
#define QRR_QSERIES_HPP

#include <map>
#include <optional>
#include <vector>
#include <stdexcept>
#include "qrr/rational.hpp"

namespace qrr {

// Truncated formal power series in q with exact rational exponents and
// coefficients.  Terms with exponent > order() are unknown and dropped;
// comparisons are therefore meaningful only up to min(order).
class QSeries {
public:
  explicit QSeries(Rat order) : ord_(std::move(order)) {}

  static QSeries zero(const Rat& order) { return QSeries(order); }
  static QSeries one(const Rat& order) { return monomial(0, 1, order); }
  static QSeries monomial(const Rat& exp, const Rat& coeff, const Rat& order);

  const Rat& order() const { return ord_; }
  const std::map<Rat, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  // lowest exponent with nonzero coefficient, if any
  std::optional<Rat> lead_exp() const {
    if (t_.empty()) return std::nullopt;
    return t_.begin()->first;
  }
  // valuation used for order propagation: order()+epsilon for the zero series
  Rat min_val_or_order() const { return t_.empty() ? ord_ : t_.begin()->first; }

  Rat coeff(const Rat& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rat(0) : it->second;
  }

  void add_term(const Rat& e, const Rat& c);

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  friend QSeries operator+(QSeries a, const QSeries& b) { a += b; return a; }
  friend QSeries operator-(QSeries a, const QSeries& b) { a -= b; return a; }
  QSeries operator-() const;

  QSeries mul(const QSeries& o) const;
  friend QSeries operator*(const QSeries& a, const QSeries& b) { return a.mul(b); }

  QSeries mul_monomial(const Rat& e, const Rat& c = Rat(1)) const;
  QSeries mul_scalar(const Rat& c) const;
  QSeries pow(unsigned k) const;

  // multiplicative inverse; lowest term may be any monomial c*q^e (exact
  // rational division).  Throws if the series is identically zero up to order.
  QSeries invert() const;

  // q^e -> q^(s*e) for s > 0
  QSeries scale_exponents(const Rat& s) const;

  QSeries truncated(const Rat& new_order) const;

  // first exponent (within min(order)) where the two series differ
  static std::optional<Rat> first_mismatch(const QSeries& a, const QSeries& b);
  static bool agree(const QSeries& a, const QSeries& b) {
    return !first_mismatch(a, b).has_value();
  }

  // sorted (exp_num, exp_den, coeff_num, coeff_den) rows
  std::vector<std::array<Int, 4>> serialize() const;

  std::string str(std::size_t max_terms = 12) const;

private:
  Rat ord_;
  std::map<Rat, Rat> t_;
};

// Pochhammer-type product prod_{j=0}^{n-1} (1 - sign*q^{a + j*step}),
// truncated at ord; n = -1 means the infinite product (requires step > 0).
QSeries pochhammer(const Rat& a, const Rat& step, long n, const Rat& ord, int sign = 1);

// (q^base; q^base)_n for integer n >= 0 (or infinite with n = -1)
inline QSeries poch_qn(const Rat& base, long n, const Rat& ord, int sign = 1) {
  return pochhammer(base, base, n, ord, sign);
}

// Dedekind eta of a scaled argument: q^{scale/24} * prod (1 - q^{scale*j})
QSeries eta_series(const Rat& scale, const Rat& ord);

// sum_{j in Z} (-1)^{j (if alternating)} q^{A j^2 + B j}, A > 0
QSeries theta_lin(const Rat& A, const Rat& B, bool alternating, const Rat& ord);

// sum_{j in Z} (-1)^{j (if alternating)} q^{C (j+s)^2}, C > 0
QSeries theta_shift(const Rat& C, const Rat& s, bool alternating, const Rat& ord);

// the weight-5/2-family unary theta: sum over n = 2m-1+10Z of
// (-1)^{floor(n/10)} q^{scale*n^2/40}
QSeries theta5(const Rat& m, const Rat& scale, const Rat& ord);

} // namespace qrr

#endif
