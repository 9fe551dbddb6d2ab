#include "qrr/xpoly.hpp"

#include <sstream>

namespace qrr {

XPoly XPoly::one(const RootSystem& rs, const Rat& order) {
  XPoly f(rs, order);
  f.t_.emplace(Weight::zero(rs.rank()), QSeries::one(order));
  return f;
}

XPoly XPoly::monomial(const RootSystem& rs, const Weight& w, const QSeries& s) {
  XPoly f(rs, s.order());
  if (!s.is_zero()) f.t_.emplace(w, s);
  return f;
}

XPoly XPoly::monomial(const RootSystem& rs, const Weight& w, const Rat& order) {
  return monomial(rs, w, QSeries::one(order));
}

XPoly XPoly::orbit_sum(const RootSystem& rs, const Weight& b, const Rat& order) {
  XPoly f(rs, order);
  for (const auto& w : rs.weyl_orbit(b)) f.t_.emplace(w, QSeries::one(order));
  return f;
}

void XPoly::add_term(const Weight& w, const QSeries& s) {
  if (s.is_zero()) return;
  auto it = t_.find(w);
  if (it == t_.end()) {
    t_.emplace(w, s.truncated(ord_));
  } else {
    it->second += s;
    if (it->second.is_zero()) t_.erase(it);
  }
}

void XPoly::add_monomial(const Weight& w, const Rat& qexp, const Rat& coeff) {
  add_term(w, QSeries::monomial(qexp, coeff, ord_));
}

QSeries XPoly::coeff(const Weight& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? QSeries::zero(ord_) : it->second;
}

XPoly& XPoly::operator+=(const XPoly& o) {
  ord_ = std::min(ord_, o.ord_);
  for (const auto& [w, s] : o.t_) add_term(w, s);
  for (auto& [w, s] : t_) s = s.truncated(ord_);
  return *this;
}

XPoly& XPoly::operator-=(const XPoly& o) {
  ord_ = std::min(ord_, o.ord_);
  for (const auto& [w, s] : o.t_) add_term(w, -s);
  for (auto& [w, s] : t_) s = s.truncated(ord_);
  return *this;
}

Rat XPoly::min_val_or_order() const {
  Rat v = ord_;
  bool any = false;
  for (const auto& [w, s] : t_) {
    auto l = s.lead_exp();
    if (l && (!any || *l < v)) { v = *l; any = true; }
  }
  return v;
}

XPoly XPoly::mul(const XPoly& o) const {
  Rat ord = std::min(ord_ + o.min_val_or_order(), o.ord_ + min_val_or_order());
  XPoly r(*rs_, ord);
  for (const auto& [wa, sa] : t_) {
    Rat va = sa.min_val_or_order();
    for (const auto& [wb, sb] : o.t_) {
      if (va + sb.min_val_or_order() > ord) continue;
      QSeries prod = sa.mul(sb).truncated(ord);
      if (prod.is_zero()) continue;
      r.add_term(wa + wb, prod);
    }
  }
  return r;
}

void XPoly::mul_binomial(const Weight& w, const Rat& qexp, const Rat& coeff) {
  // f *= (1 + coeff q^{qexp} X_w)
  std::map<Weight, QSeries> extra;
  for (const auto& [wa, sa] : t_) {
    QSeries sh = sa.mul_monomial(qexp, coeff).truncated(ord_);
    if (sh.is_zero()) continue;
    Weight nw = wa + w;
    auto it = extra.find(nw);
    if (it == extra.end()) extra.emplace(nw, sh);
    else it->second += sh;
  }
  for (const auto& [wa, sa] : extra) add_term(wa, sa);
}

XPoly XPoly::mul_series(const QSeries& s) const {
  Rat ord = std::min(ord_ + s.min_val_or_order(), s.order() + min_val_or_order());
  XPoly r(*rs_, ord);
  for (const auto& [w, sa] : t_) {
    QSeries prod = sa.mul(s).truncated(ord);
    if (!prod.is_zero()) r.t_.emplace(w, prod);
  }
  return r;
}

XPoly XPoly::mul_x_monomial(const Weight& w, const Rat& qexp) const {
  XPoly r(*rs_, ord_ + qexp);
  for (const auto& [wa, sa] : t_) r.t_.emplace(wa + w, sa.mul_monomial(qexp));
  return r;
}

XPoly XPoly::apply_reflection(int i) const {
  XPoly r(*rs_, ord_);
  for (const auto& [w, s] : t_) r.add_term(rs_->reflect(w, i), s);
  return r;
}

bool XPoly::symmetric() const {
  for (int i = 1; i <= rs_->rank(); ++i)
    if (!agree(*this, apply_reflection(i))) return false;
  return true;
}

XPoly XPoly::truncated(const Rat& new_order) const {
  XPoly r(*rs_, std::min(new_order, ord_));
  for (const auto& [w, s] : t_) {
    QSeries ts = s.truncated(r.ord_);
    if (!ts.is_zero()) r.t_.emplace(w, ts);
  }
  return r;
}

std::optional<std::pair<Weight, Rat>> XPoly::first_mismatch(const XPoly& a, const XPoly& b) {
  Rat ord = std::min(a.ord_, b.ord_);
  std::optional<std::pair<Weight, Rat>> best;
  auto consider = [&](const Weight& w, const QSeries& x, const QSeries& y) {
    auto m = QSeries::first_mismatch(x.truncated(ord), y.truncated(ord));
    if (m && (!best || *m < best->second)) best = std::make_pair(w, *m);
  };
  for (const auto& [w, s] : a.t_) consider(w, s, b.coeff(w));
  for (const auto& [w, s] : b.t_) {
    if (a.t_.find(w) == a.t_.end()) consider(w, a.coeff(w), s);
  }
  return best;
}

std::string XPoly::str(std::size_t max_terms) const {
  std::ostringstream os;
  std::size_t k = 0;
  for (const auto& [w, s] : t_) {
    if (k++ >= max_terms) { os << " + ..."; break; }
    os << "X" << w.str() << "*(" << s.str(4) << ") ";
  }
  if (t_.empty()) os << "0";
  return os.str();
}

XPoly mu_kernel(const RootSystem& rs, const Rat& ord) {
  if (ord < 0) throw std::invalid_argument("mu_kernel: order must be >= 0");
  XPoly f = XPoly::one(rs, ord);
  const auto& roots = rs.positive_roots();
  const auto& nus = rs.positive_root_nu();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const Weight& a = roots[k];
    const Rat nu = nus[k];
    // (1 - X_a q_a^j) for j >= 0 while j*nu <= ord
    for (Rat e = 0; e <= ord; e += nu) f.mul_binomial(a, e, -1);
    // (1 - X_a^{-1} q_a^{j+1}) for (j+1)*nu <= ord
    for (Rat e = nu; e <= ord; e += nu) f.mul_binomial(-a, e, -1);
  }
  return f;
}

QSeries mu_norm(const RootSystem& rs, const Rat& ord) {
  QSeries prod = QSeries::one(ord);
  for (int nu : rs.nu()) prod = prod.mul(pochhammer(nu, nu, -1, ord));
  return prod.invert().truncated(ord);
}

QSeries ct_pair(const XPoly& f, const XPoly& g) {
  Rat ord = std::min(f.order() + g.min_val_or_order(), g.order() + f.min_val_or_order());
  QSeries s(ord);
  const bool f_smaller = f.support_size() <= g.support_size();
  const XPoly& small = f_smaller ? f : g;
  const XPoly& large = f_smaller ? g : f;
  for (const auto& [w, sa] : small.terms()) {
    QSeries sb = large.coeff(-w);
    if (sb.is_zero()) continue;
    s += sa.mul(sb).truncated(ord);
  }
  return s;
}

} // namespace qrr
