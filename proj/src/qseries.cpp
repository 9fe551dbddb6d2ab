#include "qrr/qseries.hpp"

#include <array>
#include <sstream>

namespace qrr {

QSeries QSeries::monomial(const Rat& exp, const Rat& coeff, const Rat& order) {
  QSeries s(order);
  s.add_term(exp, coeff);
  return s;
}

void QSeries::add_term(const Rat& e, const Rat& c) {
  if (c == 0 || e > ord_) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

QSeries& QSeries::operator+=(const QSeries& o) {
  if (o.ord_ < ord_) {
    // tighten and drop now-unknown terms
    ord_ = o.ord_;
    t_.erase(t_.upper_bound(ord_), t_.end());
  }
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  if (o.ord_ < ord_) {
    ord_ = o.ord_;
    t_.erase(t_.upper_bound(ord_), t_.end());
  }
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

QSeries QSeries::operator-() const {
  QSeries r(ord_);
  for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
  return r;
}

QSeries QSeries::mul(const QSeries& o) const {
  Rat ord = std::min(ord_ + o.min_val_or_order(), o.ord_ + min_val_or_order());
  QSeries r(ord);
  for (const auto& [ea, ca] : t_) {
    for (const auto& [eb, cb] : o.t_) {
      Rat e = ea + eb;
      if (e > ord) break; // o.t_ sorted ascending
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

QSeries QSeries::mul_monomial(const Rat& e, const Rat& c) const {
  QSeries r(ord_ + e);
  if (c == 0) return r;
  for (const auto& [ea, ca] : t_) r.t_.emplace(ea + e, ca * c);
  return r;
}

QSeries QSeries::mul_scalar(const Rat& c) const {
  QSeries r(ord_);
  if (c == 0) return r;
  for (const auto& [ea, ca] : t_) r.t_.emplace(ea, ca * c);
  return r;
}

QSeries QSeries::pow(unsigned k) const {
  QSeries acc = QSeries::one(ord_);
  for (unsigned i = 0; i < k; ++i) acc = acc.mul(*this);
  return acc;
}

QSeries QSeries::invert() const {
  if (t_.empty())
    throw std::domain_error("QSeries::invert: series is zero up to order " + ord_.str());
  const Rat lead = t_.begin()->first;
  const Rat lead_c = t_.begin()->second;
  // u = (this) / (lead_c q^lead) is a unit with constant term 1, known to
  // ord_ - lead; its inverse is computed densely over a common exponent
  // denominator.
  Rat uord = ord_ - lead;
  if (uord < 0) throw std::domain_error("QSeries::invert: negative effective order");
  Int den = 1;
  for (const auto& [e, c] : t_) den = boost::multiprecision::lcm(den, rat_den(e - lead));
  den = boost::multiprecision::lcm(den, rat_den(uord));
  long N = rat_long(Rat(rat_floor(uord * Rat(den))));
  std::vector<Rat> u(static_cast<std::size_t>(N) + 1, Rat(0));
  for (const auto& [e, c] : t_) {
    Rat k = (e - lead) * Rat(den);
    if (k <= N) u[static_cast<std::size_t>(rat_long(k))] = c / lead_c;
  }
  std::vector<std::size_t> nz; // nonzero indices of u beyond 0
  for (std::size_t k = 1; k < u.size(); ++k)
    if (u[k] != 0) nz.push_back(k);
  std::vector<Rat> g(static_cast<std::size_t>(N) + 1, Rat(0));
  g[0] = 1;
  for (std::size_t k = 1; k <= static_cast<std::size_t>(N); ++k) {
    Rat s(0);
    for (std::size_t j : nz) {
      if (j > k) break;
      if (g[k - j] != 0) s += u[j] * g[k - j];
    }
    if (s != 0) g[k] = -s;
  }
  QSeries r(uord - lead);
  for (std::size_t k = 0; k <= static_cast<std::size_t>(N); ++k) {
    if (g[k] == 0) continue;
    r.add_term(Rat(Int(k), den) - lead, g[k] / lead_c);
  }
  return r;
}

QSeries QSeries::scale_exponents(const Rat& s) const {
  if (s <= 0) throw std::invalid_argument("scale_exponents: scale must be positive");
  QSeries r(ord_ * s);
  for (const auto& [e, c] : t_) r.t_.emplace(e * s, c);
  return r;
}

QSeries QSeries::truncated(const Rat& new_order) const {
  QSeries r(std::min(new_order, ord_));
  for (const auto& [e, c] : t_) {
    if (e > r.ord_) break;
    r.t_.emplace(e, c);
  }
  return r;
}

std::optional<Rat> QSeries::first_mismatch(const QSeries& a, const QSeries& b) {
  Rat ord = std::min(a.ord_, b.ord_);
  auto ia = a.t_.begin(), ib = b.t_.begin();
  while (ia != a.t_.end() || ib != b.t_.end()) {
    bool ea_ok = ia != a.t_.end() && ia->first <= ord;
    bool eb_ok = ib != b.t_.end() && ib->first <= ord;
    if (!ea_ok && !eb_ok) break;
    if (ea_ok && (!eb_ok || ia->first < ib->first)) return ia->first;
    if (eb_ok && (!ea_ok || ib->first < ia->first)) return ib->first;
    if (ia->second != ib->second) return ia->first;
    ++ia; ++ib;
  }
  return std::nullopt;
}

std::vector<std::array<Int, 4>> QSeries::serialize() const {
  std::vector<std::array<Int, 4>> rows;
  rows.reserve(t_.size());
  for (const auto& [e, c] : t_)
    rows.push_back({rat_num(e), rat_den(e), rat_num(c), rat_den(c)});
  return rows;
}

std::string QSeries::str(std::size_t max_terms) const {
  std::ostringstream os;
  if (t_.empty()) os << "0";
  std::size_t k = 0;
  for (const auto& [e, c] : t_) {
    if (k >= max_terms) { os << " + ..."; break; }
    if (k > 0) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rat ac = c < 0 ? Rat(-c) : c;
    if (ac != 1 || e == 0) os << ac.str();
    if (e != 0) {
      if (ac != 1) os << "*";
      os << "q";
      if (e != 1) os << "^" << e.str();
    }
    ++k;
  }
  os << "  (O(q^" << ord_.str() << "))";
  return os.str();
}

QSeries pochhammer(const Rat& a, const Rat& step, long n, const Rat& ord, int sign) {
  QSeries r = QSeries::one(ord);
  if (n < 0) {
    if (step <= 0)
      throw std::domain_error("pochhammer: infinite product needs step > 0");
    Rat e = a;
    // factors with exponent > ord are congruent to 1 up to order
    if (a <= 0)
      throw std::domain_error("pochhammer: infinite product requires positive exponents");
    while (e <= ord) {
      QSeries f = QSeries::one(ord);
      f.add_term(e, sign > 0 ? Rat(-1) : Rat(1));
      r = r.mul(f);
      e += step;
    }
    return r;
  }
  Rat e = a;
  for (long j = 0; j < n; ++j, e += step) {
    QSeries f = QSeries::one(ord);
    f.add_term(e, sign > 0 ? Rat(-1) : Rat(1)); // dropped silently when e > ord
    r = r.mul(f);
  }
  return r;
}

QSeries eta_series(const Rat& scale, const Rat& ord) {
  QSeries p = pochhammer(scale, scale, -1, ord);
  return p.mul_monomial(scale / 24).truncated(ord + scale / 24);
}

QSeries theta_lin(const Rat& A, const Rat& B, bool alternating, const Rat& ord) {
  if (A <= 0) throw std::invalid_argument("theta_lin: need A > 0");
  QSeries r(ord);
  for (int dir = 0; dir < 2; ++dir) {
    long j = dir == 0 ? 0 : -1;
    while (true) {
      Rat e = A * j * j + B * j;
      if (e > ord) {
        // quadratic growth: once past the vertex we can stop
        Rat vertex = -B / (2 * A);
        if ((dir == 0 && Rat(j) > vertex) || (dir == 1 && Rat(j) < vertex)) break;
      } else {
        Rat c = (alternating && (j % 2 != 0)) ? Rat(-1) : Rat(1);
        r.add_term(e, c);
      }
      j += (dir == 0 ? 1 : -1);
    }
  }
  return r;
}

QSeries theta_shift(const Rat& C, const Rat& s, bool alternating, const Rat& ord) {
  // C (j+s)^2 = C j^2 + 2Cs j + C s^2
  return theta_lin(C, 2 * C * s, alternating, ord - C * s * s).mul_monomial(C * s * s).truncated(ord);
}

QSeries theta5(const Rat& m, const Rat& scale, const Rat& ord) {
  Rat t = 2 * m - 1;
  // reduce t into [0, 10) shifting by multiples of 10 (sign flips per shift)
  long shift = rat_long(Rat(rat_floor(t / 10)));
  Rat t0 = t - Rat(10 * shift);
  QSeries s = theta_shift(scale * Rat(100, 40), t0 / 10, true, ord);
  return (shift % 2 != 0) ? -s : s;
}

} // namespace qrr
