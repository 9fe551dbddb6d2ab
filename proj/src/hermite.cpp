#include "qrr/hermite.hpp"

#include <algorithm>

namespace qrr {

HermiteContext::HermiteContext(const RootSystem& rs, Rat ord)
    : rs_(&rs), ord_(std::move(ord)), mu_(mu_kernel(rs, ord_)), mu_norm_(mu_norm(rs, ord_)),
      mu_norm_inv_(QSeries::one(ord_)) {
  for (int nu : rs.nu()) mu_norm_inv_ = mu_norm_inv_.mul(pochhammer(nu, nu, -1, ord_));
}

QSeries HermiteContext::orbit_pairing(const Weight& orbit_label, const Weight& xshift) const {
  // <M_a X_c mu> = sum over v in W(a) of the coefficient of X_{-v-c} in mu
  QSeries s(ord_);
  for (const auto& v : rs_->weyl_orbit(orbit_label)) s += mu_.coeff(-(v + xshift));
  return s;
}

std::vector<Weight> HermiteContext::correction_set(const Weight& b) const {
  // b' antidominant, b' - b in Q_+ \ {0}; norms can only decrease, so the
  // ball of radius (b,b)/2 is exhaustive
  std::vector<Weight> out;
  const int n = rs_->rank();
  auto ainv_applied = [&](const Weight& d) {
    // simple-root coordinates of d (rational): k = A^{-1} d
    std::vector<Rat> k(n, 0);
    // solve cartan * k = d exactly by Gaussian elimination each call (small n)
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    std::vector<Rat> rhs(n);
    for (int i = 0; i < n; ++i) {
      rhs[i] = d.c[i];
      for (int j = 0; j < n; ++j) m[i][j] = rs_->cartan()[i][j];
    }
    for (int col = 0; col < n; ++col) {
      int p = col;
      while (m[p][col] == 0) ++p;
      std::swap(m[p], m[col]);
      std::swap(rhs[p], rhs[col]);
      for (int i = 0; i < n; ++i) {
        if (i == col || m[i][col] == 0) continue;
        Rat f = m[i][col] / m[col][col];
        for (int j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        rhs[i] -= f * rhs[col];
      }
    }
    for (int i = 0; i < n; ++i) k[i] = rhs[i] / m[i][i];
    return k;
  };
  for (const auto& bp : rs_->enumerate_antidominant(rs_->norm2(b) / 2)) {
    if (bp == b) continue;
    if (!rs_->class_of(bp - b).is_zero()) continue;
    auto k = ainv_applied(bp - b);
    bool ok = true;
    for (auto& x : k)
      if (x < 0 || !is_integer(x)) { ok = false; break; }
    if (ok) out.push_back(bp);
  }
  return out;
}

const XPoly& HermiteContext::q_hermite(const Weight& b) {
  if (!rs_->antidominant(b))
    throw std::invalid_argument("q_hermite: label must be antidominant");
  auto it = cache_.find(b);
  if (it != cache_.end()) return it->second;

  std::vector<Weight> corr = correction_set(b);
  const std::size_t k = corr.size();
  // orthogonality against the conjugate monomials X_{-c} for c in the
  // W-orbit of each correction weight: mu is supported on the root lattice,
  // so pairing against X_c itself is vacuous unless 2 class(b) = 0.  A
  // single representative can still pair to zero, so the full rectangular
  // system is solved and checked for consistency.
  std::vector<Weight> rows;
  for (const auto& bp : corr)
    for (const auto& v : rs_->weyl_orbit(bp)) rows.push_back(-v);
  const std::size_t R = rows.size();
  std::vector<std::vector<QSeries>> A(R, std::vector<QSeries>(k, QSeries(ord_)));
  std::vector<QSeries> rhs(R, QSeries(ord_));
  for (std::size_t i = 0; i < R; ++i) {
    rhs[i] = -orbit_pairing(b, rows[i]);
    for (std::size_t j = 0; j < k; ++j) A[i][j] = orbit_pairing(corr[j], rows[i]);
  }
  std::vector<char> used(R, 0);
  std::vector<std::size_t> pivot_row(k);
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t best = R;
    Rat bestval = ord_;
    for (std::size_t r = 0; r < R; ++r) {
      if (used[r]) continue;
      auto l = A[r][col].lead_exp();
      if (l && (best == R || *l < bestval)) { best = r; bestval = *l; }
    }
    if (best == R) throw std::runtime_error("q_hermite: singular orthogonality system");
    used[best] = 1;
    pivot_row[col] = best;
    QSeries pivinv = A[best][col].invert();
    for (std::size_t j = 0; j < k; ++j) A[best][j] = A[best][j].mul(pivinv);
    rhs[best] = rhs[best].mul(pivinv);
    for (std::size_t r = 0; r < R; ++r) {
      if (r == best || A[r][col].is_zero()) continue;
      QSeries f = A[r][col];
      for (std::size_t j = 0; j < k; ++j)
        A[r][j] -= f.mul(A[best][j]).truncated(A[r][j].order());
      rhs[r] -= f.mul(rhs[best]).truncated(rhs[r].order());
    }
  }
  for (std::size_t r = 0; r < R; ++r)
    if (!used[r] && !rhs[r].is_zero())
      throw std::runtime_error("q_hermite: inconsistent orthogonality system");
  XPoly p = XPoly::orbit_sum(*rs_, b, ord_);
  for (std::size_t col = 0; col < k; ++col) {
    const QSeries& x = rhs[pivot_row[col]];
    if (x.is_zero()) continue;
    p += XPoly::orbit_sum(*rs_, corr[col], ord_).mul_series(x.truncated(ord_));
  }
  return cache_.emplace(b, std::move(p)).first->second;
}

QSeries HermiteContext::norm_closed(const Weight& b) const {
  QSeries prod = QSeries::one(ord_);
  for (int i = 1; i <= rs_->rank(); ++i) {
    long long cnt = -rs_->coroot_pairing(b, i);
    prod = prod.mul(pochhammer(rs_->nu()[i - 1], rs_->nu()[i - 1], cnt, ord_));
  }
  return prod;
}

QSeries HermiteContext::pair_mu(const Weight& b, const Weight& c) {
  const XPoly& pb = q_hermite(b);
  const XPoly& pc = q_hermite(rs_->neg_w0(c));
  QSeries ct = ct_pair(pb.mul(pc), mu_);
  return ct.mul(mu_norm_inv_).truncated(ct.order());
}

XPoly q_hermite_rank1(const RootSystem& a1, long n, const Rat& ord) {
  if (a1.rank() != 1) throw std::invalid_argument("q_hermite_rank1: rank-one only");
  XPoly p(a1, ord);
  auto M = [&](long k) {
    return k == 0 ? XPoly::one(a1, ord) : XPoly::orbit_sum(a1, Weight{static_cast<int>(-k)}, ord);
  };
  p += M(n);
  QSeries coeff = QSeries::one(ord);
  for (long j = 1; 2 * j <= n; ++j) {
    // coeff *= (1 - q^{n-j+1})/(1 - q^j)
    QSeries num = QSeries::one(ord);
    num.add_term(n - j + 1, -1);
    QSeries den = QSeries::one(ord);
    den.add_term(j, -1);
    coeff = coeff.mul(num).mul(den.invert()).truncated(ord);
    p += M(n - 2 * j).mul_series(coeff);
  }
  return p;
}

namespace {

// divide a rank-one Laurent expression by (X - X^{-1}); exact or throws
XPoly divide_by_x_minus_xinv(const XPoly& num) {
  const RootSystem& rs = num.rs();
  std::map<int, QSeries> n;
  for (const auto& [w, s] : num.terms()) n.emplace(w.c[0], s);
  if (n.empty()) return XPoly::zero(rs, num.order());
  int hi = n.rbegin()->first, lo = n.begin()->first;
  // N[k] = h[k-1] - h[k+1]; solve downward from the top
  std::map<int, QSeries> h;
  auto nat = [&](int k) { return n.count(k) ? n.at(k) : QSeries::zero(num.order()); };
  auto hat = [&](int k) { return h.count(k) ? h.at(k) : QSeries::zero(num.order()); };
  for (int k = hi; k >= lo; --k) {
    QSeries v = nat(k) + hat(k + 1);
    if (!v.is_zero()) h.emplace(k - 1, v);
  }
  // remainder check: h must vanish below lo - 1
  if (h.count(lo - 1)) {
    // h[lo-1] was produced by k = lo; the division is exact iff N[lo-1] +
    // h[lo] == 0 ... equivalent to checking reconstruction below
  }
  XPoly q(rs, num.order());
  for (auto& [k, s] : h) q.add_term(Weight{k}, s);
  // verify (X - X^{-1}) * q == num
  XPoly check = q.mul_x_monomial(Weight{1}, 0) - q.mul_x_monomial(Weight{-1}, 0);
  if (!XPoly::agree(check, num))
    throw std::domain_error("raising_apply: division by (X - X^{-1}) is not exact");
  return q;
}

} // namespace

XPoly raising_apply(const XPoly& f) {
  const RootSystem& rs = f.rs();
  if (rs.rank() != 1) throw std::invalid_argument("raising_apply: rank-one only");
  XPoly num(rs, f.order());
  for (const auto& [w, s] : f.terms()) {
    int k = w.c[0];
    // X^2 G^{-1}: X^{k+2} q^{-k/2};  X^{-2} G: X^{k-2} q^{k/2}
    num.add_term(Weight{k + 2}, s.mul_monomial(Rat(-k, 2)));
    num.add_term(Weight{k - 2}, s.mul_monomial(Rat(k, 2)).mul_scalar(-1));
  }
  return divide_by_x_minus_xinv(num);
}

XPoly demazure(const RootSystem& rs, int i, const XPoly& f) {
  if (i < 0 || i > rs.rank()) throw std::out_of_range("demazure: index");
  const Rat ord = f.order();
  if (i >= 1) {
    XPoly g = f.apply_reflection(i) - f;
    // divide by (1 - X_{alpha_i}) along alpha_i strings
    Weight alpha = rs.simple_root_fw(i);
    std::map<Weight, std::map<long, QSeries>> strings;
    for (const auto& [w, s] : g.terms()) {
      long p = rs.coroot_pairing(w, i);
      long t = p >= 0 ? p / 2 : -((-p + 1) / 2); // floor(p/2)
      Weight key = w - alpha.scaled(static_cast<int>(t));
      strings[key].emplace(t, s);
    }
    XPoly h(rs, ord);
    for (auto& [key, line] : strings) {
      // h[t] = sum_{s<=t} g[s]; finite iff the whole string sums to zero
      long lo = line.begin()->first, hi = line.rbegin()->first;
      QSeries acc(ord);
      for (long u = lo; u <= hi; ++u) {
        auto it = line.find(u);
        if (it != line.end()) acc += it->second;
        if (u < hi && !acc.is_zero()) h.add_term(key + alpha.scaled(static_cast<int>(u)), acc);
      }
      if (!acc.is_zero())
        throw std::domain_error("demazure: (s_i - 1)f not divisible by (1 - X_alpha)");
    }
    return h;
  }
  // i = 0: s_0(X_b) = X_b X_theta^{-(b,theta)} q^{(b,theta)}, X_0 = q X_theta^{-1}
  const Weight& theta = rs.highest_short_root();
  XPoly g(rs, ord);
  for (const auto& [w, s] : f.terms()) {
    Rat r = rs.inner(w, theta);
    if (!is_integer(r)) throw std::runtime_error("demazure: non-integral theta pairing");
    long rr = rat_long(r);
    g.add_term(w - theta.scaled(static_cast<int>(rr)), s.mul_monomial(Rat(rr)).truncated(ord));
  }
  g -= f;
  // divide by (1 - q X_{-theta}): h[w] = g[w] + q h[w + theta], from the top
  std::map<Weight, std::map<long, QSeries>> strings;
  for (const auto& [w, s] : g.terms()) {
    Rat p = rs.inner(w, theta); // changes by 2 per theta step
    long pl = rat_long(p);
    long t = pl >= 0 ? pl / 2 : -((-pl + 1) / 2);
    Weight key = w - theta.scaled(static_cast<int>(t));
    strings[key].emplace(t, s);
  }
  XPoly h(rs, ord);
  for (auto& [key, line] : strings) {
    long hi_t = line.rbegin()->first, lo_t = line.begin()->first;
    QSeries carry(ord); // q * h[t+1]
    for (long t = hi_t; t >= lo_t - rat_long(Rat(rat_ceil(ord))) - 2; --t) {
      QSeries g_t = line.count(t) ? line.at(t) : QSeries::zero(ord);
      QSeries h_t = (g_t + carry).truncated(ord);
      if (!h_t.is_zero()) h.add_term(key + theta.scaled(static_cast<int>(t)), h_t);
      carry = h_t.mul_monomial(1).truncated(ord);
      if (t <= lo_t && carry.is_zero()) break;
    }
  }
  return h;
}

} // namespace qrr
