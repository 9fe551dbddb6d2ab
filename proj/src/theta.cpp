#include "qrr/theta.hpp"

#include <algorithm>
#include <functional>

namespace qrr {

ThetaSpec ThetaSpec::full(const RootSystem& rs) {
  ThetaSpec s;
  s.classes = rs.all_classes();
  return s;
}

ThetaSpec ThetaSpec::atomic(const RootSystem& rs, int label) {
  ThetaSpec s;
  s.classes.push_back(rs.class_of_label(label));
  return s;
}

ThetaSpec ThetaSpec::of_labels(const RootSystem& rs, const std::vector<int>& labels) {
  ThetaSpec s;
  for (int l : labels) s.classes.push_back(rs.class_of_label(l));
  std::sort(s.classes.begin(), s.classes.end());
  s.classes.erase(std::unique(s.classes.begin(), s.classes.end()), s.classes.end());
  if (s.classes.empty()) throw std::invalid_argument("theta spec must be nonempty");
  return s;
}

bool ThetaSpec::contains(const ClassPQ& c) const {
  return std::binary_search(classes.begin(), classes.end(), c);
}

XPoly theta_xpoly(const RootSystem& rs, const ThetaSpec& spec, const Rat& ord) {
  if (ord < 0) throw std::invalid_argument("theta_xpoly: order must be >= 0");
  if (spec.classes.empty()) throw std::invalid_argument("theta spec must be nonempty");
  XPoly f(rs, ord);
  for (const auto& b : rs.enumerate_ball(ord)) {
    if (!spec.contains(rs.class_of(b))) continue;
    f.add_monomial(b, rs.norm2(b) / 2, 1);
  }
  return f;
}

bool theta_triple_check(int kind, const Rat& ord) {
  auto rs = RootSystem::build("A1");
  if (kind == 0) {
    // sum q^{n^2/4} X^n  ==  prod (1-q^{j/2})(1+q^{(2j-1)/4}X)(1+q^{(2j-1)/4}X^{-1})
    XPoly sum = theta_xpoly(rs, ThetaSpec::full(rs), ord);
    XPoly prod = XPoly::one(rs, ord);
    for (Rat e = Rat(1, 2); e <= ord; e += Rat(1, 2)) {
      QSeries f = QSeries::one(ord);
      f.add_term(e, -1);
      prod = prod.mul_series(f);
    }
    for (Rat e = Rat(1, 4); e <= ord; e += Rat(1, 2)) {
      prod.mul_binomial(Weight{1}, e, 1);
      prod.mul_binomial(Weight{-1}, e, 1);
    }
    return XPoly::agree(sum, prod);
  }
  // theta-check: sum q^{n^2} X^{2n} == prod (1-q^{2j})(1+q^{2j-1}X^2)(1+q^{2j-1}X^{-2})
  XPoly sum = theta_xpoly(rs, ThetaSpec::atomic(rs, 0), ord);
  XPoly prod = XPoly::one(rs, ord);
  for (Rat e = 2; e <= ord; e += 2) {
    QSeries f = QSeries::one(ord);
    f.add_term(e, -1);
    prod = prod.mul_series(f);
  }
  for (Rat e = 1; e <= ord; e += 2) {
    prod.mul_binomial(Weight{2}, e, 1);
    prod.mul_binomial(Weight{-2}, e, 1);
  }
  return XPoly::agree(sum, prod);
}

ThetaMuInner theta_mu_inner(HermiteContext& ctx, const ThetaSpec& spec, const Weight& b,
                            const Weight& c) {
  const RootSystem& rs = ctx.rs();
  if (!rs.antidominant(b) || !rs.antidominant(c))
    throw std::invalid_argument("theta_mu_inner: weights must be antidominant");
  const XPoly& pb = ctx.q_hermite(b);
  const XPoly& pc = ctx.q_hermite(rs.neg_w0(c));
  XPoly th = theta_xpoly(rs, spec, ctx.order());
  ThetaMuInner out{ct_pair(pb.mul(pc), th.mul(ctx.mu())), QSeries(ctx.order()), false};
  Weight d = c - b;
  if (spec.contains(rs.class_of(d))) {
    // <P_b P_{c'} theta mu> = q^{(b-c)^2/2} <theta mu> and <theta mu> = 1
    out.expected = QSeries::monomial(rs.norm2(d) / 2, 1, ctx.order());
  }
  out.matches = QSeries::agree(out.computed.truncated(ctx.order()), out.expected);
  return out;
}

namespace {

void chain_walk(const RootSystem& rs, const std::vector<ThetaSpec>& specs, std::size_t depth,
                const Weight& prev, const Rat& partial, const Rat& ord,
                const QSeries& denom_so_far, std::map<Weight, QSeries>& out) {
  const std::size_t p = specs.size();
  // contribution of one more chain point b with class(b - prev) in specs[depth]
  for (const auto& b : rs.antidominant_near(prev, ord - partial)) {
    Weight diff = b - prev;
    if (!specs[depth].contains(rs.class_of(diff))) continue;
    Rat expo = partial + rs.norm2(diff) / 2;
    // denominators: product over simple roots of (q_j; q_j)_{-(alpha_j^vee, b)}
    QSeries denom = denom_so_far;
    for (int i = 1; i <= rs.rank(); ++i) {
      long long cnt = -rs.coroot_pairing(b, i);
      denom = denom.mul(pochhammer(rs.nu()[i - 1], rs.nu()[i - 1], cnt, ord));
    }
    if (depth + 1 == p) {
      QSeries term = denom.invert().mul_monomial(expo).truncated(ord);
      auto it = out.find(b);
      if (it == out.end()) out.emplace(b, term);
      else it->second += term;
    } else {
      chain_walk(rs, specs, depth + 1, b, expo, ord, denom, out);
    }
  }
}

} // namespace

std::map<Weight, QSeries> expand_product(const RootSystem& rs,
                                         const std::vector<ThetaSpec>& specs, const Rat& ord) {
  if (specs.empty()) throw std::invalid_argument("expand_product: need p >= 1");
  std::map<Weight, QSeries> out;
  chain_walk(rs, specs, 0, Weight::zero(rs.rank()), 0, ord, QSeries::one(ord), out);
  return out;
}

XPoly free_chain_product(const RootSystem& rs, const std::vector<ThetaSpec>& specs,
                         const Rat& ord) {
  // all chains b_1..b_p in P with q^{(b_1^2 + (b_1-b_2)^2 + ...)/2} X_{b_p}
  XPoly acc(rs, ord);
  std::function<void(std::size_t, const Weight&, const Rat&)> walk =
      [&](std::size_t depth, const Weight& prev, const Rat& partial) {
        // shifted ball: b with (b - prev)^2/2 <= ord - partial
        Rat budget = ord - partial;
        for (const auto& d : rs.enumerate_ball(budget)) {
          if (!specs[depth].contains(rs.class_of(d))) continue;
          Rat expo = partial + rs.norm2(d) / 2;
          Weight b = prev + d;
          if (depth + 1 == specs.size()) acc.add_monomial(b, expo, 1);
          else walk(depth + 1, b, expo);
        }
      };
  walk(0, Weight::zero(rs.rank()), 0);
  return acc;
}

bool reconstruction_check(HermiteContext& ctx, const std::vector<ThetaSpec>& specs) {
  const RootSystem& rs = ctx.rs();
  const Rat ord = ctx.order();
  auto coeffs = expand_product(rs, specs, ord);
  XPoly lhs(rs, ord);
  for (const auto& [b, s] : coeffs) lhs += ctx.q_hermite(b).mul_series(s).truncated(ord);
  XPoly rhs = XPoly::one(rs, ord);
  for (const auto& spec : specs) rhs = rhs.mul(theta_xpoly(rs, spec, ord));
  rhs = rhs.mul_series(ctx.mu_norm_series().pow(static_cast<unsigned>(specs.size())));
  return XPoly::agree(lhs.truncated(ord), rhs.truncated(ord));
}

} // namespace qrr
