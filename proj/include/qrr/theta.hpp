#ifndef QRR_THETA_HPP
#define QRR_THETA_HPP

#include "qrr/hermite.hpp"

namespace qrr {

// Nonempty union of P/Q classes selecting a level-one theta function.
struct ThetaSpec {
  std::vector<ClassPQ> classes; // sorted unique, nonempty

  static ThetaSpec full(const RootSystem& rs);
  static ThetaSpec atomic(const RootSystem& rs, int label);
  static ThetaSpec of_labels(const RootSystem& rs, const std::vector<int>& labels);
  bool contains(const ClassPQ& c) const;
  bool atomic_p() const { return classes.size() == 1; }
};

// theta_varpi = sum over b in P, class(b) in varpi, (b,b)/2 <= ord of
// q^{(b,b)/2} X_b; boundary shell included
XPoly theta_xpoly(const RootSystem& rs, const ThetaSpec& spec, const Rat& ord);

// rank one: sum form of theta (kind=0: full lattice) / theta-check (kind=1:
// even classes) equals the classical product form, up to ord
bool theta_triple_check(int kind, const Rat& ord);

// <P_b P_{c'} theta_varpi mu> computed by constant term; returns the series
// and also validates the closed forms:
//   value = q^{(b-c)^2/2} when class(c-b) in varpi, else 0   (times <theta mu>=1)
struct ThetaMuInner {
  QSeries computed;      // <P_b P_{c'} theta mu>   (note: with mu, not mu_o)
  QSeries expected;      // closed form
  bool matches;
};
ThetaMuInner theta_mu_inner(HermiteContext& ctx, const ThetaSpec& spec, const Weight& b,
                            const Weight& c);

// Coefficients of <mu>^p prod theta_i in the q-Hermite basis: map from the
// final antidominant chain point b_p to its coefficient series.
std::map<Weight, QSeries> expand_product(const RootSystem& rs,
                                         const std::vector<ThetaSpec>& specs, const Rat& ord);

// the unrestricted chain sum: prod theta_i as an XPoly built from all chains
// b_1..b_p in P with monomial X_{b_p} (free counterpart of the expansion)
XPoly free_chain_product(const RootSystem& rs, const std::vector<ThetaSpec>& specs,
                         const Rat& ord);

// assemble sum_b coeff(b) P_b from an expansion and compare with the direct
// product <mu>^p prod theta_i
bool reconstruction_check(HermiteContext& ctx, const std::vector<ThetaSpec>& specs);

} // namespace qrr

#endif
