#ifndef QRR_GAUSS_HPP
#define QRR_GAUSS_HPP

#include <complex>
#include "qrr/rootsys.hpp"

namespace qrr {

using cdouble = std::complex<double>;

// Funct(P/P[N]) with the root-of-unity pairing zeta^{(a,b)}; the residues are
// the HNF box representatives (for C-type odd N this is the prescribed
// fundamental-weight box where the quadratic exponent is evaluated).
class FiniteModule {
public:
  FiniteModule(const RootSystem& rs, long long N);

  const RootSystem& rs() const { return *rs_; }
  long long N() const { return N_; }
  long long index() const { return index_; }
  int size() const { return static_cast<int>(residues_.size()); }
  const std::vector<Weight>& residues() const { return residues_; }
  bool quad_well_defined() const { return quad_well_defined_; }

  int reduce_index(const Weight& w) const;
  // phases
  cdouble zeta_pair(int a, int b) const;  // zeta^{(a,b)}
  // the quadratic phase used by the operators: zeta^{a^2/2} with the
  // primitive square root when that is a class function, otherwise the
  // nonprimitive root zeta^{1/2} = zeta^{(N+1)/2} (odd N), which always is
  cdouble zeta_half_norm(int a) const;

  // gauss sum of the operator phase; a root of unity, drives xi
  cdouble gamma_action() const;
  // table-comparable value: for the ill-defined primitive phase this is the
  // direction of the box sum (its modulus degenerates by the radical)
  cdouble gamma() const;

  // dense pairing table for fast operator application; index capped by caller
  void build_pair_table();
  bool pair_table_ready() const { return !pair_k_.empty(); }

  // operator applications on coefficient vectors over the residues
  std::vector<cdouble> apply_tau_plus(const std::vector<cdouble>& v, cdouble xi,
                                      int power) const; // power = +-1
  std::vector<cdouble> apply_fourier(const std::vector<cdouble>& v, bool conjugate) const;
  std::vector<cdouble> apply_tau_minus(const std::vector<cdouble>& v, cdouble xi,
                                       int power) const;
  std::vector<cdouble> apply_sigma(const std::vector<cdouble>& v, cdouble xi) const;
  std::vector<cdouble> apply_negation(const std::vector<cdouble>& v) const;
  std::vector<cdouble> apply_weyl(const std::vector<cdouble>& v, int simple_i) const;

private:
  const RootSystem* rs_;
  long long N_ = 1;
  long long index_ = 1;
  long long m_ = 1;
  std::vector<Weight> residues_;
  std::vector<std::vector<long long>> hnf_; // P[N] basis
  std::map<Weight, int> lookup_;
  std::vector<long long> half_norm_; // m*(a,a) mod 2mN (primitive phase)
  std::vector<long long> alt_half_;  // ((N+1)/2 * (a,a)) mod N (nonprimitive phase)
  std::vector<std::vector<long long>> gram_m_; // m * gram, integral
  bool quad_well_defined_ = true;
  std::vector<uint32_t> pair_k_; // m*(a,b) mod mN, row-major
  std::vector<cdouble> pair_lut_;

  Weight reduce(const Weight& w) const;
  long long pair_int(const Weight& a, const Weight& b) const; // m*(a,b)
};

// closed-form gamma (B_2 handled through the C-series value)
cdouble gamma_formula(const RootSystemId& id, long long N);

struct ActionCheck {
  long long index = 0;
  double steinberg = 0;        // |tau+ tau-^{-1} tau+  -  tau-^{-1} tau+ tau-^{-1}|
  double sigma_formula = 0;    // explicit sigma vs composed
  double sigma_sq_inversion = 0;
  double steinberg_cubed = 0;  // (sigma tau+^{-1})^3 = sigma^2
  double weyl_commute = 0;
  double pairing_unitarity = 0;
};

// relation checks on random probe vectors; xi^3 = sign * i * gamma
ActionCheck check_action(FiniteModule& fm, int sign = 1, int probes = 4, unsigned seed = 42);

// dimension of the sign-isotypic subspace of Funct(P/P[N])
long skew_dimension(const FiniteModule& fm);

} // namespace qrr

#endif
