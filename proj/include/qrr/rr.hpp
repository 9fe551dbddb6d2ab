#ifndef QRR_RR_HPP
#define QRR_RR_HPP

#include <set>
#include "qrr/theta.hpp"

#include "json.hpp"

namespace qrr {

// One level-p series: classes varpi_1..varpi_p and the correction weight
// c = -omega_r (r = 0 means c = 0).
struct XiSpec {
  const RootSystem* rs = nullptr;
  int p = 1;
  std::vector<ThetaSpec> classes;
  int r = 0;

  static XiSpec make(const RootSystem& rs, std::vector<ThetaSpec> classes, int r);
  Weight c_weight() const;
};

// unique r in O making the series nonzero for atomic classes
int forced_r(const RootSystem& rs, const std::vector<int>& atomic_labels);

// right-hand multi-sum: chains b_1..b_{p-1} in P_- with the class
// constraints; returns the series, and the number of contributing chains if
// chains != nullptr (0 flags an empty constraint set)
QSeries xi_multisum(const XiSpec& spec, const Rat& ord, long* chains = nullptr);

// direct constant-term evaluation <mu>^{p-1} * CT(prod theta_i * P_{c'} * mu)
QSeries xi_ct(const XiSpec& spec, const Rat& ord);
QSeries xi_ct(HermiteContext& ctx, const XiSpec& spec);

// fractional parts of exponents carrying nonzero coefficients
std::set<Rat> exponent_classes(const QSeries& s);

// generating function of constrained ladder monomials: sequences a_1..a_m,
// 0 <= a_i < 4, adjacent entries may not both exceed 1; weight sum i*a_i.
// clamp_start additionally bounds the first site by 1 (a phantom saturated
// site at position 0); that variant matches the level-three ladder factor,
// while the free variant is the h = 3/80 minimal-model character
QSeries ramond_character(const Rat& ord, bool clamp_start = true);

// ---- the gl_{n+1} variant ----------------------------------------------

// chain multi-sum over increasing integer vectors of length n+1 with the
// trace-class constraints xi(b) = sum u_i mod (n+1)
QSeries gl_xi_multisum(int n, int p, const std::vector<std::vector<int>>& classes, int r,
                       const Rat& ord);
// the trace part of the gl sum for atomic labels j_1..j_p: chains of trace
// coordinates in (1/(n+1))Z with increments in j_i/(n+1) + Z and quadratic
// weight (n+1) * (chain form) / 2; equals the gl sum divided by the A_n sum
QSeries gl_trace_factor(int n, const std::vector<int>& labels, int r, const Rat& ord);
int gl_forced_r(int n, const std::vector<int>& atomic_labels);

// ---- identity registry ---------------------------------------------------

using json = nlohmann::json;

struct IdentityRecord {
  std::string id;
  json lhs;
  json rhs;
  Rat default_order;
};

struct VerifyReport {
  std::string id;
  Rat order = 0;          // requested comparison order
  Rat compared_order = 0; // actual min order of both sides
  bool pass = false;
  std::optional<Rat> first_mismatch;
  long elapsed_ms = 0;
};

// evaluate a recipe expression at the given order
QSeries eval_expr(const json& expr, const Rat& ord);

const std::vector<IdentityRecord>& builtin_registry();
// entries from a manifest file {"identities":[{"id","order","lhs","rhs"}]}
std::vector<IdentityRecord> load_manifest(const std::string& path);

VerifyReport verify_identity(const IdentityRecord& rec, const Rat& ord);
// lookup in builtin + extra entries; throws on unknown id
VerifyReport verify_identity(const std::string& id, const Rat& ord,
                             const std::vector<IdentityRecord>& extra = {});

} // namespace qrr

#endif
