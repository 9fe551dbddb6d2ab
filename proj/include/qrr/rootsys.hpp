#ifndef QRR_ROOTSYS_HPP
#define QRR_ROOTSYS_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>
#include "qrr/rational.hpp"

namespace qrr {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G', T = 'T' };

struct RootSystemId {
  Family family = Family::A;
  int rank = 1;

  static RootSystemId parse(const std::string& s); // "A2", "E8", "T5", ...
  std::string str() const;
  bool valid() const; // T counts as valid id but is not buildable as a RootSystem
};

// Lattice point of P in fundamental-weight coordinates.
struct Weight {
  std::vector<int> c;

  Weight() = default;
  explicit Weight(std::vector<int> v) : c(std::move(v)) {}
  Weight(std::initializer_list<int> l) : c(l) {}
  static Weight zero(int rank) { return Weight(std::vector<int>(rank, 0)); }

  int rank() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    for (int x : c) if (x != 0) return false;
    return true;
  }
  friend Weight operator+(const Weight& a, const Weight& b);
  friend Weight operator-(const Weight& a, const Weight& b);
  Weight operator-() const;
  Weight scaled(int k) const;
  auto operator<=>(const Weight&) const = default;
  std::string str() const;
};

// Canonical residue of a coset in P/Q: coordinates modulo the nontrivial
// Smith-normal-form invariant factors of the Cartan matrix.
struct ClassPQ {
  std::vector<long long> r;
  auto operator<=>(const ClassPQ&) const = default;
  bool is_zero() const {
    for (long long x : r) if (x != 0) return false;
    return true;
  }
  std::string str() const;
};

// Basis (columns, HNF) of a finite-index sublattice of P, in fw coordinates.
struct Sublattice {
  std::vector<std::vector<long long>> basis; // n x n, column-major lower HNF
  long long index = 0;                       // [P : L]
};

class RootSystem {
public:
  // Construct A_n (n>=1), B_n (n>=2), C_n (n>=2), D_n (n>=4), E_{6,7,8},
  // F_4, G_2 with the short-root normalization (alpha_sht, alpha_sht) = 2.
  static RootSystem build(const RootSystemId& id);
  static RootSystem build(const std::string& id) { return build(RootSystemId::parse(id)); }

  const RootSystemId& id() const { return id_; }
  int rank() const { return n_; }
  int ambient_dim() const { return ambient_dim_; }

  const std::vector<std::vector<Rat>>& simple_roots_ambient() const { return simple_roots_; }
  const std::vector<std::vector<Rat>>& simple_coroots_ambient() const { return simple_coroots_; }
  const std::vector<std::vector<Rat>>& fundamental_weights_ambient() const { return fund_weights_; }

  const std::vector<std::vector<int>>& cartan() const { return cartan_; } // a[i][j] = (a_i^vee, a_j)
  const std::vector<int>& nu() const { return nu_; }                      // (a_i,a_i)/2
  int nu_long() const;
  const std::vector<std::vector<Rat>>& gram_P() const { return gram_; }   // (w_i, w_j)
  int coxeter_h() const { return h_; }
  long long m() const { return m_; }                 // least m with (P,P) = (1/m)Z
  long long pq_order() const { return pq_order_; }   // |P/Q|
  const std::vector<int>& minuscule() const { return minuscule_; } // O'
  const std::vector<long long>& pq_invariants() const { return snf_keep_; } // SNF diag > 1
  unsigned long long weyl_order() const;

  // positive roots in fw coordinates, with per-root nu
  const std::vector<Weight>& positive_roots() const { return pos_roots_; }
  const std::vector<int>& positive_root_nu() const { return pos_nu_; }
  Weight simple_root_fw(int i) const;     // column i of the Cartan matrix
  const Weight& highest_short_root() const { return theta_short_; }

  Rat inner(const Weight& b, const Weight& c) const;
  Rat norm2(const Weight& b) const { return inner(b, b); }
  long long coroot_pairing(const Weight& b, int i) const; // (b, a_i^vee) = b.c[i]
  Weight reflect(const Weight& b, int i) const;           // s_i
  bool antidominant(const Weight& b) const;

  std::set<Weight> weyl_orbit(const Weight& b) const;
  Weight dominant_rep(const Weight& b) const;
  Weight antidominant_rep(const Weight& b) const;
  Weight neg_w0(const Weight& c) const; // c' = -w0(c)

  // all b in P_- with (b,b)/2 <= qdeg_bound, sorted by ((b,b), lex)
  std::vector<Weight> enumerate_antidominant(const Rat& qdeg_bound) const;
  // all b in P_- with (b-center, b-center)/2 <= bound
  std::vector<Weight> antidominant_near(const Weight& center, const Rat& bound) const;
  // all b in P with (b,b)/2 <= qdeg_bound (orbit closure of the antidominant shell)
  std::vector<Weight> enumerate_ball(const Rat& qdeg_bound) const;

  // P/Q structure
  ClassPQ class_of(const Weight& b) const;
  ClassPQ class_zero() const;
  ClassPQ class_add(const ClassPQ& a, const ClassPQ& b) const;
  ClassPQ class_neg(const ClassPQ& a) const;
  std::vector<ClassPQ> all_classes() const;
  ClassPQ class_of_label(int r) const; // r in O: 0 -> zero class, else class(w_r)
  // unique r in O with class(w_r) == cls
  int label_of_class(const ClassPQ& cls) const;

  // P[N] = P ∩ N Q^vee as a sublattice of P
  Sublattice sublattice_PN(long long N) const;
  Sublattice lattice_NQ(long long N) const;
  Sublattice lattice_NP(long long N) const;
  static bool sublattice_equal(const Sublattice& a, const Sublattice& b);
  // stated case analysis for P[N] != NQ
  bool lemma_PN_not_NQ_predicted(long long N) const;

  // epsilon coordinates for the classical ambient realizations
  std::vector<Rat> to_epsilon(const Weight& b) const;

  // id of the Langlands dual system (B<->C, others self-dual up to type)
  RootSystemId dual_id() const;

private:
  RootSystemId id_;
  int n_ = 0;
  int ambient_dim_ = 0;
  Rat form_scale_ = 1; // (e_i, e_j) = form_scale * delta_ij
  std::vector<std::vector<Rat>> simple_roots_, simple_coroots_, fund_weights_;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> nu_;
  std::vector<std::vector<Rat>> gram_;
  std::vector<Weight> pos_roots_;
  std::vector<int> pos_nu_;
  Weight theta_short_;
  int h_ = 0;
  long long m_ = 1, pq_order_ = 1;
  std::vector<int> minuscule_;
  // SNF data for P -> P/Q: diag entries and the left transform U
  std::vector<long long> snf_keep_;
  std::vector<std::vector<long long>> snf_U_;
  std::vector<int> snf_rows_; // rows of U corresponding to snf_keep_

  Rat ambient_dot(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
  void enumerate_antidominant_impl(const Weight& center, const Rat& bound,
                                   std::vector<Weight>& out) const;
};

// --- small exact integer linear algebra used for the lattice work ---

// Hermite normal form (column operations): returns lower-triangular basis
// with positive diagonal generating the same column lattice.
std::vector<std::vector<long long>> hnf_columns(std::vector<std::vector<long long>> mat);
// Smith normal form: returns diag entries d_1 | d_2 | ... and U with
// S = U * A * V (V not returned).
std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> a,
                                         std::vector<std::vector<long long>>* U_out);
long long det_int(std::vector<std::vector<long long>> a);

} // namespace qrr

#endif
