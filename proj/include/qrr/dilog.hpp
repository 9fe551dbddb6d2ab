#ifndef QRR_DILOG_HPP
#define QRR_DILOG_HPP

#include <optional>
#include <string>
#include <vector>
#include "qrr/rootsys.hpp"

namespace qrr {

// Algebraic fixed-point system (1-Q_i)^{lhs_pow_i} = prod_j Q_j^{E_ij} with
// dilogarithm weights for the L-sum.
struct QSystemSpec {
  std::vector<std::vector<Rat>> A;  // the exponent matrix actually used
  std::vector<Rat> lhs_pow;         // exponent on (1 - Q_i)
  std::vector<Rat> weights;         // L = (6/pi^2) sum w_i L(Q_i)
  std::string name;
};

struct QSystemSolution {
  std::vector<double> Q;
  double residual = 0;
  double L = 0;
  std::optional<std::pair<long, long>> recognized; // p/q with q <= 1000
  long iterations = 0;
  bool converged = false;
};

// Rogers dilogarithm L(z) = Li2(z) + log(z)log(1-z)/2 on (0,1)
double rogers_L(double z);

// A-matrix: 2*gram_P, or gram_P for the flat variant; tadpole a_ij = 2 min(i,j)
std::vector<std::vector<Rat>> a_matrix(const RootSystem& rs, bool flat);
std::vector<std::vector<Rat>> a_matrix_tadpole(int n, bool flat);

QSystemSpec standard_system(const RootSystem& rs, bool flat);
QSystemSpec tadpole_system(int n, bool flat);
// the variant 1 - Q_i = prod Q_j^{a_ij/nu_j} with weights nu_lng/nu_i
QSystemSpec variant_system(const RootSystem& rs, bool flat);

QSystemSolution solve_qsystem(const QSystemSpec& spec, double tol = 1e-12,
                              std::vector<double> start = {});

// closed forms from the reference table; returns {L, c_eff} rationals
struct ClosedForms {
  Rat L, c_eff, L_flat, c_eff_flat;
};
ClosedForms closed_forms(Family fam, int rank);

struct TableRow {
  std::string system;
  int coxeter = 0;
  QSystemSolution plain, flat;
  ClosedForms closed;
  double err_plain = 0, err_flat = 0;
};

// every family/rank up to max_rank plus E, F, G and tadpoles
std::vector<TableRow> dilog_table(int max_rank, double tol = 1e-12);

std::optional<std::pair<long, long>> recognize_rational(double x, long max_den = 1000,
                                                        double tol = 1e-9);

} // namespace qrr

#endif
