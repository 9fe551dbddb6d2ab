#include "qrr/dilog.hpp"

#include <cmath>

namespace qrr {

namespace {

constexpr double kPi = 3.14159265358979323846;

double li2(double z) {
  // series below 1/2, reflection above; double precision
  if (z < 0 || z > 1) throw std::domain_error("li2: argument outside [0,1]");
  if (z > 0.5) return kPi * kPi / 6 - std::log(z) * std::log1p(-z) - li2(1 - z);
  double term = z, sum = 0;
  for (int k = 1; k < 2000; ++k) {
    sum += term / (static_cast<double>(k) * k);
    term *= z;
    if (term < 1e-20) break;
  }
  return sum;
}

} // namespace

double rogers_L(double z) {
  if (z <= 0 || z >= 1) {
    if (z == 0) return 0;
    throw std::domain_error("rogers_L: need 0 < z < 1");
  }
  return li2(z) + 0.5 * std::log(z) * std::log1p(-z);
}

std::vector<std::vector<Rat>> a_matrix(const RootSystem& rs, bool flat) {
  auto g = rs.gram_P();
  if (!flat)
    for (auto& row : g)
      for (auto& x : row) x *= 2;
  return g;
}

std::vector<std::vector<Rat>> a_matrix_tadpole(int n, bool flat) {
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = Rat(2 * std::min(i + 1, j + 1), flat ? 2 : 1);
  return a;
}

QSystemSpec standard_system(const RootSystem& rs, bool flat) {
  QSystemSpec s;
  s.A = a_matrix(rs, flat);
  s.name = rs.id().str() + (flat ? "-flat" : "");
  for (int nu : rs.nu()) {
    s.lhs_pow.push_back(nu);
    s.weights.push_back(nu);
  }
  return s;
}

QSystemSpec tadpole_system(int n, bool flat) {
  QSystemSpec s;
  s.A = a_matrix_tadpole(n, flat);
  s.name = "T" + std::to_string(n) + (flat ? "-flat" : "");
  s.lhs_pow.assign(n, 1);
  s.weights.assign(n, 1);
  return s;
}

QSystemSpec variant_system(const RootSystem& rs, bool flat) {
  QSystemSpec s;
  s.A = a_matrix(rs, flat);
  const auto& nu = rs.nu();
  Rat nu_lng = rs.nu_long();
  for (int i = 0; i < rs.rank(); ++i) {
    for (int j = 0; j < rs.rank(); ++j) s.A[i][j] /= nu[j];
    s.lhs_pow.push_back(1);
    s.weights.push_back(nu_lng / nu[i]);
  }
  s.name = rs.id().str() + std::string("-variant") + (flat ? "-flat" : "");
  return s;
}

std::optional<std::pair<long, long>> recognize_rational(double x, long max_den, double tol) {
  // continued fractions
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / q1) < tol) return std::make_pair(p1, q1);
    double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  return std::nullopt;
}

QSystemSolution solve_qsystem(const QSystemSpec& spec, double tol, std::vector<double> start) {
  const int n = static_cast<int>(spec.A.size());
  std::vector<std::vector<double>> A(n, std::vector<double>(n));
  std::vector<double> lhs(n), w(n);
  for (int i = 0; i < n; ++i) {
    lhs[i] = rat_double(spec.lhs_pow[i]);
    w[i] = rat_double(spec.weights[i]);
    for (int j = 0; j < n; ++j) A[i][j] = rat_double(spec.A[i][j]);
  }
  std::vector<double> Q = start.empty() ? std::vector<double>(n, 0.5) : std::move(start);
  const double eps = 1e-12;
  auto rhs_prod = [&](int i) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += A[i][j] * std::log(Q[j]);
    return std::exp(s);
  };
  auto residual = [&]() {
    double r = 0;
    for (int i = 0; i < n; ++i)
      r = std::max(r, std::abs(std::pow(1 - Q[i], lhs[i]) - rhs_prod(i)));
    return r;
  };
  QSystemSolution sol;
  double damping = 0.5;
  double last = residual();
  long it = 0;
  const long cap = 1000000;
  for (; it < cap; ++it) {
    double r = residual();
    if (r < tol) break;
    std::vector<double> nx(n);
    for (int i = 0; i < n; ++i) {
      double target = 1 - std::pow(rhs_prod(i), 1.0 / lhs[i]);
      nx[i] = Q[i] + damping * (target - Q[i]);
      nx[i] = std::min(1 - eps, std::max(eps, nx[i]));
    }
    Q = nx;
    double nr = residual();
    if (nr > last * 1.5 && damping > 1.0 / 64) damping *= 0.5; // overshoot guard
    last = nr;
    // Newton polish in log coordinates once the iteration is close
    if (nr < 1e-6) {
      for (int polish = 0; polish < 60 && residual() > tol; ++polish) {
        // G_i = lhs_i*log(1-Q_i) - sum_j A_ij log Q_j = 0
        std::vector<std::vector<double>> J(n, std::vector<double>(n));
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) {
          g[i] = lhs[i] * std::log1p(-Q[i]);
          for (int j = 0; j < n; ++j) {
            g[i] -= A[i][j] * std::log(Q[j]);
            J[i][j] = -A[i][j] / Q[j];
          }
          J[i][i] -= lhs[i] / (1 - Q[i]);
        }
        // solve J dx = -g
        for (int col = 0; col < n; ++col) {
          int piv = col;
          for (int r2 = col + 1; r2 < n; ++r2)
            if (std::abs(J[r2][col]) > std::abs(J[piv][col])) piv = r2;
          std::swap(J[piv], J[col]);
          std::swap(g[piv], g[col]);
          for (int r2 = 0; r2 < n; ++r2) {
            if (r2 == col) continue;
            double f = J[r2][col] / J[col][col];
            for (int c2 = col; c2 < n; ++c2) J[r2][c2] -= f * J[col][c2];
            g[r2] -= f * g[col];
          }
        }
        for (int i = 0; i < n; ++i) {
          double dx = -g[i] / J[i][i];
          dx = std::max(-0.5 * Q[i], std::min(0.5 * (1 - Q[i]), dx));
          Q[i] = std::min(1 - eps, std::max(eps, Q[i] + dx));
        }
      }
      break;
    }
  }
  sol.Q = Q;
  sol.residual = residual();
  sol.iterations = it;
  sol.converged = sol.residual < std::max(tol, 1e-10);
  double Lsum = 0;
  for (int i = 0; i < n; ++i) Lsum += w[i] * rogers_L(Q[i]);
  sol.L = 6.0 / (kPi * kPi) * Lsum;
  sol.recognized = recognize_rational(sol.L);
  return sol;
}

ClosedForms closed_forms(Family fam, int rank) {
  const long n = rank;
  switch (fam) {
    case Family::A:
      return {Rat(n * (n + 1), n + 3), Rat(2 * n, n + 3), Rat(n * (n + 1), n + 4),
              Rat(n, n + 4)};
    case Family::B:
      return {Rat(n * (2 * n - 1), n + 1), Rat(2 * n - 1, n + 1),
              Rat(2 * n * (2 * n - 1), 2 * n + 3), Rat(2 * n - 1, 2 * n + 3)};
    case Family::C:
      return {Rat(n), Rat(1), Rat(2 * n * (n + 1), 2 * n + 3), Rat(n + 1, 2 * n + 3)};
    case Family::D:
      return {Rat(n - 1), Rat(1), Rat(2 * (n - 1) * n, 2 * n + 1), Rat(n, 2 * n + 1)};
    case Family::E:
      if (rank == 6) return {Rat(36, 7), Rat(6, 7), Rat(24, 5), Rat(2, 5)};
      if (rank == 7) return {Rat(63, 10), Rat(7, 10), Rat(6), Rat(1, 3)};
      return {Rat(15, 2), Rat(1, 2), Rat(80, 11), Rat(8, 33)};
    case Family::F:
      return {Rat(36, 7), Rat(6, 7), Rat(24, 5), Rat(2, 5)};
    case Family::G:
      return {Rat(3), Rat(1), Rat(8, 3), Rat(4, 9)};
    case Family::T:
      return {Rat(n * (2 * n + 1), 2 * n + 3), Rat(2 * n, 2 * n + 3),
              Rat(n * (2 * n + 1), 2 * n + 4), Rat(n, 2 * n + 4)};
  }
  throw std::invalid_argument("closed_forms: bad family");
}

std::vector<TableRow> dilog_table(int max_rank, double tol) {
  std::vector<TableRow> rows;
  auto add_rs = [&](const RootSystemId& id) {
    TableRow row;
    row.system = id.str();
    if (id.family == Family::T) {
      row.coxeter = 2 * id.rank + 1; // folded ladder length
      row.plain = solve_qsystem(tadpole_system(id.rank, false), tol);
      row.flat = solve_qsystem(tadpole_system(id.rank, true), tol);
    } else {
      auto rs = RootSystem::build(id);
      row.coxeter = rs.coxeter_h();
      row.plain = solve_qsystem(standard_system(rs, false), tol);
      row.flat = solve_qsystem(standard_system(rs, true), tol);
    }
    row.closed = closed_forms(id.family, id.rank);
    row.err_plain = std::abs(row.plain.L - rat_double(row.closed.L));
    row.err_flat = std::abs(row.flat.L - rat_double(row.closed.L_flat));
    rows.push_back(std::move(row));
  };
  for (int n = 1; n <= max_rank; ++n) add_rs({Family::A, n});
  for (int n = 2; n <= max_rank; ++n) add_rs({Family::B, n});
  for (int n = 2; n <= max_rank; ++n) add_rs({Family::C, n});
  for (int n = 4; n <= max_rank; ++n) add_rs({Family::D, n});
  for (int n = 6; n <= 8; ++n) add_rs({Family::E, n});
  add_rs({Family::F, 4});
  add_rs({Family::G, 2});
  for (int n = 1; n <= max_rank; ++n) add_rs({Family::T, n});
  return rows;
}

} // namespace qrr
