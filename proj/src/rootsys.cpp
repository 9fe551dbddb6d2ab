#include "qrr/rootsys.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qrr {

// ---------------------------------------------------------------- Weight

Weight operator+(const Weight& a, const Weight& b) {
  Weight r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}
Weight operator-(const Weight& a, const Weight& b) {
  Weight r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}
Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}
Weight Weight::scaled(int k) const {
  Weight r = *this;
  for (auto& x : r.c) x *= k;
  return r;
}
std::string Weight::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

std::string ClassPQ::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------- ids

RootSystemId RootSystemId::parse(const std::string& s) {
  if (s.size() < 2) throw std::invalid_argument("bad root system id: " + s);
  char f = static_cast<char>(std::toupper(s[0]));
  std::string allowed = "ABCDEFGT";
  if (allowed.find(f) == std::string::npos)
    throw std::invalid_argument("bad root system family: " + s);
  int rank = std::stoi(s.substr(1));
  RootSystemId id{static_cast<Family>(f), rank};
  if (!id.valid()) throw std::invalid_argument("invalid family/rank: " + s);
  return id;
}

std::string RootSystemId::str() const {
  return std::string(1, static_cast<char>(family)) + std::to_string(rank);
}

bool RootSystemId::valid() const {
  switch (family) {
    case Family::A: return rank >= 1;
    case Family::B: return rank >= 2;
    case Family::C: return rank >= 2;
    case Family::D: return rank >= 4;
    case Family::E: return rank >= 6 && rank <= 8;
    case Family::F: return rank == 4;
    case Family::G: return rank == 2;
    case Family::T: return rank >= 1;
  }
  return false;
}

// ------------------------------------------------- integer linear algebra

long long det_int(std::vector<std::vector<long long>> a) {
  const int n = static_cast<int>(a.size());
  // Bareiss fraction-free elimination
  long long prev = 1;
  long long sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) { p = i; break; }
      if (p < 0) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::vector<std::vector<long long>> hnf_columns(std::vector<std::vector<long long>> m) {
  const int n = static_cast<int>(m.size());
  const int cols = n == 0 ? 0 : static_cast<int>(m[0].size());
  int pivot_col = 0;
  for (int row = 0; row < n && pivot_col < cols; ++row) {
    // eliminate entries in this row across columns >= pivot_col by gcd steps
    while (true) {
      int nz = -1;
      for (int j = pivot_col + 1; j < cols; ++j)
        if (m[row][j] != 0) { nz = j; break; }
      if (m[row][pivot_col] == 0) {
        if (nz < 0) break;
        for (int i = 0; i < n; ++i) std::swap(m[i][pivot_col], m[i][nz]);
        continue;
      }
      if (nz < 0) break;
      long long a = m[row][pivot_col], b = m[row][nz];
      long long q = b / a;
      for (int i = 0; i < n; ++i) m[i][nz] -= q * m[i][pivot_col];
      if (m[row][nz] != 0) {
        for (int i = 0; i < n; ++i) std::swap(m[i][pivot_col], m[i][nz]);
      }
    }
    if (m[row][pivot_col] == 0) continue; // singular direction; shouldn't happen here
    if (m[row][pivot_col] < 0)
      for (int i = 0; i < n; ++i) m[i][pivot_col] = -m[i][pivot_col];
    // reduce earlier columns against this pivot
    for (int j = 0; j < pivot_col; ++j) {
      long long q = m[row][j] / m[row][pivot_col];
      if (m[row][j] < 0 && m[row][j] % m[row][pivot_col] != 0) --q;
      if (q != 0)
        for (int i = 0; i < n; ++i) m[i][j] -= q * m[i][pivot_col];
    }
    ++pivot_col;
  }
  // keep first pivot_col columns (full rank expected)
  std::vector<std::vector<long long>> out(n, std::vector<long long>(pivot_col, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < pivot_col; ++j) out[i][j] = m[i][j];
  return out;
}

std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> a,
                                         std::vector<std::vector<long long>>* U_out) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<long long>> U(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) U[i][i] = 1;

  auto row_op = [&](int dst, int src, long long q) {
    for (int j = 0; j < n; ++j) { a[dst][j] -= q * a[src][j]; U[dst][j] -= q * U[src][j]; }
  };
  auto col_op = [&](int dst, int src, long long q) {
    for (int i = 0; i < n; ++i) a[i][dst] -= q * a[i][src];
  };
  auto row_swap = [&](int i, int j) { std::swap(a[i], a[j]); std::swap(U[i], U[j]); };
  auto col_swap = [&](int i, int j) {
    for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
  };

  for (int t = 0; t < n; ++t) {
    // find a nonzero pivot in the trailing block
    int pi = -1, pj = -1;
    for (int i = t; i < n && pi < 0; ++i)
      for (int j = t; j < n; ++j)
        if (a[i][j] != 0) { pi = i; pj = j; break; }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        long long q = a[i][t] / a[t][t];
        row_op(i, t, q);
        if (a[i][t] != 0) { row_swap(t, i); changed = true; }
      }
      for (int j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        long long q = a[t][j] / a[t][t];
        col_op(j, t, q);
        if (a[t][j] != 0) { col_swap(t, j); changed = true; }
      }
    }
    if (a[t][t] < 0) {
      for (int j = 0; j < n; ++j) { a[t][j] = -a[t][j]; U[t][j] = -U[t][j]; }
    }
  }
  // enforce divisibility d_t | d_{t+1}
  for (int t = 0; t + 1 < n; ++t) {
    for (int u = t + 1; u < n; ++u) {
      if (a[t][t] == 0 || a[u][u] % a[t][t] == 0) continue;
      // add column u to column t, then redo the two-by-two block
      for (int i = 0; i < n; ++i) a[i][t] += a[i][u];
      bool changed = true;
      while (changed) {
        changed = false;
        if (a[u][t] != 0) {
          long long q = a[u][t] / a[t][t];
          row_op(u, t, q);
          if (a[u][t] != 0) { row_swap(t, u); changed = true; }
        }
        if (a[t][u] != 0) {
          long long q = a[t][u] / a[t][t];
          col_op(u, t, q);
          if (a[t][u] != 0) { col_swap(t, u); changed = true; }
        }
      }
      if (a[t][t] < 0)
        for (int j = 0; j < n; ++j) { a[t][j] = -a[t][j]; U[t][j] = -U[t][j]; }
      if (a[u][u] < 0)
        for (int j = 0; j < n; ++j) { a[u][j] = -a[u][j]; U[u][j] = -U[u][j]; }
    }
  }
  std::vector<long long> d(n);
  for (int i = 0; i < n; ++i) d[i] = a[i][i];
  if (U_out) *U_out = U;
  return d;
}

// ----------------------------------------------------- rational matrices

static std::vector<std::vector<Rat>> rat_inverse(std::vector<std::vector<Rat>> a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (a[i][col] != 0) { p = i; break; }
    if (p < 0) throw std::runtime_error("rat_inverse: singular matrix");
    std::swap(a[col], a[p]);
    std::swap(inv[col], inv[p]);
    Rat piv = a[col][col];
    for (int j = 0; j < n; ++j) { a[col][j] /= piv; inv[col][j] /= piv; }
    for (int i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = 0; j < n; ++j) { a[i][j] -= f * a[col][j]; inv[i][j] -= f * inv[col][j]; }
    }
  }
  return inv;
}

// ---------------------------------------------------------------- build

Rat RootSystem::ambient_dot(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s * form_scale_;
}

namespace {

// Bourbaki ambient simple roots; the companion scale makes short roots have
// squared length 2.
void ambient_table(const RootSystemId& id, int& dim, Rat& scale,
                   std::vector<std::vector<Rat>>& roots) {
  const int n = id.rank;
  auto e = [&](int i) {
    std::vector<Rat> v(dim, 0);
    v[i] = 1;
    return v;
  };
  roots.clear();
  switch (id.family) {
    case Family::A: {
      dim = n + 1; scale = 1;
      for (int i = 0; i < n; ++i) {
        auto v = e(i);
        v[i + 1] = -1;
        roots.push_back(v);
      }
      break;
    }
    case Family::B: {
      dim = n; scale = 2;
      for (int i = 0; i + 1 < n; ++i) { auto v = e(i); v[i + 1] = -1; roots.push_back(v); }
      roots.push_back(e(n - 1));
      break;
    }
    case Family::C: {
      dim = n; scale = 1;
      for (int i = 0; i + 1 < n; ++i) { auto v = e(i); v[i + 1] = -1; roots.push_back(v); }
      auto v = e(n - 1);
      v[n - 1] = 2;
      roots.push_back(v);
      break;
    }
    case Family::D: {
      dim = n; scale = 1;
      for (int i = 0; i + 1 < n; ++i) { auto v = e(i); v[i + 1] = -1; roots.push_back(v); }
      auto v = e(n - 2);
      v[n - 1] = 1;
      roots.push_back(v);
      break;
    }
    case Family::G: {
      dim = 3; scale = 1;
      { auto v = e(0); v[1] = -1; roots.push_back(v); }
      { std::vector<Rat> v(3, 0); v[0] = -2; v[1] = 1; v[2] = 1; roots.push_back(v); }
      break;
    }
    case Family::F: {
      dim = 4; scale = 2;
      { auto v = e(1); v[2] = -1; roots.push_back(v); }
      { auto v = e(2); v[3] = -1; roots.push_back(v); }
      roots.push_back(e(3));
      { std::vector<Rat> v{Rat(1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2)}; roots.push_back(v); }
      break;
    }
    case Family::E: {
      dim = 8; scale = 1;
      std::vector<std::vector<Rat>> all;
      {
        std::vector<Rat> v(8, Rat(-1, 2));
        v[0] = Rat(1, 2);
        v[7] = Rat(1, 2);
        // alpha_1 = (e1 - e2 - ... - e7 + e8)/2
        for (int i = 1; i < 7; ++i) v[i] = Rat(-1, 2);
        all.push_back(v);
      }
      { std::vector<Rat> v(8, 0); v[0] = 1; v[1] = 1; all.push_back(v); }
      for (int k = 0; k < 6; ++k) {
        std::vector<Rat> v(8, 0);
        v[k] = -1;
        v[k + 1] = 1;
        all.push_back(v); // alpha_{3+k} = e_{k+2} - e_{k+1}
      }
      for (int i = 0; i < n; ++i) roots.push_back(all[i]);
      break;
    }
    case Family::T:
      throw std::invalid_argument("tadpole T_n has no root-system realization");
  }
}

} // namespace

RootSystem RootSystem::build(const RootSystemId& id) {
  if (!id.valid() || id.family == Family::T)
    throw std::invalid_argument("RootSystem::build: invalid id " + id.str());
  RootSystem rs;
  rs.id_ = id;
  rs.n_ = id.rank;
  ambient_table(id, rs.ambient_dim_, rs.form_scale_, rs.simple_roots_);
  const int n = rs.n_;

  rs.nu_.resize(n);
  rs.simple_coroots_.resize(n);
  for (int i = 0; i < n; ++i) {
    Rat len2 = rs.ambient_dot(rs.simple_roots_[i], rs.simple_roots_[i]);
    if (rat_den(len2 / 2) != 1)
      throw std::runtime_error("non-integral root length^2/2");
    rs.nu_[i] = static_cast<int>(rat_long(len2 / 2));
    rs.simple_coroots_[i] = rs.simple_roots_[i];
    for (auto& x : rs.simple_coroots_[i]) x /= rs.nu_[i];
  }
  {
    int mn = *std::min_element(rs.nu_.begin(), rs.nu_.end());
    if (mn != 1) throw std::runtime_error("normalization: short roots must have nu=1");
  }

  // Cartan a_ij = (alpha_i^vee, alpha_j)
  rs.cartan_.assign(n, std::vector<int>(n, 0));
  std::vector<std::vector<Rat>> cart_rat(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = rs.ambient_dot(rs.simple_coroots_[i], rs.simple_roots_[j]);
      if (!is_integer(v)) throw std::runtime_error("non-integral Cartan entry");
      rs.cartan_[i][j] = static_cast<int>(rat_long(v));
      cart_rat[i][j] = v;
    }

  // fundamental weights: w_i = sum_k (A^{-1})_{ki} alpha_k
  auto ainv = rat_inverse(cart_rat);
  rs.fund_weights_.assign(n, std::vector<Rat>(rs.ambient_dim_, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int d = 0; d < rs.ambient_dim_; ++d)
        rs.fund_weights_[i][d] += ainv[k][i] * rs.simple_roots_[k][d];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = rs.ambient_dot(rs.fund_weights_[i], rs.simple_coroots_[j]);
      if (v != (i == j ? 1 : 0)) throw std::runtime_error("fundamental weight check failed");
    }

  // gram (w_i, w_j), cross-checked against diag(nu) * A^{-1}
  rs.gram_.assign(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rs.gram_[i][j] = rs.ambient_dot(rs.fund_weights_[i], rs.fund_weights_[j]);
      if (rs.gram_[i][j] != Rat(rs.nu_[i]) * ainv[i][j])
        throw std::runtime_error("gram_P mismatch with inverse-Cartan form");
    }

  // positive roots via reflection closure, in fw coordinates
  {
    std::set<Weight> roots;
    std::queue<Weight> work;
    for (int i = 0; i < n; ++i) {
      Weight a(std::vector<int>(n, 0));
      for (int j = 0; j < n; ++j) a.c[j] = rs.cartan_[j][i];
      roots.insert(a);
      work.push(a);
    }
    while (!work.empty()) {
      Weight r = work.front();
      work.pop();
      for (int i = 1; i <= n; ++i) {
        Weight s = rs.reflect(r, i);
        if (roots.insert(s).second) work.push(s);
      }
    }
    // positivity: integer simple-root coordinates all >= 0
    for (const auto& r : roots) {
      std::vector<Rat> c(n, 0);
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) c[k] += ainv[k][j] * r.c[j];
      bool pos = true, neg = true;
      for (auto& x : c) {
        if (x < 0) pos = false;
        if (x > 0) neg = false;
      }
      if (pos && !r.is_zero()) {
        rs.pos_roots_.push_back(r);
        Rat nu2 = rs.inner(r, r) / 2;
        rs.pos_nu_.push_back(static_cast<int>(rat_long(nu2)));
      } else if (!pos && !neg) {
        throw std::runtime_error("root closure produced a non-signed root");
      }
    }
  }

  // highest short root = the dominant short root; h = (rho, theta) + 1
  {
    Weight theta;
    bool found = false;
    for (std::size_t k = 0; k < rs.pos_roots_.size(); ++k) {
      if (rs.pos_nu_[k] != 1) continue;
      bool dom = true;
      for (int x : rs.pos_roots_[k].c)
        if (x < 0) { dom = false; break; }
      if (dom) {
        if (found) throw std::runtime_error("multiple dominant short roots");
        theta = rs.pos_roots_[k];
        found = true;
      }
    }
    if (!found) throw std::runtime_error("no dominant short root");
    rs.theta_short_ = theta;
    Weight rho(std::vector<int>(n, 1));
    Rat h = rs.inner(rho, theta) + 1;
    rs.h_ = static_cast<int>(rat_long(h));
  }

  // m: least natural number with (P,P) = (1/m) Z
  {
    Int mm = 1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mm = boost::multiprecision::lcm(mm, rat_den(rs.gram_[i][j]));
    rs.m_ = mm.convert_to<long long>();
  }

  // |P/Q| and the SNF presentation of P/Q
  {
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = rs.cartan_[i][j];
    rs.pq_order_ = std::llabs(det_int(a));
    std::vector<std::vector<long long>> U;
    auto d = smith_normal_form(a, &U);
    rs.snf_U_ = U;
    for (int i = 0; i < n; ++i)
      if (d[i] != 1) {
        rs.snf_keep_.push_back(d[i]);
        rs.snf_rows_.push_back(i);
      }
    long long prod = 1;
    for (auto x : rs.snf_keep_) prod *= x;
    if (prod != rs.pq_order_) throw std::runtime_error("SNF/det inconsistency");
  }

  // minuscule indices: (w_r, theta) <= 1 (theta is the maximal positive coroot)
  for (int r = 0; r < n; ++r) {
    Weight wr = Weight::zero(n);
    wr.c[r] = 1;
    if (rs.inner(wr, rs.theta_short_) <= 1) rs.minuscule_.push_back(r + 1);
  }

  return rs;
}

int RootSystem::nu_long() const { return *std::max_element(nu_.begin(), nu_.end()); }

unsigned long long RootSystem::weyl_order() const {
  const int n = n_;
  auto fact = [](int k) {
    unsigned long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  switch (id_.family) {
    case Family::A: return fact(n + 1);
    case Family::B:
    case Family::C: return (1ull << n) * fact(n);
    case Family::D: return (1ull << (n - 1)) * fact(n);
    case Family::G: return 12;
    case Family::F: return 1152;
    case Family::E:
      if (n == 6) return 51840ull;
      if (n == 7) return 2903040ull;
      return 696729600ull;
    default: return 0;
  }
}

Weight RootSystem::simple_root_fw(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("simple root index");
  Weight a = Weight::zero(n_);
  for (int j = 0; j < n_; ++j) a.c[j] = cartan_[j][i - 1];
  return a;
}

Rat RootSystem::inner(const Weight& b, const Weight& c) const {
  if (b.rank() != n_ || c.rank() != n_)
    throw std::invalid_argument("inner: dimension mismatch");
  Rat s = 0;
  for (int i = 0; i < n_; ++i) {
    if (b.c[i] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (c.c[j] == 0) continue;
      s += Rat(b.c[i]) * Rat(c.c[j]) * gram_[i][j];
    }
  }
  return s;
}

long long RootSystem::coroot_pairing(const Weight& b, int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("coroot_pairing: index out of range");
  if (b.rank() != n_) throw std::invalid_argument("coroot_pairing: dimension mismatch");
  return b.c[i - 1];
}

Weight RootSystem::reflect(const Weight& b, int i) const {
  Weight r = b;
  int k = b.c[i - 1];
  if (k == 0) return r;
  for (int j = 0; j < n_; ++j) r.c[j] -= k * cartan_[j][i - 1];
  return r;
}

bool RootSystem::antidominant(const Weight& b) const {
  for (int x : b.c)
    if (x > 0) return false;
  return true;
}

std::set<Weight> RootSystem::weyl_orbit(const Weight& b) const {
  std::set<Weight> orbit{b};
  std::queue<Weight> work;
  work.push(b);
  while (!work.empty()) {
    Weight w = work.front();
    work.pop();
    for (int i = 1; i <= n_; ++i) {
      Weight s = reflect(w, i);
      if (orbit.insert(s).second) work.push(s);
    }
  }
  return orbit;
}

Weight RootSystem::dominant_rep(const Weight& b) const {
  Weight w = b;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 1; i <= n_; ++i)
      if (w.c[i - 1] < 0) {
        w = reflect(w, i);
        moved = true;
      }
  }
  return w;
}

Weight RootSystem::antidominant_rep(const Weight& b) const { return -dominant_rep(-b); }

Weight RootSystem::neg_w0(const Weight& c) const {
  // for antidominant c, w0(c) is the dominant representative of its orbit
  return -dominant_rep(c);
}

void RootSystem::enumerate_antidominant_impl(const Weight& center, const Rat& bound,
                                             std::vector<Weight>& out) const {
  // BFS over P_- from 0 along -w_i steps; positивity of the form guarantees
  // completeness because removing a unit from any coordinate lowers the norm.
  Rat big = center.is_zero() ? bound : (inner(center, center) + 2 * bound);
  std::set<Weight> seen;
  std::queue<Weight> work;
  Weight z = Weight::zero(n_);
  seen.insert(z);
  work.push(z);
  while (!work.empty()) {
    Weight w = work.front();
    work.pop();
    if (norm2(w) / 2 > big) continue;
    Weight d = w - center;
    if (inner(d, d) / 2 <= bound) out.push_back(w);
    for (int i = 0; i < n_; ++i) {
      Weight nx = w;
      nx.c[i] -= 1;
      if (norm2(nx) / 2 <= big && seen.insert(nx).second) work.push(nx);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Weight& a, const Weight& b) {
    Rat na = norm2(a), nb = norm2(b);
    if (na != nb) return na < nb;
    return a < b;
  });
}

std::vector<Weight> RootSystem::enumerate_antidominant(const Rat& qdeg_bound) const {
  if (qdeg_bound < 0) throw std::invalid_argument("enumerate_antidominant: bound < 0");
  std::vector<Weight> out;
  enumerate_antidominant_impl(Weight::zero(n_), qdeg_bound, out);
  return out;
}

std::vector<Weight> RootSystem::antidominant_near(const Weight& center, const Rat& bound) const {
  if (bound < 0) return {};
  std::vector<Weight> out;
  enumerate_antidominant_impl(center, bound, out);
  return out;
}

std::vector<Weight> RootSystem::enumerate_ball(const Rat& qdeg_bound) const {
  std::set<Weight> all;
  for (const auto& b : enumerate_antidominant(qdeg_bound))
    for (const auto& w : weyl_orbit(b)) all.insert(w);
  std::vector<Weight> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), [&](const Weight& a, const Weight& b) {
    Rat na = norm2(a), nb = norm2(b);
    if (na != nb) return na < nb;
    return a < b;
  });
  return out;
}

// ------------------------------------------------------------ P/Q classes

ClassPQ RootSystem::class_of(const Weight& b) const {
  ClassPQ cls;
  cls.r.resize(snf_keep_.size());
  for (std::size_t k = 0; k < snf_keep_.size(); ++k) {
    long long s = 0;
    int row = snf_rows_[k];
    for (int j = 0; j < n_; ++j) s += snf_U_[row][j] * b.c[j];
    long long d = snf_keep_[k];
    s %= d;
    if (s < 0) s += d;
    cls.r[k] = s;
  }
  return cls;
}

ClassPQ RootSystem::class_zero() const {
  ClassPQ c;
  c.r.assign(snf_keep_.size(), 0);
  return c;
}

ClassPQ RootSystem::class_add(const ClassPQ& a, const ClassPQ& b) const {
  ClassPQ c = a;
  for (std::size_t k = 0; k < c.r.size(); ++k) c.r[k] = (c.r[k] + b.r[k]) % snf_keep_[k];
  return c;
}

ClassPQ RootSystem::class_neg(const ClassPQ& a) const {
  ClassPQ c = a;
  for (std::size_t k = 0; k < c.r.size(); ++k) c.r[k] = (snf_keep_[k] - c.r[k]) % snf_keep_[k];
  return c;
}

std::vector<ClassPQ> RootSystem::all_classes() const {
  std::vector<ClassPQ> out;
  ClassPQ cur = class_zero();
  std::size_t k = snf_keep_.size();
  out.push_back(cur);
  while (true) {
    std::size_t i = 0;
    while (i < k) {
      cur.r[i] += 1;
      if (cur.r[i] < snf_keep_[i]) break;
      cur.r[i] = 0;
      ++i;
    }
    if (i == k) break;
    out.push_back(cur);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ClassPQ RootSystem::class_of_label(int r) const {
  if (r == 0) return class_zero();
  bool ok = std::find(minuscule_.begin(), minuscule_.end(), r) != minuscule_.end();
  if (!ok)
    throw std::invalid_argument("class label must be 0 or a minuscule index for " + id_.str());
  Weight w = Weight::zero(n_);
  w.c[r - 1] = 1;
  return class_of(w);
}

int RootSystem::label_of_class(const ClassPQ& cls) const {
  if (cls.is_zero()) return 0;
  for (int r : minuscule_)
    if (class_of_label(r) == cls) return r;
  throw std::runtime_error("class without minuscule label");
}

// ------------------------------------------------------------- sublattices

static Sublattice hnf_sublattice(const std::vector<std::vector<long long>>& cols) {
  Sublattice s;
  s.basis = hnf_columns(cols);
  const int n = static_cast<int>(s.basis.size());
  long long idx = 1;
  for (int i = 0; i < n; ++i) idx *= s.basis[i][i];
  s.index = idx;
  return s;
}

Sublattice RootSystem::lattice_NQ(long long N) const {
  std::vector<std::vector<long long>> cols(n_, std::vector<long long>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) cols[i][j] = N * cartan_[i][j];
  return hnf_sublattice(cols);
}

Sublattice RootSystem::lattice_NP(long long N) const {
  std::vector<std::vector<long long>> cols(n_, std::vector<long long>(n_, 0));
  for (int i = 0; i < n_; ++i) cols[i][i] = N;
  return hnf_sublattice(cols);
}

Sublattice RootSystem::sublattice_PN(long long N) const {
  if (N < 1) throw std::invalid_argument("sublattice_PN: N >= 1 required");
  const int n = n_;
  // fw coordinates of the coroots: column i has entries a_{ij} / nu_j.
  // With delta = lcm(nu), B = delta * N * (coroot matrix) is integral, and
  // P[N] = { x in Z^n : x = (N M) c } = (1/delta) * { y in B Z^n : y in delta Z^n }.
  long long delta = 1;
  for (int j = 0; j < n; ++j) delta = std::lcm(delta, static_cast<long long>(nu_[j]));
  std::vector<std::vector<long long>> B(n, std::vector<long long>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) B[j][i] = delta / nu_[j] * N * cartan_[i][j];
  // Kernel of (B mod delta): with S = W B^T V'-style SNF of the transpose we
  // get a unimodular V with (B V)_k = u_k d_k; then B c in delta Z^n iff
  // c in V diag(delta/gcd(d_k, delta)) Z^n.
  std::vector<std::vector<long long>> Bt(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Bt[i][j] = B[j][i];
  std::vector<std::vector<long long>> Vt;
  std::vector<long long> d = smith_normal_form(Bt, &Vt);
  std::vector<std::vector<long long>> C(n, std::vector<long long>(n));
  for (int k = 0; k < n; ++k) {
    long long g = std::gcd(std::llabs(d[k]), delta);
    long long mult = delta / g;
    for (int i = 0; i < n; ++i) C[i][k] = Vt[k][i] * mult;
  }
  std::vector<std::vector<long long>> K(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long long s = 0;
      for (int j = 0; j < n; ++j) s += B[i][j] * C[j][k];
      if (s % delta != 0) throw std::runtime_error("sublattice_PN: divisibility failure");
      K[i][k] = s / delta;
    }
  return hnf_sublattice(K);
}

bool RootSystem::sublattice_equal(const Sublattice& a, const Sublattice& b) {
  return a.basis == b.basis;
}

// Predicted failure of P[N] = NQ.  The case split follows from
// P[N] = NQ^vee for nu_lng | N or even N, and P[N] = NP when gcd(N, nu_lng)=1
// for C_n, F_4, G_2 and even-rank B_n; elsewhere P[N] = NQ.
bool RootSystem::lemma_PN_not_NQ_predicted(long long N) const {
  switch (id_.family) {
    case Family::C: return true;
    case Family::B: return (N % 2 == 0) || (n_ % 2 == 0);
    case Family::F: return N % 2 == 0;
    case Family::G: return N % 3 == 0;
    default: return false; // simply laced: Q^vee = Q
  }
}

std::vector<Rat> RootSystem::to_epsilon(const Weight& b) const {
  std::vector<Rat> v(ambient_dim_, 0);
  for (int i = 0; i < n_; ++i) {
    if (b.c[i] == 0) continue;
    for (int d = 0; d < ambient_dim_; ++d) v[d] += Rat(b.c[i]) * fund_weights_[i][d];
  }
  return v;
}

RootSystemId RootSystem::dual_id() const {
  RootSystemId d = id_;
  if (id_.family == Family::B) d.family = Family::C;
  else if (id_.family == Family::C) d.family = Family::B;
  return d;
}

} // namespace qrr
