#include "qrr/gauss.hpp"

#include <cmath>
#include <queue>
#include <random>

namespace qrr {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

FiniteModule::FiniteModule(const RootSystem& rs, long long N) : rs_(&rs), N_(N), m_(rs.m()) {
  if (N < 1) throw std::invalid_argument("FiniteModule: N >= 1");
  auto sub = rs.sublattice_PN(N);
  hnf_ = sub.basis;
  index_ = sub.index;
  const int n = rs.rank();
  gram_m_.assign(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = Rat(m_) * rs.gram_P()[i][j];
      if (!is_integer(v)) throw std::runtime_error("gram times m not integral");
      gram_m_[i][j] = rat_long(v);
    }
  // quadratic exponent well-defined on classes iff lambda^2/2 in N Z for the
  // basis; otherwise the box representatives are the prescribed ones and we
  // require P[N] = NP
  for (int k = 0; k < n && quad_well_defined_; ++k) {
    Weight lam = Weight::zero(n);
    for (int i = 0; i < n; ++i) lam.c[i] = static_cast<int>(hnf_[i][k]);
    Rat half = rs.norm2(lam) / 2;
    if (!is_integer(half / N)) quad_well_defined_ = false;
  }
  if (!quad_well_defined_) {
    bool is_np = true;
    for (int i = 0; i < n && is_np; ++i)
      for (int j = 0; j < n; ++j)
        if (hnf_[i][j] != (i == j ? N : 0)) { is_np = false; break; }
    if (!is_np || N % 2 == 0 || m_ != 1)
      throw std::runtime_error(
          "FiniteModule: quadratic exponent ill-defined outside the odd-N box case for " +
          rs.id().str() + " N=" + std::to_string(N));
  }
  // residues = HNF box
  std::vector<int> radix(n);
  for (int i = 0; i < n; ++i) radix[i] = static_cast<int>(hnf_[i][i]);
  std::vector<int> cur(n, 0);
  residues_.reserve(static_cast<std::size_t>(index_));
  while (true) {
    residues_.push_back(Weight(std::vector<int>(cur.begin(), cur.end())));
    int i = 0;
    while (i < n) {
      if (++cur[i] < radix[i]) break;
      cur[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  if (static_cast<long long>(residues_.size()) != index_)
    throw std::runtime_error("residue count mismatch");
  for (int i = 0; i < size(); ++i) lookup_.emplace(residues_[i], i);
  half_norm_.resize(residues_.size());
  alt_half_.resize(residues_.size());
  const long long k2 = (N_ + 1) / 2; // inverse of 2 mod N for odd N
  for (std::size_t a = 0; a < residues_.size(); ++a) {
    long long v = pair_int(residues_[a], residues_[a]); // m*(a,a) = 2m*(a^2/2)
    long long mod = 2 * m_ * N_;
    half_norm_[a] = ((v % mod) + mod) % mod;
    if (!quad_well_defined_) {
      long long vn = ((v % N_) + N_) % N_; // here m = 1, so v = (a,a)
      alt_half_[a] = (k2 * vn) % N_;
    }
  }
}

Weight FiniteModule::reduce(const Weight& w) const {
  const int n = rs_->rank();
  std::vector<long long> x(w.c.begin(), w.c.end());
  for (int i = 0; i < n; ++i) {
    long long d = hnf_[i][i];
    long long t = x[i] >= 0 ? x[i] / d : -((-x[i] + d - 1) / d);
    if (t != 0)
      for (int r = 0; r < n; ++r) x[r] -= t * hnf_[r][i];
  }
  Weight out = Weight::zero(n);
  for (int i = 0; i < n; ++i) out.c[i] = static_cast<int>(x[i]);
  return out;
}

int FiniteModule::reduce_index(const Weight& w) const {
  auto it = lookup_.find(reduce(w));
  if (it == lookup_.end()) throw std::runtime_error("reduce_index: unreduced weight");
  return it->second;
}

long long FiniteModule::pair_int(const Weight& a, const Weight& b) const {
  const int n = rs_->rank();
  long long s = 0;
  for (int i = 0; i < n; ++i) {
    if (a.c[i] == 0) continue;
    long long row = 0;
    for (int j = 0; j < n; ++j) row += gram_m_[i][j] * b.c[j];
    s += a.c[i] * row;
  }
  return s;
}

cdouble FiniteModule::zeta_pair(int a, int b) const {
  long long k = pair_int(residues_[a], residues_[b]);
  double phase = 2.0 * kPi * static_cast<double>(k) / (static_cast<double>(m_) * N_);
  return {std::cos(phase), std::sin(phase)};
}

cdouble FiniteModule::zeta_half_norm(int a) const {
  if (!quad_well_defined_) {
    double phase = 2.0 * kPi * static_cast<double>(alt_half_[a]) / static_cast<double>(N_);
    return {std::cos(phase), std::sin(phase)};
  }
  double phase = 2.0 * kPi * static_cast<double>(half_norm_[a]) /
                 (2.0 * static_cast<double>(m_) * N_);
  return {std::cos(phase), std::sin(phase)};
}

cdouble FiniteModule::gamma_action() const {
  cdouble s = 0;
  for (int a = 0; a < size(); ++a) s += zeta_half_norm(a);
  return s / std::sqrt(static_cast<double>(index_));
}

cdouble FiniteModule::gamma() const {
  if (quad_well_defined_) return gamma_action();
  // primitive-phase box sum; its direction carries the tabulated root of
  // unity while the modulus degenerates along the radical
  cdouble s = 0;
  for (int a = 0; a < size(); ++a) {
    double phase = 2.0 * kPi * static_cast<double>(half_norm_[a]) /
                   (2.0 * static_cast<double>(m_) * N_);
    s += cdouble(std::cos(phase), std::sin(phase));
  }
  return s / std::abs(s);
}

void FiniteModule::build_pair_table() {
  if (pair_table_ready()) return;
  const long long mod = m_ * N_;
  pair_lut_.resize(static_cast<std::size_t>(mod));
  for (long long k = 0; k < mod; ++k) {
    double phase = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(mod);
    pair_lut_[static_cast<std::size_t>(k)] = {std::cos(phase), std::sin(phase)};
  }
  const int sz = size();
  const int n = rs_->rank();
  pair_k_.resize(static_cast<std::size_t>(sz) * sz);
  std::vector<std::vector<long long>> gb(sz, std::vector<long long>(n, 0));
  for (int b = 0; b < sz; ++b)
    for (int i = 0; i < n; ++i) {
      long long s = 0;
      for (int j = 0; j < n; ++j) s += gram_m_[i][j] * residues_[b].c[j];
      gb[b][i] = s;
    }
  for (int a = 0; a < sz; ++a) {
    const auto& ac = residues_[a].c;
    for (int b = 0; b < sz; ++b) {
      long long s = 0;
      for (int i = 0; i < n; ++i) s += ac[i] * gb[b][i];
      s %= mod;
      if (s < 0) s += mod;
      pair_k_[static_cast<std::size_t>(a) * sz + b] = static_cast<uint32_t>(s);
    }
  }
}

std::vector<cdouble> FiniteModule::apply_tau_plus(const std::vector<cdouble>& v, cdouble xi,
                                                  int power) const {
  std::vector<cdouble> w(v.size());
  for (int a = 0; a < size(); ++a) {
    cdouble z = zeta_half_norm(a) / xi;
    w[a] = (power > 0 ? z : cdouble(1) / z) * v[a];
  }
  return w;
}

std::vector<cdouble> FiniteModule::apply_fourier(const std::vector<cdouble>& v,
                                                 bool conjugate) const {
  const int sz = size();
  std::vector<cdouble> w(v.size(), 0);
  if (!pair_table_ready()) throw std::runtime_error("pair table not built");
  for (int c = 0; c < sz; ++c) {
    cdouble s = 0;
    const uint32_t* row = &pair_k_[static_cast<std::size_t>(c) * sz];
    for (int a = 0; a < sz; ++a) {
      cdouble z = pair_lut_[row[a]];
      s += (conjugate ? std::conj(z) : z) * v[a];
    }
    w[c] = s;
  }
  return w;
}

std::vector<cdouble> FiniteModule::apply_tau_minus(const std::vector<cdouble>& v, cdouble xi,
                                                   int power) const {
  // tau_- = F diag(xi zeta^{-b^2/2}) F^dagger / index
  std::vector<cdouble> w = apply_fourier(v, true);
  for (int b = 0; b < size(); ++b) {
    cdouble z = xi / zeta_half_norm(b);
    w[b] *= (power > 0 ? z : cdouble(1) / z);
  }
  w = apply_fourier(w, false);
  double inv = 1.0 / static_cast<double>(index_);
  for (auto& x : w) x *= inv;
  return w;
}

std::vector<cdouble> FiniteModule::apply_sigma(const std::vector<cdouble>& v, cdouble xi) const {
  // sigma = gamma/(xi^3 sqrt(index)) * [zeta^{(a,c)}]
  std::vector<cdouble> w = apply_fourier(v, false);
  cdouble scale = gamma_action() / (xi * xi * xi * std::sqrt(static_cast<double>(index_)));
  for (auto& x : w) x *= scale;
  return w;
}

std::vector<cdouble> FiniteModule::apply_negation(const std::vector<cdouble>& v) const {
  std::vector<cdouble> w(v.size());
  for (int a = 0; a < size(); ++a) w[reduce_index(-residues_[a])] = v[a];
  return w;
}

std::vector<cdouble> FiniteModule::apply_weyl(const std::vector<cdouble>& v, int simple_i) const {
  std::vector<cdouble> w(v.size());
  for (int a = 0; a < size(); ++a)
    w[reduce_index(rs_->reflect(residues_[a], simple_i))] = v[a];
  return w;
}

cdouble gamma_formula(const RootSystemId& id, long long N) {
  const cdouble rho = std::polar(1.0, kPi / 4);
  const int n = id.rank;
  auto rho_pow = [&](long k) { return std::polar(1.0, kPi / 4 * static_cast<double>(k)); };
  switch (id.family) {
    case Family::A:
    case Family::D:
    case Family::E:
      (void)rho;
      return rho_pow(n);
    case Family::F:
      return (N % 2 == 1) ? cdouble(1, 0) : cdouble(-1, 0);
    case Family::G: {
      int r = static_cast<int>(N % 3);
      if (r == 0) return {0, 1};
      return r == 1 ? cdouble(1, 0) : cdouble(-1, 0);
    }
    case Family::B:
      if (n == 2) return gamma_formula({Family::C, 2}, N);
      // psi = 4 for odd N
      return rho_pow(N % 2 == 1 ? n - 4 : n);
    case Family::C: {
      long psi = 0;
      if (N % 4 == 1) psi = n;
      else if (N % 4 == 3 && n % 2 == 1) psi = 1;
      return rho_pow(n - psi);
    }
    default:
      throw std::invalid_argument("gamma_formula: unsupported family");
  }
}

namespace {

double max_diff(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

} // namespace

ActionCheck check_action(FiniteModule& fm, int sign, int probes, unsigned seed) {
  fm.build_pair_table();
  ActionCheck out;
  out.index = fm.index();
  // xi with xi^3 = sign * i * gamma
  cdouble target = cdouble(0, sign) * fm.gamma_action();
  cdouble xi = std::polar(1.0, std::arg(target) / 3);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> un(-1, 1);
  const int sz = fm.size();
  for (int p = 0; p < probes; ++p) {
    std::vector<cdouble> v(sz);
    for (auto& x : v) x = cdouble(un(rng), un(rng));
    // Steinberg: tau+ tau-^{-1} tau+ == tau-^{-1} tau+ tau-^{-1}
    auto lhs = fm.apply_tau_plus(fm.apply_tau_minus(fm.apply_tau_plus(v, xi, 1), xi, -1), xi, 1);
    auto rhs = fm.apply_tau_minus(fm.apply_tau_plus(fm.apply_tau_minus(v, xi, -1), xi, 1), xi, -1);
    out.steinberg = std::max(out.steinberg, max_diff(lhs, rhs));
    // explicit sigma against the composition
    auto sig = fm.apply_sigma(v, xi);
    out.sigma_formula = std::max(out.sigma_formula, max_diff(sig, lhs));
    // sigma^2 = -inversion
    auto s2 = fm.apply_sigma(sig, xi);
    auto negv = fm.apply_negation(v);
    for (auto& x : negv) x = -x;
    out.sigma_sq_inversion = std::max(out.sigma_sq_inversion, max_diff(s2, negv));
    // (sigma tau+^{-1})^3 = sigma^2
    auto w3 = v;
    for (int k = 0; k < 3; ++k) w3 = fm.apply_sigma(fm.apply_tau_plus(w3, xi, -1), xi);
    out.steinberg_cubed = std::max(out.steinberg_cubed, max_diff(w3, s2));
    // W-equivariance of sigma and tau+
    for (int i = 1; i <= fm.rs().rank(); ++i) {
      auto a = fm.apply_sigma(fm.apply_weyl(v, i), xi);
      auto b = fm.apply_weyl(fm.apply_sigma(v, xi), i);
      out.weyl_commute = std::max(out.weyl_commute, max_diff(a, b));
      a = fm.apply_tau_plus(fm.apply_weyl(v, i), xi, 1);
      b = fm.apply_weyl(fm.apply_tau_plus(v, xi, 1), i);
      out.weyl_commute = std::max(out.weyl_commute, max_diff(a, b));
    }
    // pairing unitarity: F F^dagger = index * id
    auto u = fm.apply_fourier(fm.apply_fourier(v, true), false);
    for (auto& x : u) x /= static_cast<double>(fm.index());
    out.pairing_unitarity = std::max(out.pairing_unitarity, max_diff(u, v));
  }
  return out;
}

long skew_dimension(const FiniteModule& fm) {
  const RootSystem& rs = fm.rs();
  // enumerate W as residue permutations with signs
  struct Elt {
    std::vector<int> perm;
    int sign;
  };
  const int sz = fm.size();
  std::vector<int> idperm(sz);
  for (int i = 0; i < sz; ++i) idperm[i] = i;
  std::map<std::vector<int>, int> seen;
  std::queue<Elt> work;
  seen.emplace(idperm, 1);
  work.push({idperm, 1});
  std::vector<std::vector<int>> gens;
  for (int i = 1; i <= rs.rank(); ++i) {
    std::vector<int> p(sz);
    for (int a = 0; a < sz; ++a) p[a] = fm.reduce_index(rs.reflect(fm.residues()[a], i));
    gens.push_back(std::move(p));
  }
  while (!work.empty()) {
    Elt e = work.front();
    work.pop();
    for (const auto& g : gens) {
      std::vector<int> np(sz);
      for (int a = 0; a < sz; ++a) np[a] = g[e.perm[a]];
      if (seen.emplace(np, -e.sign).second) work.push({np, -e.sign});
    }
  }
  // orbit of each residue: killed iff some odd element fixes it
  std::vector<char> done(sz, 0);
  long dim = 0;
  for (int a = 0; a < sz; ++a) {
    if (done[a]) continue;
    bool killed = false;
    std::vector<int> orbit;
    for (const auto& [perm, sign] : seen) {
      int img = perm[a];
      if (img == a && sign < 0) killed = true;
      orbit.push_back(img);
    }
    for (int x : orbit) done[x] = 1;
    if (!killed) ++dim;
  }
  return dim;
}

} // namespace qrr
