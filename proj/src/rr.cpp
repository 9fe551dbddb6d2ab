#include "qrr/rr.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>

namespace qrr {

XiSpec XiSpec::make(const RootSystem& rs, std::vector<ThetaSpec> classes, int r) {
  if (classes.empty()) throw std::invalid_argument("XiSpec: need p >= 1");
  for (const auto& s : classes)
    if (s.classes.empty()) throw std::invalid_argument("XiSpec: empty class set");
  if (r != 0) {
    const auto& mins = rs.minuscule();
    if (std::find(mins.begin(), mins.end(), r) == mins.end())
      throw std::invalid_argument("XiSpec: r must be 0 or a minuscule index");
  }
  XiSpec spec;
  spec.rs = &rs;
  spec.p = static_cast<int>(classes.size());
  spec.classes = std::move(classes);
  spec.r = r;
  return spec;
}

Weight XiSpec::c_weight() const {
  Weight c = Weight::zero(rs->rank());
  if (r != 0) c.c[r - 1] = -1;
  return c;
}

int forced_r(const RootSystem& rs, const std::vector<int>& atomic_labels) {
  // telescoping the class constraints gives class(c) = sum of the labels,
  // i.e. class(omega_r) = -sum
  ClassPQ sum = rs.class_zero();
  for (int k : atomic_labels) sum = rs.class_add(sum, rs.class_of_label(k));
  return rs.label_of_class(rs.class_neg(sum));
}

namespace {

void xi_walk(const XiSpec& spec, std::size_t depth, const Weight& prev, const Rat& partial,
             const Rat& ord, const QSeries& denom_so_far, QSeries& out, long& chains) {
  const RootSystem& rs = *spec.rs;
  const std::size_t last = static_cast<std::size_t>(spec.p) - 1; // chain has p-1 points
  if (depth == last) {
    // closing constraint: class(c - b_{p-1}) in varpi_p, exponent (b_{p-1}-c)^2/2
    Weight c = spec.c_weight();
    Weight d = c - prev;
    if (!spec.classes[depth].contains(rs.class_of(d))) return;
    Rat expo = partial + rs.norm2(d) / 2;
    if (expo > ord) return;
    ++chains;
    out += denom_so_far.invert().mul_monomial(expo).truncated(ord);
    return;
  }
  for (const auto& b : rs.antidominant_near(prev, ord - partial)) {
    Weight diff = b - prev;
    if (!spec.classes[depth].contains(rs.class_of(diff))) continue;
    Rat expo = partial + rs.norm2(diff) / 2;
    QSeries denom = denom_so_far;
    for (int i = 1; i <= rs.rank(); ++i) {
      long long cnt = -rs.coroot_pairing(b, i);
      denom = denom.mul(pochhammer(rs.nu()[i - 1], rs.nu()[i - 1], cnt, ord));
    }
    xi_walk(spec, depth + 1, b, expo, ord, denom, out, chains);
  }
}

} // namespace

QSeries xi_multisum(const XiSpec& spec, const Rat& ord, long* chains) {
  QSeries out(ord);
  long cnt = 0;
  if (spec.p == 1) {
    Weight c = spec.c_weight();
    if (spec.classes[0].contains(spec.rs->class_of(c))) {
      out.add_term(spec.rs->norm2(c) / 2, 1);
      ++cnt;
    }
  } else {
    xi_walk(spec, 0, Weight::zero(spec.rs->rank()), 0, ord, QSeries::one(ord), out, cnt);
  }
  if (chains) *chains = cnt;
  return out;
}

QSeries xi_ct(HermiteContext& ctx, const XiSpec& spec) {
  const RootSystem& rs = ctx.rs();
  const Rat& ord = ctx.order();
  XPoly prod = XPoly::one(rs, ord);
  for (const auto& cls : spec.classes) prod = prod.mul(theta_xpoly(rs, cls, ord));
  Weight cprime = rs.neg_w0(spec.c_weight());
  prod = prod.mul(ctx.q_hermite(cprime));
  QSeries ct = ct_pair(prod, ctx.mu());
  return ct.mul(ctx.mu_norm_series().pow(static_cast<unsigned>(spec.p - 1))).truncated(ord);
}

QSeries xi_ct(const XiSpec& spec, const Rat& ord) {
  HermiteContext ctx(*spec.rs, ord);
  return xi_ct(ctx, spec);
}

std::set<Rat> exponent_classes(const QSeries& s) {
  std::set<Rat> out;
  for (const auto& [e, c] : s.terms()) out.insert(rat_frac(e));
  return out;
}

QSeries ramond_character(const Rat& ord, bool clamp_start) {
  // transfer over positions i = 1..ord with state = value at i-1;
  // adjacent values may not both exceed 1
  long maxi = rat_long(Rat(rat_floor(ord)));
  std::vector<QSeries> dp(4, QSeries::zero(ord));
  dp[clamp_start ? 2 : 0] = QSeries::one(ord);
  for (long i = 1; i <= maxi; ++i) {
    std::vector<QSeries> nx(4, QSeries::zero(ord));
    for (int s = 0; s < 4; ++s) {
      if (dp[s].is_zero()) continue;
      for (int t = 0; t < 4; ++t) {
        if (s > 1 && t > 1) continue;
        if (Rat(i) * t > ord && t > 0) continue;
        nx[t] += dp[s].mul_monomial(Rat(i * t)).truncated(ord);
      }
    }
    dp = std::move(nx);
  }
  QSeries out(ord);
  for (int s = 0; s < 4; ++s) out += dp[s];
  return out;
}

// ------------------------------------------------------------------- gl

namespace {

struct GlVec {
  std::vector<int> u;
};

int gl_class(int n, const std::vector<int>& u) {
  long s = 0;
  for (int x : u) s += x;
  long m = n + 1;
  long r = s % m;
  if (r < 0) r += m;
  return static_cast<int>(r);
}

Rat gl_norm2(const std::vector<int>& u) {
  Rat s = 0;
  for (int x : u) s += Rat(x) * x;
  return s;
}

// increasing integer vectors v with sum (v_i - prev_i)^2 / 2 <= bound
void gl_enumerate(const std::vector<int>& prev, const Rat& bound,
                  std::vector<std::vector<int>>& out) {
  const int len = static_cast<int>(prev.size());
  std::vector<int> cur(len, 0);
  long radius = rat_long(Rat(rat_floor(Rat(2) * bound))); // (v_i-prev_i)^2 <= 2*bound
  long half = 1;
  while (half * half <= radius) ++half;
  std::function<void(int, Rat)> rec = [&](int i, Rat used) {
    if (i == len) {
      out.push_back(cur);
      return;
    }
    for (long v = prev[i] - half; v <= prev[i] + half; ++v) {
      if (i > 0 && v < cur[i - 1]) continue;
      Rat add = Rat(v - prev[i]) * (v - prev[i]) / 2;
      if (used + add > bound) continue;
      cur[i] = static_cast<int>(v);
      rec(i + 1, used + add);
    }
  };
  rec(0, 0);
}

std::vector<int> gl_c_weight(int n, int r) {
  std::vector<int> u(n + 1, 0);
  for (int i = 0; i < r; ++i) u[i] = -1;
  std::sort(u.begin(), u.end());
  return u;
}

} // namespace

int gl_forced_r(int n, const std::vector<int>& atomic_labels) {
  long s = 0;
  for (int k : atomic_labels) s += k;
  long m = n + 1;
  long target = ((-s) % m + m) % m; // class of c
  // class(-omega_r) = -r mod (n+1) must equal target
  long r = (m - target) % m;
  return static_cast<int>(r);
}

QSeries gl_xi_multisum(int n, int p, const std::vector<std::vector<int>>& classes, int r,
                       const Rat& ord) {
  if (static_cast<int>(classes.size()) != p || p < 1)
    throw std::invalid_argument("gl_xi_multisum: classes length must equal p");
  auto in_class = [&](int cls, std::size_t i) {
    for (int k : classes[i])
      if (((k % (n + 1)) + (n + 1)) % (n + 1) == cls) return true;
    return false;
  };
  std::vector<int> c = gl_c_weight(n, r);
  QSeries out(ord);
  if (p == 1) {
    if (in_class(gl_class(n, c), 0)) out.add_term(gl_norm2(c) / 2, 1);
    return out;
  }
  std::function<void(int, const std::vector<int>&, const Rat&, const QSeries&)> walk =
      [&](int depth, const std::vector<int>& prev, const Rat& partial, const QSeries& denom) {
        if (depth == p - 1) {
          std::vector<int> d(n + 1);
          for (int i = 0; i <= n; ++i) d[i] = c[i] - prev[i];
          if (!in_class(gl_class(n, d), depth)) return;
          Rat expo = partial + gl_norm2(d) / 2;
          if (expo > ord) return;
          out += denom.invert().mul_monomial(expo).truncated(ord);
          return;
        }
        std::vector<std::vector<int>> cand;
        gl_enumerate(prev, ord - partial, cand);
        for (const auto& b : cand) {
          std::vector<int> d(n + 1);
          for (int i = 0; i <= n; ++i) d[i] = b[i] - prev[i];
          if (!in_class(gl_class(n, d), depth)) continue;
          Rat expo = partial + gl_norm2(d) / 2;
          QSeries nd = denom;
          for (int j = 0; j < n; ++j) nd = nd.mul(pochhammer(1, 1, b[j + 1] - b[j], ord));
          walk(depth + 1, b, expo, nd);
        }
      };
  walk(0, std::vector<int>(n + 1, 0), 0, QSeries::one(ord));
  return out;
}

QSeries gl_trace_factor(int n, const std::vector<int>& labels, int r, const Rat& ord) {
  // chains u_1..u_{p-1} with u_i - u_{i-1} in labels_i/(n+1) + Z ending at
  // the trace of c = -omega_r, weighted by (n+1)/2 times the chain form
  const int p = static_cast<int>(labels.size());
  const Rat w = Rat(n + 1, 2);
  const Rat uc = Rat(-r, n + 1);
  QSeries out(ord);
  std::function<void(int, const Rat&, const Rat&)> walk = [&](int depth, const Rat& prev,
                                                              const Rat& partial) {
    if (depth == p - 1) {
      Rat d = uc - prev;
      if (!is_integer(d - Rat(labels[depth], n + 1))) return;
      Rat expo = partial + w * d * d;
      if (expo <= ord) out.add_term(expo, 1);
      return;
    }
    // enumerate u = prev + labels[depth]/(n+1) + t over integers t
    Rat base = prev + Rat(labels[depth], n + 1);
    for (int dir = 0; dir < 2; ++dir) {
      for (long t = (dir == 0 ? 0 : -1);; t += (dir == 0 ? 1 : -1)) {
        Rat u = base + t;
        Rat add = w * (u - prev) * (u - prev);
        if (partial + add > ord) break;
        walk(depth + 1, u, partial + add);
      }
    }
  };
  if (p == 1) {
    if (is_integer(uc - Rat(labels[0], n + 1))) out.add_term(w * uc * uc, 1);
    return out;
  }
  walk(0, 0, 0);
  return out;
}

// ----------------------------------------------------------- expressions

namespace {

Rat jrat(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  return rat_parse(j.get<std::string>());
}

std::vector<ThetaSpec> parse_classes(const RootSystem& rs, const json& j) {
  std::vector<ThetaSpec> out;
  for (const auto& cls : j) {
    if (cls.is_string() && cls.get<std::string>() == "full")
      out.push_back(ThetaSpec::full(rs));
    else
      out.push_back(ThetaSpec::of_labels(rs, cls.get<std::vector<int>>()));
  }
  return out;
}

struct RsCache {
  std::map<std::string, RootSystem> systems;
  const RootSystem& get(const std::string& name) {
    auto it = systems.find(name);
    if (it == systems.end()) it = systems.emplace(name, RootSystem::build(name)).first;
    return it->second;
  }
};

QSeries eval_qf2(const json& e, const Rat& ord) {
  Rat a11 = jrat(e.at("a11")), a12 = jrat(e.at("a12")), a22 = jrat(e.at("a22"));
  Rat b1 = e.contains("b1") ? jrat(e.at("b1")) : Rat(0);
  Rat b2 = e.contains("b2") ? jrat(e.at("b2")) : Rat(0);
  Rat c0 = e.contains("c0") ? jrat(e.at("c0")) : Rat(0);
  int par1 = e.contains("par1") ? e.at("par1").get<int>() : -1;
  int par2 = e.contains("par2") ? e.at("par2").get<int>() : -1;
  if (4 * a11 * a22 - a12 * a12 <= 0) throw std::invalid_argument("qf2: form not definite");
  QSeries out(ord);
  // cache of inverse Pochhammer factors per (base, count)
  std::map<std::pair<Rat, long>, QSeries> inv_cache;
  auto inv_poch = [&](const Rat& base, long count) {
    auto key = std::make_pair(base, count);
    auto it = inv_cache.find(key);
    if (it == inv_cache.end())
      it = inv_cache.emplace(key, pochhammer(base, base, count, ord).invert().truncated(ord)).first;
    return it->second;
  };
  bool row_seen = false;
  for (long nn = 0; nn <= 200000; ++nn) {
    bool row_any = false;
    bool row_skipped_parity = (par1 >= 0 && (nn % 2) != par1);
    if (!row_skipped_parity) {
      bool col_seen = false;
      for (long mm = 0; mm <= 200000; ++mm) {
        Rat expo = a11 * nn * nn + a12 * nn * mm + a22 * mm * mm + b1 * nn + b2 * mm + c0;
        if (expo > ord) {
          if (col_seen) break;
          // past the vertex in m the exponent only grows
          if (2 * a22 * mm + a12 * nn + b2 > 0) break;
          continue;
        }
        row_any = true;
        col_seen = true;
        if (par2 >= 0 && (mm % 2) != par2) continue;
        QSeries term = QSeries::monomial(expo, 1, ord);
        bool valid = true;
        for (const auto& den : e.at("dens")) {
          long cnt = den.at("cn").get<long>() * nn + den.at("cm").get<long>() * mm +
                     (den.contains("c0") ? den.at("c0").get<long>() : 0);
          if (cnt < 0) { valid = false; break; }
          int pw = den.contains("pow") ? den.at("pow").get<int>() : 1;
          for (int t = 0; t < pw; ++t) term = term.mul(inv_poch(jrat(den.at("base")), cnt));
        }
        if (valid) out += term.truncated(ord);
      }
    }
    if (row_any) row_seen = true;
    // the set of contributing rows is an interval by convexity of the
    // m-minimum; stop after it closes (parity-skipped rows don't count)
    if (!row_any && !row_skipped_parity && row_seen) break;
    if (!row_any && !row_skipped_parity && !row_seen && nn > 4 &&
        a11 * nn * nn + b1 * nn + c0 > ord)
      break;
  }
  return out;
}

QSeries eval_bc_chain(const json& e, const Rat& ord) {
  int n = e.at("n").get<int>();
  Rat w = jrat(e.at("weight"));
  Rat fb = jrat(e.at("first_base"));
  int fm = e.at("first_mult").get<int>();
  Rat sb = jrat(e.at("step_base"));
  QSeries out(ord);
  std::vector<long> v(n, 0);
  std::function<void(int, Rat)> rec = [&](int i, Rat partial) {
    if (i == n) {
      QSeries denom = pochhammer(fb, fb, fm * v[0], ord);
      for (int k = 0; k + 1 < n; ++k) denom = denom.mul(pochhammer(sb, sb, v[k + 1] - v[k], ord));
      out += denom.invert().mul_monomial(partial).truncated(ord);
      return;
    }
    long lo = i == 0 ? 0 : v[i - 1];
    for (long x = lo;; ++x) {
      Rat add = w * x * x;
      if (partial + add > ord) break;
      v[i] = x;
      rec(i + 1, partial + add);
    }
  };
  rec(0, 0);
  return out;
}

QSeries eval_theta_ct(const json& e, const Rat& ord, RsCache& cache) {
  const RootSystem& rs = cache.get(e.at("system").get<std::string>());
  auto classes = parse_classes(rs, e.at("classes"));
  Weight w(e.at("x").get<std::vector<int>>());
  XPoly prod = XPoly::one(rs, ord);
  for (const auto& cls : classes) prod = prod.mul(theta_xpoly(rs, cls, ord));
  QSeries ct = prod.coeff(-w);
  return ct.mul(mu_norm(rs, ord).pow(static_cast<unsigned>(classes.size()))).truncated(ord);
}

} // namespace

QSeries eval_expr(const json& e, const Rat& ord) {
  static thread_local RsCache cache;
  const std::string op = e.at("op").get<std::string>();
  if (op == "q") return QSeries::monomial(jrat(e.at("e")), 1, ord);
  if (op == "num") return QSeries::monomial(0, jrat(e.at("v")), ord);
  if (op == "add") {
    QSeries s(ord);
    for (const auto& a : e.at("args")) s += eval_expr(a, ord);
    return s;
  }
  if (op == "sub") return eval_expr(e.at("a"), ord) - eval_expr(e.at("b"), ord);
  if (op == "neg") return -eval_expr(e.at("a"), ord);
  if (op == "mul") {
    QSeries s = QSeries::one(ord);
    for (const auto& a : e.at("args")) s = s.mul(eval_expr(a, ord));
    return s;
  }
  if (op == "div") return eval_expr(e.at("a"), ord).mul(eval_expr(e.at("b"), ord).invert());
  if (op == "pow") {
    int k = e.at("k").get<int>();
    QSeries base = eval_expr(e.at("a"), ord);
    if (k >= 0) return base.pow(static_cast<unsigned>(k));
    return base.invert().pow(static_cast<unsigned>(-k));
  }
  if (op == "poch") {
    int sign = e.contains("sign") ? e.at("sign").get<int>() : 1;
    long n = e.contains("n") ? e.at("n").get<long>() : -1;
    return pochhammer(jrat(e.at("a")), jrat(e.at("step")), n, ord, sign);
  }
  if (op == "poch_excl") {
    Rat step = jrat(e.at("step"));
    QSeries prod = QSeries::one(ord);
    for (long k = 1; Rat(k) * step <= ord; ++k) {
      bool drop = false;
      for (const auto& rule : e.at("rules")) {
        long mod = rule.at("mod").get<long>();
        for (long d : rule.at("drop").get<std::vector<long>>())
          if (((k % mod) + mod) % mod == ((d % mod) + mod) % mod) { drop = true; break; }
        if (drop) break;
      }
      if (drop) continue;
      QSeries f = QSeries::one(ord);
      f.add_term(Rat(k) * step, -1);
      prod = prod.mul(f);
    }
    return prod;
  }
  if (op == "eta") return eta_series(jrat(e.at("scale")), ord);
  if (op == "theta5") return theta5(jrat(e.at("m")), jrat(e.at("scale")), ord);
  if (op == "theta_lin")
    return theta_lin(jrat(e.at("A")), jrat(e.at("B")), e.at("alt").get<bool>(), ord);
  if (op == "theta_shift")
    return theta_shift(jrat(e.at("C")), jrat(e.at("s")), e.at("alt").get<bool>(), ord);
  if (op == "slater") {
    // sum_{n>=0} q^{quad n^2 + lin n} / (q^base; q^base)_{mult n + shift}^pow
    Rat quad = jrat(e.at("quad")), lin = jrat(e.at("lin")), base = jrat(e.at("base"));
    long mult = e.at("mult").get<long>(), shift = e.at("shift").get<long>();
    int pw = e.contains("pow") ? e.at("pow").get<int>() : 1;
    if (quad <= 0) throw std::invalid_argument("slater: quad must be positive");
    QSeries out(ord);
    for (long n = 0;; ++n) {
      Rat expo = quad * n * n + lin * n;
      if (expo > ord && Rat(2 * n) * quad + lin > 0) break;
      if (expo <= ord) {
        QSeries inv = pochhammer(base, base, mult * n + shift, ord).invert().truncated(ord);
        QSeries term = QSeries::monomial(expo, 1, ord);
        for (int t = 0; t < pw; ++t) term = term.mul(inv);
        out += term.truncated(ord);
      }
      if (n > 100000) throw std::runtime_error("slater: bound overflow");
    }
    return out;
  }
  if (op == "durfee") {
    long m = e.at("m").get<long>();
    QSeries out(ord);
    for (long l = std::max(0l, -m);; ++l) {
      long k = l + m;
      Rat expo = Rat(k) * l;
      if (expo > ord && l > 0) break;
      out += pochhammer(1, 1, k, ord).mul(pochhammer(1, 1, l, ord)).invert()
                 .mul_monomial(expo).truncated(ord);
    }
    return out;
  }
  if (op == "qf2") return eval_qf2(e, ord);
  if (op == "bc_chain") return eval_bc_chain(e, ord);
  if (op == "xi") {
    const RootSystem& rs = cache.get(e.at("system").get<std::string>());
    auto spec = XiSpec::make(rs, parse_classes(rs, e.at("classes")), e.at("r").get<int>());
    std::string method = e.contains("method") ? e.at("method").get<std::string>() : "multisum";
    if (method == "ct") return xi_ct(spec, ord);
    return xi_multisum(spec, ord);
  }
  if (op == "glxi")
    return gl_xi_multisum(e.at("n").get<int>(), e.at("p").get<int>(),
                          e.at("classes").get<std::vector<std::vector<int>>>(),
                          e.at("r").get<int>(), ord);
  if (op == "glfactor")
    return gl_trace_factor(e.at("n").get<int>(), e.at("labels").get<std::vector<int>>(),
                           e.at("r").get<int>(), ord);
  if (op == "ramond") return ramond_character(ord);
  if (op == "theta_ct") return eval_theta_ct(e, ord, cache);
  throw std::invalid_argument("eval_expr: unknown op '" + op + "'");
}

// ------------------------------------------------------------- registry

namespace {

json Q(const std::string& s) { return {{"op", "q"}, {"e", s}}; }
json Num(const std::string& s) { return {{"op", "num"}, {"v", s}}; }
json Add(std::vector<json> a) { return {{"op", "add"}, {"args", std::move(a)}}; }
json Sub(json a, json b) { return {{"op", "sub"}, {"a", std::move(a)}, {"b", std::move(b)}}; }
json Mul(std::vector<json> a) { return {{"op", "mul"}, {"args", std::move(a)}}; }
json Div(json a, json b) { return {{"op", "div"}, {"a", std::move(a)}, {"b", std::move(b)}}; }
json Pow(json a, int k) { return {{"op", "pow"}, {"a", std::move(a)}, {"k", k}}; }
json Poch(const std::string& a, const std::string& step, long n = -1, int sign = 1) {
  return {{"op", "poch"}, {"a", a}, {"step", step}, {"n", n}, {"sign", sign}};
}
json Eta(const std::string& scale) { return {{"op", "eta"}, {"scale", scale}}; }
json Theta5(const std::string& m, const std::string& scale) {
  return {{"op", "theta5"}, {"m", m}, {"scale", scale}};
}
json ThetaLin(const std::string& A, const std::string& B, bool alt = false) {
  return {{"op", "theta_lin"}, {"A", A}, {"B", B}, {"alt", alt}};
}
json ThetaShift(const std::string& C, const std::string& s, bool alt = true) {
  return {{"op", "theta_shift"}, {"C", C}, {"s", s}, {"alt", alt}};
}
json Slater(const std::string& quad, const std::string& lin, const std::string& base, long mult,
            long shift) {
  return {{"op", "slater"}, {"quad", quad}, {"lin", lin}, {"base", base},
          {"mult", mult},   {"shift", shift}};
}
json Xi(const std::string& system, const json& classes, int r, const std::string& method) {
  return {{"op", "xi"}, {"system", system}, {"classes", classes}, {"r", r}, {"method", method}};
}
json Den(const std::string& base, long cn, long cm, long c0, int pow = 1) {
  return {{"base", base}, {"cn", cn}, {"cm", cm}, {"c0", c0}, {"pow", pow}};
}

std::vector<IdentityRecord> make_registry() {
  std::vector<IdentityRecord> reg;
  auto put = [&](const std::string& id, json lhs, json rhs, const Rat& ord) {
    reg.push_back({id, std::move(lhs), std::move(rhs), ord});
  };
  json eulerinf = Poch("1", "1");
  json full = json::array({"full", "full"});

  // Durfee rectangles and the Euler square series
  {
    json sq = Slater("1", "0", "1", 1, 0);
    sq["pow"] = 2;
    put("euler", Div(Num("1"), eulerinf), sq, 50);
  }
  for (long m = 1; m <= 3; ++m)
    put("durfee-" + std::to_string(m), Div(Num("1"), eulerinf),
        json{{"op", "durfee"}, {"m", m}}, 50);

  // two-theta constant terms, free vs product vs double sums
  auto theta_ct = [&](int m) {
    return json{{"op", "theta_ct"}, {"system", "A1"}, {"classes", full},
                {"x", std::vector<int>{m}}};
  };
  put("theta2-x0-free", theta_ct(0), Div(ThetaLin("1/2", "0"), Pow(eulerinf, 2)), 30);
  put("theta2-x0-prod", theta_ct(0),
      Div(Pow(Poch("1/2", "1", -1, -1), 2), eulerinf), 30);
  put("theta2-x0-sum", theta_ct(0),
      json{{"op", "qf2"}, {"a11", "1/2"}, {"a12", "-1"}, {"a22", "1"},
           {"dens", json::array({Den("1", 1, 0, 0), Den("1", 0, 1, 0, 2)})}},
      30);
  put("theta2-x1-sum", theta_ct(1),
      json{{"op", "qf2"}, {"a11", "1/2"}, {"a12", "-1"}, {"a22", "1"}, {"b1", "-1/2"},
           {"b2", "1"}, {"c0", "1/4"},
           {"dens", json::array({Den("1", 1, 0, 0), Den("1", 0, 1, 1), Den("1", 0, 1, 0)})}},
      30);
  // the shifted free coefficients live on the root lattice: X_{m alpha}
  put("theta2-x1-free", theta_ct(2),
      Mul({Q("1/2"), Div(ThetaLin("1/2", "0"), Pow(eulerinf, 2))}), 30);
  put("theta2-x2-sum", theta_ct(2),
      json{{"op", "qf2"}, {"a11", "1/2"}, {"a12", "-1"}, {"a22", "1"}, {"b1", "-1"},
           {"b2", "2"}, {"c0", "1"},
           {"dens", json::array({Den("1", 1, 0, 0), Den("1", 0, 1, 2), Den("1", 0, 1, 0)})}},
      30);
  put("theta2-x2-free", theta_ct(4),
      Mul({Q("2"), Div(ThetaLin("1/2", "0"), Pow(eulerinf, 2))}), 30);

  // level two, rank one
  json xi_full2 = Xi("A1", full, 0, "ct");
  json xi_even2 = Xi("A1", json::array({std::vector<int>{0}, std::vector<int>{0}}), 0, "ct");
  json xi_odd2 = Xi("A1", json::array({std::vector<int>{1}, std::vector<int>{1}}), 0, "ct");
  put("a1-p2-full-sum", xi_full2, Slater("1/2", "0", "1", 1, 0), 40);
  put("a1-p2-even-sum", xi_even2, Slater("2", "0", "1", 2, 0), 40);
  put("a1-p2-even-theta", xi_even2, Div(ThetaLin("4", "-1"), Poch("2", "2")), 40);
  put("a1-p2-even-prod", xi_even2,
      Div(Mul({Poch("3", "8", -1, -1), Poch("5", "8", -1, -1), Poch("8", "8")}), Poch("2", "2")),
      40);
  put("a1-p2-odd-sum", xi_odd2, Mul({Q("1/2"), Slater("2", "2", "1", 2, 1)}), 40);
  put("a1-p2-odd-theta", xi_odd2, Mul({Q("1/2"), Div(ThetaLin("4", "-3"), Poch("2", "2"))}), 40);
  put("a1-p2-odd-prod", xi_odd2,
      Mul({Q("1/2"),
           Div(Mul({Poch("1", "8", -1, -1), Poch("7", "8", -1, -1), Poch("8", "8")}),
               Poch("2", "2"))}),
      40);
  put("a1-p2-eta", Slater("1/2", "0", "1", 1, 0),
      Mul({Q("1/48"), Div(Pow(Eta("1"), 2), Mul({Eta("1/2"), Eta("2")}))}), 40);

  // level three, rank one: engine sum vs the explicit double sums
  for (int u = 0; u <= 1; ++u)
    for (int v = 0; v <= 1; ++v)
      for (int w = 0; w <= 1; ++w) {
        int r = (u + v + w) % 2;
        json classes = json::array({std::vector<int>{u}, std::vector<int>{v}, std::vector<int>{w}});
        std::string rid = "a1-p3-sum-" + std::to_string(u) + std::to_string(v) +
                          std::to_string(w) + "-r" + std::to_string(r);
        json rhs{{"op", "qf2"},
                 {"a11", "1/2"},
                 {"a12", "-1/2"},
                 {"a22", "1/2"},
                 {"b2", r == 1 ? "-1/2" : "0"},
                 {"c0", r == 1 ? "1/4" : "0"},
                 {"par1", u},
                 {"par2", (u + v) % 2},
                 {"dens", json::array({Den("1", 1, 0, 0), Den("1", 0, 1, 0)})}};
        put(rid, Xi("A1", classes, r, "multisum"), rhs, 40);
      }

  // eta-quotient splits for the four atomic level-three series
  json c000 = json::array({std::vector<int>{0}, std::vector<int>{0}, std::vector<int>{0}});
  json c110 = json::array({std::vector<int>{1}, std::vector<int>{1}, std::vector<int>{0}});
  json c111 = json::array({std::vector<int>{1}, std::vector<int>{1}, std::vector<int>{1}});
  json c100 = json::array({std::vector<int>{1}, std::vector<int>{0}, std::vector<int>{0}});
  json eta2_over_eta_sq = Div(Eta("2"), Pow(Eta("1"), 2));
  put("a1-p3-eta-000", Mul({Q("-1/20"), Xi("A1", c000, 0, "multisum")}),
      Sub(Mul({Add({Theta5("3/4", "2"), Theta5("13/4", "2")}),
               Div(Eta("1"), Mul({Eta("2"), Eta("1/2")}))}),
          Mul({Theta5("2", "2"), eta2_over_eta_sq})),
      40);
  put("a1-p3-eta-110", Mul({Q("-1/20"), Xi("A1", c110, 0, "multisum")}),
      Mul({Theta5("2", "2"), eta2_over_eta_sq}), 40);
  put("a1-p3-eta-111", Mul({Q("-1/5"), Xi("A1", c111, 1, "multisum")}),
      Sub(Div(Mul({Theta5("3/2", "1"), Theta5("2", "2"), Pow(Eta("1"), 3)}),
              Mul({Pow(Eta("1/2"), 2), Pow(Eta("2"), 2), Eta("10")})),
          Mul({Theta5("1", "2"), eta2_over_eta_sq})),
      40);
  put("a1-p3-eta-100", Mul({Q("-1/5"), Xi("A1", c100, 1, "multisum")}),
      Mul({Theta5("1", "2"), eta2_over_eta_sq}), 40);

  // the two distinguished ladder forms
  put("a1-p3-rr-100-eta", Mul({Q("-1/4"), Xi("A1", c100, 1, "multisum")}),
      Mul({Q("-1/20"), Theta5("1", "2"), eta2_over_eta_sq}), 40);
  put("a1-p3-rr-100-sum", Mul({Q("-1/4"), Xi("A1", c100, 1, "multisum")}),
      Mul({Slater("2", "0", "2", 1, 0), Pow(Poch("1", "1", -1, -1), 2)}), 40);
  put("a1-p3-rr-110-eta", Mul({Q("-1/2"), Xi("A1", c110, 0, "multisum")}),
      Mul({Q("-9/20"), Theta5("2", "2"), eta2_over_eta_sq}), 40);
  put("a1-p3-rr-110-sum", Mul({Q("-1/2"), Xi("A1", c110, 0, "multisum")}),
      Mul({Slater("2", "2", "2", 1, 0), Pow(Poch("1", "1", -1, -1), 2)}), 40);

  // classical single-sum pair
  put("rr-classical-g", Slater("1", "0", "1", 1, 0),
      Mul({Q("1/60"), Div(Theta5("1", "1"), Eta("1"))}), 40);
  put("rr-classical-h", Slater("1", "1", "1", 1, 0),
      Mul({Q("-11/60"), Div(Theta5("2", "1"), Eta("1"))}), 40);

  // constant-term displays for the two ladder series: double sums in two
  // different orders plus the single-sum reduction
  for (int k = 0; k <= 1; ++k) {
    std::string ks = std::to_string(k);
    json classes = json::array({std::vector<int>{1}, std::vector<int>{0}, std::vector<int>{k}});
    json ct = Mul({Q(k == 0 ? "-1/4" : "-1/2"), Xi("A1", classes, 1 - k, "ct")});
    json e1{{"op", "qf2"}, {"a11", "2"}, {"a12", "-2"}, {"a22", "2"}, {"b1", ks}, {"b2", "1"},
            {"dens", json::array({Den("1", 2, 0, 1), Den("1", 0, 2, 1)})}};
    json e2{{"op", "qf2"}, {"a11", "2"}, {"a12", "-2"}, {"a22", "2"},
            {"b1", std::to_string(2 * k)}, {"b2", "-1"},
            {"dens", json::array({Den("1", 2, 0, k), Den("1", 0, 2, 0)})}};
    json e3 = Mul({Slater("2", std::to_string(2 * k), "2", 1, 0), Pow(Poch("1", "1", -1, -1), 2)});
    put("level3-ct-k" + ks + "-a", ct, e1, 40);
    put("level3-ct-k" + ks + "-b", e1, e2, 40);
    put("level3-ct-k" + ks + "-c", e1, e3, 40);
  }

  // level-two chains for the B and C families, with product sides
  for (int n = 1; n <= 3; ++n) {
    std::string ns = std::to_string(n);
    json bchain{{"op", "bc_chain"}, {"n", n}, {"weight", "2"}, {"first_base", "1"},
                {"first_mult", 2}, {"step_base", "2"}};
    put("bn-level2-n" + ns, bchain,
        Div(Mul({Poch(std::to_string(2 * n + 1), std::to_string(4 * n + 4), -1, -1),
                 Poch(std::to_string(2 * n + 3), std::to_string(4 * n + 4), -1, -1),
                 Poch(std::to_string(4 * n + 4), std::to_string(4 * n + 4))}),
            Poch("2", "2")),
        25);
    json cchain{{"op", "bc_chain"}, {"n", n}, {"weight", "1"}, {"first_base", "2"},
                {"first_mult", 1}, {"step_base", "1"}};
    put("cn-level2-n" + ns, cchain,
        Div(Mul({Pow(Poch(std::to_string(n + 1), std::to_string(2 * n + 2)), 2),
                 Poch(std::to_string(2 * n + 2), std::to_string(2 * n + 2))}),
            Poch("1", "1")),
        25);
  }
  for (int n = 1; n <= 2; ++n) {
    std::string ns = std::to_string(n);
    json wchain{{"op", "bc_chain"}, {"n", n}, {"weight", "1"}, {"first_base", "1"},
                {"first_mult", 2}, {"step_base", "2"}};
    json rules = json::array(
        {json{{"mod", 4}, {"drop", std::vector<long>{2}}},
         json{{"mod", 8 * n + 12},
              {"drop", std::vector<long>{0, 4 * n + 4, 4 * n + 8}}}});
    put("warnaar-int-n" + ns, wchain,
        Div(Num("1"), json{{"op", "poch_excl"}, {"step", "1"}, {"rules", rules}}), 20);
    json hchain{{"op", "bc_chain"}, {"n", n}, {"weight", "1/2"}, {"first_base", "2"},
                {"first_mult", 1}, {"step_base", "1"}};
    Rat per = Rat(2 * n + 3, 2);
    put("warnaar-half-n" + ns, hchain,
        Div(Mul({Poch(Rat(n + 1, 2).str(), per.str()), Poch(Rat(n + 2, 2).str(), per.str()),
                 Poch(per.str(), per.str())}),
            Mul({Poch("1", "1", -1, -1), Poch("1/2", "1/2")})),
        20);
  }

  // rank-two level-two: the two atomic series and their theta/eta forms
  json a2_oo = Xi("A2", json::array({std::vector<int>{0}, std::vector<int>{0}}), 0, "multisum");
  json a2_ox = Xi("A2", json::array({std::vector<int>{1}, std::vector<int>{2}}), 0, "multisum");
  json a2_full = Xi("A2", full, 0, "multisum");
  put("a2-class-linearity", a2_full, Add({a2_oo, Mul({Num("2"), a2_ox})}), 15);
  put("a2-sharp-diag", Mul({Q("-1/30"), a2_oo}),
      Div(Sub(ThetaShift("15/2", "1/30"), ThetaShift("15/2", "11/30")), Eta("1")), 15);
  put("a2-sharp-offdiag", Mul({Q("-1/30"), a2_ox}),
      Div(ThetaShift("15/2", "3/10"), Eta("1")), 15);
  put("a2-total-split", Mul({Q("-1/30"), a2_full}),
      Div(Add({Mul({Num("2"), ThetaShift("15/2", "3/10")}), ThetaShift("15/2", "1/30"),
               json{{"op", "neg"}, {"a", ThetaShift("15/2", "11/30")}}}),
          Eta("1")),
      15);
  put("a2-string-diff", Mul({Poch("1", "1"), Sub(a2_oo, a2_ox)}),
      json{{"op", "poch_excl"}, {"step", "1/3"},
           {"rules", json::array({json{{"mod", 5}, {"drop", std::vector<long>{1, 4}}}})}},
      15);

  // gl factorization at n = 1 over all atomic multiplicity patterns
  for (int p = 2; p <= 3; ++p) {
    for (int l1 = 0; l1 <= p; ++l1) {
      int l0 = p - l1;
      std::vector<std::vector<int>> glcls;
      json a1cls = json::array();
      std::vector<int> labels;
      for (int t = 0; t < l0; ++t) { glcls.push_back({0}); a1cls.push_back(std::vector<int>{0}); labels.push_back(0); }
      for (int t = 0; t < l1; ++t) { glcls.push_back({1}); a1cls.push_back(std::vector<int>{1}); labels.push_back(1); }
      int r = (l1 % 2 == 0) ? 0 : 1;
      std::string id = "gl1-factor-p" + std::to_string(p) + "-l" + std::to_string(l0) +
                       std::to_string(l1);
      put(id,
          json{{"op", "glxi"}, {"n", 1}, {"p", p}, {"classes", glcls}, {"r", r}},
          Mul({json{{"op", "glfactor"}, {"n", 1}, {"labels", labels}, {"r", r}},
               Xi("A1", a1cls, r, "multisum")}),
          15);
    }
  }

  // ladder-monomial character against its Virasoro product form
  put("ramond-virasoro", json{{"op", "ramond"}},
      Mul({Poch("1", "1", -1, -1), Slater("2", "2", "2", 1, 0)}), 20);

  return reg;
}

} // namespace

const std::vector<IdentityRecord>& builtin_registry() {
  static const std::vector<IdentityRecord> reg = make_registry();
  return reg;
}

std::vector<IdentityRecord> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  json j;
  in >> j;
  std::vector<IdentityRecord> out;
  for (const auto& e : j.at("identities")) {
    IdentityRecord rec;
    rec.id = e.at("id").get<std::string>();
    rec.lhs = e.at("lhs");
    rec.rhs = e.at("rhs");
    rec.default_order = e.contains("order") ? jrat(e.at("order")) : Rat(20);
    out.push_back(std::move(rec));
  }
  return out;
}

VerifyReport verify_identity(const IdentityRecord& rec, const Rat& ord) {
  VerifyReport rep;
  rep.id = rec.id;
  rep.order = ord;
  auto start = std::chrono::steady_clock::now();
  Rat margin = 2;
  QSeries lhs(0), rhs(0);
  for (int attempt = 0; attempt < 6; ++attempt) {
    lhs = eval_expr(rec.lhs, ord + margin);
    rhs = eval_expr(rec.rhs, ord + margin);
    if (std::min(lhs.order(), rhs.order()) >= ord) break;
    margin *= 2;
  }
  rep.compared_order = std::min(Rat(ord), std::min(lhs.order(), rhs.order()));
  rep.first_mismatch = QSeries::first_mismatch(lhs.truncated(ord), rhs.truncated(ord));
  rep.pass = !rep.first_mismatch.has_value() && rep.compared_order >= ord;
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

VerifyReport verify_identity(const std::string& id, const Rat& ord,
                             const std::vector<IdentityRecord>& extra) {
  for (const auto& rec : extra)
    if (rec.id == id) return verify_identity(rec, ord > 0 ? ord : rec.default_order);
  for (const auto& rec : builtin_registry())
    if (rec.id == id) return verify_identity(rec, ord > 0 ? ord : rec.default_order);
  throw std::invalid_argument("unknown identity id: " + id);
}

} // namespace qrr
