// Acceptance suite: one pass/fail line per criterion group, nonzero exit on
// any failure.  Tolerances are zero for the exact series comparisons and the
// stated float tolerances for the numeric ones.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qrr/dilog.hpp"
#include "qrr/gauss.hpp"
#include "qrr/rr.hpp"

using namespace qrr;

namespace {

int g_failures = 0;
auto g_t0 = std::chrono::steady_clock::now();
auto g_last = g_t0;

void report(const std::string& id, bool pass, const std::string& detail = "") {
  auto now = std::chrono::steady_clock::now();
  long ms = std::chrono::duration_cast<std::chrono::milliseconds>(now - g_last).count();
  g_last = now;
  std::printf("%-44s %s  (%ld ms)%s%s\n", id.c_str(), pass ? "PASS" : "FAIL", ms,
              detail.empty() ? "" : "  ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::vector<ThetaSpec> all_specs(const RootSystem& rs) {
  std::vector<ThetaSpec> out{ThetaSpec::full(rs)};
  out.push_back(ThetaSpec::atomic(rs, 0));
  for (int r : rs.minuscule()) out.push_back(ThetaSpec::atomic(rs, r));
  return out;
}

// ---- criterion 1: constant-term route equals the multi-sum route ----
void criterion1() {
  {
    auto rs = RootSystem::build("A1");
    for (int p : {2, 3}) {
      Rat ord = p == 2 ? 14 : 13;
      HermiteContext ctx(rs, ord);
      auto specs = all_specs(rs); // full, {0}, {1}
      bool ok = true;
      std::vector<int> idx(p, 0);
      while (true) {
        std::vector<ThetaSpec> cls;
        for (int i = 0; i < p; ++i) cls.push_back(specs[idx[i]]);
        for (int r : {0, 1}) {
          auto spec = XiSpec::make(rs, cls, r);
          if (!QSeries::agree(xi_ct(ctx, spec), xi_multisum(spec, ord))) ok = false;
        }
        int i = 0;
        while (i < p && ++idx[i] == 3) idx[i++] = 0;
        if (i == p) break;
      }
      report("C1 A1 p=" + std::to_string(p) + " all classes, r=0,1", ok);
    }
  }
  {
    auto rs = RootSystem::build("A2");
    Rat ord = 13;
    HermiteContext ctx(rs, ord);
    bool ok = true;
    std::vector<std::vector<ThetaSpec>> cases{
        {ThetaSpec::atomic(rs, 0), ThetaSpec::atomic(rs, 0)},
        {ThetaSpec::atomic(rs, 1), ThetaSpec::atomic(rs, 2)},
        {ThetaSpec::full(rs), ThetaSpec::full(rs)}};
    for (const auto& cls : cases) {
      auto spec = XiSpec::make(rs, cls, 0);
      if (!QSeries::agree(xi_ct(ctx, spec), xi_multisum(spec, ord))) ok = false;
    }
    report("C1 A2 p=2 (diag, offdiag, full)", ok);
  }
  for (const char* name : {"B2", "C2", "G2"}) {
    auto rs = RootSystem::build(name);
    Rat ord = 13;
    HermiteContext ctx(rs, ord);
    bool ok = true;
    std::vector<std::vector<ThetaSpec>> cases{
        {ThetaSpec::atomic(rs, 0), ThetaSpec::atomic(rs, 0)},
        {ThetaSpec::full(rs), ThetaSpec::full(rs)}};
    for (const auto& cls : cases) {
      auto spec = XiSpec::make(rs, cls, 0);
      if (!QSeries::agree(xi_ct(ctx, spec), xi_multisum(spec, ord))) ok = false;
    }
    report(std::string("C1 ") + name + " p=2 ({0},{0}) and (full,full)", ok);
  }
}

// ---- criterion 2: expansion reconstructs the theta product ----
void criterion2() {
  {
    auto rs = RootSystem::build("A1");
    HermiteContext ctx(rs, 10);
    bool ok = true;
    ok = ok && reconstruction_check(ctx, {ThetaSpec::full(rs)});
    ok = ok && reconstruction_check(ctx, {ThetaSpec::full(rs), ThetaSpec::full(rs)});
    ok = ok && reconstruction_check(ctx, {ThetaSpec::full(rs), ThetaSpec::full(rs),
                                          ThetaSpec::full(rs)});
    ok = ok && reconstruction_check(ctx, {ThetaSpec::atomic(rs, 1), ThetaSpec::atomic(rs, 0),
                                          ThetaSpec::atomic(rs, 0)});
    report("C2 A1 reconstruction p<=3", ok);
  }
  {
    auto rs = RootSystem::build("A2");
    HermiteContext ctx(rs, 10);
    bool ok = true;
    ok = ok && reconstruction_check(ctx, {ThetaSpec::full(rs), ThetaSpec::full(rs)});
    ok = ok && reconstruction_check(ctx, {ThetaSpec::atomic(rs, 0), ThetaSpec::atomic(rs, 0)});
    ok = ok && reconstruction_check(ctx, {ThetaSpec::atomic(rs, 1), ThetaSpec::atomic(rs, 2)});
    report("C2 A2 reconstruction p=2", ok);
  }
}

void run_registry(const std::string& label, const std::vector<std::string>& ids, const Rat& ord) {
  bool ok = true;
  std::string bad;
  for (const auto& id : ids) {
    auto rep = verify_identity(id, ord);
    if (!rep.pass) {
      ok = false;
      bad += " " + id;
    }
  }
  report(label, ok, bad.empty() ? "" : ("failing:" + bad));
}

// ---- criterion 3: rank-one registry at order 40 ----
void criterion3() {
  run_registry("C3 rectangles (durfee, euler)", {"euler", "durfee-1", "durfee-2", "durfee-3"},
               40);
  run_registry("C3 two-theta coefficients",
               {"theta2-x0-free", "theta2-x0-prod", "theta2-x0-sum", "theta2-x1-free",
                "theta2-x1-sum", "theta2-x2-free", "theta2-x2-sum"},
               30);
  run_registry("C3 level-two forms",
               {"a1-p2-full-sum", "a1-p2-even-sum", "a1-p2-even-theta", "a1-p2-even-prod",
                "a1-p2-odd-sum", "a1-p2-odd-theta", "a1-p2-odd-prod", "a1-p2-eta"},
               40);
  {
    std::vector<std::string> ids;
    for (int u = 0; u <= 1; ++u)
      for (int v = 0; v <= 1; ++v)
        for (int w = 0; w <= 1; ++w)
          ids.push_back("a1-p3-sum-" + std::to_string(u) + std::to_string(v) +
                        std::to_string(w) + "-r" + std::to_string((u + v + w) % 2));
    run_registry("C3 level-three double sums (all uvwr)", ids, 40);
  }
  run_registry("C3 level-three eta splits",
               {"a1-p3-eta-000", "a1-p3-eta-110", "a1-p3-eta-111", "a1-p3-eta-100"}, 40);
  run_registry("C3 ladder pair and classical forms",
               {"a1-p3-rr-100-eta", "a1-p3-rr-100-sum", "a1-p3-rr-110-eta", "a1-p3-rr-110-sum",
                "rr-classical-g", "rr-classical-h"},
               40);
  run_registry("C3 triple constant-term displays",
               {"level3-ct-k0-a", "level3-ct-k0-b", "level3-ct-k0-c", "level3-ct-k1-a",
                "level3-ct-k1-b", "level3-ct-k1-c"},
               40);
}

// ---- criterion 4: level-two B/C ladders ----
void criterion4() {
  run_registry("C4 B-family products n=1..3",
               {"bn-level2-n1", "bn-level2-n2", "bn-level2-n3"}, 25);
  run_registry("C4 C-family products n=1..3",
               {"cn-level2-n1", "cn-level2-n2", "cn-level2-n3"}, 25);
  run_registry("C4 quarter-shift ladders n=1..2",
               {"warnaar-int-n1", "warnaar-int-n2", "warnaar-half-n1", "warnaar-half-n2"}, 20);
}

// ---- criterion 5: rank-two level-two ----
void criterion5() {
  run_registry("C5 rank-two splits",
               {"a2-class-linearity", "a2-total-split", "a2-sharp-diag", "a2-sharp-offdiag",
                "a2-string-diff"},
               15);
  auto rs = RootSystem::build("A2");
  auto oo = XiSpec::make(rs, {ThetaSpec::atomic(rs, 0), ThetaSpec::atomic(rs, 0)}, 0);
  auto ox = XiSpec::make(rs, {ThetaSpec::atomic(rs, 1), ThetaSpec::atomic(rs, 2)}, 0);
  QSeries s_oo = xi_multisum(oo, 15), s_ox = xi_multisum(ox, 15);
  bool ok = s_oo.lead_exp().value() == Rat(0) && s_ox.lead_exp().value() == Rat(2, 3);
  ok = ok && exponent_classes(s_oo) == std::set<Rat>{Rat(0)};
  ok = ok && exponent_classes(s_ox) == std::set<Rat>{Rat(2, 3)};
  report("C5 leading exponents 0 and 2/3", ok);
}

// ---- criterion 6: gl factorization ----
void criterion6() {
  run_registry("C6 gl trace factorization n=1, p=2,3",
               {"gl1-factor-p2-l20", "gl1-factor-p2-l11", "gl1-factor-p2-l02",
                "gl1-factor-p3-l30", "gl1-factor-p3-l21", "gl1-factor-p3-l12",
                "gl1-factor-p3-l03"},
               15);
}

// ---- criterion 7: orthogonal polynomial suite ----
void criterion7() {
  for (const char* name : {"A1", "A2", "B2"}) {
    auto rs = RootSystem::build(name);
    Rat ord = 14;
    HermiteContext ctx(rs, ord);
    auto ball = rs.enumerate_antidominant(4);
    bool ok = true;
    for (const auto& b : ball)
      for (const auto& c : ball) {
        QSeries got = ctx.pair_mu(b, c);
        QSeries expect = (b == c) ? ctx.norm_closed(b) : QSeries::zero(ord);
        if (!QSeries::agree(got, expect)) ok = false;
      }
    // positivity of every coefficient polynomial
    for (const auto& b : ball)
      for (const auto& [w, s] : ctx.q_hermite(b).terms())
        for (const auto& [e, cf] : s.terms())
          if (!is_integer(cf) || cf <= 0) ok = false;
    report(std::string("C7 ") + name + " norms, orthogonality, positivity", ok);
  }
  {
    auto rs = RootSystem::build("A1");
    Rat ord = 16;
    HermiteContext ctx(rs, ord);
    bool ok = true;
    XPoly ladder = XPoly::one(rs, ord);
    for (long n = 0; n <= 12; ++n) {
      XPoly orth = ctx.q_hermite(Weight{static_cast<int>(-n)});
      if (!XPoly::agree(orth, q_hermite_rank1(rs, n, ord))) ok = false;
      if (!XPoly::agree(orth, ladder)) ok = false;
      ladder = raising_apply(ladder)
                   .mul_series(QSeries::monomial(Rat(n, 2), 1, ord + n))
                   .truncated(ord);
    }
    report("C7 rank-one triple oracle n<=12", ok);
  }
}

// ---- criterion 8: dilogarithm table ----
void criterion8() {
  auto rows = dilog_table(8, 1e-12);
  bool ok = true;
  std::string bad;
  for (const auto& row : rows) {
    bool row_ok = row.plain.converged && row.flat.converged && row.err_plain < 1e-9 &&
                  row.err_flat < 1e-9 && row.plain.recognized.has_value();
    if (!row_ok) {
      ok = false;
      bad += " " + row.system;
    }
  }
  report("C8 table rows A..G,T rank<=8 both columns", ok, bad.empty() ? "" : "failing:" + bad);
  {
    auto a3 = solve_qsystem(standard_system(RootSystem::build("A3"), false));
    auto a4 = solve_qsystem(standard_system(RootSystem::build("A4"), false));
    auto d4 = solve_qsystem(standard_system(RootSystem::build("D4"), false));
    double q2 = a4.Q[1];
    bool w_ok = std::abs(a3.Q[0] - 2.0 / 3) < 1e-9 && std::abs(a3.Q[1] - 0.75) < 1e-9 &&
                std::abs(a3.L - 2) < 1e-9 && std::abs(d4.Q[1] - 8.0 / 9) < 1e-9 &&
                std::abs(d4.Q[0] - 0.75) < 1e-9 && std::abs(d4.L - 3) < 1e-9 &&
                std::abs(a4.L - 20.0 / 7) < 1e-9 &&
                std::abs(q2 - (2 * std::cos(3.14159265358979323846 / 7) - 1)) < 1e-9;
    report("C8 worked solutions A3, A4, D4", w_ok);
  }
  {
    bool ok2 = true;
    for (int n = 2; n <= 6; ++n) {
      auto b = RootSystem::build("B" + std::to_string(n));
      auto c = RootSystem::build("C" + std::to_string(n));
      double vb = solve_qsystem(variant_system(b, false)).L;
      double vc = solve_qsystem(variant_system(c, false)).L;
      double lb = solve_qsystem(standard_system(b, false)).L;
      double lc = solve_qsystem(standard_system(c, false)).L;
      if (std::abs(vb - lc) > 1e-9 || std::abs(vc - lb) > 1e-9) ok2 = false;
    }
    for (const char* nm : {"F4", "G2"}) {
      auto rs = RootSystem::build(nm);
      double v = solve_qsystem(variant_system(rs, false)).L;
      double l = solve_qsystem(standard_system(rs, false)).L;
      if (std::abs(v - l) > 1e-9) ok2 = false;
    }
    report("C8 variant-system duality B<->C, F4, G2", ok2);
  }
}

// ---- criterion 9: gauss sums and the projective action ----
void criterion9() {
  bool gamma_ok = true, rel_ok = true;
  std::string bad;
  for (const char* name : {"A1", "A2", "A3", "A4", "D4", "B3", "C3", "F4", "G2"}) {
    auto rs = RootSystem::build(name);
    for (long long N = 2; N <= 12; ++N) {
      FiniteModule fm(rs, N);
      double gd = std::abs(fm.gamma() - gamma_formula(rs.id(), N));
      if (gd > 1e-9) {
        gamma_ok = false;
        bad += std::string(" ") + name + ":N" + std::to_string(N);
      }
      if (fm.index() <= 5000) {
        auto chk = check_action(fm, +1, 3);
        double rel = std::max({chk.steinberg, chk.sigma_formula, chk.sigma_sq_inversion,
                               chk.steinberg_cubed, chk.weyl_commute, chk.pairing_unitarity});
        if (rel > 1e-9) {
          rel_ok = false;
          bad += std::string(" rel:") + name + ":N" + std::to_string(N);
        }
      }
    }
  }
  report("C9 gauss sums vs closed forms, N=2..12", gamma_ok, bad.empty() ? "" : "bad:" + bad);
  report("C9 projective relations (dim <= 5000)", rel_ok);
}

// ---- criterion 10: ladder-monomial character ----
void criterion10() {
  auto rep = verify_identity("ramond-virasoro", 20);
  report("C10 constrained-ladder character vs product", rep.pass);
}

// ---- criterion 11: exponent-residue smoke tests ----
void criterion11() {
  auto rs = RootSystem::build("A1");
  Rat ord = 16;
  auto at = [&](int k) { return ThetaSpec::atomic(rs, k); };
  QSeries xi100 = xi_multisum(XiSpec::make(rs, {at(1), at(0), at(0)}, 1), ord);
  QSeries xi111 = xi_multisum(XiSpec::make(rs, {at(1), at(1), at(1)}, 1), ord);
  QSeries xi000 = xi_multisum(XiSpec::make(rs, {at(0), at(0), at(0)}, 0), ord);
  QSeries xi110 = xi_multisum(XiSpec::make(rs, {at(1), at(1), at(0)}, 0), ord);
  bool ok = exponent_classes(xi100) == std::set<Rat>{Rat(1, 4)} &&
            exponent_classes(xi111) == std::set<Rat>{Rat(3, 4)} &&
            exponent_classes(xi000) == std::set<Rat>{Rat(0)} &&
            exponent_classes(xi110) == std::set<Rat>{Rat(1, 2)};
  report("C11 quarter-shift integrality of the four ladders", ok);
  auto a2 = RootSystem::build("A2");
  QSeries oo = xi_multisum(
      XiSpec::make(a2, {ThetaSpec::atomic(a2, 0), ThetaSpec::atomic(a2, 0)}, 0), 12);
  QSeries ox = xi_multisum(
      XiSpec::make(a2, {ThetaSpec::atomic(a2, 1), ThetaSpec::atomic(a2, 2)}, 0), 12);
  bool ok2 = exponent_classes(oo) == std::set<Rat>{Rat(0)} &&
             exponent_classes(ox) == std::set<Rat>{Rat(2, 3)} &&
             oo.lead_exp().value() == Rat(0) && ox.lead_exp().value() == Rat(2, 3);
  report("C11 rank-two residue classes and leads", ok2);
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  long total = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - g_t0)
                   .count();
  std::printf("----\n%s: %d failure(s), %ld ms total\n", g_failures == 0 ? "ALL PASS" : "FAILED",
              g_failures, total);
  return g_failures == 0 ? 0 : 1;
}
