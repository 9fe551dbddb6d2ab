// qrr: exact q-series engine for root-system theta expansions,
// Rogers-Ramanujan type identity verification, Q-system dilogarithm tables
// and lattice Gauss sums.

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "qrr/dilog.hpp"
#include "qrr/gauss.hpp"
#include "qrr/rr.hpp"

using namespace qrr;

namespace {

json series_json(const QSeries& s) {
  json terms = json::array();
  for (const auto& row : s.serialize())
    terms.push_back({row[0].str(), row[1].str(), row[2].str(), row[3].str()});
  return {{"order", s.order().str()}, {"terms", terms}};
}

Rat default_order(double fallback) {
  if (const char* env = std::getenv("QRR_ORDER")) return rat_parse(env);
  return rat_parse(std::to_string(static_cast<long>(fallback)));
}

// per-factor class lists: "0|1,full,2" -> three factors
std::vector<ThetaSpec> parse_class_spec(const RootSystem& rs, const std::string& spec) {
  std::vector<ThetaSpec> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "full") {
      out.push_back(ThetaSpec::full(rs));
      continue;
    }
    std::vector<int> labels;
    std::stringstream ts(tok);
    std::string lab;
    while (std::getline(ts, lab, '|')) labels.push_back(std::stoi(lab));
    out.push_back(ThetaSpec::of_labels(rs, labels));
  }
  if (out.empty()) throw CLI::ValidationError("--classes", "empty class specification");
  return out;
}

json report_json(const VerifyReport& r) {
  json j{{"id", r.id},
         {"order", r.order.str()},
         {"compared_order", r.compared_order.str()},
         {"status", r.pass ? "PASS" : "FAIL"},
         {"elapsed_ms", r.elapsed_ms}};
  j["first_mismatch_exponent"] =
      r.first_mismatch ? json(r.first_mismatch->str()) : json(nullptr);
  return j;
}

void print_report_text(const VerifyReport& r) {
  std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  order " << r.order.str();
  if (!r.pass && r.first_mismatch)
    std::cout << "  first mismatch at q^" << r.first_mismatch->str();
  std::cout << "  (" << r.elapsed_ms << " ms)\n";
}

int run_verify_all(const std::vector<IdentityRecord>& recs, const Rat& order_override,
                   int jobs, const std::string& output) {
  std::vector<VerifyReport> reports(recs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= recs.size()) break;
      Rat ord = order_override > 0 ? order_override : recs[i].default_order;
      reports[i] = verify_identity(recs[i], ord);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  int fails = 0;
  long total_ms = 0;
  for (const auto& r : reports) {
    total_ms += r.elapsed_ms;
    if (!r.pass) ++fails;
  }
  if (output == "json") {
    json out{{"summary",
              {{"pass", static_cast<int>(reports.size()) - fails},
               {"fail", fails},
               {"total_elapsed_ms", total_ms}}},
             {"results", json::array()}};
    for (const auto& r : reports) out["results"].push_back(report_json(r));
    std::cout << out.dump(2) << "\n";
  } else if (output == "csv") {
    std::cout << "id,order,status,first_mismatch_exponent,elapsed_ms\n";
    for (const auto& r : reports)
      std::cout << r.id << "," << r.order.str() << "," << (r.pass ? "PASS" : "FAIL") << ","
                << (r.first_mismatch ? r.first_mismatch->str() : "") << "," << r.elapsed_ms
                << "\n";
  } else {
    for (const auto& r : reports) print_report_text(r);
    std::cout << "summary: " << reports.size() - fails << " pass, " << fails << " fail, "
              << total_ms << " ms\n";
  }
  return fails == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-series toolkit for root-system theta identities"};
  app.require_subcommand(1);

  std::string output = "text";
  app.add_option("--output", output, "text, json or csv")->capture_default_str();

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "check one registry identity");
  std::string verify_id, manifest_path;
  double verify_order = 0;
  verify->add_option("id", verify_id, "identity id")->required();
  verify->add_option("--order", verify_order, "comparison order (default: per entry)");
  verify->add_option("--manifest", manifest_path, "extra identities (json)");

  // ---- verify-all ----
  auto* vall = app.add_subcommand("verify-all", "run the whole registry");
  double vall_order = 0;
  int jobs = 1;
  std::string vall_manifest;
  vall->add_option("--order", vall_order, "override every entry's order");
  vall->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  vall->add_option("--manifest", vall_manifest, "extra identities (json)");

  // ---- xi ----
  auto* xi = app.add_subcommand("xi", "evaluate a theta-product series");
  std::string xi_system = "A1", xi_classes = "full,full", xi_method = "multisum";
  int xi_level = 2, xi_r = -1;
  double xi_order = 0;
  xi->add_option("--system", xi_system)->capture_default_str();
  xi->add_option("--level", xi_level, "number of theta factors p")->capture_default_str();
  xi->add_option("--classes", xi_classes, "per-factor classes, e.g. 1,0|1,full");
  xi->add_option("--r", xi_r, "correction index (default: forced for atomic classes)");
  xi->add_option("--order", xi_order);
  xi->add_option("--method", xi_method, "multisum, ct or both")->capture_default_str();

  // ---- expand ----
  auto* expand = app.add_subcommand("expand", "orthogonal-basis coefficients of a theta product");
  std::string ex_system = "A1", ex_classes = "full,full";
  double ex_order = 0;
  expand->add_option("--system", ex_system)->capture_default_str();
  expand->add_option("--classes", ex_classes)->capture_default_str();
  expand->add_option("--order", ex_order);

  // ---- dilog-table ----
  auto* dt = app.add_subcommand("dilog-table", "Q-system dilogarithm table");
  int max_rank = 8;
  double tol = 1e-12;
  dt->add_option("--max-rank", max_rank)->capture_default_str();
  dt->add_option("--tol", tol)->capture_default_str();

  // ---- gauss ----
  auto* gs = app.add_subcommand("gauss", "lattice Gauss sums and modular action checks");
  std::string gs_systems = "A1,A2,A3,A4,D4,B3,C3,F4,G2";
  long long gs_nmax = 12, gs_maxindex = 5000;
  int gs_probes = 3;
  gs->add_option("--systems", gs_systems)->capture_default_str();
  gs->add_option("--nmax", gs_nmax)->capture_default_str();
  gs->add_option("--max-index", gs_maxindex, "relation checks only below this dimension")
      ->capture_default_str();
  gs->add_option("--probes", gs_probes)->capture_default_str();

  // ---- hermite ----
  auto* hm = app.add_subcommand("hermite", "print one orthogonal polynomial");
  std::string hm_system = "A1", hm_coords = "-2";
  double hm_order = 0;
  hm->add_option("--system", hm_system)->capture_default_str();
  hm->add_option("--coords", hm_coords, "antidominant label, comma separated")
      ->capture_default_str();
  hm->add_option("--order", hm_order);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      std::vector<IdentityRecord> extra;
      if (!manifest_path.empty()) extra = load_manifest(manifest_path);
      Rat ord = verify_order > 0 ? rat_parse(std::to_string(verify_order)) : Rat(0);
      auto rep = verify_identity(verify_id, ord, extra);
      if (output == "json") std::cout << report_json(rep).dump(2) << "\n";
      else print_report_text(rep);
      return rep.pass ? 0 : 1;
    }
    if (*vall) {
      std::vector<IdentityRecord> recs = builtin_registry();
      if (!vall_manifest.empty())
        for (auto& r : load_manifest(vall_manifest)) recs.push_back(std::move(r));
      Rat ord = vall_order > 0 ? rat_parse(std::to_string(vall_order)) : Rat(0);
      return run_verify_all(recs, ord, jobs, output);
    }
    if (*xi) {
      auto rs = RootSystem::build(xi_system);
      auto classes = parse_class_spec(rs, xi_classes);
      if (static_cast<int>(classes.size()) != xi_level)
        throw CLI::ValidationError("--classes", "class list length must equal --level");
      int r = xi_r;
      if (r < 0) {
        std::vector<int> labels;
        for (const auto& c : classes) {
          if (!c.atomic_p())
            throw CLI::ValidationError("--r", "required when classes are not all atomic");
          labels.push_back(rs.label_of_class(c.classes[0]));
        }
        r = forced_r(rs, labels);
      }
      Rat ord = xi_order > 0 ? rat_parse(std::to_string(xi_order)) : default_order(20);
      auto spec = XiSpec::make(rs, classes, r);
      json out{{"system", xi_system}, {"level", xi_level}, {"r", r}, {"order", ord.str()}};
      long chains = 0;
      if (xi_method == "multisum" || xi_method == "both") {
        QSeries s = xi_multisum(spec, ord, &chains);
        if (chains == 0) std::cerr << "note: empty constraint set, series is zero\n";
        out["multisum"] = series_json(s);
        if (output == "text") std::cout << "multisum: " << s.str(16) << "\n";
      }
      if (xi_method == "ct" || xi_method == "both") {
        QSeries s = xi_ct(spec, ord);
        out["ct"] = series_json(s);
        if (output == "text") std::cout << "ct:       " << s.str(16) << "\n";
      }
      if (xi_method == "both" && output == "text") {
        QSeries a = xi_multisum(spec, ord), b = xi_ct(spec, ord);
        auto mm = QSeries::first_mismatch(a, b);
        std::cout << (mm ? "sides DIFFER at q^" + mm->str() : "sides agree") << "\n";
      }
      if (output == "json") std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*expand) {
      auto rs = RootSystem::build(ex_system);
      auto classes = parse_class_spec(rs, ex_classes);
      Rat ord = ex_order > 0 ? rat_parse(std::to_string(ex_order)) : default_order(10);
      auto coeffs = expand_product(rs, classes, ord);
      if (output == "json") {
        json rows = json::array();
        for (const auto& [w, s] : coeffs)
          rows.push_back({{"weight", w.c}, {"series", series_json(s)}});
        std::cout << json{{"system", ex_system}, {"order", ord.str()}, {"coefficients", rows}}
                         .dump(2)
                  << "\n";
      } else {
        for (const auto& [w, s] : coeffs) std::cout << w.str() << "  ->  " << s.str(10) << "\n";
      }
      return 0;
    }
    if (*dt) {
      auto rows = dilog_table(max_rank, tol);
      bool all_ok = true;
      json jrows = json::array();
      if (output == "csv")
        std::cout << "system,L,L_closed,c_eff,L_flat,L_flat_closed,c_eff_flat,residual_plain,"
                     "residual_flat,err_plain,err_flat\n";
      for (const auto& row : rows) {
        double ceff = 2 * row.plain.L / row.coxeter;
        double ceff_flat = row.flat.L / row.coxeter;
        bool ok = row.err_plain < 1e-9 && row.err_flat < 1e-9 && row.plain.converged &&
                  row.flat.converged;
        all_ok = all_ok && ok;
        if (output == "csv") {
          std::cout << row.system << "," << row.plain.L << "," << rat_double(row.closed.L) << ","
                    << ceff << "," << row.flat.L << "," << rat_double(row.closed.L_flat) << ","
                    << ceff_flat << "," << row.plain.residual << "," << row.flat.residual << ","
                    << row.err_plain << "," << row.err_flat << "\n";
        } else if (output == "json") {
          jrows.push_back({{"system", row.system},
                           {"L", row.plain.L},
                           {"L_closed", row.closed.L.str()},
                           {"c_eff", ceff},
                           {"L_flat", row.flat.L},
                           {"L_flat_closed", row.closed.L_flat.str()},
                           {"c_eff_flat", ceff_flat},
                           {"residual_plain", row.plain.residual},
                           {"residual_flat", row.flat.residual},
                           {"ok", ok}});
        } else {
          std::printf("%-5s L=%-12.9f (%s)  c_eff=%-10.6f  L_flat=%-12.9f (%s)  c_eff_flat=%-10.6f %s\n",
                      row.system.c_str(), row.plain.L, row.closed.L.str().c_str(), ceff,
                      row.flat.L, row.closed.L_flat.str().c_str(), ceff_flat,
                      ok ? "" : " MISMATCH");
        }
      }
      if (output == "json") std::cout << jrows.dump(2) << "\n";
      return all_ok ? 0 : 1;
    }
    if (*gs) {
      std::stringstream ss(gs_systems);
      std::string name;
      bool all_ok = true;
      json jrows = json::array();
      if (output == "csv")
        std::cout << "system,N,index,gamma_re,gamma_im,formula_re,formula_im,gamma_diff,"
                     "relations_checked,max_relation_residual\n";
      while (std::getline(ss, name, ',')) {
        auto rs = RootSystem::build(name);
        for (long long N = 2; N <= gs_nmax; ++N) {
          FiniteModule fm(rs, N);
          cdouble g = fm.gamma();
          cdouble f = gamma_formula(rs.id(), N);
          double gd = std::abs(g - f);
          double rel = 0;
          bool checked = fm.index() <= gs_maxindex;
          if (checked) {
            auto chk = check_action(fm, +1, gs_probes);
            rel = std::max({chk.steinberg, chk.sigma_formula, chk.sigma_sq_inversion,
                            chk.steinberg_cubed, chk.weyl_commute, chk.pairing_unitarity});
          }
          bool ok = gd < 1e-9 && (!checked || rel < 1e-9);
          all_ok = all_ok && ok;
          if (output == "csv") {
            std::cout << name << "," << N << "," << fm.index() << "," << g.real() << ","
                      << g.imag() << "," << f.real() << "," << f.imag() << "," << gd << ","
                      << (checked ? "yes" : "no") << "," << rel << "\n";
          } else if (output == "json") {
            jrows.push_back({{"system", name},
                             {"N", N},
                             {"index", fm.index()},
                             {"gamma", {g.real(), g.imag()}},
                             {"gamma_formula", {f.real(), f.imag()}},
                             {"gamma_diff", gd},
                             {"relations_checked", checked},
                             {"max_relation_residual", rel}});
          } else {
            std::printf("%-4s N=%-3lld dim=%-7lld gamma=(% .6f,% .6f) formula diff=%.2e %s%s\n",
                        name.c_str(), N, fm.index(), g.real(), g.imag(), gd,
                        checked ? "relations ok to " : "relations skipped",
                        checked ? std::to_string(rel).c_str() : "");
          }
        }
      }
      if (output == "json") std::cout << jrows.dump(2) << "\n";
      return all_ok ? 0 : 1;
    }
    if (*hm) {
      auto rs = RootSystem::build(hm_system);
      std::vector<int> coords;
      std::stringstream cs(hm_coords);
      std::string tok;
      while (std::getline(cs, tok, ',')) coords.push_back(std::stoi(tok));
      Rat ord = hm_order > 0 ? rat_parse(std::to_string(hm_order)) : default_order(10);
      HermiteContext ctx(rs, ord);
      const XPoly& p = ctx.q_hermite(Weight(coords));
      if (output == "json") {
        json rows = json::array();
        for (const auto& [w, s] : p.terms())
          rows.push_back({{"weight", w.c}, {"series", series_json(s)}});
        std::cout << json{{"system", hm_system}, {"label", coords}, {"terms", rows}}.dump(2)
                  << "\n";
      } else {
        for (const auto& [w, s] : p.terms())
          std::cout << "X" << w.str() << " * (" << s.str(10) << ")\n";
        std::cout << "norm: " << ctx.norm_closed(Weight(coords)).str(8) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
