#include "doctest.h"

#include <cmath>
#include <random>

#include "qrr/dilog.hpp"

using namespace qrr;

namespace {
constexpr double kPi = 3.14159265358979323846;

// independent high-precision series for Li2 on (0, 1/2] with long double
long double li2_oracle(long double z) {
  long double term = z, sum = 0;
  for (int k = 1; k < 4000; ++k) {
    sum += term / (static_cast<long double>(k) * k);
    term *= z;
    if (term < 1e-24L) break;
  }
  return sum;
}
} // namespace

TEST_CASE("rogers dilogarithm special values") {
  // L(1/2) = pi^2/12, against the independent series oracle
  long double direct = li2_oracle(0.5L) + 0.5L * std::log(0.5L) * std::log(0.5L);
  CHECK(std::abs(static_cast<double>(direct) - kPi * kPi / 12) < 1e-14);
  CHECK(std::abs(rogers_L(0.5) - kPi * kPi / 12) < 1e-14);
  CHECK(std::abs(rogers_L(1e-12)) < 1e-10);
}

TEST_CASE("a-matrix values") {
  auto a2 = RootSystem::build("A2");
  auto m = a_matrix(a2, false);
  CHECK(m[0][0] == Rat(4, 3));
  CHECK(m[0][1] == Rat(2, 3));
  CHECK(m[1][1] == Rat(4, 3));
  // flat diagonal entries: n/(n+1) for A_n, 2 for B_n/E_7/G_2, 4/3 for E_6
  CHECK(a_matrix(RootSystem::build("A3"), true)[0][0] == Rat(3, 4));
  CHECK(a_matrix(RootSystem::build("B4"), true)[0][0] == Rat(2));
  CHECK(a_matrix(RootSystem::build("E6"), true)[0][0] == Rat(4, 3));
  CHECK(a_matrix(RootSystem::build("E7"), true)[0][0] == Rat(2));
  CHECK(a_matrix(RootSystem::build("G2"), true)[0][0] == Rat(2));
  auto t = a_matrix_tadpole(3, false);
  CHECK(t[0][2] == 2);
  CHECK(t[2][2] == 6);
  CHECK(t[1][2] == 4);
}

TEST_CASE("worked level-two systems") {
  auto a3 = solve_qsystem(standard_system(RootSystem::build("A3"), false));
  REQUIRE(a3.converged);
  CHECK(std::abs(a3.Q[0] - 2.0 / 3) < 1e-9);
  CHECK(std::abs(a3.Q[1] - 3.0 / 4) < 1e-9);
  CHECK(std::abs(a3.Q[2] - 2.0 / 3) < 1e-9);
  CHECK(std::abs(a3.L - 2.0) < 1e-9);

  auto d4 = solve_qsystem(standard_system(RootSystem::build("D4"), false));
  REQUIRE(d4.converged);
  CHECK(std::abs(d4.Q[1] - 8.0 / 9) < 1e-9); // the branch node
  CHECK(std::abs(d4.Q[0] - 3.0 / 4) < 1e-9);
  CHECK(std::abs(d4.L - 3.0) < 1e-9);

  auto a1 = solve_qsystem(standard_system(RootSystem::build("A1"), false));
  CHECK(std::abs(a1.Q[0] - 0.5) < 1e-10);
  CHECK(std::abs(a1.L - 0.5) < 1e-10);

  auto a4 = solve_qsystem(standard_system(RootSystem::build("A4"), false));
  CHECK(std::abs(a4.L - 20.0 / 7) < 1e-9);
  double q2 = a4.Q[1];
  CHECK(std::abs(q2 - (2 * std::cos(kPi / 7) - 1)) < 1e-9);
  // minimal polynomial of Q_2: t^3 + 2t^2 - t - 1
  CHECK(std::abs(q2 * q2 * q2 + 2 * q2 * q2 - q2 - 1) < 1e-9);
}

TEST_CASE("uniqueness: random interior starts agree") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> un(0.05, 0.95);
  auto spec = standard_system(RootSystem::build("B3"), false);
  auto ref = solve_qsystem(spec);
  for (int it = 0; it < 10; ++it) {
    std::vector<double> start(3);
    for (auto& x : start) x = un(rng);
    auto sol = solve_qsystem(spec, 1e-12, start);
    REQUIRE(sol.converged);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(sol.Q[i] - ref.Q[i]) < 1e-10);
  }
}

TEST_CASE("tadpole system folds the even A-ladder") {
  auto a6 = solve_qsystem(standard_system(RootSystem::build("A6"), false));
  auto t3 = solve_qsystem(tadpole_system(3, false));
  REQUIRE(a6.converged);
  REQUIRE(t3.converged);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(a6.Q[i] - a6.Q[5 - i]) < 1e-10); // palindromic
    CHECK(std::abs(a6.Q[i] - t3.Q[i]) < 1e-9);
  }
  CHECK(std::abs(t3.L - 21.0 / 9) < 1e-9); // n(2n+1)/(2n+3) at n = 3
}

TEST_CASE("closed-form table reproduced for moderate ranks") {
  for (const auto& row : dilog_table(6, 1e-12)) {
    CHECK_MESSAGE(row.plain.converged, row.system);
    CHECK_MESSAGE(row.flat.converged, row.system);
    CHECK_MESSAGE(row.err_plain < 1e-9, row.system);
    CHECK_MESSAGE(row.err_flat < 1e-9, row.system);
    REQUIRE(row.plain.recognized.has_value());
    auto [p, q] = *row.plain.recognized;
    CHECK(Rat(p, q) == row.closed.L);
  }
}

TEST_CASE("variant systems satisfy the duality with the dual family") {
  for (int n = 2; n <= 4; ++n) {
    auto b = RootSystem::build("B" + std::to_string(n));
    auto c = RootSystem::build("C" + std::to_string(n));
    auto vb = solve_qsystem(variant_system(b, false));
    auto vc = solve_qsystem(variant_system(c, false));
    auto lb = solve_qsystem(standard_system(b, false));
    auto lc = solve_qsystem(standard_system(c, false));
    CHECK(std::abs(vb.L - lc.L) < 1e-9);
    CHECK(std::abs(vc.L - lb.L) < 1e-9);
  }
  for (const char* name : {"F4", "G2"}) {
    auto rs = RootSystem::build(name);
    auto v = solve_qsystem(variant_system(rs, false));
    auto l = solve_qsystem(standard_system(rs, false));
    CHECK(std::abs(v.L - l.L) < 1e-9);
  }
}

TEST_CASE("flat central-charge coincidences") {
  auto ceff_flat = [](const char* name) {
    auto rs = RootSystem::build(name);
    auto sol = solve_qsystem(standard_system(rs, true));
    return sol.L / rs.coxeter_h();
  };
  CHECK(std::abs(ceff_flat("C3") - ceff_flat("D4")) < 1e-9);
  CHECK(std::abs(ceff_flat("B3") - ceff_flat("A5")) < 1e-9);
  CHECK(std::abs(ceff_flat("E6") - ceff_flat("F4")) < 1e-9);
  CHECK(std::abs(ceff_flat("G2") - ceff_flat("D4")) < 1e-9);
  CHECK(std::abs(ceff_flat("E7") - ceff_flat("A2")) < 1e-9);
  CHECK(std::abs(2 * ceff_flat("E8") - ceff_flat("D16")) < 1e-9);
}

TEST_CASE("rational recognition") {
  CHECK(recognize_rational(0.5).value() == std::make_pair(1l, 2l));
  CHECK(recognize_rational(20.0 / 7).value() == std::make_pair(20l, 7l));
  CHECK(!recognize_rational(std::sqrt(2.0)).has_value());
}
