#include <catch_amalgamated.hpp>

#include "test_support.hpp"
#include "xduct/errors.hpp"
#include "xduct/matrix_builder.hpp"

using namespace xduct;

namespace {

constexpr cplx kI{0.0, 1.0};

SteadyAmplitudes amps_with(cplx go, cplx ge) {
  SteadyAmplitudes a;
  a.g_eff_o = go;
  a.g_eff_e = ge;
  return a;
}

// Swaps a <-> a^dag: 0<->2, 1<->3, 4<->5.
Mat6 swap_quadratures(const Mat6& m) {
  const int perm[6] = {2, 3, 0, 1, 5, 4};
  Mat6 out;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) out(perm[r], perm[c]) = m(r, c);
  }
  return out;
}

}  // namespace

TEST_CASE("reference device port layout") {
  const ValidatedParams p = validate(reference_device_params());
  const PortLayout l = build_port_layout(p);
  REQUIRE(l.n_columns() == 10);
  REQUIRE(l.b_matrix.rows() == 6);
  const int oex = l.column("o.ex", Quadrature::Annihilation);
  const int oint = l.column("o.int", Quadrature::Annihilation);
  CHECK(l.b_matrix(0, oex) == Catch::Approx(std::sqrt(units::hz_to_rad(1.1e6))));
  CHECK(l.b_matrix(0, oint) == Catch::Approx(std::sqrt(units::hz_to_rad(1.0e6))));
  CHECK(l.b_matrix(2, l.column("o.ex", Quadrature::Creation)) == l.b_matrix(0, oex));
  CHECK(l.b_matrix(4, l.column("m", Quadrature::Annihilation)) ==
        Catch::Approx(std::sqrt(units::hz_to_rad(11.0))));
  CHECK_THROWS_AS(l.column("x.ex", Quadrature::Annihilation), UnknownPortError);
}

TEST_CASE("B is block diagonal and normalized per cavity") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    const ValidatedParams p = validate(testing::random_point(rng).params);
    const PortLayout l = build_port_layout(p);
    const double kappa[6] = {p->kappa_o, p->kappa_e, p->kappa_o, p->kappa_e, p->kappa_m, p->kappa_m};
    for (int r = 0; r < 6; ++r) {
      CHECK(std::abs(l.b_matrix.row(r).squaredNorm() - kappa[r]) <= 1e-14 * kappa[r]);
    }
    for (int c = 0; c < l.n_columns(); ++c) {
      int nonzero = 0;
      for (int r = 0; r < 6; ++r) nonzero += l.b_matrix(r, c) != 0.0;
      CHECK(nonzero == 1);
      const auto& col = l.columns[c];
      const int row = col.cavity == Cavity::Mechanical ? (col.quadrature == Quadrature::Annihilation ? 4 : 5)
                      : col.cavity == Cavity::Optical  ? (col.quadrature == Quadrature::Annihilation ? 0 : 2)
                                                       : (col.quadrature == Quadrature::Annihilation ? 1 : 3);
      CHECK(l.b_matrix(row, c) > 0.0);
    }
  }
}

TEST_CASE("lossless cavities drop their internal ports") {
  const ValidatedParams p = validate(testing::lossless_params(1.0));
  const PortLayout l = build_port_layout(p);
  CHECK(l.n_columns() == 6);
  CHECK(l.ports_o.size() == 1);
  CHECK(l.ports_e.size() == 1);
  CHECK_FALSE(l.has("o.int"));
  CHECK_THROWS_AS(l.column("e.int", Quadrature::Annihilation), UnknownPortError);
}

TEST_CASE("decoupled drift matrix is diagonal") {
  const ValidatedParams p = validate(reference_device_params());
  const Mat6 a = build_drift_constant(p, amps_with(0.0, 0.0));
  CHECK(a == Mat6(a.diagonal().asDiagonal()));
  CHECK(a(0, 0) == -kI * p->delta_o - 0.5 * p->kappa_o);
  CHECK(a(3, 3) == kI * p->delta_e - 0.5 * p->kappa_e);
  CHECK(a(5, 5) == kI * p->omega_m - 0.5 * p->kappa_m);
}

TEST_CASE("constant drift matches an element-wise construction") {
  const ValidatedParams p = validate(reference_device_params());
  const cplx go{312.0, -95.0};
  const cplx ge{-47.0, 220.0};
  const Mat6 a = build_drift_constant(p, amps_with(go, ge));
  const double dO = p->delta_o, dE = p->delta_e, kO = p->kappa_o, kE = p->kappa_e;
  const double wm = p->omega_m, km = p->kappa_m;
  Mat6 e;
  // clang-format off
  e << -kI*dO - kO/2, 0, 0, 0, -kI*go, -kI*go,
       0, -kI*dE - kE/2, 0, 0, -kI*ge, -kI*ge,
       0, 0, kI*dO - kO/2, 0, kI*std::conj(go), kI*std::conj(go),
       0, 0, 0, kI*dE - kE/2, kI*std::conj(ge), kI*std::conj(ge),
       -kI*std::conj(go), -kI*std::conj(ge), -kI*go, -kI*ge, -kI*wm - km/2, 0,
       kI*std::conj(go), kI*std::conj(ge), kI*go, kI*ge, 0, kI*wm - km/2;
  // clang-format on
  CHECK((a - e).cwiseAbs().maxCoeff() == 0.0);
  CHECK((swap_quadratures(a) - a.conjugate()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Fourier blocks") {
  const ValidatedParams p = validate(reference_device_params());
  SECTION("zero coupling") {
    const SidebandMatrixSet s = build_drift_fourier(p, amps_with(0.0, 0.0));
    CHECK(s.a_minus.isZero(0.0));
    CHECK(s.a_plus.isZero(0.0));
    CHECK(s.a_d == build_drift_constant(p, amps_with(0.0, 0.0)));
  }
  SECTION("generic coupling") {
    const cplx go{130.0, 41.0};
    const cplx ge{-12.0, -77.0};
    const SidebandMatrixSet s = build_drift_fourier(p, amps_with(go, ge));
    CHECK(s.a_d == build_drift_diagonal(p));
    const Mat6 sum = s.a_d + s.a_minus + s.a_plus;
    CHECK((sum - build_drift_constant(p, amps_with(go, ge))).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.q_cm == s.q_am.conjugate());
    CHECK(s.q_ma == -s.q_mc.conjugate());
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 6; ++c) {
        const bool minus_slot = (r < 2 && c >= 4) || (r >= 4 && (c == 2 || c == 3));
        const bool plus_slot = (r >= 2 && r < 4 && c >= 4) || (r >= 4 && c < 2);
        CHECK((s.a_minus(r, c) != cplx{}) == minus_slot);
        CHECK((s.a_plus(r, c) != cplx{}) == plus_slot);
      }
    }
    // The a <-> a^dag swap exchanges the two Fourier components up to conjugation.
    CHECK((swap_quadratures(s.a_minus) - s.a_plus.conjugate()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("drive vector") {
  const ValidatedParams p = validate(reference_device_params());
  SteadyAmplitudes a;
  CHECK(build_drive_vector(p, a).isZero(0.0));
  a.alpha_o = {3.0, 4.0};
  a.alpha_e = {-1.0, 2.0};
  const Vec6 v = build_drive_vector(p, a);
  const cplx expected = -kI * (p->g_o * 25.0 + p->g_e * 5.0);
  CHECK(v.head<4>().isZero(0.0));
  CHECK(v(4) == expected);
  CHECK(v(5) == -expected);
}
