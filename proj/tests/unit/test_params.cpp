#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "optokerr/errors.hpp"
#include "optokerr/params.hpp"
#include "optokerr/params_io.hpp"
#include "optokerr/presets.hpp"

using namespace optokerr;
using doctest::Approx;

namespace {

PhysicalParams unit_kappa() {
  PhysicalParams p;
  p.m = 2.0;
  p.Omega = 30.0;
  p.gamma = 0.5;
  p.kappa = 1.0;
  p.omega0 = 1000.0;
  p.omegaD = 997.5;
  p.L = 3.0;
  p.P = 1e-20;
  return p;
}

}  // namespace

TEST_CASE("derive_g") {
  auto p = fig2_preset().params;
  // mpmath: 177185825662464338.65
  CHECK(derive_g(p) == Approx(1.7718582566246434e17).epsilon(1e-14));

  p.omega0 = 0.25;
  p.L = 0.25;
  CHECK(derive_g(p) == 1.0);

  const double g = derive_g(fig2_preset().params);
  auto doubled = fig2_preset().params;
  doubled.L *= 2.0;
  CHECK(derive_g(doubled) == Approx(g / 2.0).epsilon(1e-15));

  p.L = 0.0;
  CHECK_THROWS_AS(derive_g(p), InvalidParameter);
  p.L = -1.0;
  CHECK_THROWS_AS(derive_g(p), InvalidParameter);
}

TEST_CASE("derive_chi") {
  const auto p = fig2_preset().params;
  // mpmath: 4.1931884587554e-6 s^-1, chi / kappa = 8.3863769175108e-12
  CHECK(derive_chi(p) == Approx(4.1931884587554e-6).epsilon(1e-12));
  CHECK(derive_chi(p) / p.kappa == Approx(8.3863769175108e-12).epsilon(1e-12));

  auto heavy = p;
  heavy.m *= 4.0;
  CHECK(derive_chi(heavy) == Approx(derive_chi(p) / 4.0).epsilon(1e-15));

  auto no_coupling = p;
  no_coupling.omega0 = 0.0;  // g = 0
  CHECK(derive_chi(no_coupling) == 0.0);

  auto bad = p;
  bad.m = 0.0;
  CHECK_THROWS_AS(derive_chi(bad), InvalidParameter);
  bad = p;
  bad.Omega = -1.0;
  CHECK_THROWS_AS(derive_chi(bad), InvalidParameter);
}

TEST_CASE("derive_lambda") {
  const auto p = fig2_preset().params;
  // mpmath: 51728803528.404280255
  CHECK(derive_lambda(p) == Approx(5.1728803528404280e10).epsilon(1e-13));

  auto off = p;
  off.P = 0.0;
  CHECK(derive_lambda(off) == 0.0);

  auto quad = p;
  quad.P *= 4.0;
  CHECK(derive_lambda(quad) == Approx(2.0 * derive_lambda(p)).epsilon(1e-15));

  // Inverse relation lam^2 hbar omegaD / (2 kappa) = P.
  const double lam = derive_lambda(p);
  CHECK(lam * lam * constants::kHbar * p.omegaD / (2.0 * p.kappa) ==
        Approx(p.P).epsilon(1e-12));

  auto bad = p;
  bad.P = -1.0;
  CHECK_THROWS_AS(derive_lambda(bad), InvalidParameter);
}

TEST_CASE("reduce") {
  const auto p = fig2_preset().params;
  const auto rp = reduce(p);
  CHECK(rp.Omega == Approx(40.0 * constants::kPi).epsilon(1e-15));
  CHECK(rp.gamma == Approx(0.06).epsilon(1e-15));
  CHECK(rp.Delta == 0.0);
  CHECK(rp.lam == Approx(103457.60705680856).epsilon(1e-13));
  CHECK(rp.g_red == Approx(5.1465008705879781e-4).epsilon(1e-12));
  // With unit mass, hbar = 1, the reduced coupling reproduces chi.
  CHECK(rp.g_red * rp.g_red / (2.0 * rp.Omega * rp.Omega) == Approx(rp.chi).epsilon(1e-12));

  SUBCASE("unit kappa is the identity normalization") {
    const auto q = unit_kappa();
    const auto r = reduce(q);
    CHECK(r.Omega == q.Omega);
    CHECK(r.gamma == q.gamma);
    CHECK(r.Delta == q.omega0 - q.omegaD);
    CHECK(r.chi == derive_chi(q));
    CHECK(r.lam == derive_lambda(q));
  }

  SUBCASE("rescale round trip") {
    for (double kappa : {1e-3, 1.0, 5e5, 3.7e9}) {
      auto q = unit_kappa();
      q.kappa = kappa;
      const auto rates = rescale(reduce(q), kappa);
      CHECK(rates.Omega == Approx(q.Omega).epsilon(1e-12));
      CHECK(rates.gamma == Approx(q.gamma).epsilon(1e-12));
      CHECK(rates.Delta == Approx(q.omega0 - q.omegaD).epsilon(1e-12));
      CHECK(rates.chi == Approx(derive_chi(q)).epsilon(1e-12));
      CHECK(rates.lam == Approx(derive_lambda(q)).epsilon(1e-12));
      CHECK(physical_coupling(reduce(q).g_red, kappa, q.m) == Approx(derive_g(q)).epsilon(1e-12));
    }
  }

  SUBCASE("invalid physical parameters") {
    auto q = unit_kappa();
    q.kappa = 0.0;
    CHECK_THROWS_AS(reduce(q), InvalidParameter);
    q = unit_kappa();
    q.gamma = -0.1;
    CHECK_THROWS_AS(reduce(q), InvalidParameter);
    q = unit_kappa();
    q.omegaD = NAN;
    CHECK_THROWS_AS(reduce(q), InvalidParameter);
  }
}

TEST_CASE("chi is nonnegative and vanishes only without coupling") {
  auto p = unit_kappa();
  for (double w0 : {0.0, 1e-6, 1.0, 1e9}) {
    p.omega0 = w0;
    const double chi = derive_chi(p);
    CHECK(chi >= 0.0);
    CHECK((chi == 0.0) == (w0 == 0.0));
  }
}

TEST_CASE("BO condition flag") {
  ReducedParams rp;
  rp.Omega = 40.0 * constants::kPi;
  rp.Delta = 1.0;
  CHECK(bo_condition_holds(rp));
  rp.Delta = rp.Omega;
  CHECK_FALSE(bo_condition_holds(rp));
}

TEST_CASE("parameter files") {
  SUBCASE("physical") {
    const auto set = parse_param_text(R"(# fig2-like
m_kg = 1e-10
omega_m_rad_s = 6.283185307179586e7   # 40 pi kappa
gamma_s = 3e4
kappa_s = 5e5
omega0_rad_s = 1.7718582566246434e15
omegaD_rad_s = 1.7718582566246434e15
L_m = 0.01
P_W = 5e-4
finesse = 1.9e5
)");
    REQUIRE(std::holds_alternative<PhysicalParams>(set));
    const auto& p = std::get<PhysicalParams>(set);
    CHECK(p.m == 1e-10);
    CHECK(p.finesse.value() == 1.9e5);
    CHECK(to_reduced(set).gamma == Approx(0.06));
  }

  SUBCASE("reduced, written and read back") {
    ReducedParams rp{0.25, 125.66370614359172, 0.06, 8.3863769175108e-12, 103457.60705680856,
                     5.1465008705879781e-4};
    std::ostringstream os;
    write_reduced(os, rp);
    const auto back = std::get<ReducedParams>(parse_param_text(os.str()));
    CHECK(back.Delta == rp.Delta);
    CHECK(back.Omega == rp.Omega);
    CHECK(back.chi == rp.chi);
    CHECK(back.lam == rp.lam);
    CHECK(back.g_red == rp.g_red);
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_param_text("m_kg = 1\ndelta_k = 0\n"), ParseError);
    CHECK_THROWS_AS(parse_param_text("bogus = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_param_text("delta_k = 1\ndelta_k = 2\n"), ParseError);
    CHECK_THROWS_AS(parse_param_text("delta_k 1\n"), ParseError);
    CHECK_THROWS_AS(parse_param_text("delta_k = abc\n"), ParseError);
    CHECK_THROWS_AS(parse_param_text("# only a comment\n"), ParseError);
    CHECK_THROWS_AS(parse_param_text("delta_k = 0\nomega_k = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_param_text(
                        "delta_k = 0\nomega_k = 1\ngamma_k = 0\nchi_k = -1\nlambda_k = 1\ng_k = 0\n"),
                    InvalidParameter);
    CHECK_THROWS_AS(load_param_file("/nonexistent/params.txt"), ParseError);
  }
}

TEST_CASE("fig2 preset self-check") {
  const auto preset = fig2_preset();
  CHECK_NOTHROW(self_check(preset));
  CHECK(wavelength_mismatch(preset) < 1e-3);
  CHECK(preset.params.finesse.value() == 1.9e5);

  auto broken = preset;
  broken.drive_wavelength_m = 1070e-9;
  CHECK_THROWS_AS(self_check(broken), ParseError);

  CHECK(find_preset("fig2").has_value());
  CHECK_FALSE(find_preset("fig3").has_value());
}
