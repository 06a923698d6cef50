#include <catch_amalgamated.hpp>

#include "lipkin/lipkin.hpp"
#include "lipkin/oracle.hpp"

using namespace lipkin;
using Catch::Approx;

TEST_CASE("hf_orbital branches", "[mean_field]") {
  const auto a = hf_orbital(0.5);
  CHECK(a.u00 == 1.0);
  CHECK(a.u01 == 0.0);
  CHECK(a.u02 == 0.0);

  const auto b = hf_orbital(2.0);
  CHECK(b.u00 * b.u00 == Approx(0.75));
  CHECK(b.u01 * b.u01 == Approx(0.25));
  CHECK(b.u02 == 0.0);

  // Both neighbouring branches give (2/3, 1/3, 0) at chi = 3.
  const auto c = hf_orbital(3.0);
  const auto below = hf_orbital(std::nextafter(3.0, 0.0));
  CHECK(c.u00 * c.u00 == Approx(2.0 / 3.0));
  CHECK(c.u01 * c.u01 == Approx(1.0 / 3.0));
  CHECK(c.u02 == Approx(0.0).margin(1e-15));
  CHECK(below.u00 == Approx(c.u00));
  CHECK(below.u01 == Approx(c.u01));

  // Continuity at chi = 1.
  CHECK(hf_orbital(1.0).u00 == Approx(1.0));
  CHECK(hf_orbital(1.0).u01 == Approx(0.0).margin(1e-15));

  CHECK_THROWS_AS(hf_orbital(-0.1), InvalidArgument);
}

TEST_CASE("hf orbital is normalized for every chi", "[mean_field]") {
  for (double chi = 0.0; chi <= 8.0; chi += 0.125) {
    const auto o = hf_orbital(chi);
    CHECK(o.u00 * o.u00 + o.u01 * o.u01 + o.u02 * o.u02 == Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("HF occupation coefficient is the product of orbital components", "[mean_field]") {
  for (double chi : {0.5, 1.5, 2.5, 3.5, 6.0}) {
    const auto o = hf_orbital(chi);
    for (int n1 = 0; n1 <= 5; ++n1)
      for (int n2 = 0; n1 + n2 <= 5; ++n2)
        CHECK(hf_occupation_coefficient(5, chi, n1, n2) ==
              Approx(std::pow(o.u00, 5 - n1 - n2) * std::pow(o.u01, n1) * std::pow(o.u02, n2)).margin(1e-15));
  }
}

TEST_CASE("hf_amplitudes is normalized and below chi = 1 is the unperturbed state", "[mean_field]") {
  for (int n : {2, 5, 20})
    for (double chi : {0.3, 1.7, 4.0}) {
      const auto s = hf_amplitudes(ModelParams::from_chi(n, chi));
      CHECK(s.norm() == Approx(1.0).epsilon(1e-14));
    }
  const auto s = hf_amplitudes(ModelParams::from_chi(6, 0.9));
  CHECK(std::abs(s(0, 0)) == Approx(1.0));
}

TEST_CASE("HF energy matches the oracle Slater determinant and the analytic value", "[mean_field][oracle]") {
  for (int n = 2; n <= 5; ++n)
    for (double chi : {0.5, 1.5, 2.5, 3.5, 5.0}) {
      const auto params = ModelParams::from_chi(n, chi);
      const VectorXc slater = oracle::slater_state(n, hf_orbital(chi));
      const double e_or = slater.dot(oracle::oracle_hamiltonian(params).cast<cplx>() * slater).real();
      CHECK(std::abs(energy_expectation(hf_amplitudes(params), params) - e_or) < 1e-10);
    }
  // In the 1 <= chi < 3 phase E_HF = -N eps (chi + 1)^2 / (4 chi).
  const auto params = ModelParams::from_chi(10, 2.0);
  CHECK(energy_expectation(hf_amplitudes(params), params) == Approx(-10.0 * 9.0 / 8.0));
}

TEST_CASE("phf_project", "[mean_field]") {
  SECTION("exact ground state is unchanged") {
    const auto gs = exact_ground_state(ModelParams::from_chi(6, 2.2));
    const auto proj = phf_project(gs.state);
    CHECK((proj.amplitudes() - gs.state.amplitudes()).norm() < 1e-14);
  }
  SECTION("N = 2 HF state at chi = 2 keeps (0,0) and (2,0)") {
    const auto hf = hf_amplitudes(ModelParams::from_chi(2, 2.0));
    const auto proj = phf_project(hf);
    CHECK(proj.norm() == Approx(1.0));
    for (int p = 0; p <= 2; ++p)
      for (int q = 0; p + q <= 2; ++q) {
        const bool kept = (p == 0 && q == 0) || (p == 2 && q == 0);
        if (!kept) CHECK(std::abs(proj(p, q)) == 0.0);
      }
    // C00 : C20 = U00^2 : U01^2 sqrt(1) with U00^2 = 3/4, U01^2 = 1/4.
    CHECK(std::abs(proj(0, 0) / proj(2, 0)) == Approx(3.0));
  }
  SECTION("odd-only support has nothing to project") {
    PQState s(4);
    s.at(1, 0) = 1.0;
    s.at(3, 0) = 0.5;
    CHECK_THROWS_AS(phf_project(s), NullProjection);
  }
}

TEST_CASE("energy_expectation", "[mean_field]") {
  PQState s(7);
  s.at(0, 0) = 1.0;
  CHECK(energy_expectation(s, ModelParams::from_chi(7, 3.3)) == Approx(-7.0));
  CHECK_THROWS_AS(energy_expectation(s, ModelParams::from_chi(6, 1.0)), InvalidArgument);
}

TEST_CASE("variational ordering of the approximations", "[mean_field][gcm]") {
  for (int n : {4, 8, 20})
    for (double chi = 0.0; chi <= 6.0; chi += 0.25) {
      const auto params = ModelParams::from_chi(n, chi);
      const double e_ex = exact_ground_state(params).energy;
      const double e_hf = energy_expectation(hf_amplitudes(params), params);
      const double e_phf = energy_expectation(phf_project(hf_amplitudes(params)), params);
      const double e_gcm = gcm::hill_wheeler(gcm::GcmConfig::from_params(params)).energy;
      CHECK(e_ex <= e_phf + 1e-9);
      CHECK(e_phf <= e_hf + 1e-9);
      CHECK(e_ex <= e_gcm + 1e-9);
      CHECK(e_gcm <= e_hf + 1e-9);
    }
}
