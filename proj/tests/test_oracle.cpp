#include <catch_amalgamated.hpp>

#include "lipkin/lipkin.hpp"
#include "lipkin/oracle.hpp"
#include "support.hpp"

using namespace lipkin;
using Catch::Approx;

TEST_CASE("oracle Hamiltonian without interaction is diagonal", "[oracle]") {
  const auto params = ModelParams::from_chi(3, 0.0);
  const auto h = oracle::oracle_hamiltonian(params);
  const oracle::OccupationBasis basis(3);
  for (int i = 0; i < basis.size(); ++i) {
    int n0 = 0, n2 = 0;
    for (int lv : basis.levels(i)) {
      n0 += lv == 0;
      n2 += lv == 2;
    }
    CHECK(h(i, i) == Approx(static_cast<double>(n2 - n0)));
  }
  CHECK((h - Eigen::MatrixXd(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(oracle::oracle_hamiltonian(ModelParams::from_chi(7, 1.0)), InvalidArgument);
}

TEST_CASE("oracle Hamiltonian is Hermitian and conserves column occupation", "[oracle]") {
  const auto h = oracle::oracle_hamiltonian(ModelParams::from_chi(4, 2.3));
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("oracle Slater determinants", "[oracle]") {
  // phi1 = 0 is the unperturbed state, equal to the generating state at the origin.
  const VectorXc a = oracle::slater_state(4, std::array<double, 3>{1.0, 0.0, 0.0});
  PQState s(4);
  s.at(0, 0) = 1.0;
  CHECK((a - oracle::from_pq(s)).norm() < 1e-15);
  CHECK(a.dot(oracle::oracle_hamiltonian(ModelParams::from_chi(4, 1.0)).cast<cplx>() * a).real() == Approx(-4.0));

  // The exponential generating function reproduces the product form.
  const double phi1 = 0.7, phi2 = -1.1;
  const VectorXc prod = oracle::slater_state(
      3, std::array<double, 3>{std::cos(phi1), std::sin(phi1) * std::cos(phi2), std::sin(phi1) * std::sin(phi2)});
  const VectorXc gen = oracle::generating_state(3, phi1, phi2);
  CHECK(std::abs(std::abs(prod.dot(gen)) - 1.0) < 1e-12);
  CHECK(prod.norm() == Approx(1.0));
}

TEST_CASE("oracle RDM of the unperturbed state", "[oracle]") {
  PQState s(3);
  s.at(0, 0) = 1.0;
  const auto r = oracle::oracle_rdm(3, oracle::from_pq(s), Subsystem::n0n1);
  CHECK(std::abs(r(kZero, kZero, kZero, kZero) - 1.0) < 1e-15);
  CHECK(r.trace() == Approx(1.0));
}

TEST_CASE("oracle discord search on simple states", "[oracle]") {
  SECTION("product state") {
    VectorXc psi = VectorXc::Zero(16);
    psi[0b0110] = 1.0;
    CHECK(oracle::oracle_discord_search(FockDensity::pure(4, psi), {1, 3}, {0, 2}, 200, 2) ==
          Approx(0.0).margin(1e-12));
  }
  SECTION("pure correlated state gives S(rho_A)") {
    VectorXc psi = VectorXc::Zero(16);
    psi[0b1010] = std::sqrt(0.2);
    psi[0b0101] = std::sqrt(0.8);
    const double s = -(0.2 * std::log(0.2) + 0.8 * std::log(0.8));
    CHECK(oracle::oracle_discord_search(FockDensity::pure(4, psi), {1, 3}, {0, 2}, 200, 2) == Approx(s));
  }
  SECTION("never exceeds the mutual information") {
    std::mt19937_64 rng(61);
    const auto rho = testing::random_parity_even_density(4, rng);
    const double j = oracle::oracle_discord_search(rho, {1, 3}, {0, 2}, 500, 2);
    CHECK(j <= mutual_information(rho, parse_partition("1,3:0,2")) + 1e-10);
    CHECK(j >= -1e-12);
  }
}
