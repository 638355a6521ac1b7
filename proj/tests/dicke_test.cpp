#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "esqa/dicke.hpp"
#include "esqa/spectrum.hpp"

using namespace esqa;

namespace {

LatticeBasis skewed_basis() {
  LatticeBasis b;
  b.vectors.push_back(Eigen::Vector2d(1.0, 0.0));
  b.vectors.push_back(Eigen::Vector2d(1.3 * std::cos(M_PI / 10.0),
                                      1.3 * std::sin(M_PI / 10.0)));
  return b;
}

int ups(std::uint32_t b, int n) {
  int count = 0;
  for (int q = 1; q <= n; ++q)
    if (spin_at(b, q, n) > 0) ++count;
  return count;
}

}  // namespace

TEST_CASE("build_dicke") {
  SUBCASE("n=2 endpoints") {
    CHECK(build_dicke(2, 0).psi()(3) == Complex(1.0));  // |down down>
    CHECK(build_dicke(2, 2).psi()(0) == Complex(1.0));  // |up up>
    const ComplexVector w1 = build_dicke(2, 1).psi();
    CHECK(w1(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(w1(2).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(w1(0) == Complex(0.0));
  }
  SUBCASE("n=4, r=2 has six equal amplitudes") {
    const ComplexVector w = build_dicke(4, 2).psi();
    int support = 0;
    for (int b = 0; b < 16; ++b) {
      if (ups(static_cast<std::uint32_t>(b), 4) == 2) {
        ++support;
        CHECK(w(b).real() == doctest::Approx(1.0 / std::sqrt(6.0)));
      } else {
        CHECK(w(b) == Complex(0.0));
      }
    }
    CHECK(support == 6);
  }
  SUBCASE("amplitude depends only on the Hamming weight") {
    const ComplexVector w = build_dicke(5, 2).psi();
    for (int b = 0; b < 32; ++b)
      for (int c = 0; c < 32; ++c)
        if (ups(b, 5) == ups(c, 5)) CHECK(w(b) == w(c));
  }
  SUBCASE("range checks") {
    CHECK_THROWS_AS(build_dicke(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_dicke(2, -1), std::invalid_argument);
    CHECK_THROWS_AS(build_dicke(13, 1), std::invalid_argument);
  }
}

TEST_CASE("build_mixture") {
  SUBCASE("n=2 is the even mixture of the two single-flip states") {
    const ComplexMatrix rho = build_mixture(2).rho();
    CHECK(rho(1, 1).real() == doctest::Approx(0.5));
    CHECK(rho(2, 2).real() == doctest::Approx(0.5));
    CHECK(rho.cwiseAbs().sum() == doctest::Approx(1.0));  // diagonal only
  }
  SUBCASE("purity is 1/n") {
    for (int n : {2, 3, 4, 6}) {
      const ComplexMatrix rho = build_mixture(n).rho();
      CHECK((rho * rho).trace().real() == doctest::Approx(1.0 / n).epsilon(1e-12));
    }
  }
  SUBCASE("supported only on single-up-spin states") {
    const ComplexMatrix rho = build_mixture(3).rho();
    for (int b = 0; b < 8; ++b)
      if (ups(b, 3) != 1) CHECK(rho(b, b) == Complex(0.0));
  }
}

TEST_CASE("overlap") {
  CHECK(overlap(build_dicke(2, 1), build_mixture(2)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(overlap(build_dicke(4, 1), build_mixture(4)) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(overlap(build_dicke(4, 0), build_mixture(4)) == 0.0);
  CHECK(overlap(build_dicke(4, 2), build_mixture(4)) == 0.0);
  CHECK_THROWS_AS(overlap(build_dicke(2, 1), build_mixture(4)),
                  std::invalid_argument);
  // the mixture is entirely inside the one-up-spin sector
  const ComplexMatrix rho = build_mixture(4).rho();
  double sector = 0.0;
  for (int b = 0; b < 16; ++b)
    if (ups(b, 4) == 1) sector += rho(b, b).real();
  CHECK(sector == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetric_restriction") {
  const GramMatrix g = gram(skewed_basis());
  const auto [model, enc] = encode(g, 1);
  DenseOperator full{4, ComplexMatrix::Zero(16, 16)};
  full.mat.diagonal() = diagonal_energies(model).cast<Complex>();

  SUBCASE("skewed instance restricts to a 9x9 diagonal") {
    const DenseOperator sub = symmetric_restriction(full, enc);
    REQUIRE(sub.mat.rows() == 9);
    ComplexMatrix off = sub.mat;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() < 1e-12);
    // entries are c^T G c with c_j = r_j - 1, r_1 slowest
    for (int r1 = 0; r1 <= 2; ++r1)
      for (int r2 = 0; r2 <= 2; ++r2) {
        Eigen::Vector2d c(r1 - 1, r2 - 1);
        CHECK(sub.mat(r1 * 3 + r2, r1 * 3 + r2).real() ==
              doctest::Approx(c.dot(g.g * c)).epsilon(1e-9));
      }
    // unique minimum at c = (0, 0); first excited pair at c = +-(1, -1)
    RealVector diag = sub.mat.diagonal().real();
    std::vector<double> v(diag.data(), diag.data() + diag.size());
    std::sort(v.begin(), v.end());
    CHECK(v[0] == doctest::Approx(0.0));
    const double norm2 = 1.0 + 1.69 - 2.0 * 1.3 * std::cos(M_PI / 10.0);
    CHECK(v[1] == doctest::Approx(norm2).epsilon(1e-9));
    CHECK(v[2] == doctest::Approx(norm2).epsilon(1e-9));
  }
  SUBCASE("identity restricts to the identity") {
    DenseOperator id{4, ComplexMatrix::Identity(16, 16)};
    const DenseOperator sub = symmetric_restriction(id, enc);
    CHECK((sub.mat - ComplexMatrix::Identity(9, 9)).cwiseAbs().maxCoeff() <
          1e-12);
  }
  SUBCASE("restricted spectrum is contained in the full spectrum") {
    // add a block-symmetric transverse part to make it non-diagonal
    DenseOperator h = full;
    h.mat += 0.4 * build_driver({4, 1.0}).mat;
    const DenseOperator sub = symmetric_restriction(h, enc);
    const auto [sub_vals, sv] = spectrum_at(sub);
    const auto [full_vals, fv] = spectrum_at(h);
    for (int i = 0; i < sub_vals.size(); ++i) {
      double best = 1e300;
      for (int j = 0; j < full_vals.size(); ++j)
        best = std::min(best, std::abs(sub_vals(i) - full_vals(j)));
      CHECK(best < 1e-8);
    }
  }
  SUBCASE("asymmetric input is rejected") {
    DenseOperator h = full;
    IsingModel lopsided(4);
    lopsided.set_field(1, 1.0);  // breaks symmetry inside block 1
    h.mat.diagonal() += diagonal_energies(lopsided).cast<Complex>();
    CHECK_THROWS_AS(symmetric_restriction(h, enc), std::invalid_argument);
  }
}

TEST_CASE("dicke_success_probability") {
  LatticeBasis unit;
  unit.vectors.push_back(Eigen::VectorXd::Constant(1, 1.0));
  PropagationConfig cfg;
  cfg.dt = 0.004;
  cfg.mode = EvolutionMode::closed;

  SUBCASE("frozen schedule cannot reach the solution sector") {
    const double p =
        dicke_success_probability(unit, 1, {2.0, 20.0, 2.0, 1.0, 4.0}, cfg);
    CHECK(p == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("slow schedule approaches the symmetric-component weight 1/(2k)") {
    const double p =
        dicke_success_probability(unit, 1, {2.0, 50.0, 2.0, 0.7, 4.0}, cfg);
    CHECK(std::abs(p - 0.5) < 0.05);
  }
}
