#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "paramech/hamiltonian.hpp"
#include "paramech/random.hpp"

using namespace paramech;
using K = KForm<Rational>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

K dxdx(std::size_t dim, int a, int b) { return wedge(K::dx(dim, a), K::dx(dim, b)); }

// The printed symplectic forms, transcribed term by term (n = 1):
//   Phi_F* = dx2^dx1 + dx4^dx3
//   Phi_G* = dx3^dx1 + dx2^dx4
//   Phi_H* = dx4^dx1 + dx3^dx2
K printed_phi(Tag tag, std::size_t n) {
  const std::size_t dim = 4 * n;
  K phi(dim, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const int b0 = int(i), b1 = int(n + i), b2 = int(2 * n + i), b3 = int(3 * n + i);
    switch (tag) {
      case Tag::F: phi += dxdx(dim, b1, b0) + dxdx(dim, b3, b2); break;
      case Tag::G: phi += dxdx(dim, b2, b0) + dxdx(dim, b1, b3); break;
      case Tag::H: phi += dxdx(dim, b3, b0) + dxdx(dim, b2, b1); break;
    }
  }
  return phi;
}

// Printed Hamilton equations x'_a = sign dH/dx_b, transcribed (blocks).
struct Eq {
  int lhs, sign, src;
};
std::array<Eq, 4> printed_equations(Tag tag) {
  switch (tag) {
    case Tag::F: return {{{0, -1, 1}, {1, 1, 0}, {2, -1, 3}, {3, 1, 2}}};
    case Tag::G: return {{{0, -1, 2}, {1, 1, 3}, {2, 1, 0}, {3, -1, 1}}};
    case Tag::H: return {{{0, -1, 3}, {1, -1, 2}, {2, 1, 1}, {3, 1, 0}}};
  }
  return {};
}

Vector unit_x() { return (Vector(4) << 1, 0, 0, 0).finished(); }

StepperConfig midpoint(double dt) {
  StepperConfig cfg;
  cfg.method = Method::implicit_midpoint;
  cfg.dt = dt;
  return cfg;
}

}  // namespace

TEST(Hamiltonian, LiouvilleFormDerivativeMatchesPrintedForms) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (Tag tag : kAllTags) {
      const K minus_d_lambda = -ext_d(liouville_one_form<Rational>({tag, true}, n));
      EXPECT_EQ(minus_d_lambda, printed_phi(tag, n)) << to_string(tag) << " n=" << n;
      EXPECT_EQ(K::from_matrix(canonical_two_form({tag, true}, n).cast<Rational>()), printed_phi(tag, n));
      EXPECT_TRUE(ext_d(printed_phi(tag, n)).is_zero());
    }
  EXPECT_THROW((void)liouville_one_form<Rational>({Tag::F, false}, 1), InputError);
}

TEST(Hamiltonian, ContractionExpandsToPrintedEquations) {
  // i_X Phi = dH with symbolic X: the coefficient of dx_b is linear in X.
  for (Tag tag : kAllTags) {
    const std::size_t dim = 4;
    SymVectorField<Rational> x;
    for (std::size_t a = 0; a < dim; ++a) x.push_back(Polynomial<Rational>::variable(dim, a));
    const K contracted = interior(x, printed_phi(tag, 1));
    // Solving i_X Phi = dH must reproduce the printed equations.
    for (const Eq& eq : printed_equations(tag)) {
      // dH/dx_src appears as the coefficient of dx_src, which equals +/- X_lhs.
      const auto c = contracted.coefficient({eq.src});
      EXPECT_EQ(c, Rational(eq.sign) * Polynomial<Rational>::variable(dim, std::size_t(eq.lhs)))
          << to_string(tag) << " block " << eq.lhs;
    }
  }
}

TEST(Hamiltonian, ClosedFormsMatchGenericSolve) {
  RationalSampler rs(51);
  for (std::size_t n = 1; n <= 3; ++n)
    for (Tag tag : kAllTags) {
      const ScalarField h = ScalarField::polynomial(rs.polynomial(4 * n, 4, 8).cast<double>());
      for (int k = 0; k < 100; ++k) {
        Vector x(static_cast<Eigen::Index>(4 * n));
        for (auto& v : x) v = to_double(rs.next());
        const Vector a = hamiltonian_vector_field(tag, h, x);
        const Vector b = generic_field_from_form(tag, h, x);
        EXPECT_LE((a - b).lpNorm<Eigen::Infinity>(), 1e-12 * std::max(1.0, b.lpNorm<Eigen::Infinity>()));
      }
    }
}

TEST(Hamiltonian, HarmonicFlowsConserveEnergy) {
  for (Tag tag : kAllTags) {
    const HamiltonianSystem sys{tag, ScalarField::harmonic(4)};
    const Trajectory t = integrate_hamiltonian(sys, unit_x(), 10.0, midpoint(1e-3));
    ASSERT_EQ(t.size(), 10001u);
    const auto& e = t.invariants.at("energy");
    for (double v : e) ASSERT_LE(std::abs(v - e.front()), 1e-10) << to_string(tag);
  }
}

TEST(Hamiltonian, HarmonicFlowsAreRotations) {
  // From e_1 each flow rotates into the block paired with block 0: n+1 for F*,
  // 2n+1 for G*, 3n+1 for H* (with the printed signs).
  const std::array<std::pair<Tag, Eigen::Index>, 3> partner{{{Tag::F, 1}, {Tag::G, 2}, {Tag::H, 3}}};
  for (const auto& [tag, b] : partner) {
    const HamiltonianSystem sys{tag, ScalarField::harmonic(4)};
    const Trajectory t = integrate_hamiltonian(sys, unit_x(), kTwoPi, midpoint(1e-3));
    EXPECT_LE((t.states.back() - unit_x()).norm(), 1e-6) << to_string(tag);
    EXPECT_NEAR(t.states[1000][0], std::cos(1.0), 1e-6);
    EXPECT_NEAR(std::abs(t.states[1000][b]), std::sin(1.0), 1e-6);
  }
}

TEST(Hamiltonian, PrintedResidualsAlongFlows) {
  RationalSampler rs(52);
  for (Tag tag : kAllTags) {
    const ScalarField h = ScalarField::polynomial(rs.polynomial(8, 2, 10).cast<double>()) + ScalarField::harmonic(8);
    const HamiltonianSystem sys{tag, h};
    const Vector x0 = Vector::Constant(8, 0.1);
    for (Method m : {Method::rk4, Method::implicit_midpoint, Method::symplectic_euler}) {
      StepperConfig cfg = midpoint(1e-2);
      cfg.method = m;
      const Trajectory t = integrate_hamiltonian(sys, x0, 0.5, cfg);
      for (const Vector& r : hamilton_residuals(sys, t)) ASSERT_LE(r.lpNorm<Eigen::Infinity>(), 1e-6);
      // Residuals of another structure's equations do not vanish.
      const Tag other = tag == Tag::F ? Tag::G : Tag::F;
      double worst = 0.0;
      for (const Vector& r : hamilton_residuals(other, h, t)) worst = std::max(worst, r.lpNorm<Eigen::Infinity>());
      EXPECT_GT(worst, 1e-3);
    }
  }
}

TEST(Hamiltonian, SymplecticEulerPartitionIsConjugate) {
  for (Tag tag : kAllTags) {
    const auto first = conjugate_partition(tag, 2);
    const IntMatrix m = canonical_two_form({tag, true}, 2);
    int pairs = 0;
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c)
        if (m(r, c) != 0) {
          EXPECT_NE(first[r], first[c]);
          ++pairs;
        }
    EXPECT_EQ(pairs, 8);
    EXPECT_EQ(std::count(first.begin(), first.end(), true), 4);
  }
}
