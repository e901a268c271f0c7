#include <gtest/gtest.h>

#include <array>
#include <vector>

#include "paramech/forms.hpp"
#include "paramech/random.hpp"

using namespace paramech;
using P = Polynomial<Rational>;
using K = KForm<Rational>;

namespace {

P var(std::size_t dim, std::size_t k) { return P::variable(dim, k); }

P half_square_sum(std::size_t dim) {
  P l(dim);
  for (std::size_t a = 0; a < dim; ++a) l += Rational(1, 2) * var(dim, a) * var(dim, a);
  return l;
}

DenseMatrix<Rational> structure(Tag tag, std::size_t n) { return build_structure(tag, n).matrix().cast<Rational>(); }

DenseMatrix<Rational> hessian_at(const P& l, const std::vector<Rational>& x) {
  DenseMatrix<Rational> h(l.nvars(), l.nvars());
  for (std::size_t a = 0; a < l.nvars(); ++a)
    for (std::size_t b = 0; b < l.nvars(); ++b) h(a, b) = l.derivative(a).derivative(b).evaluate(x);
  return h;
}

struct DisplayTerm {
  int target;
  int sign;
  int deriv;
};

// The printed Phi_L^A displays, read as double sums over i and j:
// Phi = sum_{r,j} sum_terms sign * d2L/dx_{rn+j} dx_{deriv n+i} dx_{rn+j} ^ dx_{target n+i}.
std::array<DisplayTerm, 4> display_terms(Tag tag) {
  switch (tag) {
    case Tag::F: return {{{0, -1, 1}, {1, +1, 0}, {2, -1, 3}, {3, +1, 2}}};
    case Tag::G: return {{{0, -1, 2}, {1, +1, 3}, {2, -1, 0}, {3, +1, 1}}};
    case Tag::H: return {{{0, -1, 3}, {1, -1, 2}, {2, -1, 1}, {3, -1, 0}}};
  }
  return {};
}

K printed_display(Tag tag, const P& l) {
  const std::size_t dim = l.nvars(), n = dim / 4;
  K phi(dim, 2);
  for (std::size_t b = 0; b < dim; ++b)
    for (const auto& t : display_terms(tag))
      for (std::size_t i = 0; i < n; ++i)
        phi.add_term({int(b), int(t.target * n + i)}, Rational(t.sign) * l.derivative(b).derivative(t.deriv * n + i));
  return phi;
}

}  // namespace

TEST(Polynomial, ArithmeticAndDerivatives) {
  const P x1 = var(2, 0), x2 = var(2, 1);
  const P p = x1 * x1 * x2 + Rational(3) * x2;
  EXPECT_EQ(p.derivative(0), Rational(2) * x1 * x2);
  EXPECT_EQ(p.derivative(1), x1 * x1 + P::constant(2, 3));
  EXPECT_EQ(p.evaluate(std::vector<Rational>{2, 5}), Rational(35));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p.degree(), 3);
}

TEST(Forms, ExteriorDerivativeExamples) {
  const std::size_t dim = 4;
  const K a = var(dim, 0) * K::dx(dim, 1);
  EXPECT_EQ(ext_d(a), wedge(K::dx(dim, 0), K::dx(dim, 1)));
  EXPECT_EQ(ext_d(K::function(var(dim, 2))), K::dx(dim, 2));
  EXPECT_EQ(wedge(K::dx(dim, 1), K::dx(dim, 0)), -wedge(K::dx(dim, 0), K::dx(dim, 1)));
  EXPECT_TRUE(wedge(K::dx(dim, 1), K::dx(dim, 1)).is_zero());
  EXPECT_THROW((void)ext_d(wedge(wedge(K::dx(dim, 0), K::dx(dim, 1)), K::dx(dim, 2))), std::invalid_argument);
}

TEST(Forms, DSquaredIsZero) {
  RationalSampler rs(21);
  for (int k = 0; k < 20; ++k) {
    const std::size_t dim = 4 * std::size_t(rs.integer(1, 2));
    EXPECT_TRUE(ext_d(ext_d(K::function(rs.polynomial(dim, 4, 6)))).is_zero());
    K one(dim, 1);
    for (std::size_t a = 0; a < dim; ++a) one.add_term({int(a)}, rs.polynomial(dim, 3, 3));
    EXPECT_TRUE(ext_d(ext_d(one)).is_zero());
  }
}

TEST(Forms, InteriorProduct) {
  const std::size_t dim = 4;
  std::vector<Rational> e1(dim, Rational(0));
  e1[0] = 1;
  const auto x = constant_vector_field(dim, e1);
  EXPECT_EQ(interior(x, K::dx(dim, 0)), K::function(P::constant(dim, 1)));
  EXPECT_EQ(interior(x, wedge(K::dx(dim, 0), K::dx(dim, 1))), K::dx(dim, 1));
  EXPECT_THROW((void)interior(x, K::function(var(dim, 0))), std::invalid_argument);

  RationalSampler rs(22);
  for (int k = 0; k < 10; ++k) {
    SymVectorField<Rational> v;
    for (std::size_t a = 0; a < dim; ++a) v.push_back(rs.polynomial(dim, 2, 2));
    K two(dim, 2);
    for (int t = 0; t < 5; ++t) two.add_term({rs.integer(0, 3), rs.integer(0, 3)}, rs.polynomial(dim, 2, 2));
    EXPECT_TRUE(interior(v, interior(v, two)).is_zero());
  }
}

TEST(Forms, VerticalDerivationExamples) {
  const std::size_t dim = 4;
  EXPECT_EQ(vertical_derivation(Tag::F, K::dx(dim, 0)), -K::dx(dim, 1));
  EXPECT_TRUE(vertical_derivation(Tag::F, K::function(var(dim, 0))).is_zero());
  EXPECT_THROW((void)vertical_derivation(build_structure(Tag::F, 1, true), K::dx(dim, 0)), std::invalid_argument);
}

TEST(Forms, VerticalDerivationMatchesPointwiseEvaluation) {
  RationalSampler rs(23);
  for (std::size_t n = 1; n <= 2; ++n)
    for (Tag tag : kAllTags) {
      const std::size_t dim = 4 * n;
      const auto a = structure(tag, n);
      K one(dim, 1);
      K two(dim, 2);
      for (std::size_t b = 0; b < dim; ++b) one.add_term({int(b)}, rs.polynomial(dim, 2, 2));
      for (int t = 0; t < 6; ++t)
        two.add_term({rs.integer(0, int(dim) - 1), rs.integer(0, int(dim) - 1)}, rs.polynomial(dim, 2, 2));
      const K ia1 = vertical_derivation(tag, one);
      const K ia2 = vertical_derivation(tag, two);
      for (int k = 0; k < 3; ++k) {
        const auto x = rs.point(dim);
        // 1-forms: (i_A a)(e_b) = a(A e_b)
        for (std::size_t b = 0; b < dim; ++b) {
          Rational expected = 0;
          for (std::size_t r = 0; r < dim; ++r) expected += a(r, b) * one.coefficient({int(r)}).evaluate(x);
          EXPECT_EQ(ia1.coefficient({int(b)}).evaluate(x), expected);
        }
        // 2-forms: (i_A a)(e_b, e_c) = a(A e_b, e_c) + a(e_b, A e_c)
        const auto m = form_to_matrix(two, x);
        EXPECT_EQ(form_to_matrix(ia2, x), a.transpose() * m + m * a);
      }
    }
}

TEST(Forms, VerticalDifferentialExamples) {
  const std::size_t dim = 4;
  const P x1 = var(dim, 0), x2 = var(dim, 1);
  EXPECT_EQ(vertical_differential(Tag::F, x1 * x2), x1 * K::dx(dim, 0) - x2 * K::dx(dim, 1));
  EXPECT_EQ(vertical_differential(Tag::H, x1), K::dx(dim, 3));
  for (Tag tag : kAllTags) EXPECT_TRUE(vertical_differential(tag, P::constant(dim, 7)).is_zero());
}

TEST(Forms, VerticalDifferentialRoutesAgree) {
  RationalSampler rs(24);
  for (std::size_t n = 1; n <= 3; ++n)
    for (Tag tag : kAllTags)
      for (int k = 0; k < 5; ++k) {
        const std::size_t dim = 4 * n;
        const P f = rs.polynomial(dim, 4, 6);
        const K commutator = vertical_differential(tag, f);
        ASSERT_EQ(commutator, vertical_differential_coordinates(tag, f));
        // (d_A f)(e_a) = df(A e_a)
        const auto a = structure(tag, n);
        const auto x = rs.point(dim);
        for (std::size_t c = 0; c < dim; ++c) {
          Rational expected = 0;
          for (std::size_t r = 0; r < dim; ++r) expected += a(r, c) * f.derivative(r).evaluate(x);
          EXPECT_EQ(commutator.coefficient({int(c)}).evaluate(x), expected);
        }
      }
}

TEST(Forms, LagrangianTwoFormExamples) {
  const std::size_t dim = 4;
  const K phi = lagrangian_two_form(Tag::F, half_square_sum(dim));
  EXPECT_EQ(phi, Rational(2) * (wedge(K::dx(dim, 0), K::dx(dim, 1)) + wedge(K::dx(dim, 2), K::dx(dim, 3))));
  const std::vector<Rational> origin(dim, Rational(0));
  EXPECT_EQ(form_to_matrix(phi, origin), Rational(-2) * structure(Tag::F, 1));
  for (Tag tag : kAllTags) EXPECT_TRUE(lagrangian_two_form(tag, P::constant(dim, 3)).is_zero());
}

TEST(Forms, FormToMatrixExamples) {
  const std::size_t dim = 4;
  const K a = wedge(K::dx(dim, 0), K::dx(dim, 1));
  const auto m = form_to_matrix(a, std::vector<Rational>(dim, Rational(0)));
  EXPECT_EQ(m(0, 1), Rational(1));
  EXPECT_EQ(m(1, 0), Rational(-1));
  const auto m3 = form_to_matrix(var(dim, 0) * a, std::vector<Rational>{3, 0, 0, 0});
  EXPECT_EQ(m3(0, 1), Rational(3));
  EXPECT_THROW((void)form_to_matrix(K::dx(dim, 0), std::vector<Rational>(dim)), std::invalid_argument);
}

TEST(Forms, LagrangianTwoFormMatchesPrintedDisplay) {
  RationalSampler rs(25);
  for (std::size_t n = 1; n <= 3; ++n)
    for (Tag tag : kAllTags)
      for (int k = 0; k < 3; ++k) {
        const P l = rs.polynomial(4 * n, 4, 6);
        EXPECT_EQ(lagrangian_two_form(tag, l), printed_display(tag, l)) << to_string(tag) << " n=" << n;
      }
}

TEST(Forms, LagrangianTwoFormClosed) {
  RationalSampler rs(26);
  for (std::size_t n = 1; n <= 3; ++n)
    for (Tag tag : kAllTags)
      for (int k = 0; k < 4; ++k) EXPECT_TRUE(ext_d(lagrangian_two_form(tag, rs.polynomial(4 * n, 4, 8))).is_zero());
}

TEST(Forms, LagrangianTwoFormMatrixIdentity) {
  RationalSampler rs(27);
  for (std::size_t n = 1; n <= 3; ++n)
    for (Tag tag : kAllTags) {
      const auto a = structure(tag, n);
      for (int k = 0; k < 3; ++k) {
        const P l = rs.polynomial(4 * n, 4, 8);
        const K phi = lagrangian_two_form(tag, l);
        for (int p = 0; p < 10; ++p) {
          const auto x = rs.point(4 * n);
          const auto h = hessian_at(l, x);
          ASSERT_EQ(form_to_matrix(phi, x), a.transpose() * h - h * a);
        }
      }
    }
}
