#include <doctest.h>

#include "test_support.hpp"
#include "ucr/errors.hpp"
#include "ucr/fock_space.hpp"

using namespace ucr;

namespace {

RelationMatrix scalar_relation(Complex alpha) {
  Matrix u(1, 1);
  u(0, 0) = alpha;
  return RelationMatrix::validate(1, 1, u);
}

double relation_residual(const TruncatedFock& fock) {
  const RelationMatrix& rel = fock.relation();
  double worst = 0.0;
  for (int i = 0; i < rel.n(); ++i) {
    for (int j = 0; j < rel.m(); ++j) {
      FockOperator lhs = compose(left_e_op(fock, i), left_f_op(fock, j));
      FockOperator rhs{Matrix::Zero(fock.dim(), fock.dim()), 2, 2,
                       fock.max_degree() - 2};
      for (int k = 0; k < rel.n(); ++k) {
        for (int l = 0; l < rel.m(); ++l) {
          const Complex c = rel.entry(i, j, k, l);
          if (c != Complex(0, 0)) {
            rhs.mat += c * (fock.left_f(l) * Matrix(fock.left_e(k)));
          }
        }
      }
      worst = std::max(worst, identity_residual(fock, lhs, rhs));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("basis enumeration and degree blocks") {
  auto gen = testing::rng(3);
  const RelationMatrix rel = testing::random_relation(2, 3, gen);
  const TruncatedFock fock(rel, 3);
  int expected = 0;
  for (int k = 0; k <= 3; ++k) {
    for (int l = 0; k + l <= 3; ++l) {
      expected += static_cast<int>(std::pow(2, k) * std::pow(3, l));
    }
  }
  CHECK(fock.dim() == expected);
  CHECK(fock.degree_begin(0) == 0);
  CHECK(fock.degree_end(0) == 1);
  for (int d = 0; d <= 3; ++d) {
    for (int idx = fock.degree_begin(d); idx < fock.degree_end(d); ++idx) {
      CHECK(fock.degree_of(idx) == d);
    }
  }
  // (k,l) lexicographic within a degree: the first degree-2 word is a pure
  // f-word.
  CHECK(fock.word(fock.degree_begin(2)).e.empty());
  CHECK(fock.index_of(FockWord{{1, 0}, {2}}) >= 0);
  CHECK(fock.index_of(FockWord{{1, 0, 1, 0}, {}}) == -1);  // beyond degree 3
}

TEST_CASE("build rejects bad truncation and budget") {
  auto gen = testing::rng(7);
  const RelationMatrix rel = testing::random_relation(2, 2, gen);
  CHECK_THROWS_AS(TruncatedFock(rel, 0), TruncationTooSmall);
  FockBuildOptions tiny;
  tiny.memory_budget_bytes = 128;
  CHECK_THROWS_AS(TruncatedFock(rel, 4, tiny), MemoryBudgetExceeded);
}

TEST_CASE("free commutation gives commuting shifts in one variable each") {
  const TruncatedFock fock(scalar_relation(Complex(1, 0)), 6);
  const Matrix le = Matrix(fock.left_e(0));
  const Matrix lf = Matrix(fock.left_f(0));
  CHECK(restricted_norm(fock, le * lf - lf * le, 4) <= 1e-15);
}

TEST_CASE("one-dimensional twisted shifts satisfy the scalar relation") {
  const Complex alpha = std::polar(1.0, 2.2);
  const TruncatedFock fock(scalar_relation(alpha), 6);
  const Matrix le = Matrix(fock.left_e(0));
  const Matrix lf = Matrix(fock.left_f(0));
  CHECK(restricted_norm(fock, le * lf - alpha * lf * le, 4) <= 1e-14);
}

TEST_CASE("relation residual vanishes for random relations") {
  auto gen = testing::rng(13);
  for (const auto [n, m] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
    const TruncatedFock fock(testing::random_relation(n, m, gen), 4);
    CHECK(relation_residual(fock) <= 1e-10);
  }
}

TEST_CASE("left creation columns match the tensor-contraction oracle") {
  auto gen = testing::rng(19);
  const RelationMatrix rel = testing::random_relation(2, 2, gen);
  const TruncatedFock fock(rel, 4);
  const testing::TensorOracle oracle{rel};
  for (int j = 0; j < rel.m(); ++j) {
    const Matrix lf = Matrix(fock.left_f(j));
    for (int col = 0; col < fock.degree_end(2); ++col) {
      const FockWord& w = fock.word(col);
      MixedWord mixed;
      mixed.push_back({true, j});
      for (int i : w.e) mixed.push_back({false, i});
      for (int jj : w.f) mixed.push_back({true, jj});
      Vector expected = Vector::Zero(fock.dim());
      for (const auto& [t, c] : oracle.normal_order(mixed)) {
        expected(fock.index_of(t)) += c;
      }
      CHECK((lf.col(col) - expected).norm() <= 1e-12);
    }
  }
}

TEST_CASE("generator families are isometric with orthogonal ranges") {
  auto gen = testing::rng(23);
  const TruncatedFock fock(testing::random_relation(2, 2, gen), 4);
  std::vector<FockOperator> gens;
  for (int i = 0; i < 2; ++i) gens.push_back(left_e_op(fock, i));
  for (int j = 0; j < 2; ++j) gens.push_back(left_f_op(fock, j));
  for (std::size_t a = 0; a < gens.size(); ++a) {
    const FockOperator gram = compose(adjoint_op(fock, gens[a]), gens[a]);
    CHECK(identity_residual(fock, gram, identity_op(fock)) <= 1e-12);
  }
  const FockOperator cross =
      compose(adjoint_op(fock, left_e_op(fock, 0)), left_e_op(fock, 1));
  CHECK(restricted_norm(fock, cross.mat, cross.validity) <= 1e-12);
}

TEST_CASE("defect identity for the f family") {
  auto gen = testing::rng(29);
  const TruncatedFock fock(testing::random_relation(2, 2, gen), 4);
  Matrix defect =
      Matrix::Identity(fock.dim(), fock.dim()) - fock.f_free_projection();
  for (int l = 0; l < 2; ++l) {
    const Matrix lf = Matrix(fock.left_f(l));
    defect -= lf * lf.adjoint();
  }
  CHECK(restricted_norm(fock, defect, 3) <= 1e-12);
}

TEST_CASE("left and right shifts commute") {
  auto gen = testing::rng(31);
  const TruncatedFock fock(testing::random_relation(2, 2, gen), 4);
  std::vector<FockOperator> lefts{left_e_op(fock, 0), left_e_op(fock, 1),
                                  left_f_op(fock, 0), left_f_op(fock, 1)};
  std::vector<FockOperator> rights{right_e_op(fock, 0), right_e_op(fock, 1),
                                   right_f_op(fock, 0), right_f_op(fock, 1)};
  for (const auto& l : lefts) {
    for (const auto& r : rights) {
      CHECK(identity_residual(fock, compose(l, r), compose(r, l)) <= 1e-10);
    }
  }
}

TEST_CASE("band extraction and averaged band sums") {
  auto gen = testing::rng(37);
  const TruncatedFock fock(testing::random_relation(2, 2, gen), 4);
  const FockOperator le = left_e_op(fock, 0);
  CHECK(identity_residual(fock, fourier_component(fock, le, 1), le) == 0.0);
  CHECK(restricted_norm(fock, fourier_component(fock, le, 0).mat, 3) == 0.0);

  // A band-limited polynomial is recovered by summing its bands, and the
  // averaged sums approach it at rate 1/p.
  const GeneratorPoly p =
      GeneratorPoly::one() + GeneratorPoly::e(0) * GeneratorPoly::f(1) +
      GeneratorPoly::f(0) * Complex(0.5, 0.25);
  const FockOperator a = poly_operator(fock, p);
  FockOperator bands = fourier_component(fock, a, 0);
  for (int k = 1; k <= 2; ++k) {
    bands = add(bands, fourier_component(fock, a, k));
  }
  CHECK(identity_residual(fock, bands, a) <= 1e-14);

  const double err8 = identity_residual(fock, cesaro_sum(fock, a, 8), a);
  const double err64 = identity_residual(fock, cesaro_sum(fock, a, 64), a);
  CHECK(err64 <= err8 / 4.0);
  double bound = 0.0;
  for (int k = 1; k <= 2; ++k) {
    bound += (k / 64.0) * restricted_norm(fock, fourier_component(fock, a, k).mat,
                                          fock.max_degree());
  }
  CHECK(err64 <= bound + 1e-14);
}

TEST_CASE("reversal unitary intertwines left and right shifts") {
  auto gen = testing::rng(41);
  SUBCASE("free case is a permutation") {
    const RelationMatrix id =
        RelationMatrix::validate(2, 2, Matrix::Identity(4, 4));
    const TruncatedFock fock(id, 3);
    const TruncatedFock fock_star(id, 3);
    const FockOperator w = reversal_unitary(fock, fock_star);
    for (int c = 0; c < fock.dim(); ++c) {
      for (int r = 0; r < fock.dim(); ++r) {
        const double x = std::abs(w.mat(r, c));
        CHECK((x <= 1e-15 || std::abs(x - 1.0) <= 1e-15));
      }
      CHECK(w.mat.col(c).norm() == doctest::Approx(1.0));
    }
    CHECK(w.mat(0, 0) == Complex(1, 0));  // vacuum fixed
    const int src = fock.index_of(FockWord{{0, 1}, {1}});
    const int dst = fock.index_of(FockWord{{1, 0}, {1}});
    CHECK(w.mat(dst, src) == Complex(1, 0));
  }

  SUBCASE("random relations") {
    for (int t = 0; t < 10; ++t) {
      const RelationMatrix rel = testing::random_relation(2, 2, gen);
      const RelationMatrix rel_star =
          RelationMatrix::validate(2, 2, rel.matrix().adjoint(), 1e-8);
      const TruncatedFock fock(rel, 3);
      const TruncatedFock fock_star(rel_star, 3);
      const FockOperator w = reversal_unitary(fock, fock_star);
      CHECK((w.mat.adjoint() * w.mat -
             Matrix::Identity(fock.dim(), fock.dim()))
                .norm() <= 1e-10);
      for (int i = 0; i < 2; ++i) {
        CHECK(identity_residual(fock_star, compose(right_e_op(fock_star, i), w),
                                compose(w, left_e_op(fock, i))) <= 1e-10);
      }
      for (int j = 0; j < 2; ++j) {
        CHECK(identity_residual(fock_star, compose(right_f_op(fock_star, j), w),
                                compose(w, left_f_op(fock, j))) <= 1e-10);
      }
    }
  }

  SUBCASE("mismatched target space is rejected") {
    const RelationMatrix rel = testing::random_relation(2, 2, gen);
    const TruncatedFock fock(rel, 3);
    const TruncatedFock wrong(rel, 3);
    if ((rel.matrix() - rel.matrix().adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
      CHECK_THROWS_AS(reversal_unitary(fock, wrong), RelationMismatch);
    }
  }
}

TEST_CASE("regrading to f-first coordinates") {
  SUBCASE("free case permutes, pure f-words fixed") {
    const RelationMatrix id =
        RelationMatrix::validate(2, 2, Matrix::Identity(4, 4));
    const TruncatedFock fock(id, 3);
    const FockOperator g = regrade_f_first(fock);
    const int fword = fock.index_of(FockWord{{}, {1, 0}});
    CHECK(g.mat(fword, fword) == Complex(1, 0));
    for (int c = 0; c < fock.dim(); ++c) {
      CHECK(g.mat.col(c).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    }
  }

  SUBCASE("round trip on random relations") {
    auto gen = testing::rng(47);
    for (int t = 0; t < 5; ++t) {
      const RelationMatrix rel = testing::random_relation(2, 2, gen);
      const TruncatedFock fock(rel, 3);
      const FockOperator g = regrade_f_first(fock);
      const FockOperator ginv = regrade_f_first_inverse(fock);
      CHECK(identity_residual(fock, compose(ginv, g), identity_op(fock)) <=
            1e-12);
      CHECK((g.mat.adjoint() * g.mat -
             Matrix::Identity(fock.dim(), fock.dim()))
                .norm() <= 1e-12);
    }
  }
}

TEST_CASE("polynomials in degree-raising generators compose exactly") {
  auto gen = testing::rng(53);
  const TruncatedFock fock(testing::random_relation(2, 2, gen), 4);
  const GeneratorPoly p = GeneratorPoly::e(0) * GeneratorPoly::f(0);
  const GeneratorPoly q = GeneratorPoly::f(1);
  const FockOperator prod = poly_operator(fock, p * q);
  const FockOperator split =
      compose(poly_operator(fock, p), poly_operator(fock, q));
  CHECK(identity_residual(fock, prod, split) <= 1e-13);
}
