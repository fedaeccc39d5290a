#include <gtest/gtest.h>

#include <random>

#include "nilsupport/nilsupport.hpp"
#include "oracles.hpp"

using namespace nilsupport;

namespace {

FieldPtr gf4() { return make_field(FieldSpec{2, 2, {1, 1, 1}}); }
FieldPtr gf8() { return make_field(FieldSpec{2, 3, {1, 1, 0, 1}}); }
FieldPtr gf9() { return make_field(FieldSpec{3, 2, {1, 0, 1}}); }
FieldPtr gf81() { return make_field(FieldSpec{3, 4, {2, 0, 0, 1, 1}}); }

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(ScalarRing(f), r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Elem>(rng() % f->q());
  return m;
}

}  // namespace

TEST(Field, RejectsCompositeCharacteristic) {
  EXPECT_THROW(prime_field(4), FieldError);
  EXPECT_THROW(prime_field(1), FieldError);
}

TEST(Field, RejectsReducibleModulus) {
  // x^2 + 1 = (x + 1)^2 over F_2
  EXPECT_THROW(make_field(FieldSpec{2, 2, {1, 0, 1}}), FieldError);
  // x^2 + 1 has no root mod 3 but x^2 + 2 = (x+1)(x+2)
  EXPECT_NO_THROW(make_field(FieldSpec{3, 2, {1, 0, 1}}));
  EXPECT_THROW(make_field(FieldSpec{3, 2, {2, 0, 1}}), FieldError);
  // degree 4 over F_2: (x^2 + x + 1)^2 = x^4 + x^2 + 1 has no roots but factors
  EXPECT_THROW(make_field(FieldSpec{2, 4, {1, 0, 1, 0, 1}}), FieldError);
  EXPECT_THROW(make_field(FieldSpec{2, 5, {1, 0, 1, 0, 0, 1}}), FieldError);
}

TEST(Field, InverseExhaustiveUpTo81) {
  for (const auto& f : {prime_field(2), prime_field(3), prime_field(5), prime_field(7), gf4(), gf8(), gf9(),
                        make_field(FieldSpec{2, 4, {1, 1, 0, 0, 1}}), make_field(FieldSpec{5, 2, {2, 0, 1}}),
                        gf81()}) {
    for (Elem a = 1; a < f->q(); ++a) EXPECT_EQ(f->mul(a, f->inv(a)), 1u) << "q=" << f->q() << " a=" << a;
    EXPECT_THROW(f->inv(0), SingularMatrix);
  }
}

TEST(Field, AxiomsExhaustiveOnF9) {
  auto f = gf9();
  for (Elem a = 0; a < 9; ++a)
    for (Elem b = 0; b < 9; ++b) {
      EXPECT_EQ(f->add(a, b), f->add(b, a));
      EXPECT_EQ(f->mul(a, b), f->mul(b, a));
      EXPECT_EQ(f->add(f->sub(a, b), b), a);
      for (Elem c = 0; c < 9; ++c) {
        EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
        EXPECT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
      }
    }
}

TEST(Field, FrobeniusIsAdditiveAndFixesPrimeField) {
  for (const auto& f : {gf4(), gf8(), gf9()}) {
    for (Elem a = 0; a < f->q(); ++a) {
      for (Elem b = 0; b < f->q(); ++b) EXPECT_EQ(f->frob(f->add(a, b), 1), f->add(f->frob(a, 1), f->frob(b, 1)));
      EXPECT_EQ(f->frob(a, f->m()), a);
      if (f->in_prime_field(a)) {
        EXPECT_EQ(f->frob(a, 1), a);
      }
    }
  }
}

TEST(Field, PrimitiveElementGeneratesUnits) {
  for (const auto& f : {prime_field(7), gf4(), gf9()}) {
    const Elem g = f->primitive_element();
    std::set<Elem> seen;
    Elem x = 1;
    for (Elem k = 0; k + 1 < f->q(); ++k, x = f->mul(x, g)) seen.insert(x);
    EXPECT_EQ(seen.size(), f->q() - 1);
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Matrix::identity(ScalarRing(prime_field(2)), 3)), 3u);
  EXPECT_EQ(rank(Matrix(ScalarRing(prime_field(5)), 2, 2)), 0u);
  EXPECT_EQ(rank(square_matrix(prime_field(3), 2, {0, 1, 0, 0})), 1u);
}

TEST(Rank, AgreesWithColumnMajorOracleOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      Matrix m = random_matrix(prime_field(p), r, c, rng);
      // Force low rank sometimes by copying rows.
      if (trial % 3 == 0 && r > 1)
        for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j);
      EXPECT_EQ(rank(m), oracle::rank_colmajor(oracle::to_int(m), p));
      EXPECT_EQ(rank(m), rank_by_columns(m));
    }
}

TEST(Rank, ColumnEliminationAgreesOverExtensionFields) {
  std::mt19937_64 rng(12);
  for (const auto& f : {gf4(), gf9()})
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix a = random_matrix(f, 4, 3, rng);
      const Matrix b = random_matrix(f, 3, 5, rng);
      const Matrix m = a * b;  // rank <= 3
      EXPECT_EQ(rank(m), rank_by_columns(m));
      EXPECT_LE(rank(m), 3u);
    }
}

TEST(Linalg, RrefKernelAndInverse) {
  std::mt19937_64 rng(13);
  for (const auto& f : {prime_field(3), gf4()})
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix m = random_matrix(f, 4, 5, rng);
      const auto ker = kernel_basis(m);
      EXPECT_EQ(rank(m) + ker.size(), 5u);
      for (const auto& v : ker) {
        const Vector w = apply(m, v);
        EXPECT_TRUE(std::all_of(w.begin(), w.end(), [](Elem x) { return x == 0; }));
      }
      const Matrix r = rref(m);
      EXPECT_EQ(rref(r), r);
      const Matrix sq = random_matrix(f, 4, 4, rng);
      if (auto inv = try_inverse(sq)) {
        EXPECT_TRUE((sq * *inv).is_identity());
        EXPECT_TRUE((*inv * sq).is_identity());
      } else {
        EXPECT_LT(rank(sq), 4u);
        EXPECT_THROW(inverse(sq), SingularMatrix);
      }
    }
}

TEST(Linalg, KernelMatchesBruteForceDimension) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const Matrix m = random_matrix(prime_field(3), 3, 4, rng);
    EXPECT_EQ(kernel_basis(m).size(), oracle::kernel_brute(oracle::to_int(m), 3).size());
  }
}

TEST(Linalg, DeterminantMatchesPermutationExpansion) {
  std::mt19937_64 rng(15);
  auto f = gf9();
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix(f, 4, 4, rng);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    Elem expected = 0;
    do {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
          if (perm[i] > perm[j]) ++inversions;
      Elem term = 1;
      for (std::size_t i = 0; i < 4; ++i) term = f->mul(term, m(i, perm[i]));
      expected = inversions % 2 ? f->sub(expected, term) : f->add(expected, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(determinant(m), expected);
    EXPECT_EQ(determinant(m) != 0, rank(m) == 4);
  }
}

TEST(Linalg, SubspaceInsertAndContain) {
  auto f = prime_field(3);
  Subspace s(f, 3);
  EXPECT_TRUE(s.insert({1, 2, 0}));
  EXPECT_FALSE(s.insert({2, 1, 0}));
  EXPECT_TRUE(s.contains({0, 0, 0}));
  EXPECT_FALSE(s.contains({0, 0, 1}));
  EXPECT_TRUE(s.insert({0, 0, 1}));
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_FALSE(s.contains({1, 0, 0}));
}

TEST(Matrix, ShapeAndFieldMismatchThrow) {
  const Matrix a(ScalarRing(prime_field(2)), 2, 3);
  const Matrix b(ScalarRing(prime_field(2)), 2, 3);
  EXPECT_THROW(a * b, DimensionError);
  const Matrix c(ScalarRing(prime_field(3)), 3, 2);
  EXPECT_THROW(a * c, DimensionError);
  EXPECT_THROW(commutator(a, a), DimensionError);
}

TEST(Matrix, FrobPowerIsRingHomomorphism) {
  std::mt19937_64 rng(16);
  for (const auto& f : {gf4(), gf8(), gf9()})
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix a = random_matrix(f, 3, 3, rng), b = random_matrix(f, 3, 3, rng);
      EXPECT_EQ((a * b).frob_power(1), a.frob_power(1) * b.frob_power(1));
      EXPECT_EQ((a + b).frob_power(1), a.frob_power(1) + b.frob_power(1));
      EXPECT_EQ(a.frob_power(0), a);
    }
}

TEST(Matrix, KronIsLeftMajor) {
  auto f = prime_field(5);
  const Matrix a = square_matrix(f, 2, {1, 2, 3, 4});
  const Matrix b = square_matrix(f, 2, {0, 1, 1, 0});
  const Matrix k = kron(a, b);
  EXPECT_EQ(k(0, 1), 1u);  // a(0,0) b(0,1)
  EXPECT_EQ(k(0, 3), 2u);  // a(0,1) b(0,1)
  EXPECT_EQ(k(3, 0), 3u);  // a(1,0) b(1,0)
}

TEST(PolyMatrix, IdentityTimesB) {
  auto f = prime_field(3);
  const PolyRing ring(f, 4);
  PolyMatrix b(ring, 2, 2);
  b(0, 1) = Poly({1, 2});
  b(1, 0) = Poly({0, 0, 1});
  EXPECT_EQ(PolyMatrix::identity(ring, 2) * b, b);
}

TEST(PolyMatrix, OnePlusTNTimesOneMinusTN) {
  auto f = prime_field(3);
  const PolyRing ring(f, 2);
  const Matrix n = square_matrix(f, 2, {0, 1, 0, 0});
  const PolyMatrix a = from_coeffs({Matrix::identity(ScalarRing(f), 2), n}, ring);
  const PolyMatrix b = from_coeffs({Matrix::identity(ScalarRing(f), 2), -n}, ring);
  EXPECT_TRUE((a * b).is_identity());
  EXPECT_LE(degree(a * b), degree(a) + degree(b));
}

TEST(PolyMatrix, CapOverflowNonTruncatingThrows) {
  auto f = prime_field(2);
  const PolyRing ring(f, 1);
  PolyMatrix x(ring, 1, 1);
  x(0, 0) = Poly({0, 1});
  EXPECT_THROW(x * x, DegreeOverflow);
  const PolyRing trunc(f, 1, true);
  const PolyMatrix y = x.with_ring(trunc);
  EXPECT_TRUE((y * y).is_zero());
}

TEST(PolyMatrix, CoefficientExtraction) {
  auto f = prime_field(5);
  const PolyRing ring(f, 3);
  const Matrix b = square_matrix(f, 2, {1, 2, 3, 4});
  const PolyMatrix ib = from_coeffs({Matrix::identity(ScalarRing(f), 2), b}, ring);
  EXPECT_EQ(coeff(ib, 1), b);
  EXPECT_TRUE(coeff(ib, 0).is_identity());
  EXPECT_TRUE(coeff(ib, 7).is_zero());
}

TEST(PolyMatrix, CoeffIsAdditive) {
  std::mt19937_64 rng(17);
  auto f = gf4();
  const PolyRing ring(f, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Matrix> ca, cb;
    for (int d = 0; d < 4; ++d) {
      ca.push_back(random_matrix(f, 2, 3, rng));
      cb.push_back(random_matrix(f, 2, 3, rng));
    }
    const PolyMatrix a = from_coeffs(ca, ring), b = from_coeffs(cb, ring);
    for (std::size_t d = 0; d < 6; ++d) EXPECT_EQ(coeff(a + b, d), coeff(a, d) + coeff(b, d));
  }
}

TEST(PolyMatrix, FrobPowerOfPolynomialEntries) {
  auto f2 = prime_field(2);
  const PolyRing ring(f2, 4);
  PolyMatrix a(ring, 1, 1);
  a(0, 0) = Poly({1, 1});
  EXPECT_EQ(a.frob_power(0), a);
  EXPECT_EQ(a.frob_power(1)(0, 0), Poly({1, 0, 1}));

  auto f3 = prime_field(3);
  const PolyRing r3(f3, 6);
  PolyMatrix b(r3, 1, 2);
  b(0, 0) = Poly({2, 1});
  b(0, 1) = Poly({0, 0, 2});
  const PolyMatrix fb = b.frob_power(1);
  EXPECT_EQ(fb(0, 0), Poly({2, 0, 0, 1}));
  EXPECT_EQ(fb(0, 1), Poly({0, 0, 0, 0, 0, 0, 2}));
}

TEST(PolyMatrix, EvaluateAtIsMultiplicative) {
  std::mt19937_64 rng(18);
  auto f = gf9();
  const PolyRing ring(f, 8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Matrix> ca, cb;
    for (int d = 0; d < 3; ++d) {
      ca.push_back(random_matrix(f, 2, 2, rng));
      cb.push_back(random_matrix(f, 2, 2, rng));
    }
    const PolyMatrix a = from_coeffs(ca, ring), b = from_coeffs(cb, ring);
    const Elem x = static_cast<Elem>(rng() % 9);
    EXPECT_EQ(evaluate_at(a * b, x), evaluate_at(a, x) * evaluate_at(b, x));
    EXPECT_EQ(evaluate_at(scale_variable(a, x), 1), evaluate_at(a, x));
  }
}
