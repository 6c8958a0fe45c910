#include "doctest.h"
#include "hecke/linalg.hpp"

using namespace hecke;

namespace {

template <class F>
void kernel_properties(const F& f, std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + t % 6, c = 1 + (t / 6) % 5;
    auto a = random_matrix(f, r, c, rng);
    if (t % 4 == 0 && r > 1)  // force a dependency
      for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = a(0, j);
    auto k = left_kernel(a);
    CHECK(k.rows() + rank(a) == r);
    CHECK((k * a).is_zero());
    CHECK(rank(k) == k.rows());
    auto rk = right_kernel(a);
    CHECK((a * transpose(rk)).is_zero());
    CHECK(rk.rows() + rank(a) == c);
    // null space of the row echelon form equals the right kernel
    SemiEchelon<F> se(f, c);
    for (std::size_t i = 0; i < r; ++i) se.insert(Vec<F>(a.row(i).begin(), a.row(i).end()));
    auto ns = null_space(se);
    CHECK(ns.rows() == rk.rows());
    CHECK((a * transpose(ns)).is_zero());
    CHECK(rank(ns) == ns.rows());
  }
}

}  // namespace

TEST_CASE("kernels and ranks") {
  kernel_properties(PrimeField(2), 1);
  kernel_properties(PrimeField(101), 2);
  kernel_properties(ExtField(3, 2), 3);
  kernel_properties(RationalField(), 4);
}

TEST_CASE("inverse and products") {
  PrimeField f(7);
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    auto [m, inv] = random_invertible(f, 1 + t % 8, rng);
    CHECK(m * inv == Matrix<PrimeField>::identity(f, m.rows()));
    CHECK(inv * m == Matrix<PrimeField>::identity(f, m.rows()));
  }
  Matrix<PrimeField> sing(f, 2, 2);
  sing(0, 0) = 1;
  sing(1, 0) = 2;
  CHECK_FALSE(inverse(sing).has_value());
  auto a = random_matrix(f, 3, 4, rng), b = random_matrix(f, 4, 2, rng), c = random_matrix(f, 2, 5, rng);
  CHECK((a * b) * c == a * (b * c));
  auto x = random_matrix(f, 2, 2, rng), y = random_matrix(f, 3, 3, rng);
  auto x2 = random_matrix(f, 2, 2, rng), y2 = random_matrix(f, 3, 3, rng);
  CHECK(kron(x, y) * kron(x2, y2) == kron(x * x2, y * y2));
  CHECK(power(x, 5) == x * x * x * x * x);
}

TEST_CASE("semi-echelon bookkeeping") {
  PrimeField f(5);
  SemiEchelon<PrimeField> se(f, 3);
  CHECK(se.insert({1, 2, 3}));
  CHECK(se.insert({0, 1, 1}));
  CHECK_FALSE(se.insert({2, 4, 1}));  // 2 * (1,2,3)
  Vec<PrimeField> v{3, 1, 0}, coeffs;
  Vec<PrimeField> orig = v;
  se.reduce(v, &coeffs);
  // reconstruct
  Vec<PrimeField> back = v;
  for (std::size_t i = 0; i < se.size(); ++i)
    axpy(f, std::span(back), std::span<const std::uint32_t>(se.rows()[i]), coeffs[i]);
  CHECK(back == orig);
}
