#include "doctest.h"
#include "hecke/field.hpp"
#include "hecke/poly.hpp"

using namespace hecke;

namespace {

template <class F>
void check_axioms(const F& f, int trials) {
  Rng rng(11);
  for (int t = 0; t < trials; ++t) {
    auto a = f.random(rng), b = f.random(rng), c = f.random(rng);
    REQUIRE(f.add(a, b) == f.add(b, a));
    REQUIRE(f.mul(a, b) == f.mul(b, a));
    REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    REQUIRE(f.add(a, f.neg(a)) == f.zero());
    REQUIRE(f.sub(a, b) == f.add(a, f.neg(b)));
    if (!f.is_zero(a)) REQUIRE(f.is_one(f.mul(a, f.inv(a))));
  }
}

// order of u in the multiplicative group by brute force
template <class F>
std::uint64_t brute_e(const F& f, typename F::Elem u) {
  if (f.is_one(u)) return f.characteristic();
  auto x = u;
  for (std::uint64_t k = 1; k < 100000; ++k) {
    if (f.is_one(x)) return k;
    x = f.mul(x, u);
  }
  return 0;
}

}  // namespace

TEST_CASE("field axioms") {
  check_axioms(PrimeField(2), 200);
  check_axioms(PrimeField(7), 500);
  check_axioms(PrimeField(65537), 500);
  check_axioms(ExtField(2, 2), 200);
  check_axioms(ExtField(3, 3), 500);
  check_axioms(ExtField(7, 2), 500);
  check_axioms(RationalField(), 300);
}

TEST_CASE("extension fields have the right size and a generator of the right order") {
  for (auto [p, k] : {std::pair<std::uint32_t, int>{2, 2}, {2, 3}, {3, 2}, {5, 3}, {7, 2}}) {
    ExtField f(p, k);
    std::uint64_t q = f.size();
    CHECK(q == (k == 2 ? std::uint64_t(p) * p : std::uint64_t(p) * p * p));
    // every nonzero element satisfies a^{q-1} = 1
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
      auto a = f.random(rng);
      if (f.is_zero(a)) continue;
      CHECK(f.is_one(f.pow(a, static_cast<std::int64_t>(q - 1))));
      CHECK(f.pow(f.pth_root(a), p) == a);
    }
    // the generator is not in the prime field
    CHECK_FALSE(f.pow(f.generator(), p) == f.generator());
  }
}

TEST_CASE("e invariant") {
  PrimeField f3(3), f7(7), f101(101), f2(2);
  RationalField q;
  CHECK(e_invariant(f3, f3.one()) == 3);
  CHECK(e_invariant(f7, f7.from_int(2)) == 3);
  CHECK(e_invariant(q, q.from_int(3)) == 0);
  CHECK(e_invariant(q, q.from_int(-1)) == 2);
  CHECK(e_invariant(q, q.one()) == 0);
  CHECK(e_invariant(f101, f101.from_int(2)) == 100);
  CHECK_THROWS_AS(e_invariant(f7, f7.zero()), DomainError);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 101u}) {
    PrimeField f(p);
    for (std::uint32_t u = 1; u < p; ++u) CHECK(e_invariant(f, u) == brute_e(f, u));
  }
  ExtField f4(2, 2);
  CHECK(e_invariant(f4, f4.generator()) == 3);
  CHECK(e_invariant(f4, f4.one()) == 2);
}

TEST_CASE("scalar parsing") {
  PrimeField f7(7);
  CHECK(parse_scalar(f7, "3") == 3u);
  CHECK(parse_scalar(f7, "-1") == 6u);
  CHECK(parse_scalar(f7, "1/2") == 4u);
  CHECK(parse_scalar(f7, "10 mod 7") == 3u);
  CHECK_THROWS_AS(parse_scalar(f7, "10 mod 5"), ParseError);
  CHECK_THROWS_AS(parse_scalar(f7, "1/7"), DomainError);
  CHECK_THROWS_AS(parse_scalar(f7, "abc"), ParseError);
  RationalField q;
  CHECK(parse_scalar(q, "-3/6") == mpq_class(-1, 2));
  ExtField f9(3, 2);
  auto z = parse_scalar(f9, "z");
  CHECK(z == f9.generator());
  CHECK(parse_scalar(f9, f9.format(f9.add(z, f9.one()))) == f9.add(z, f9.one()));
  CHECK(parse_scalar(f9, "(1+2*z)") == f9.add(f9.one(), f9.mul(f9.from_int(2), z)));
}

TEST_CASE("characteristic polynomial agrees with determinant evaluation") {
  PrimeField f(13);
  Rng rng(7);
  // determinant by elimination, independent of the Krylov construction
  auto det = [&](Matrix<PrimeField> a) {
    std::uint32_t d = 1;
    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t r = c;
      while (r < n && a(r, c) == 0) ++r;
      if (r == n) return 0u;
      if (r != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a(r, j), a(c, j));
        d = f.neg(d);
      }
      d = f.mul(d, a(c, c));
      auto inv = f.inv(a(c, c));
      for (std::size_t i = c + 1; i < n; ++i) {
        auto m = f.mul(a(i, c), inv);
        for (std::size_t j = 0; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(m, a(c, j)));
      }
    }
    return d;
  };
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 1 + t % 7;
    auto a = random_matrix(f, n, n, rng);
    if (t % 3 == 0) a = Matrix<PrimeField>::scalar(f, n, 5);  // derogatory case
    auto cp = charpoly(a);
    REQUIRE(cp.degree() == static_cast<int>(n));
    for (std::uint32_t x = 0; x < 13; ++x) {
      auto m = scaled(a, f.neg(1));
      m = plus_scalar(m, x);
      CHECK(poly::eval(f, cp, x) == det(m));
    }
    CHECK(poly::eval_matrix(cp, a).is_zero());
  }
}

TEST_CASE("irreducible factors over finite fields") {
  PrimeField f(5);
  Rng rng(3);
  using P = Poly<PrimeField>;
  // (x-1)^2 (x-2) (x^2+2) (x^3+x+1), with x^2+2 and x^3+x+1 irreducible mod 5
  P a{{4, 1}}, b{{3, 1}}, c{{2, 0, 1}}, d{{1, 1, 0, 1}};
  P p = poly::mul(f, poly::mul(f, a, a), poly::mul(f, b, poly::mul(f, c, d)));
  auto fs = small_irreducible_factors(f, p, 3, rng);
  REQUIRE(fs.size() == 4);
  CHECK(fs[0].degree() == 1);
  CHECK(fs[1].degree() == 1);
  CHECK(fs[2].c == c.c);
  CHECK(fs[3].c == d.c);
  // a pure p-th power: (x^5 - x - 1) has no roots mod 5 (Artin-Schreier)
  P as{{4, 4, 0, 0, 0, 1}};
  auto g = small_irreducible_factors(f, poly::mul(f, as, as), 5, rng);
  REQUIRE(g.size() == 1);
  CHECK(g[0].c == as.c);
  // characteristic 2 exercises the trace-based splitting
  ExtField f4(2, 2);
  Poly<ExtField> q{{f4.one(), f4.one(), f4.one()}};  // x^2+x+1 splits over F4
  auto r = small_irreducible_factors(f4, q, 2, rng);
  CHECK(r.size() == 2);
}

TEST_CASE("rational roots") {
  Poly<RationalField> p{{mpq_class(-6), mpq_class(11), mpq_class(-6), mpq_class(1)}};
  auto roots = rational_roots(p);
  std::sort(roots.begin(), roots.end());
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == 1);
  CHECK(roots[2] == 3);
  Poly<RationalField> q{{mpq_class(-1, 3), mpq_class(0), mpq_class(3)}};  // 3x^2 - 1/3
  roots = rational_roots(q);
  std::sort(roots.begin(), roots.end());
  REQUIRE(roots.size() == 2);
  CHECK(roots[1] == mpq_class(1, 3));
}
