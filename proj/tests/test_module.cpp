#include "doctest.h"
#include "hecke/module.hpp"

using namespace hecke;

namespace {

using F7 = PrimeField;
using Mod = Module<PrimeField>;

std::shared_ptr<const Algebra<PrimeField>> alg(std::uint32_t p, std::uint32_t u, int n,
                                               Flavor fl = Flavor::affine) {
  return Algebra<PrimeField>::get(PrimeField(p), n, u, fl);
}

// one-dimensional invariant subspaces of a module over F_p, by enumeration
int count_invariant_lines(const Mod& m) {
  const auto& f = m.field();
  const std::uint32_t p = f.characteristic();
  int count = 0;
  const std::size_t d = m.dim();
  std::vector<std::uint32_t> v(d, 0);
  // normalized vectors: first nonzero entry 1
  std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool started) {
    if (i == d) {
      if (!started) return;
      bool ok = true;
      for (const auto& g : m.generators()) {
        auto w = vec_mat(std::span<const std::uint32_t>(v), g);
        // w must be a multiple of v
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        auto c = w[lead];
        for (std::size_t j = 0; j < d; ++j)
          if (w[j] != f.mul(c, v[j])) ok = false;
      }
      count += ok;
      return;
    }
    if (!started) {
      v[i] = 0;
      rec(i + 1, false);
      v[i] = 1;
      rec(i + 1, true);
      v[i] = 0;
    } else {
      for (std::uint32_t a = 0; a < p; ++a) {
        v[i] = a;
        rec(i + 1, true);
      }
      v[i] = 0;
    }
  };
  rec(0, false);
  return count;
}

// a varied supply of modules over H(n), built from characters
std::vector<Mod> sample_modules(std::uint32_t p, std::uint32_t u, int n, Flavor fl) {
  std::vector<Mod> out;
  for (const auto& alpha : compositions_of(n)) {
    for (int shift = 0; shift < 2; ++shift) {
      std::vector<Mod> factors;
      int a = shift;
      for (std::size_t k = 0; k < alpha.parts().size(); ++k) {
        int nk = alpha.parts()[k];
        factors.push_back(make_character(alg(p, u, nk, fl), (k + shift) % 2 ? CharKind::L : CharKind::Z, a));
        a += nk;
      }
      out.push_back(outer_product(factors));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("segment characters") {
  auto A = alg(7, 3, 3);
  auto z = make_character(A, CharKind::Z, 0);
  CHECK(z.dim() == 1);
  CHECK(z.X(2)(0, 0) == 3u);
  CHECK(z.X(3)(0, 0) == 2u);  // 9 mod 7
  CHECK(z.S(1)(0, 0) == 3u);
  auto l = make_character(A, CharKind::L, 0);
  CHECK(l.S(1)(0, 0) == 6u);
  CHECK(l.S(2)(0, 0) == 6u);
  CHECK(l.X(1)(0, 0) == 2u);
  CHECK(l.X(3)(0, 0) == 1u);
  auto z1 = make_character(alg(7, 3, 1), CharKind::Z, 2);
  CHECK(z1.X(1)(0, 0) == 2u);
  CHECK(z1.generators().size() == 2);  // X1 and its inverse
  auto fin = make_character(alg(7, 3, 3, Flavor::finite), CharKind::L, 0);
  CHECK(fin.generators().size() == 2);
}

TEST_CASE("relation check rejects bad actions") {
  auto A = alg(7, 3, 2);
  PrimeField f(7);
  auto one = [&](std::uint32_t c) { return Matrix<PrimeField>::scalar(f, 1, c); };
  // S acting by 2 violates the quadratic relation for u = 3
  CHECK_THROWS_AS(Mod(A, Composition::whole(2), 1, {{1, one(2)}}, {one(1), one(3)}), ModuleError);
  // S1 X1 S1 = u X2 fails for X2 = 1
  CHECK_THROWS_AS(Mod(A, Composition::whole(2), 1, {{1, one(3)}}, {one(1), one(1)}), ModuleError);
  // X not invertible
  CHECK_THROWS_AS(Mod(A, Composition::whole(2), 1, {{1, one(3)}}, {one(0), one(0)}), ModuleError);
  CHECK_NOTHROW(Mod(A, Composition::whole(2), 1, {{1, one(3)}}, {one(1), one(3)}));
}

TEST_CASE("restriction") {
  auto A = alg(7, 3, 2);
  auto z = make_character(A, CharKind::Z, 0);
  CHECK(restrict(z, Composition::whole(2)) == z);
  auto r = restrict(z, Composition({1, 1}));
  CHECK_FALSE(r.has_S(1));
  CHECK(r.X(1)(0, 0) == 1u);
  CHECK(r.X(2)(0, 0) == 3u);
  CHECK_THROWS_AS(restrict(r, Composition::whole(2)), ModuleError);
}

TEST_CASE("coinduction dimensions and the F3 example") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& alpha : compositions_of(n)) {
      std::vector<Mod> ch;
      int a = 0;
      for (int nk : alpha.parts()) {
        ch.push_back(make_character(alg(5, 2, nk), CharKind::Z, a));
        a += nk + 1;
      }
      auto m = outer_product(ch, RelationCheck::exact);
      CHECK(m.dim() == alpha.coset_count());
      CHECK_FALSE(m.violated_relation(RelationCheck::exact).has_value());
    }
  // F3, u = 2: Z(1, 0) (x) Z(1, 1)
  auto A1 = alg(3, 2, 1);
  auto m = outer_product(std::vector<Mod>{make_character(A1, CharKind::Z, 0),
                                          make_character(A1, CharKind::Z, 1)});
  REQUIRE(m.dim() == 2);
  // explicit matrices for the basis (phi(T_e), phi(T_s)), from
  // X1 S = S X2 - (u-1) X2, X2 S = S X1 + (u-1) X2 and S S = (u-1) S + u
  PrimeField f(3);
  CHECK(m.X(1) == Matrix<PrimeField>::from_rows(f, {{1, 1}, {0, 2}}, 2));
  CHECK(m.X(2) == Matrix<PrimeField>::from_rows(f, {{2, 2}, {0, 1}}, 2));
  CHECK(m.S(1) == Matrix<PrimeField>::from_rows(f, {{0, 2}, {1, 1}}, 2));
  // exactly one invariant line: composition length 2, non-split
  CHECK(count_invariant_lines(m) == 1);
}

TEST_CASE("Frobenius adjunction") {
  for (Flavor fl : {Flavor::affine, Flavor::finite})
    for (int n = 2; n <= 3; ++n) {
      auto ks = sample_modules(5, 2, n, fl);
      for (const auto& alpha : compositions_of(n)) {
        if (alpha.is_whole()) continue;
        // modules over H_alpha: restrictions of the samples and tensors of characters
        std::vector<Mod> ms;
        for (std::size_t i = 0; i < ks.size(); i += 3) ms.push_back(restrict(ks[i], alpha));
        for (const auto& k : ks)
          for (const auto& m : ms) {
            CAPTURE(alpha.to_string());
            CHECK(hom_space(restrict(k, alpha), m).dim == hom_space(k, coinduce(m)).dim);
          }
      }
    }
}

TEST_CASE("exactness on manufactured short exact sequences") {
  auto ks = sample_modules(7, 3, 3, Flavor::affine);
  for (const auto& k : ks) {
    // the sum of a module with itself has the diagonal copy as a submodule
    auto big = direct_sum(k, k);
    SemiEchelon<PrimeField> w(k.field(), big.dim());
    for (std::size_t i = 0; i < k.dim(); ++i) {
      Vec<PrimeField> v(big.dim(), 0);
      v[i] = 1;
      v[k.dim() + i] = 1;
      w.insert(v);
    }
    auto [sub, quo] = split_by(big, w);
    CHECK(sub.dim() + quo.dim() == big.dim());
    CHECK_FALSE(sub.violated_relation(RelationCheck::exact).has_value());
    CHECK_FALSE(quo.violated_relation(RelationCheck::exact).has_value());
    Composition alpha({1, 2});
    auto rs = restrict(sub, alpha), rq = restrict(quo, alpha);
    CHECK(rs.dim() + rq.dim() == restrict(big, alpha).dim());
    auto ts = tensor(std::vector<Mod>{sub, make_character(alg(7, 3, 1), CharKind::Z, 0)});
    auto tq = tensor(std::vector<Mod>{quo, make_character(alg(7, 3, 1), CharKind::Z, 0)});
    CHECK(coinduce(ts).dim() + coinduce(tq).dim() ==
          coinduce(tensor(std::vector<Mod>{big, make_character(alg(7, 3, 1), CharKind::Z, 0)})).dim());
  }
}

TEST_CASE("tau twist") {
  for (int n = 1; n <= 4; ++n)
    for (int a = -1; a <= 2; ++a) {
      auto A = alg(11, 3, n);
      auto z = make_character(A, CharKind::Z, a);
      CHECK(tau_twist(z) == make_character(A, CharKind::L, a));
      CHECK(tau_twist(tau_twist(z)) == z);
    }
  auto ks = sample_modules(7, 3, 3, Flavor::affine);
  for (const auto& k : ks) {
    CHECK(tau_twist(tau_twist(k)) == k);
    CHECK_FALSE(tau_twist(k).violated_relation(RelationCheck::exact).has_value());
  }
  CHECK_THROWS_AS(tau_twist(restrict(ks[0], Composition({1, 2}))), ModuleError);
}

TEST_CASE("tau twist reverses outer products up to isomorphism") {
  Rng rng(5);
  auto A1 = alg(7, 3, 1), A2 = alg(7, 3, 2);
  std::vector<std::pair<Mod, Mod>> pairs = {
      {make_character(A1, CharKind::Z, 0), make_character(A1, CharKind::Z, 1)},
      {make_character(A1, CharKind::Z, 0), make_character(A2, CharKind::L, 2)},
      {make_character(A2, CharKind::Z, 1), make_character(A1, CharKind::Z, 0)},
      {make_character(A2, CharKind::Z, 0), make_character(A2, CharKind::L, 0)},
  };
  for (const auto& [m1, m2] : pairs) {
    auto lhs = tau_twist(outer_product(std::vector<Mod>{m1, m2}));
    auto rhs = outer_product(std::vector<Mod>{tau_twist(m2), tau_twist(m1)});
    auto iso = find_isomorphism(lhs, rhs, rng);
    REQUIRE(iso.has_value());
    for (std::size_t g = 0; g < lhs.generators().size(); ++g)
      CHECK(lhs.generators()[g] * *iso == *iso * rhs.generators()[g]);
  }
}

TEST_CASE("hom spaces") {
  auto A = alg(7, 3, 2);
  auto z = make_character(A, CharKind::Z, 0), l = make_character(A, CharKind::L, 0);
  CHECK(hom_space(z, z).dim == 1);
  CHECK(hom_space(z, l).dim == 0);
  Rng rng(8);
  auto m = outer_product(std::vector<Mod>{make_character(alg(7, 3, 1), CharKind::Z, 0),
                                          make_character(alg(7, 3, 1), CharKind::Z, 3)});
  auto [p, pinv] = random_invertible(m.field(), m.dim(), rng);
  auto c = conjugate(m, p, pinv);
  auto hom = hom_space(m, c);
  for (const auto& b : hom.basis)
    for (std::size_t g = 0; g < m.generators().size(); ++g)
      CHECK(m.generators()[g] * b == b * c.generators()[g]);
  CHECK(find_isomorphism(m, c, rng).has_value());
}

TEST_CASE("module JSON round trip") {
  auto m = sample_modules(7, 3, 3, Flavor::affine)[3];
  auto j = to_json(m);
  CHECK(j["dim"] == m.dim());
  CHECK(module_from_json(PrimeField(7), j) == m);
  CHECK_THROWS_AS(module_from_json(PrimeField(5), j), ParseError);
  j["actions"]["S1"][0][0] = "4";
  CHECK_THROWS(module_from_json(PrimeField(7), j));
}
