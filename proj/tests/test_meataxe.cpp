#include <functional>

#include "doctest.h"
#include "hecke/meataxe.hpp"

using namespace hecke;

namespace {

using Mod = Module<PrimeField>;

std::shared_ptr<const Algebra<PrimeField>> alg(std::uint32_t p, std::uint32_t u, int n,
                                               Flavor fl = Flavor::affine) {
  return Algebra<PrimeField>::get(PrimeField(p), n, u, fl);
}

Mod product(std::uint32_t p, std::uint32_t u, const std::vector<std::tuple<CharKind, int, int>>& cs,
            Flavor fl = Flavor::affine) {
  std::vector<Mod> ms;
  for (auto [k, n, a] : cs) ms.push_back(make_character(alg(p, u, n, fl), k, a));
  return outer_product(ms);
}

// Composition factors by exhaustive spinning: the smallest cyclic submodule
// is simple; split it off and recurse on both pieces.
void brute_factors(const Mod& m, std::vector<std::vector<std::int64_t>>& out) {
  if (m.dim() == 0) return;
  const auto& f = m.field();
  const std::uint32_t p = f.characteristic();
  std::vector<const Matrix<PrimeField>*> gens;
  for (std::size_t g = 0; g < m.spin_count(); ++g) gens.push_back(&m.generators()[g]);
  std::optional<SemiEchelon<PrimeField>> best;
  Vec<PrimeField> v(m.dim(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m.dim()) {
      if (std::all_of(v.begin(), v.end(), [](auto a) { return a == 0; })) return;
      auto w = detail::spin<PrimeField>({v}, gens, f, m.dim());
      if (!best || w.size() < best->size()) best = std::move(w);
      return;
    }
    for (std::uint32_t a = 0; a < p; ++a) {
      v[i] = a;
      rec(i + 1);
    }
    v[i] = 0;
  };
  rec(0);
  if (best->size() == m.dim()) {
    out.push_back(detail::trace_key(m));
    return;
  }
  auto [sub, quo] = split_by(m, *best);
  brute_factors(sub, out);
  brute_factors(quo, out);
}

std::vector<int> ids(const CompositionSeries<PrimeField>& s, SimpleRegistry<PrimeField>& reg) {
  std::vector<int> r;
  for (const auto& fac : s.factors) r.push_back(reg.add_certified(fac));
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST_CASE("trivial cases") {
  auto z = make_character(alg(5, 2, 2), CharKind::Z, 0);
  auto s = composition_factors(z);
  REQUIRE(s.factors.size() == 1);
  CHECK(s.factors[0] == z);
  auto empty = Mod(alg(5, 2, 1), Composition::whole(1), 0, {},
                   {Matrix<PrimeField>(PrimeField(5), 0, 0)});
  CHECK(composition_factors(empty).factors.empty());
}

TEST_CASE("two characters of F5 with u = 2") {
  auto m = product(5, 2, {{CharKind::Z, 1, 0}, {CharKind::Z, 1, 1}});
  REQUIRE(m.dim() == 2);
  auto s = composition_factors(m);
  REQUIRE(s.factors.size() == 2);
  CHECK(s.factors[0].dim() == 1);
  CHECK(s.factors[1].dim() == 1);
  std::vector<std::vector<std::int64_t>> brute;
  brute_factors(m, brute);
  CHECK(brute.size() == 2);
}

TEST_CASE("factors agree with exhaustive spinning") {
  struct Case {
    std::uint32_t p, u;
    std::vector<std::tuple<CharKind, int, int>> cs;
  };
  std::vector<Case> cases = {
      {3, 2, {{CharKind::Z, 1, 0}, {CharKind::Z, 1, 1}}},
      {3, 2, {{CharKind::Z, 1, 0}, {CharKind::Z, 1, 0}}},
      {3, 2, {{CharKind::Z, 1, 0}, {CharKind::L, 1, 1}, {CharKind::Z, 1, 0}}},
      {2, 1, {{CharKind::Z, 1, 0}, {CharKind::Z, 2, 0}}},
      {3, 1, {{CharKind::Z, 1, 0}, {CharKind::Z, 1, 0}, {CharKind::Z, 1, 0}}},
      {5, 4, {{CharKind::Z, 2, 0}, {CharKind::Z, 1, 3}}},
      {7, 2, {{CharKind::Z, 1, 0}, {CharKind::Z, 1, 1}, {CharKind::Z, 1, 2}}},
      {3, 2, {{CharKind::L, 2, 0}, {CharKind::Z, 2, 1}}},
  };
  for (const auto& c : cases) {
    auto m = product(c.p, c.u, c.cs);
    std::vector<std::vector<std::int64_t>> brute, fast;
    brute_factors(m, brute);
    for (const auto& fac : composition_factors(m, 7).factors) fast.push_back(detail::trace_key(fac));
    std::sort(brute.begin(), brute.end());
    std::sort(fast.begin(), fast.end());
    CHECK(brute == fast);
  }
}

TEST_CASE("dimension conservation, seed independence and basis invariance") {
  Rng rng(3);
  for (std::uint32_t p : {3u, 7u}) {
    SimpleRegistry<PrimeField> reg;
    for (int n = 2; n <= 4; ++n)
      for (const auto& alpha : compositions_of(n)) {
        std::vector<std::tuple<CharKind, int, int>> cs;
        int a = 0;
        for (std::size_t k = 0; k < alpha.parts().size(); ++k) {
          cs.push_back({k % 2 ? CharKind::L : CharKind::Z, alpha.parts()[k], a});
          a += 1;
        }
        auto m = product(p, 2, cs);
        std::vector<int> first;
        for (std::uint64_t seed : {1u, 2u, 3u}) {
          auto s = composition_factors(m, seed);
          CHECK(s.total_dim() == m.dim());
          auto got = ids(s, reg);
          if (first.empty())
            first = got;
          else
            CHECK(got == first);
        }
        if (m.dim() <= 12) {
          auto [q, qinv] = random_invertible(m.field(), m.dim(), rng);
          CHECK(ids(composition_factors(conjugate(m, q, qinv), 5), reg) == first);
        }
      }
  }
}

TEST_CASE("registry") {
  auto A = alg(7, 3, 2);
  SimpleRegistry<PrimeField> reg;
  auto z = make_character(A, CharKind::Z, 0), l = make_character(A, CharKind::L, 0);
  int a = reg.add(z);
  CHECK(reg.add(z) == a);
  CHECK(reg.add(l) != a);
  CHECK(reg.size() == 2);
  auto m = product(7, 3, {{CharKind::Z, 1, 0}, {CharKind::Z, 1, 1}});
  CHECK_THROWS_AS(reg.add(m), ModuleError);
  // a conjugated simple registers to the same id
  auto big = product(7, 2, {{CharKind::Z, 1, 0}, {CharKind::Z, 1, 0}, {CharKind::Z, 1, 3}});
  Rng rng(2);
  for (const auto& fac : composition_factors(big).factors) {
    int id = reg.add(fac);
    auto [q, qinv] = random_invertible(fac.field(), fac.dim(), rng);
    CHECK(reg.add(conjugate(fac, q, qinv)) == id);
  }
  // representatives stay valid while more simples are registered
  const Mod& first = reg.representative(a);
  for (int shift = 1; shift < 40; ++shift) reg.add(make_character(A, CharKind::Z, shift));
  CHECK(first == z);
}

TEST_CASE("non-split simples are detected and split over an extension") {
  // X1 acting by a companion matrix of x^2 + 1, irreducible over F3
  PrimeField f3(3);
  auto A = Algebra<PrimeField>::get(f3, 1, 2, Flavor::affine);
  auto x = Matrix<PrimeField>::from_rows(f3, {{0, 1}, {2, 0}}, 2);
  Mod m(A, Composition::whole(1), 2, {}, {x});
  CHECK_THROWS_AS(composition_factors(m), NonSplitError);
  ExtField f9(3, 2);
  auto B = Algebra<ExtField>::get(f9, 1, f9.from_int(2), Flavor::affine);
  auto xe = Matrix<ExtField>::from_rows(
      f9, {{f9.zero(), f9.one()}, {f9.from_int(2), f9.zero()}}, 2);
  Module<ExtField> me(B, Composition::whole(1), 2, {}, {xe});
  auto s = composition_factors(me);
  REQUIRE(s.factors.size() == 2);
  CHECK(s.factors[0].dim() == 1);
}

TEST_CASE("rational modules") {
  RationalField q;
  auto A1 = Algebra<RationalField>::get(q, 1, mpq_class(2), Flavor::affine);
  auto m = outer_product(std::vector<Module<RationalField>>{make_character(A1, CharKind::Z, 0),
                                                             make_character(A1, CharKind::Z, 1)});
  auto s = composition_factors(m);
  CHECK(s.factors.size() == 2);
  auto m2 = outer_product(std::vector<Module<RationalField>>{make_character(A1, CharKind::Z, 0),
                                                              make_character(A1, CharKind::Z, 3)});
  CHECK(composition_factors(m2).factors.size() == 1);
}

TEST_CASE("series JSON") {
  auto m = product(5, 2, {{CharKind::Z, 1, 0}, {CharKind::Z, 1, 1}});
  SimpleRegistry<PrimeField> reg;
  auto j = series_json(composition_factors(m), reg);
  REQUIRE(j.size() == 2);
  CHECK(j[0]["dim"] == 1);
  CHECK(j[0]["multiplicity"] == 1);
}
