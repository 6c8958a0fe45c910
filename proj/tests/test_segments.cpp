#include <set>

#include "doctest.h"
#include "hecke/segments.hpp"

using namespace hecke;

namespace {

using Raw = std::vector<std::pair<int, int>>;  // (start, length), sorted

// every multiset of segments of total weight n with starts in [0, range)
std::set<Raw> brute_all(int n, int range) {
  std::set<Raw> out;
  Raw cur;
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      Raw s = cur;
      std::sort(s.begin(), s.end());
      out.insert(s);
      return;
    }
    for (int a = 0; a < range; ++a)
      for (int len = 1; len <= left; ++len) {
        cur.push_back({a, len});
        self(self, left - len);
        cur.pop_back();
      }
  };
  rec(rec, n);
  return out;
}

bool brute_aperiodic(const Raw& m, int e) {
  if (e == 0) return true;
  int maxlen = 0;
  for (auto [a, l] : m) maxlen = std::max(maxlen, l);
  for (int len = 1; len <= maxlen; ++len) {
    bool some_missing = false;
    for (int k = 0; k < e; ++k) {
      bool present = false;
      for (auto [a, l] : m)
        if (l == len && ((a % e) + e) % e == k) present = true;
      if (!present) some_missing = true;
    }
    if (!some_missing) return false;
  }
  return true;
}

bool brute_preceq(const Raw& mu, const Raw& nu) {
  std::vector<int> a, b;
  for (auto [s, l] : mu) a.push_back(l);
  for (auto [s, l] : nu) b.push_back(l);
  std::sort(a.rbegin(), a.rend());
  std::sort(b.rbegin(), b.rend());
  std::size_t len = std::max(a.size(), b.size());
  a.resize(len, 0);
  b.resize(len, 0);
  int sa = 0, sb = 0;
  for (std::size_t k = 0; k < len; ++k) {
    sa += a[k];
    sb += b[k];
    if (sa > sb) return false;
  }
  return true;
}

Multisegment to_ms(const Raw& r, int e) {
  std::vector<Segment> s;
  for (auto [a, l] : r) s.push_back({a, l});
  return Multisegment(e, s);
}

}  // namespace

TEST_CASE("aperiodicity examples") {
  CHECK(Multisegment::parse("(0,1)+(1,1)+(2,1)", 0).is_aperiodic());
  CHECK_FALSE(Multisegment::parse("(0,1)+(1,1)+(2,1)", 3).is_aperiodic());
  CHECK(Multisegment::parse("(0,3)", 3).is_aperiodic());
}

TEST_CASE("preceq examples") {
  auto a = Multisegment::parse("(0,1)+(1,1)", 0), b = Multisegment::parse("(0,2)", 0);
  CHECK(preceq(a, a));
  CHECK(preceq(a, b));
  CHECK_FALSE(preceq(b, a));
  CHECK_THROWS_AS(preceq(a, Multisegment::parse("(0,3)", 0)), std::invalid_argument);
}

TEST_CASE("text and JSON") {
  auto m = Multisegment::parse("(1,1) + (0,2)", 3);
  CHECK(m.to_string() == "(0,2)+(1,1)");
  CHECK(Multisegment::parse(m.to_string(), 3) == m);
  CHECK(Multisegment::from_json(m.to_json()) == m);
  CHECK(Multisegment::parse("(4,1)", 3).segments()[0].start == 1);
  CHECK(Multisegment::parse("{}", 2).weight() == 0);
  CHECK_THROWS_AS(Multisegment::parse("(0,0)", 2), ParseError);
  CHECK_THROWS_AS(Multisegment::parse("(0,1)(1,1)", 2), ParseError);
  CHECK(m.support() == Support{{0, 1}, {1, 2}});
}

TEST_CASE("enumeration examples") {
  auto z = enumerate_multisegments(0, 3, std::nullopt);
  REQUIRE(z.size() == 1);
  CHECK(z[0].weight() == 0);
  auto two = enumerate_multisegments(2, 0, Support{{0, 1}, {1, 1}});
  REQUIRE(two.size() == 2);
  CHECK(two[0].to_string() == "(0,1)+(1,1)");
  CHECK(two[1].to_string() == "(0,2)");
  auto ap = enumerate_multisegments(3, 3, consecutive_support(3, 3), true);
  CHECK(ap.size() == 6);
  for (const auto& m : ap) {
    auto l = m.lengths();
    CHECK((l == std::vector<int>{3} || l == std::vector<int>{2, 1}));
    if (l.size() == 2) CHECK((m.segments()[0].start + 2) % 3 == m.segments()[1].start);
  }
  CHECK_THROWS_AS(enumerate_multisegments(2, 0, std::nullopt), std::invalid_argument);
  CHECK(enumerate_multisegments(2, 3, Support{{0, 1}}).empty());
}

TEST_CASE("agreement with direct scans up to weight 5") {
  for (int e : {0, 2, 3}) {
    const int range = e == 0 ? 4 : e;
    for (int n = 1; n <= 5; ++n) {
      auto all = brute_all(n, range);
      std::vector<Multisegment> ms;
      for (const auto& r : all) {
        auto m = to_ms(r, e);
        CHECK(m.is_aperiodic() == brute_aperiodic(r, e));
        CHECK(m.shifted(1).is_aperiodic() == m.is_aperiodic());
        ms.push_back(m);
      }
      for (std::size_t i = 0; i < ms.size(); i += 3)
        for (std::size_t j = 0; j < ms.size(); j += 2) {
          auto ri = all.begin(), rj = all.begin();
          std::advance(ri, i);
          std::advance(rj, j);
          CHECK(preceq(ms[i], ms[j]) == brute_preceq(*ri, *rj));
        }
      if (e > 0) {
        auto en = enumerate_multisegments(n, e, std::nullopt);
        CHECK(en.size() == all.size());
        auto ap = enumerate_multisegments(n, e, std::nullopt, true);
        for (const auto& m : ap) CHECK(std::binary_search(en.begin(), en.end(), m));
        std::size_t count = 0;
        for (const auto& r : all) count += brute_aperiodic(r, e);
        CHECK(ap.size() == count);
      }
    }
  }
}

TEST_CASE("preceq is a partial order on length profiles") {
  auto ms = enumerate_multisegments(5, 3, std::nullopt);
  for (std::size_t i = 0; i < ms.size(); i += 4)
    for (std::size_t j = 0; j < ms.size(); j += 3) {
      if (preceq(ms[i], ms[j]) && preceq(ms[j], ms[i])) CHECK(ms[i].lengths() == ms[j].lengths());
      for (std::size_t k = 0; k < ms.size(); k += 7)
        if (preceq(ms[i], ms[j]) && preceq(ms[j], ms[k])) CHECK(preceq(ms[i], ms[k]));
      // sorted order extends preceq
      if (preceq(ms[i], ms[j]) && ms[i].lengths() != ms[j].lengths()) CHECK(ms[i] < ms[j]);
    }
}
