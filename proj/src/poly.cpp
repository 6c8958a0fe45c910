#include "hecke/poly.hpp"

namespace hecke {

namespace {

constexpr unsigned long kTrialLimit = 1000000;
constexpr std::size_t kMaxDivisors = 20000;

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, int>> primes;
  for (unsigned long d = 2; d <= kTrialLimit && mpz_class(d) * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    primes.emplace_back(mpz_class(d), e);
  }
  // any leftover cofactor is treated as prime; a missed composite only costs
  // candidate roots, every candidate is verified
  if (n > 1) primes.emplace_back(n, 1);
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : primes) {
    const std::size_t base = out.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base && out.size() < kMaxDivisors; ++i)
        out.push_back(out[i] * pk);
    }
  }
  return out;
}

}  // namespace

std::vector<mpq_class> rational_roots(const Poly<RationalField>& p) {
  RationalField q;
  std::vector<mpq_class> roots;
  if (p.degree() <= 0) return roots;
  // integer coefficients
  mpz_class l = 1;
  for (const auto& c : p.c) l = lcm(l, c.get_den());
  std::vector<mpz_class> ic;
  for (const auto& c : p.c) ic.push_back(c.get_num() * (l / c.get_den()));
  std::size_t low = 0;
  while (ic[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  if (low + 1 == ic.size()) return roots;
  auto num_divs = divisors(ic[low]);
  auto den_divs = divisors(ic.back());
  Poly<RationalField> rp = p;
  for (const auto& a : num_divs)
    for (const auto& b : den_divs)
      for (int sign : {1, -1}) {
        mpq_class cand(a * sign, b);
        cand.canonicalize();
        if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
        if (poly::eval(q, rp, cand) == 0) roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace hecke
