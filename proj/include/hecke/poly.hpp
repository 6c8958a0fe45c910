#pragma once

// Univariate polynomials over an exact field, characteristic polynomials,
// and the factorization needed by the MeatAxe.

#include <algorithm>
#include <vector>

#include "hecke/linalg.hpp"

namespace hecke {

/// Coefficients low to high; no trailing zeros (the zero polynomial is empty).
template <ExactField F>
struct Poly {
  std::vector<typename F::Elem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const typename F::Elem& lead() const { return c.back(); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

namespace poly {

template <ExactField F>
void trim(const F& f, Poly<F>& p) {
  while (!p.c.empty() && f.is_zero(p.c.back())) p.c.pop_back();
}

template <ExactField F>
Poly<F> constant(const F& f, const typename F::Elem& a) {
  Poly<F> p;
  if (!f.is_zero(a)) p.c.push_back(a);
  return p;
}

template <ExactField F>
Poly<F> x_power(const F& f, std::size_t k) {
  Poly<F> p;
  p.c.assign(k + 1, f.zero());
  p.c[k] = f.one();
  return p;
}

/// x - a
template <ExactField F>
Poly<F> linear(const F& f, const typename F::Elem& a) {
  return Poly<F>{{f.neg(a), f.one()}};
}

template <ExactField F>
Poly<F> add(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r;
  r.c.assign(std::max(a.c.size(), b.c.size()), f.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = f.add(r.c[i], b.c[i]);
  trim(f, r);
  return r;
}

template <ExactField F>
Poly<F> sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r;
  r.c.assign(std::max(a.c.size(), b.c.size()), f.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = f.sub(r.c[i], b.c[i]);
  trim(f, r);
  return r;
}

template <ExactField F>
Poly<F> mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly<F> r;
  r.c.assign(a.c.size() + b.c.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (f.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = f.add(r.c[i + j], f.mul(a.c[i], b.c[j]));
  }
  trim(f, r);
  return r;
}

/// Quotient and remainder; b must be nonzero.
template <ExactField F>
std::pair<Poly<F>, Poly<F>> divmod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  Poly<F> r = a;
  if (a.degree() < b.degree()) return {Poly<F>{}, r};
  Poly<F> q;
  q.c.assign(a.c.size() - b.c.size() + 1, f.zero());
  const auto inv_lead = f.inv(b.lead());
  for (int d = r.degree(); d >= b.degree(); --d) {
    auto coef = f.mul(r.c[d], inv_lead);
    if (f.is_zero(coef)) continue;
    const int shift = d - b.degree();
    q.c[shift] = coef;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[shift + j] = f.sub(r.c[shift + j], f.mul(coef, b.c[j]));
  }
  trim(f, r);
  trim(f, q);
  return {q, r};
}

template <ExactField F>
Poly<F> mod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  return divmod(f, a, b).second;
}

template <ExactField F>
Poly<F> monic(const F& f, Poly<F> p) {
  if (p.is_zero()) return p;
  auto inv = f.inv(p.lead());
  for (auto& a : p.c) a = f.mul(a, inv);
  return p;
}

template <ExactField F>
Poly<F> gcd(const F& f, Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

template <ExactField F>
Poly<F> derivative(const F& f, const Poly<F>& p) {
  Poly<F> d;
  if (p.c.size() <= 1) return d;
  d.c.resize(p.c.size() - 1);
  for (std::size_t i = 1; i < p.c.size(); ++i)
    d.c[i - 1] = f.mul(f.from_int(static_cast<std::int64_t>(i)), p.c[i]);
  trim(f, d);
  return d;
}

template <ExactField F>
typename F::Elem eval(const F& f, const Poly<F>& p, const typename F::Elem& x) {
  auto v = f.zero();
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) v = f.add(f.mul(v, x), *it);
  return v;
}

/// base^e mod m, e given as a little-endian sequence of exponent bits source.
template <ExactField F>
Poly<F> powmod(const F& f, Poly<F> base, std::uint64_t e, const Poly<F>& m) {
  Poly<F> r = mod(f, constant(f, f.one()), m);
  base = mod(f, base, m);
  while (e > 0) {
    if (e & 1) r = mod(f, mul(f, r, base), m);
    e >>= 1;
    if (e) base = mod(f, mul(f, base, base), m);
  }
  return r;
}

/// Evaluates p at a square matrix (Horner).
template <ExactField F>
Matrix<F> eval_matrix(const Poly<F>& p, const Matrix<F>& a) {
  const F& f = a.field();
  Matrix<F> r(f, a.rows(), a.cols());
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) r = plus_scalar(r * a, *it);
  return r;
}

}  // namespace poly

/// Characteristic polynomial of a square matrix (monic), computed by
/// spinning cyclic subspaces and multiplying the minimal polynomials of the
/// successive quotient actions.
template <ExactField F>
Poly<F> charpoly(const Matrix<F>& a) {
  const F& f = a.field();
  const std::size_t n = a.rows();
  SemiEchelon<F> span(f, n);
  Poly<F> result = poly::constant(f, f.one());
  std::vector<char> is_pivot(n, 0);
  while (!span.full()) {
    std::size_t seed = 0;
    while (is_pivot[seed]) ++seed;
    // new cycle: w_0 = e_seed, w_{k+1} = w_k * A
    std::vector<Vec<F>> new_rows;       // reduced, normalized
    std::vector<Vec<F>> new_combs;      // new_rows[i] = sum comb[j] w_j mod old span
    std::vector<std::size_t> new_piv;
    Vec<F> w(n, f.zero());
    w[seed] = f.one();
    for (std::size_t k = 0;; ++k) {
      Vec<F> x = w;
      span.reduce(x);
      Vec<F> comb(k + 1, f.zero());
      comb[k] = f.one();
      for (std::size_t i = 0; i < new_rows.size(); ++i) {
        auto c = x[new_piv[i]];
        if (f.is_zero(c)) continue;
        axpy(f, std::span(x), std::span<const typename F::Elem>(new_rows[i]), f.neg(c));
        for (std::size_t j = 0; j < new_combs[i].size(); ++j)
          comb[j] = f.sub(comb[j], f.mul(c, new_combs[i][j]));
      }
      auto it = std::find_if(x.begin(), x.end(),
                             [&](const typename F::Elem& v) { return !f.is_zero(v); });
      if (it == x.end()) {
        Poly<F> mp{comb};
        poly::trim(f, mp);
        result = poly::mul(f, result, mp);
        break;
      }
      std::size_t piv = static_cast<std::size_t>(it - x.begin());
      auto inv = f.inv(x[piv]);
      scale(f, std::span(x), inv);
      for (auto& c : comb) c = f.mul(c, inv);
      new_rows.push_back(std::move(x));
      new_combs.push_back(std::move(comb));
      new_piv.push_back(piv);
      w = vec_mat(std::span<const typename F::Elem>(w), a);
    }
    for (auto& r : new_rows) {
      // reduced against the old span and earlier rows of this cycle, so the
      // semi-echelon invariant holds
      std::size_t piv = 0;
      while (f.is_zero(r[piv])) ++piv;
      is_pivot[piv] = 1;
      span.insert_reduced(std::move(r));
    }
  }
  return result;
}

/// Distinct monic irreducible factors over a finite field, of degree at most
/// `max_degree`, in increasing degree. Multiplicities are not reported.
template <ExactField F>
  requires(F::is_finite)
std::vector<Poly<F>> small_irreducible_factors(const F& f, const Poly<F>& p,
                                               int max_degree, Rng& rng);

/// Distinct rational roots of a polynomial over Q.
std::vector<mpq_class> rational_roots(const Poly<RationalField>& p);

// ----------------------------------------------------------------- details

namespace poly::detail {

/// p-th root of a polynomial whose derivative vanishes.
template <ExactField F>
Poly<F> pth_root(const F& f, const Poly<F>& p) {
  const std::uint32_t ch = f.characteristic();
  Poly<F> r;
  r.c.assign(p.c.size() / ch + 1, f.zero());
  for (std::size_t i = 0; i < p.c.size(); i += ch) r.c[i / ch] = f.pth_root(p.c[i]);
  trim(f, r);
  return r;
}

/// Squarefree polynomial whose roots (over the algebraic closure) are
/// exactly those of p.
template <ExactField F>
Poly<F> radical(const F& f, const Poly<F>& p) {
  if (p.degree() <= 0) return constant(f, f.one());
  Poly<F> d = derivative(f, p);
  if (d.is_zero()) return radical(f, pth_root(f, p));
  Poly<F> g = gcd(f, p, d);
  Poly<F> sq = monic(f, divmod(f, p, g).first);  // factors with mult != 0 mod p
  // remove the factors already in sq from g; what is left is a p-th power
  Poly<F> rest = g;
  for (;;) {
    Poly<F> common = gcd(f, rest, sq);
    if (common.degree() <= 0) break;
    rest = divmod(f, rest, common).first;
  }
  if (rest.degree() <= 0) return sq;
  return monic(f, mul(f, sq, radical(f, rest)));
}

/// x^{q} mod m by repeated p-th powering of the coefficient exponent.
template <ExactField F>
Poly<F> frobenius(const F& f, const Poly<F>& a, const Poly<F>& m) {
  return powmod(f, a, f.size(), m);
}

/// Splits a squarefree product of irreducibles of equal degree d.
template <ExactField F>
void equal_degree_split(const F& f, const Poly<F>& g, int d, Rng& rng,
                        std::vector<Poly<F>>& out) {
  if (g.degree() == d) {
    out.push_back(monic(f, g));
    return;
  }
  const bool even = f.characteristic() == 2;
  for (;;) {
    Poly<F> a;
    a.c.resize(static_cast<std::size_t>(g.degree()));
    for (auto& c : a.c) c = f.random(rng);
    trim(f, a);
    if (a.degree() <= 0) continue;
    Poly<F> b;
    if (even) {
      // absolute trace: a + a^2 + a^4 + ... + a^{2^{(kd)-1}}, q = 2^k
      const int steps = f.degree() * d;
      Poly<F> t = a, cur = a;
      for (int i = 1; i < steps; ++i) {
        cur = mod(f, mul(f, cur, cur), g);
        t = add(f, t, cur);
      }
      b = t;
    } else {
      // a^{(q^d - 1)/2} = (a * a^q * ... * a^{q^{d-1}})^{(q-1)/2}
      Poly<F> norm = a, cur = a;
      for (int i = 1; i < d; ++i) {
        cur = frobenius(f, cur, g);
        norm = mod(f, mul(f, norm, cur), g);
      }
      b = sub(f, powmod(f, norm, (f.size() - 1) / 2, g), constant(f, f.one()));
    }
    Poly<F> h = gcd(f, g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(f, h, d, rng, out);
      equal_degree_split(f, monic(f, divmod(f, g, h).first), d, rng, out);
      return;
    }
  }
}

}  // namespace poly::detail

template <ExactField F>
  requires(F::is_finite)
std::vector<Poly<F>> small_irreducible_factors(const F& f, const Poly<F>& p,
                                               int max_degree, Rng& rng) {
  std::vector<Poly<F>> out;
  Poly<F> g = poly::detail::radical(f, poly::monic(f, p));
  const Poly<F> x = poly::x_power(f, 1);
  Poly<F> h = poly::mod(f, x, g.degree() > 0 ? g : x);
  for (int d = 1; d <= max_degree && g.degree() >= d; ++d) {
    if (g.degree() < 2 * d) {
      // what is left is irreducible
      if (g.degree() <= max_degree) out.push_back(poly::monic(f, g));
      break;
    }
    h = poly::detail::frobenius(f, h, g);
    Poly<F> part = poly::gcd(f, g, poly::sub(f, h, x));
    if (part.degree() > 0) {
      poly::detail::equal_degree_split(f, part, d, rng, out);
      g = poly::monic(f, poly::divmod(f, g, part).first);
      h = poly::mod(f, h, g);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Poly<F>& a, const Poly<F>& b) { return a.degree() < b.degree(); });
  return out;
}

}  // namespace hecke
