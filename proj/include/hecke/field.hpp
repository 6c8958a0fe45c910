#pragma once

// Exact coefficient fields: prime fields F_p, small extensions F_{p^k}
// (k = 2, 3) and the rationals. Every field type models `ExactField`; the
// rest of the library is templated on it.

#include <gmpxx.h>

#include <array>
#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hecke/errors.hpp"

namespace hecke {

using Rng = std::mt19937_64;

bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  using Elem = std::uint32_t;
  static constexpr bool is_finite = true;
  static constexpr bool is_prime_field = true;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  std::uint64_t size() const { return p_; }
  int degree() const { return 1; }
  std::string name() const { return "F" + std::to_string(p_); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }

  Elem add(Elem a, Elem b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(std::uint64_t(a) * b % p_);
  }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::int64_t e) const;

  Elem from_int(std::int64_t v) const;
  Elem from_mpz(const mpz_class& v) const;
  std::string format(Elem a) const { return std::to_string(a); }
  Elem random(Rng& rng) const {
    return std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng);
  }
  /// Frobenius p-th root; identity on a prime field.
  Elem pth_root(Elem a) const { return a; }
  /// Integer lift in [0, p), used for fingerprints.
  std::int64_t lift(Elem a) const { return a; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p_ == b.p_;
  }

 private:
  std::uint32_t p_;
};

/// F_{p^k} for k in {2, 3}, as F_p[z] / (m(z)) with m the lexicographically
/// smallest monic irreducible polynomial of degree k.
class ExtField {
 public:
  using Elem = std::array<std::uint32_t, 3>;
  static constexpr bool is_finite = true;
  static constexpr bool is_prime_field = false;

  ExtField(std::uint32_t p, int k);

  std::uint32_t characteristic() const { return base_.characteristic(); }
  std::uint64_t size() const { return size_; }
  int degree() const { return k_; }
  std::string name() const {
    return "F" + std::to_string(characteristic()) + "^" + std::to_string(k_);
  }
  const PrimeField& base() const { return base_; }
  /// Coefficients m_0..m_{k-1} of the defining polynomial (m is monic).
  const Elem& modulus() const { return modulus_; }

  Elem zero() const { return {0, 0, 0}; }
  Elem one() const { return {1, 0, 0}; }
  Elem generator() const { return {0, 1, 0}; }
  bool is_zero(const Elem& a) const { return a[0] == 0 && a[1] == 0 && a[2] == 0; }
  bool is_one(const Elem& a) const { return a[0] == 1 && a[1] == 0 && a[2] == 0; }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem pow(Elem a, std::int64_t e) const;

  Elem from_int(std::int64_t v) const { return {base_.from_int(v), 0, 0}; }
  Elem from_mpz(const mpz_class& v) const { return {base_.from_mpz(v), 0, 0}; }
  Elem embed(PrimeField::Elem a) const { return {a, 0, 0}; }
  std::string format(const Elem& a) const;
  Elem random(Rng& rng) const;
  Elem pth_root(const Elem& a) const;
  std::int64_t lift(const Elem& a) const {
    return (std::int64_t(a[2]) * characteristic() + a[1]) * characteristic() +
           a[0];
  }

  friend bool operator==(const ExtField& a, const ExtField& b) {
    return a.base_ == b.base_ && a.k_ == b.k_;
  }

 private:
  PrimeField base_;
  int k_;
  std::uint64_t size_;
  Elem modulus_{};
};

class RationalField {
 public:
  using Elem = mpq_class;
  static constexpr bool is_finite = false;
  static constexpr bool is_prime_field = false;

  std::uint32_t characteristic() const { return 0; }
  int degree() const { return 1; }
  std::string name() const { return "Q"; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const;
  Elem pow(Elem a, std::int64_t e) const;

  Elem from_int(std::int64_t v) const { return Elem(mpz_class(static_cast<long>(v))); }
  Elem from_mpz(const mpz_class& v) const { return Elem(v); }
  std::string format(const Elem& a) const { return a.get_str(); }
  /// Small random integers; rationals have no uniform distribution.
  Elem random(Rng& rng) const {
    return from_int(std::uniform_int_distribution<int>(-9, 9)(rng));
  }
  std::int64_t lift(const Elem& a) const;

  friend bool operator==(const RationalField&, const RationalField&) {
    return true;
  }
};

template <class F>
concept ExactField = requires(const F& f, typename F::Elem a, Rng& rng) {
  { f.zero() } -> std::convertible_to<typename F::Elem>;
  { f.one() } -> std::convertible_to<typename F::Elem>;
  { f.add(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.sub(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.neg(a) } -> std::convertible_to<typename F::Elem>;
  { f.inv(a) } -> std::convertible_to<typename F::Elem>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::Elem>;
  { f.format(a) } -> std::convertible_to<std::string>;
  { f.random(rng) } -> std::convertible_to<typename F::Elem>;
  { f.characteristic() } -> std::convertible_to<std::uint32_t>;
  { f.name() } -> std::convertible_to<std::string>;
};

/// Parses a scalar: a decimal integer, a fraction "a/b", or "x mod l"
/// (l must be the characteristic). In F_{p^k} the generator is written "z"
/// inside polynomial syntax such as "(1+2*z)".
template <ExactField F>
typename F::Elem parse_scalar(const F& field, std::string_view text);

/// Smallest k >= 2 with 1 + u + ... + u^{k-1} = 0, or 0 if there is none.
/// Over the rationals the only root of unity that can occur is u = -1.
template <ExactField F>
std::uint64_t e_invariant(const F& field, const typename F::Elem& u) {
  if (field.is_zero(u)) throw DomainError("parameter u must be nonzero");
  if constexpr (F::is_finite) {
    auto sum = field.add(field.one(), u);
    auto power = u;
    // u^k = 1 for k = |F^x|, and the sum of p ones vanishes, so the loop ends
    // by k = max(p, q - 1).
    const std::uint64_t bound = field.size() + 1;
    for (std::uint64_t k = 2; k <= bound; ++k) {
      if (field.is_zero(sum)) return k;
      power = field.mul(power, u);
      sum = field.add(sum, power);
    }
    return 0;
  } else {
    // |u| != 1 gives a strictly nonzero geometric sum; u = 1 gives k.
    if (u == -1) return 2;
    return 0;
  }
}

namespace detail {
std::int64_t parse_int64(std::string_view s);
std::string_view trim(std::string_view s);
}  // namespace detail

}  // namespace hecke
