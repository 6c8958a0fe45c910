#include "hecke/field.hpp"

#include <charconv>
#include <vector>

namespace hecke {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int64(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("not an integer: '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

namespace {

mpz_class parse_mpz(std::string_view s) {
  s = detail::trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) throw ParseError("empty integer");
  std::size_t start = s.front() == '-' ? 1 : 0;
  if (start == s.size()) throw ParseError("not an integer: '" + std::string(s) + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw ParseError("not an integer: '" + std::string(s) + "'");
  return mpz_class(std::string(s));
}

}  // namespace

// ---------------------------------------------------------------- PrimeField

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw DomainError("characteristic must be a prime below 2^31, got " +
                      std::to_string(p));
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw DomainError("division by zero in " + name());
  std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p_;
  return static_cast<Elem>(t);
}

PrimeField::Elem PrimeField::pow(Elem a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

PrimeField::Elem PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

PrimeField::Elem PrimeField::from_mpz(const mpz_class& v) const {
  mpz_class r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r.get_ui());
}

// ------------------------------------------------------------------ ExtField

ExtField::ExtField(std::uint32_t p, int k) : base_(p), k_(k) {
  if (k != 2 && k != 3)
    throw DomainError("extension degree must be 2 or 3");
  size_ = 1;
  for (int i = 0; i < k; ++i) size_ *= p;
  if (size_ > (std::uint64_t(1) << 40))
    throw DomainError("extension field too large");
  // For k <= 3 a polynomial is irreducible iff it has no root.
  const std::uint64_t count = size_;
  for (std::uint64_t code = 0; code < count; ++code) {
    Elem m{};
    std::uint64_t c = code;
    for (int i = 0; i < k; ++i) {
      m[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    bool has_root = false;
    for (std::uint32_t x = 0; x < p && !has_root; ++x) {
      // x^k + m_{k-1} x^{k-1} + ... + m_0
      std::uint32_t v = 1;
      for (int i = k - 1; i >= 0; --i) v = base_.add(base_.mul(v, x), m[i]);
      has_root = v == 0;
    }
    if (!has_root) {
      modulus_ = m;
      return;
    }
  }
  throw DomainError("no irreducible polynomial found");
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  return {base_.add(a[0], b[0]), base_.add(a[1], b[1]), base_.add(a[2], b[2])};
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  return {base_.sub(a[0], b[0]), base_.sub(a[1], b[1]), base_.sub(a[2], b[2])};
}

ExtField::Elem ExtField::neg(const Elem& a) const {
  return {base_.neg(a[0]), base_.neg(a[1]), base_.neg(a[2])};
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  std::array<std::uint32_t, 5> prod{};
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j)
      prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
  // z^k = -(m_0 + m_1 z + ...)
  for (int d = 2 * k_ - 2; d >= k_; --d) {
    std::uint32_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < k_; ++i)
      prod[d - k_ + i] = base_.sub(prod[d - k_ + i], base_.mul(c, modulus_[i]));
  }
  return {prod[0], prod[1], k_ > 2 ? prod[2] : 0u};
}

ExtField::Elem ExtField::pow(Elem a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

ExtField::Elem ExtField::inv(const Elem& a) const {
  if (is_zero(a)) throw DomainError("division by zero in " + name());
  return pow(a, static_cast<std::int64_t>(size_ - 2));
}

ExtField::Elem ExtField::pth_root(const Elem& a) const {
  // a^{q/p}
  return pow(a, static_cast<std::int64_t>(size_ / characteristic()));
}

ExtField::Elem ExtField::random(Rng& rng) const {
  Elem r{};
  for (int i = 0; i < k_; ++i) r[i] = base_.random(rng);
  return r;
}

std::string ExtField::format(const Elem& a) const {
  if (a[1] == 0 && a[2] == 0) return std::to_string(a[0]);
  std::string out = "(";
  bool first = true;
  auto emit = [&](std::uint32_t c, const char* mono) {
    if (c == 0) return;
    if (!first) out += "+";
    first = false;
    if (mono[0] == '\0') {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += mono;
    }
  };
  emit(a[0], "");
  emit(a[1], "z");
  emit(a[2], "z^2");
  return out + ")";
}

// ------------------------------------------------------------- RationalField

RationalField::Elem RationalField::inv(const Elem& a) const {
  if (sgn(a) == 0) throw DomainError("division by zero in Q");
  return 1 / a;
}

RationalField::Elem RationalField::pow(Elem a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem r = 1;
  while (e > 0) {
    if (e & 1) r *= a;
    a *= a;
    e >>= 1;
  }
  return r;
}

std::int64_t RationalField::lift(const Elem& a) const {
  // hash-like reduction, stable across runs
  mpz_class h = a.get_num() * 1000003 + a.get_den();
  mpz_class r = h % mpz_class("4611686018427387847");
  return r.get_si();
}

// ----------------------------------------------------------------- parsing

namespace {

template <ExactField F>
typename F::Elem parse_plain(const F& field, std::string_view s) {
  s = detail::trim(s);
  if (s.empty()) throw ParseError("empty scalar");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_mpz(s.substr(0, slash));
    mpz_class den = parse_mpz(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
    auto d = field.from_mpz(den);
    if (field.is_zero(d))
      throw DomainError("denominator vanishes in " + field.name());
    return field.mul(field.from_mpz(num), field.inv(d));
  }
  return field.from_mpz(parse_mpz(s));
}

ExtField::Elem parse_ext_poly(const ExtField& field, std::string_view s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  ExtField::Elem acc = field.zero();
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find('+', pos);
    std::string_view term = detail::trim(
        s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (term.empty()) throw ParseError("bad extension-field scalar");
    int power = 0;
    ExtField::Elem coef = field.one();
    if (auto z = term.find('z'); z != std::string_view::npos) {
      std::string_view rest = term.substr(z + 1);
      power = 1;
      if (!rest.empty()) {
        if (rest.front() != '^') throw ParseError("bad power of z");
        power = static_cast<int>(detail::parse_int64(rest.substr(1)));
      }
      std::string_view head = detail::trim(term.substr(0, z));
      if (!head.empty()) {
        if (head.back() != '*') throw ParseError("expected '*' before z");
        head.remove_suffix(1);
        coef = parse_plain(field, head);
      }
    } else {
      coef = parse_plain(field, term);
    }
    acc = field.add(acc, field.mul(coef, field.pow(field.generator(), power)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return acc;
}

}  // namespace

template <ExactField F>
typename F::Elem parse_scalar(const F& field, std::string_view text) {
  std::string_view s = detail::trim(text);
  if (auto m = s.find(" mod "); m != std::string_view::npos) {
    std::int64_t ell = detail::parse_int64(s.substr(m + 5));
    if (ell <= 0 || static_cast<std::uint64_t>(ell) != field.characteristic())
      throw ParseError("'" + std::string(s) + "' does not live in " + field.name());
    return field.from_mpz(parse_mpz(s.substr(0, m)));
  }
  if constexpr (std::is_same_v<F, ExtField>) {
    if (s.find('z') != std::string_view::npos) return parse_ext_poly(field, s);
  }
  return parse_plain(field, s);
}

template PrimeField::Elem parse_scalar(const PrimeField&, std::string_view);
template ExtField::Elem parse_scalar(const ExtField&, std::string_view);
template RationalField::Elem parse_scalar(const RationalField&, std::string_view);

}  // namespace hecke
