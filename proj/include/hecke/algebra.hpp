#pragma once

// The finite Hecke algebra H(n,u) and the affine algebra H~(n,u) of type A.
//
// Generators S_1..S_{n-1} (and X_1..X_n, invertible, in the affine flavor)
// subject to
//   (S_i + 1)(S_i - u) = 0,  braid and far commutation for the S_i,
//   X_i X_j = X_j X_i,  X_j S_i = S_i X_j for j not in {i, i+1},
//   S_i X_i S_i = u X_{i+1}.
// Elements are stored in the normal form sum c * X^alpha T_w, X's on the left.

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "hecke/combinat.hpp"
#include "hecke/field.hpp"

namespace hecke {

enum class Flavor { finite, affine };

inline std::string_view flavor_name(Flavor f) {
  return f == Flavor::affine ? "affine" : "finite";
}

/// Operands belong to algebras with different (field, n, u, flavor).
class DescriptorMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Basis word X^x T_w. For the finite flavor x is all zeros.
struct Monomial {
  std::vector<int> x;
  Permutation w;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

template <ExactField F>
class Algebra;

template <ExactField F>
class HeckeElement {
 public:
  using Elem = typename F::Elem;
  using Terms = std::map<Monomial, Elem>;

  HeckeElement(std::shared_ptr<const Algebra<F>> alg, Terms terms)
      : alg_(std::move(alg)), terms_(std::move(terms)) {
    const F& f = alg_->field();
    std::erase_if(terms_, [&](const auto& kv) { return f.is_zero(kv.second); });
  }

  const Algebra<F>& algebra() const { return *alg_; }
  const std::shared_ptr<const Algebra<F>>& algebra_ptr() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Elem coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? alg_->field().zero() : it->second;
  }
  std::string to_string() const { return alg_->format(*this); }

  friend HeckeElement operator+(const HeckeElement& a, const HeckeElement& b) {
    a.alg_->check_same(*b.alg_);
    const F& f = a.alg_->field();
    Terms t = a.terms_;
    for (const auto& [m, c] : b.terms_) {
      auto [it, fresh] = t.try_emplace(m, c);
      if (!fresh) it->second = f.add(it->second, c);
    }
    return HeckeElement(a.alg_, std::move(t));
  }
  friend HeckeElement operator-(const HeckeElement& a) {
    const F& f = a.alg_->field();
    Terms t = a.terms_;
    for (auto& [m, c] : t) c = f.neg(c);
    return HeckeElement(a.alg_, std::move(t));
  }
  friend HeckeElement operator-(const HeckeElement& a, const HeckeElement& b) {
    return a + (-b);
  }
  friend HeckeElement operator*(const HeckeElement& a, const HeckeElement& b) {
    return a.alg_->multiply(a, b);
  }
  friend HeckeElement operator*(const Elem& c, const HeckeElement& a) {
    const F& f = a.alg_->field();
    Terms t = a.terms_;
    for (auto& [m, v] : t) v = f.mul(c, v);
    return HeckeElement(a.alg_, std::move(t));
  }
  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.alg_->same_descriptor(*b.alg_) && a.terms_ == b.terms_;
  }

 private:
  std::shared_ptr<const Algebra<F>> alg_;
  Terms terms_;
};

template <ExactField F>
class Algebra : public std::enable_shared_from_this<Algebra<F>> {
  struct Private {};

 public:
  using Elem = typename F::Elem;
  using Element = HeckeElement<F>;
  using Terms = typename Element::Terms;

  /// A term c * T_v X^gamma of the right normal form.
  struct RightTerm {
    Elem coef;
    Permutation v;
    std::vector<int> gamma;
  };

  Algebra(Private, F field, int n, Elem u, Flavor flavor)
      : field_(std::move(field)), n_(n), u_(std::move(u)), flavor_(flavor) {}

  /// Throws std::invalid_argument for n < 1 and DomainError for u = 0.
  static std::shared_ptr<const Algebra> create(F field, int n, Elem u, Flavor flavor) {
    if (n < 1) throw std::invalid_argument("algebra degree n must be >= 1");
    if (field.is_zero(u)) throw DomainError("parameter u must be nonzero");
    return std::make_shared<const Algebra>(Private{}, std::move(field), n, std::move(u), flavor);
  }

  /// Shared instance per (field, n, u, flavor), so caches are reused.
  static std::shared_ptr<const Algebra> get(const F& field, int n, const Elem& u, Flavor flavor) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<const Algebra>> registry;
    const std::string key = field.name() + "|" + field.format(u) + "|" +
                            std::string(flavor_name(flavor)) + "|" + std::to_string(n);
    std::lock_guard lock(mutex);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    auto alg = create(field, n, u, flavor);
    registry.emplace(key, alg);
    return alg;
  }
  std::shared_ptr<const Algebra> with_degree(int n) const { return get(field_, n, u_, flavor_); }

  const F& field() const { return field_; }
  int n() const { return n_; }
  const Elem& u() const { return u_; }
  Flavor flavor() const { return flavor_; }
  bool affine() const { return flavor_ == Flavor::affine; }

  bool same_descriptor(const Algebra& o) const {
    return this == &o || (field_ == o.field_ && n_ == o.n_ && u_ == o.u_ && flavor_ == o.flavor_);
  }
  void check_same(const Algebra& o) const {
    if (!same_descriptor(o))
      throw DescriptorMismatch("operands over different algebras: " + describe() + " vs " +
                               o.describe());
  }
  std::string describe() const {
    return std::string(affine() ? "affine" : "finite") + " H(n=" + std::to_string(n_) +
           ", u=" + field_.format(u_) + ", " + field_.name() + ")";
  }

  // ---------------------------------------------------------- constructors

  Element zero() const { return Element(self(), {}); }
  Element scalar(const Elem& c) const {
    return Element(self(), Terms{{identity_monomial(), c}});
  }
  Element one() const { return scalar(field_.one()); }
  Element monomial(std::vector<int> x, Permutation w, const Elem& c) const {
    if (static_cast<int>(x.size()) != n_ || w.size() != n_)
      throw std::invalid_argument("monomial has the wrong degree");
    if (!affine())
      for (int e : x)
        if (e != 0) throw std::invalid_argument("the finite algebra has no X generators");
    return Element(self(), Terms{{Monomial{std::move(x), std::move(w)}, c}});
  }
  Element T(const Permutation& w) const {
    return monomial(std::vector<int>(n_, 0), w, field_.one());
  }
  Element S(int i) const {
    if (i < 1 || i >= n_) throw std::invalid_argument("S_i needs 1 <= i < n");
    return T(Permutation::simple(n_, i));
  }
  /// X_j^k (affine flavor only).
  Element X(int j, int k = 1) const {
    if (!affine()) throw std::invalid_argument("the finite algebra has no X generators");
    if (j < 1 || j > n_) throw std::invalid_argument("X_j needs 1 <= j <= n");
    std::vector<int> x(n_, 0);
    x[j - 1] = k;
    return monomial(std::move(x), Permutation::identity(n_), field_.one());
  }

  // ---------------------------------------------------------- arithmetic

  Element multiply(const Element& a, const Element& b) const {
    check_same(a.algebra());
    check_same(b.algebra());
    Terms out;
    for (const auto& [mb, cb] : b.terms()) {
      // group the left factor by w so each T_w * X^beta is formed once
      std::map<Permutation, std::vector<std::pair<const std::vector<int>*, Elem>>> by_w;
      for (const auto& [ma, ca] : a.terms()) by_w[ma.w].push_back({&ma.x, field_.mul(ca, cb)});
      for (const auto& [w, lefts] : by_w) {
        Terms prod = t_times_x(w, mb.x);
        for (int i : reduced_word(mb.w)) prod = times_s(prod, i);
        for (const auto& [xa, c] : lefts)
          for (const auto& [m, v] : prod) {
            Monomial key{m.x, m.w};
            for (int j = 0; j < n_; ++j) key.x[j] += (*xa)[j];
            accumulate(out, std::move(key), field_.mul(c, v));
          }
      }
    }
    return Element(self(), std::move(out));
  }

  /// The involution S_i -> -S_{n-i} + u - 1, X_j -> X_{n+1-j}.
  Element tau(const Element& x) const {
    check_same(x.algebra());
    Terms out;
    for (const auto& [m, c] : x.terms()) {
      const Terms& tw = tau_of_t(m.w);
      for (const auto& [tm, tc] : tw) {
        Monomial key = tm;
        for (int j = 0; j < n_; ++j) key.x[j] += m.x[n_ - 1 - j];
        accumulate(out, std::move(key), field_.mul(c, tc));
      }
    }
    return Element(self(), std::move(out));
  }

  /// x = sum c * T_v X^gamma; terms sorted by (v, gamma).
  std::vector<RightTerm> right_normal_form(const Element& x) const {
    check_same(x.algebra());
    // the anti-involution fixing every generator sends X^a T_w to T_{w^-1} X^a
    std::map<std::pair<Permutation, std::vector<int>>, Elem> acc;
    for (const auto& [m, c] : x.terms()) {
      const Terms prod = t_times_x(m.w.inverse(), m.x);
      for (const auto& [pm, pc] : prod) {
        auto key = std::make_pair(pm.w.inverse(), pm.x);
        auto [it, fresh] = acc.try_emplace(std::move(key), field_.mul(c, pc));
        if (!fresh) it->second = field_.add(it->second, field_.mul(c, pc));
      }
    }
    std::vector<RightTerm> out;
    for (auto& [k, c] : acc)
      if (!field_.is_zero(c)) out.push_back({c, k.first, k.second});
    return out;
  }

  /// x = sum_d T_d * h_d with d distinguished for alpha and h_d in the
  /// parabolic subalgebra; zero h_d are omitted.
  std::map<Permutation, Element> parabolic_decompose(const Element& x,
                                                     const Composition& alpha) const {
    if (alpha.n() != n_) throw std::invalid_argument("composition of the wrong size");
    std::map<Permutation, Element> out;
    for (const auto& rt : right_normal_form(x)) {
      auto [d, v] = coset_factor(rt.v, alpha);
      Element piece = rt.coef * multiply(T(v), monomial(rt.gamma, Permutation::identity(n_), field_.one()));
      auto it = out.find(d);
      if (it == out.end())
        out.emplace(d, std::move(piece));
      else
        it->second = it->second + piece;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  }

  /// For each generator g and distinguished d: g * T_d = sum over entries
  /// coef * T_{d'} * T_v X^gamma with d' distinguished and v in W_alpha.
  /// Generators are indexed S_1..S_{n-1}, then X_1..X_n, then X_1^-1..X_n^-1
  /// (the X's only in the affine flavor).
  struct CoinductionPlan {
    struct Entry {
      std::size_t target;  // index of d' in reps
      Elem coef;
      Permutation v;
      std::vector<int> gamma;
    };
    Composition alpha;
    std::vector<Permutation> reps;
    std::vector<Element> generators;
    std::vector<std::vector<std::vector<Entry>>> entries;  // [g][d]
  };

  const CoinductionPlan& coinduction_plan(const Composition& alpha) const {
    if (alpha.n() != n_) throw std::invalid_argument("composition of the wrong size");
    {
      std::lock_guard lock(plan_mutex_);
      auto it = plan_cache_.find(alpha);
      if (it != plan_cache_.end()) return it->second;
    }
    CoinductionPlan plan{alpha, distinguished_reps(alpha), {}, {}};
    for (int i = 1; i < n_; ++i) plan.generators.push_back(S(i));
    if (affine()) {
      for (int j = 1; j <= n_; ++j) plan.generators.push_back(X(j));
      for (int j = 1; j <= n_; ++j) plan.generators.push_back(X(j, -1));
    }
    for (const auto& g : plan.generators) {
      auto& per_d = plan.entries.emplace_back();
      for (const auto& d : plan.reps) {
        auto& list = per_d.emplace_back();
        for (auto& rt : right_normal_form(multiply(g, T(d)))) {
          auto [dp, v] = coset_factor(rt.v, alpha);
          auto pos = std::lower_bound(plan.reps.begin(), plan.reps.end(), dp) - plan.reps.begin();
          list.push_back({static_cast<std::size_t>(pos), rt.coef, std::move(v), std::move(rt.gamma)});
        }
      }
    }
    std::lock_guard lock(plan_mutex_);
    return plan_cache_.emplace(alpha, std::move(plan)).first->second;
  }

  // ---------------------------------------------------------- text

  std::string format(const Element& x) const;
  /// Parses sums of products of scalars, u, X<j>, S<i>, T[...] and
  /// parenthesized subexpressions, with integer powers.
  Element parse(std::string_view text) const;

 private:
  struct MoveTerm {
    Elem coef;
    int a;
    int b;
    bool s;
  };

  std::shared_ptr<const Algebra> self() const { return this->shared_from_this(); }
  Monomial identity_monomial() const {
    return Monomial{std::vector<int>(n_, 0), Permutation::identity(n_)};
  }

  void accumulate(Terms& t, Monomial key, const Elem& c) const {
    if (field_.is_zero(c)) return;
    auto [it, fresh] = t.try_emplace(std::move(key), c);
    if (!fresh) {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) t.erase(it);
    }
  }

  // S_i X_i^a X_{i+1}^b = sum coef * X_i^a' X_{i+1}^b' [S_i], built by peeling
  // one X at a time with the degree one moves
  //   S X_i      = X_{i+1} S - (u-1) X_{i+1}
  //   S X_{i+1}  = X_i S + (u-1) X_{i+1}
  //   S X_i^-1   = X_{i+1}^-1 S + (u-1) X_i^-1
  //   S X_{i+1}^-1 = X_i^-1 S - (u-1) X_i^-1
  const std::vector<MoveTerm>& moves(int a, int b) const {
    std::lock_guard lock(move_mutex_);
    return moves_locked(a, b);
  }

  const std::vector<MoveTerm>& moves_locked(int a, int b) const {
    auto it = move_cache_.find({a, b});
    if (it != move_cache_.end()) return it->second;
    const Elem um1 = field_.sub(u_, field_.one());
    std::map<std::tuple<int, int, bool>, Elem> acc;
    auto add = [&](int x, int y, bool s, const Elem& c) {
      auto [jt, fresh] = acc.try_emplace({x, y, s}, c);
      if (!fresh) jt->second = field_.add(jt->second, c);
    };
    auto shifted = [&](int pa, int pb, int da, int db) {
      for (const auto& t : moves_locked(pa, pb)) add(t.a + da, t.b + db, t.s, t.coef);
    };
    if (a > 0) {
      shifted(a - 1, b, 0, 1);
      add(a - 1, b + 1, false, field_.neg(um1));
    } else if (a < 0) {
      shifted(a + 1, b, 0, -1);
      add(a, b, false, um1);
    } else if (b > 0) {
      shifted(0, b - 1, 1, 0);
      add(0, b, false, um1);
    } else if (b < 0) {
      shifted(0, b + 1, -1, 0);
      add(-1, b + 1, false, field_.neg(um1));
    } else {
      add(0, 0, true, field_.one());
    }
    std::vector<MoveTerm> out;
    for (const auto& [k, c] : acc)
      if (!field_.is_zero(c)) out.push_back({c, std::get<0>(k), std::get<1>(k), std::get<2>(k)});
    return move_cache_.emplace(std::make_pair(a, b), std::move(out)).first->second;
  }

  // S_i * (sum c X^x T_w)
  Terms s_times(const Terms& in, int i) const {
    Terms out;
    const Elem um1 = field_.sub(u_, field_.one());
    for (const auto& [m, c] : in) {
      for (const auto& mv : moves(m.x[i - 1], m.x[i])) {
        std::vector<int> x = m.x;
        x[i - 1] = mv.a;
        x[i] = mv.b;
        const Elem k = field_.mul(c, mv.coef);
        if (!mv.s) {
          accumulate(out, Monomial{std::move(x), m.w}, k);
        } else if (m.w.has_left_descent(i)) {
          accumulate(out, Monomial{x, m.w}, field_.mul(k, um1));
          accumulate(out, Monomial{std::move(x), m.w.left_simple(i)}, field_.mul(k, u_));
        } else {
          accumulate(out, Monomial{std::move(x), m.w.left_simple(i)}, k);
        }
      }
    }
    return out;
  }

  // (sum c X^x T_w) * S_i
  Terms times_s(const Terms& in, int i) const {
    Terms out;
    const Elem um1 = field_.sub(u_, field_.one());
    for (const auto& [m, c] : in) {
      if (m.w.has_right_descent(i)) {
        accumulate(out, m, field_.mul(c, um1));
        accumulate(out, Monomial{m.x, m.w.right_simple(i)}, field_.mul(c, u_));
      } else {
        accumulate(out, Monomial{m.x, m.w.right_simple(i)}, c);
      }
    }
    return out;
  }

  // T_w X^x in normal form (cached)
  Terms t_times_x(const Permutation& w, const std::vector<int>& x) const {
    auto key = std::make_pair(w, x);
    {
      std::lock_guard lock(product_mutex_);
      auto it = product_cache_.find(key);
      if (it != product_cache_.end()) return it->second;
    }
    Terms t{{Monomial{x, Permutation::identity(n_)}, field_.one()}};
    const auto word = reduced_word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) t = s_times(t, *it);
    std::lock_guard lock(product_mutex_);
    return product_cache_.emplace(std::move(key), std::move(t)).first->second;
  }

  const Terms& tau_of_t(const Permutation& w) const {
    {
      std::lock_guard lock(tau_mutex_);
      auto it = tau_cache_.find(w);
      if (it != tau_cache_.end()) return it->second;
    }
    const Elem um1 = field_.sub(u_, field_.one());
    Element acc = one();
    for (int i : reduced_word(w))
      acc = multiply(acc, scalar(um1) - S(n_ - i));
    std::lock_guard lock(tau_mutex_);
    return tau_cache_.emplace(w, acc.terms()).first->second;
  }

  F field_;
  int n_;
  Elem u_;
  Flavor flavor_;

  mutable std::mutex move_mutex_;
  mutable std::map<std::pair<int, int>, std::vector<MoveTerm>> move_cache_;
  mutable std::mutex product_mutex_;
  mutable std::map<std::pair<Permutation, std::vector<int>>, Terms> product_cache_;
  mutable std::mutex plan_mutex_;
  mutable std::map<Composition, CoinductionPlan> plan_cache_;
  mutable std::mutex tau_mutex_;
  mutable std::map<Permutation, Terms> tau_cache_;
};

// ------------------------------------------------------------------ format

template <ExactField F>
std::string Algebra<F>::format(const Element& x) const {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c0] : x.terms()) {
    Elem c = c0;
    bool negative = false;
    if constexpr (std::is_same_v<F, RationalField>) {
      if (sgn(c) < 0) {
        negative = true;
        c = -c;
      }
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::vector<std::string> factors;
    for (int j = 0; j < n_; ++j) {
      if (m.x[j] == 0) continue;
      std::string f = "X" + std::to_string(j + 1);
      if (m.x[j] != 1) f += "^" + std::to_string(m.x[j]);
      factors.push_back(std::move(f));
    }
    if (!m.w.is_identity()) factors.push_back("T" + m.w.to_string());
    if (!field_.is_one(c) || factors.empty()) factors.insert(factors.begin(), field_.format(c));
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) out += "*";
      out += factors[k];
    }
  }
  return out;
}

// ------------------------------------------------------------------- parse

namespace detail {

template <ExactField F>
class ElementParser {
 public:
  using Element = HeckeElement<F>;
  using Elem = typename F::Elem;

  ElementParser(const Algebra<F>& alg, std::string_view text) : alg_(alg), s_(text) {}

  Element run() {
    Element e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("element parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }
  int small_int() {
    bool neg = eat('-');
    std::string d = digits();
    if (d.size() > 6) fail("exponent or index too large");
    int v = std::stoi(d);
    return neg ? -v : v;
  }

  Element expr() {
    Element acc = alg_.zero();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    for (;;) {
      Element t = term();
      acc = neg ? acc - t : acc + t;
      if (eat('+'))
        neg = false;
      else if (eat('-'))
        neg = true;
      else
        return acc;
    }
  }

  Element term() {
    Element acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  enum class Kind { scalar, x, other };

  Element factor() {
    auto [base, kind, xj] = atom();
    if (!eat('^')) return base;
    int k = small_int();
    if (kind == Kind::x) return alg_.X(xj, k);
    if (kind == Kind::scalar) {
      Elem c = base.coefficient(Monomial{std::vector<int>(alg_.n(), 0),
                                         Permutation::identity(alg_.n())});
      if (k < 0 && alg_.field().is_zero(c)) throw DomainError("zero to a negative power");
      return alg_.scalar(alg_.field().pow(c, k));
    }
    if (k < 0) fail("negative power of a non-invertible expression");
    Element r = alg_.one();
    for (int i = 0; i < k; ++i) r = r * base;
    return r;
  }

  std::tuple<Element, Kind, int> atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    const F& f = alg_.field();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Elem v = f.from_mpz(mpz_class(digits()));
      if (eat('/')) {
        Elem d = f.from_mpz(mpz_class(digits()));
        if (f.is_zero(d)) throw DomainError("division by zero");
        v = f.mul(v, f.inv(d));
      }
      return {alg_.scalar(v), Kind::scalar, 0};
    }
    if (c == '(') {
      ++pos_;
      Element e = expr();
      if (!eat(')')) fail("expected ')'");
      bool is_scalar = true;
      for (const auto& [m, v] : e.terms())
        if (!m.w.is_identity() || std::any_of(m.x.begin(), m.x.end(), [](int a) { return a; }))
          is_scalar = false;
      return {e, is_scalar ? Kind::scalar : Kind::other, 0};
    }
    ++pos_;
    switch (c) {
      case 'u':
        return {alg_.scalar(alg_.u()), Kind::scalar, 0};
      case 'z':
        if constexpr (std::is_same_v<F, ExtField>) {
          return {alg_.scalar(f.generator()), Kind::scalar, 0};
        } else {
          fail("'z' is only defined over extension fields");
        }
      case 'X': {
        int j = small_int();
        try {
          return {alg_.X(j), Kind::x, j};
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
      }
      case 'S': {
        int i = small_int();
        try {
          return {alg_.S(i), Kind::other, 0};
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
      }
      case 'T': {
        skip();
        std::size_t close = s_.find(']', pos_);
        if (pos_ >= s_.size() || s_[pos_] != '[' || close == std::string_view::npos)
          fail("expected T[...]");
        Permutation w = Permutation::parse(s_.substr(pos_, close + 1 - pos_));
        pos_ = close + 1;
        if (w.size() != alg_.n()) fail("permutation of the wrong size");
        return {alg_.T(w), Kind::other, 0};
      }
      default:
        --pos_;
        fail("unexpected '" + std::string(1, c) + "'");
    }
  }

  const Algebra<F>& alg_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <ExactField F>
HeckeElement<F> Algebra<F>::parse(std::string_view text) const {
  return detail::ElementParser<F>(*this, text).run();
}

}  // namespace hecke
