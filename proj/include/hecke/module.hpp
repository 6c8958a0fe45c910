#pragma once

// Finite-dimensional right modules over H(n,u), H~(n,u) and their parabolic
// subalgebras H_alpha, given by one matrix per generator. Vectors are rows and
// v * g is v times the matrix of g, so the matrix of a product gh is the
// matrix product M(g) M(h).

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/algebra.hpp"
#include "hecke/linalg.hpp"
#include "json.hpp"

namespace hecke {

/// A module whose action matrices violate a defining relation, or an
/// operation applied to a module of the wrong shape.
class ModuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RelationCheck {
  /// exact matrix identities up to dimension 128, randomized above
  automatic,
  exact,
  /// Freivalds-style: every relation applied to random vectors
  randomized,
  none,
};

enum class CharKind { Z, L };

template <ExactField F>
class Module {
 public:
  using Elem = typename F::Elem;
  using Mat = Matrix<F>;
  using AlgPtr = std::shared_ptr<const Algebra<F>>;

  /// s maps i to the matrix of S_i, for exactly the i with S_i in H_alpha;
  /// x holds X_1..X_n in the affine flavor (empty otherwise). The inverses
  /// are computed unless supplied.
  Module(AlgPtr alg, Composition alpha, std::size_t dim, std::map<int, Mat> s,
         std::vector<Mat> x, std::vector<Mat> xinv = {},
         RelationCheck check = RelationCheck::automatic)
      : alg_(std::move(alg)), alpha_(std::move(alpha)), dim_(dim) {
    const int n = alg_->n();
    if (alpha_.n() != n) throw ModuleError("composition does not match the algebra degree");
    const F& f = alg_->field();
    auto shape_ok = [&](const Mat& m) { return m.rows() == dim_ && m.cols() == dim_; };
    for (int i = 1; i < n; ++i) {
      if (!alpha_.contains_generator(i)) continue;
      auto it = s.find(i);
      if (it == s.end()) throw ModuleError("missing action of S" + std::to_string(i));
      if (!shape_ok(it->second)) throw ModuleError("action matrix of the wrong shape");
      s_index_[i] = gens_.size();
      names_.push_back("S" + std::to_string(i));
      gens_.push_back(std::move(it->second));
    }
    if (alg_->affine()) {
      if (static_cast<int>(x.size()) != n) throw ModuleError("need one X matrix per j");
      if (!xinv.empty() && static_cast<int>(xinv.size()) != n)
        throw ModuleError("need one inverse X matrix per j");
      x_begin_ = gens_.size();
      for (int j = 1; j <= n; ++j) {
        if (!shape_ok(x[j - 1])) throw ModuleError("action matrix of the wrong shape");
        names_.push_back("X" + std::to_string(j));
        gens_.push_back(std::move(x[j - 1]));
      }
      for (int j = 1; j <= n; ++j) {
        Mat inv(f);
        if (xinv.empty()) {
          auto r = inverse(gens_[x_begin_ + j - 1]);
          if (!r) throw ModuleError("X" + std::to_string(j) + " does not act invertibly");
          inv = std::move(*r);
        } else {
          inv = std::move(xinv[j - 1]);
          if (!shape_ok(inv)) throw ModuleError("action matrix of the wrong shape");
        }
        names_.push_back("X" + std::to_string(j) + "^-1");
        gens_.push_back(std::move(inv));
      }
    } else if (!x.empty()) {
      throw ModuleError("the finite algebra has no X generators");
    }
    if (auto bad = violated_relation(check)) throw ModuleError("relation fails: " + *bad);
  }

  const Algebra<F>& algebra() const { return *alg_; }
  const AlgPtr& algebra_ptr() const { return alg_; }
  const F& field() const { return alg_->field(); }
  int n() const { return alg_->n(); }
  const Composition& composition() const { return alpha_; }
  bool is_full() const { return alpha_.is_whole(); }
  std::size_t dim() const { return dim_; }

  bool has_S(int i) const { return s_index_.count(i) > 0; }
  const Mat& S(int i) const {
    auto it = s_index_.find(i);
    if (it == s_index_.end()) throw ModuleError("S" + std::to_string(i) + " is not in the algebra");
    return gens_[it->second];
  }
  const Mat& X(int j) const { return gens_.at(x_index(j)); }
  const Mat& Xinv(int j) const { return gens_.at(x_index(j) + n()); }

  /// All action matrices: S's present, then X_j, then X_j^-1.
  const std::vector<Mat>& generators() const { return gens_; }
  const std::vector<std::string>& generator_names() const { return names_; }
  /// Generators whose invariant subspaces are the submodules (no inverses).
  std::size_t spin_count() const {
    return alg_->affine() ? x_begin_ + static_cast<std::size_t>(n()) : gens_.size();
  }

  /// True when both modules are over the same (sub)algebra.
  bool same_algebra(const Module& o) const {
    return alg_->same_descriptor(*o.alg_) && alpha_ == o.alpha_;
  }

  /// The matrix by which an element of H_alpha acts.
  Mat act(const HeckeElement<F>& h) const {
    alg_->check_same(h.algebra());
    const F& f = field();
    Mat total(f, dim_, dim_);
    for (const auto& [m, c] : h.terms()) {
      if (!in_parabolic(m.w, alpha_)) throw ModuleError("element outside the parabolic subalgebra");
      Mat t = x_monomial(m.x) * t_word(m.w);
      total = total + scaled(t, c);
    }
    return total;
  }

  /// Matrix of X^gamma.
  Mat x_monomial(const std::vector<int>& gamma) const {
    Mat r = Mat::identity(field(), dim_);
    for (int j = 1; j <= n(); ++j) {
      const int e = gamma[j - 1];
      if (e > 0) r = r * power(X(j), static_cast<unsigned>(e));
      if (e < 0) r = r * power(Xinv(j), static_cast<unsigned>(-e));
    }
    return r;
  }

  /// Matrix of T_w for w in W_alpha.
  Mat t_word(const Permutation& w) const {
    Mat r = Mat::identity(field(), dim_);
    for (int i : reduced_word(w)) r = r * S(i);
    return r;
  }

  /// Description of the first defining relation that fails, if any.
  std::optional<std::string> violated_relation(RelationCheck check, std::uint64_t seed = 1) const;

  friend bool operator==(const Module& a, const Module& b) {
    return a.same_algebra(b) && a.dim_ == b.dim_ && a.gens_ == b.gens_;
  }

 private:
  std::size_t x_index(int j) const {
    if (!alg_->affine()) throw ModuleError("the finite algebra has no X generators");
    if (j < 1 || j > n()) throw ModuleError("X index out of range");
    return x_begin_ + static_cast<std::size_t>(j - 1);
  }

  AlgPtr alg_;
  Composition alpha_;
  std::size_t dim_;
  std::vector<Mat> gens_;
  std::vector<std::string> names_;
  std::map<int, std::size_t> s_index_;
  std::size_t x_begin_ = 0;
};

// ------------------------------------------------------------- relations

namespace detail {

template <ExactField F>
struct Word {
  typename F::Elem coef;
  std::vector<const Matrix<F>*> factors;  // empty product is the identity
};

template <ExactField F>
bool vanishes_exact(const F& f, std::size_t dim, const std::vector<Word<F>>& words) {
  Matrix<F> total(f, dim, dim);
  for (const auto& w : words) {
    Matrix<F> p = Matrix<F>::identity(f, dim);
    for (const auto* m : w.factors) p = p * *m;
    total = total + scaled(p, w.coef);
  }
  return total.is_zero();
}

template <ExactField F>
bool vanishes_random(const F& f, std::size_t dim, const std::vector<Word<F>>& words, Rng& rng) {
  for (int trial = 0; trial < 3; ++trial) {
    Vec<F> v(dim);
    for (auto& a : v) a = f.random(rng);
    Vec<F> total(dim, f.zero());
    for (const auto& w : words) {
      Vec<F> p = v;
      for (const auto* m : w.factors) p = vec_mat(std::span<const typename F::Elem>(p), *m);
      axpy(f, std::span(total), std::span<const typename F::Elem>(p), w.coef);
    }
    for (const auto& a : total)
      if (!f.is_zero(a)) return false;
  }
  return true;
}

}  // namespace detail

template <ExactField F>
std::optional<std::string> Module<F>::violated_relation(RelationCheck check,
                                                        std::uint64_t seed) const {
  if (check == RelationCheck::none || dim_ == 0) return std::nullopt;
  if (check == RelationCheck::automatic)
    check = dim_ <= 128 ? RelationCheck::exact : RelationCheck::randomized;
  const F& f = field();
  const Elem one = f.one(), mone = f.neg(f.one()), u = alg_->u();
  Rng rng(seed);
  using W = detail::Word<F>;
  auto test = [&](const std::vector<W>& words) {
    return check == RelationCheck::exact ? detail::vanishes_exact(f, dim_, words)
                                         : detail::vanishes_random(f, dim_, words, rng);
  };
  const int n = this->n();
  for (int i = 1; i < n; ++i) {
    if (!has_S(i)) continue;
    const Mat* s = &S(i);
    if (!test({W{one, {s, s}}, W{f.sub(one, u), {s}}, W{f.neg(u), {}}}))
      return "(S" + std::to_string(i) + "+1)(S" + std::to_string(i) + "-u) = 0";
    for (int j = i + 1; j < n; ++j) {
      if (!has_S(j)) continue;
      const Mat* t = &S(j);
      if (j == i + 1 && !test({W{one, {s, t, s}}, W{mone, {t, s, t}}}))
        return "braid relation for S" + std::to_string(i);
      if (j > i + 1 && !test({W{one, {s, t}}, W{mone, {t, s}}}))
        return "S" + std::to_string(i) + " and S" + std::to_string(j) + " commute";
    }
  }
  if (!alg_->affine()) return std::nullopt;
  for (int j = 1; j <= n; ++j) {
    if (!test({W{one, {&X(j), &Xinv(j)}}, W{mone, {}}}))
      return "X" + std::to_string(j) + " times its inverse";
    for (int k = j + 1; k <= n; ++k)
      if (!test({W{one, {&X(j), &X(k)}}, W{mone, {&X(k), &X(j)}}}))
        return "X" + std::to_string(j) + " and X" + std::to_string(k) + " commute";
  }
  for (int i = 1; i < n; ++i) {
    if (!has_S(i)) continue;
    const Mat* s = &S(i);
    for (int j = 1; j <= n; ++j)
      if (j != i && j != i + 1 && !test({W{one, {&X(j), s}}, W{mone, {s, &X(j)}}}))
        return "X" + std::to_string(j) + " and S" + std::to_string(i) + " commute";
    if (!test({W{one, {s, &X(i), s}}, W{f.neg(u), {&X(i + 1)}}}))
      return "S" + std::to_string(i) + " X" + std::to_string(i) + " S" + std::to_string(i) +
             " = u X" + std::to_string(i + 1);
  }
  return std::nullopt;
}

// ------------------------------------------------------------- builders

/// Power u^k for any integer k.
template <ExactField F>
typename F::Elem u_power(const Algebra<F>& alg, std::int64_t k) {
  return alg.field().pow(alg.u(), k);
}

/// The one-dimensional segment characters of H(n): Z sends S_i to u and X_j
/// to u^{a+j-1}; L sends S_i to -1 and X_j to u^{a+n-j}.
template <ExactField F>
Module<F> make_character(std::shared_ptr<const Algebra<F>> alg, CharKind kind, int a) {
  const F& f = alg->field();
  const int n = alg->n();
  auto one_by_one = [&](const typename F::Elem& c) { return Matrix<F>::scalar(f, 1, c); };
  std::map<int, Matrix<F>> s;
  for (int i = 1; i < n; ++i)
    s.emplace(i, one_by_one(kind == CharKind::Z ? alg->u() : f.neg(f.one())));
  std::vector<Matrix<F>> x;
  if (alg->affine())
    for (int j = 1; j <= n; ++j)
      x.push_back(one_by_one(u_power(*alg, kind == CharKind::Z ? a + j - 1 : a + n - j)));
  return Module<F>(alg, Composition::whole(n), 1, std::move(s), std::move(x), {},
                   RelationCheck::exact);
}

/// Restriction to H_beta; beta must refine the composition of m.
template <ExactField F>
Module<F> restrict(const Module<F>& m, const Composition& beta) {
  if (!beta.refines(m.composition()))
    throw ModuleError("restriction to " + beta.to_string() + " from " +
                      m.composition().to_string() + " is not defined");
  std::map<int, Matrix<F>> s;
  for (int i = 1; i < m.n(); ++i)
    if (beta.contains_generator(i)) s.emplace(i, m.S(i));
  std::vector<Matrix<F>> x, xi;
  if (m.algebra().affine())
    for (int j = 1; j <= m.n(); ++j) {
      x.push_back(m.X(j));
      xi.push_back(m.Xinv(j));
    }
  return Module<F>(m.algebra_ptr(), beta, m.dim(), std::move(s), std::move(x), std::move(xi),
                   RelationCheck::none);
}

/// m_1 (x) ... (x) m_r as a module over H_alpha, alpha = (n_1, ..., n_r),
/// where m_k is a module over the full algebra of degree n_k.
template <ExactField F>
Module<F> tensor(const std::vector<Module<F>>& ms) {
  if (ms.empty()) throw ModuleError("tensor product of no modules");
  std::vector<int> parts;
  std::size_t dim = 1;
  for (const auto& m : ms) {
    if (!m.is_full()) throw ModuleError("tensor factors must be modules over full algebras");
    if (!m.algebra().with_degree(1)->same_descriptor(*ms[0].algebra().with_degree(1)))
      throw DescriptorMismatch("tensor factors over different base data");
    parts.push_back(m.n());
    dim *= m.dim();
  }
  const Composition alpha(parts);
  auto alg = ms[0].algebra().with_degree(alpha.n());
  const F& f = alg->field();
  // I_{before} (x) A (x) I_{after}
  auto embed = [&](std::size_t k, const Matrix<F>& a) {
    std::size_t before = 1, after = 1;
    for (std::size_t t = 0; t < k; ++t) before *= ms[t].dim();
    for (std::size_t t = k + 1; t < ms.size(); ++t) after *= ms[t].dim();
    return kron(kron(Matrix<F>::identity(f, before), a), Matrix<F>::identity(f, after));
  };
  std::map<int, Matrix<F>> s;
  std::vector<Matrix<F>> x, xi;
  int offset = 0;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    for (int i = 1; i < ms[k].n(); ++i) s.emplace(offset + i, embed(k, ms[k].S(i)));
    if (alg->affine())
      for (int j = 1; j <= ms[k].n(); ++j) {
        x.push_back(embed(k, ms[k].X(j)));
        xi.push_back(embed(k, ms[k].Xinv(j)));
      }
    offset += ms[k].n();
  }
  return Module<F>(alg, alpha, dim, std::move(s), std::move(x), std::move(xi),
                   RelationCheck::automatic);
}

/// Hom_{H_alpha}(H, m) with (phi . g)(h) = phi(g h), realized on the values
/// phi(T_d) for the distinguished representatives d, in increasing order.
template <ExactField F>
Module<F> coinduce(const Module<F>& m, RelationCheck check = RelationCheck::automatic) {
  if (m.is_full()) return m;
  const auto& alg = m.algebra();
  const auto& plan = alg.coinduction_plan(m.composition());
  const F& f = alg.field();
  const std::size_t k = m.dim(), nd = plan.reps.size(), dim = k * nd;
  std::map<Permutation, Matrix<F>> t_cache;
  std::map<std::vector<int>, Matrix<F>> x_cache;
  auto block = [&](const Permutation& v, const std::vector<int>& gamma) {
    auto it = t_cache.find(v);
    if (it == t_cache.end()) it = t_cache.emplace(v, m.t_word(v)).first;
    auto jt = x_cache.find(gamma);
    if (jt == x_cache.end()) jt = x_cache.emplace(gamma, m.x_monomial(gamma)).first;
    return it->second * jt->second;
  };
  std::vector<Matrix<F>> mats;
  for (std::size_t g = 0; g < plan.generators.size(); ++g) {
    Matrix<F> big(f, dim, dim);
    for (std::size_t d = 0; d < nd; ++d)
      for (const auto& e : plan.entries[g][d]) {
        Matrix<F> b = block(e.v, e.gamma);
        for (std::size_t r = 0; r < k; ++r)
          axpy(f, big.row(e.target * k + r).subspan(d * k, k), std::as_const(b).row(r), e.coef);
      }
    mats.push_back(std::move(big));
  }
  const int n = alg.n();
  std::map<int, Matrix<F>> s;
  for (int i = 1; i < n; ++i) s.emplace(i, std::move(mats[i - 1]));
  std::vector<Matrix<F>> x, xi;
  if (alg.affine())
    for (int j = 1; j <= n; ++j) {
      x.push_back(std::move(mats[n - 1 + j - 1]));
      xi.push_back(std::move(mats[2 * n - 1 + j - 1]));
    }
  return Module<F>(m.algebra_ptr(), Composition::whole(n), dim, std::move(s), std::move(x),
                   std::move(xi), check);
}

/// m_1 x ... x m_r = coinduction of the tensor product.
template <ExactField F>
Module<F> outer_product(const std::vector<Module<F>>& ms,
                        RelationCheck check = RelationCheck::automatic) {
  if (ms.size() == 1) return ms[0];
  return coinduce(tensor(ms), check);
}

/// The twist x * tau(h); defined over the full algebra only.
template <ExactField F>
Module<F> tau_twist(const Module<F>& m) {
  if (!m.is_full())
    throw ModuleError("tau maps H_alpha onto H_alpha' with alpha reversed; twist over the "
                      "full algebra instead");
  const auto& alg = m.algebra();
  const F& f = alg.field();
  const int n = alg.n();
  const auto um1 = f.sub(alg.u(), f.one());
  std::map<int, Matrix<F>> s;
  for (int i = 1; i < n; ++i) s.emplace(i, plus_scalar(scaled(m.S(n - i), f.neg(f.one())), um1));
  std::vector<Matrix<F>> x, xi;
  if (alg.affine())
    for (int j = 1; j <= n; ++j) {
      x.push_back(m.X(n + 1 - j));
      xi.push_back(m.Xinv(n + 1 - j));
    }
  return Module<F>(m.algebra_ptr(), m.composition(), m.dim(), std::move(s), std::move(x),
                   std::move(xi), RelationCheck::none);
}

/// Change of basis: the module with action P^-1 M(g) P, i.e. new row
/// coordinates w = v P.
template <ExactField F>
Module<F> conjugate(const Module<F>& m, const Matrix<F>& p, const Matrix<F>& p_inv) {
  std::map<int, Matrix<F>> s;
  for (int i = 1; i < m.n(); ++i)
    if (m.has_S(i)) s.emplace(i, p_inv * m.S(i) * p);
  std::vector<Matrix<F>> x, xi;
  if (m.algebra().affine())
    for (int j = 1; j <= m.n(); ++j) {
      x.push_back(p_inv * m.X(j) * p);
      xi.push_back(p_inv * m.Xinv(j) * p);
    }
  return Module<F>(m.algebra_ptr(), m.composition(), m.dim(), std::move(s), std::move(x),
                   std::move(xi), RelationCheck::automatic);
}

template <ExactField F>
Module<F> direct_sum(const Module<F>& a, const Module<F>& b) {
  if (!a.same_algebra(b)) throw DescriptorMismatch("direct sum over different algebras");
  const F& f = a.field();
  auto blockdiag = [&](const Matrix<F>& x, const Matrix<F>& y) {
    Matrix<F> r(f, x.rows() + y.rows(), x.cols() + y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
      std::copy(x.row(i).begin(), x.row(i).end(), r.row(i).begin());
    for (std::size_t i = 0; i < y.rows(); ++i)
      std::copy(y.row(i).begin(), y.row(i).end(), r.row(x.rows() + i).begin() + x.cols());
    return r;
  };
  std::map<int, Matrix<F>> s;
  for (int i = 1; i < a.n(); ++i)
    if (a.has_S(i)) s.emplace(i, blockdiag(a.S(i), b.S(i)));
  std::vector<Matrix<F>> x, xi;
  if (a.algebra().affine())
    for (int j = 1; j <= a.n(); ++j) {
      x.push_back(blockdiag(a.X(j), b.X(j)));
      xi.push_back(blockdiag(a.Xinv(j), b.Xinv(j)));
    }
  return Module<F>(a.algebra_ptr(), a.composition(), a.dim() + b.dim(), std::move(s),
                   std::move(x), std::move(xi), RelationCheck::none);
}

/// Rebuilds a module of the same shape from a full list of generator
/// matrices ordered as Module::generators().
template <ExactField F>
Module<F> with_generators(const Module<F>& shape, std::size_t dim, std::vector<Matrix<F>> gens,
                          RelationCheck check = RelationCheck::none) {
  std::map<int, Matrix<F>> s;
  std::size_t g = 0;
  for (int i = 1; i < shape.n(); ++i)
    if (shape.has_S(i)) s.emplace(i, std::move(gens[g++]));
  std::vector<Matrix<F>> x, xi;
  if (shape.algebra().affine()) {
    for (int j = 1; j <= shape.n(); ++j) x.push_back(std::move(gens[g++]));
    for (int j = 1; j <= shape.n(); ++j) xi.push_back(std::move(gens[g++]));
  }
  return Module<F>(shape.algebra_ptr(), shape.composition(), dim, std::move(s), std::move(x),
                   std::move(xi), check);
}

/// Submodule spanned by the rows of an invariant subspace W and the
/// quotient by it, in the bases (rows of W) and (unit vectors at the
/// non-pivot columns of W).
template <ExactField F>
std::pair<Module<F>, Module<F>> split_by(const Module<F>& m, const SemiEchelon<F>& w) {
  const F& f = m.field();
  const std::size_t k = w.size(), d = m.dim(), q = d - k;
  std::vector<char> is_pivot(d, 0);
  for (auto p : w.pivots()) is_pivot[p] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < d; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  std::vector<Matrix<F>> sub, quo;
  for (const auto& g : m.generators()) {
    Matrix<F> sg(f, k, k), qg(f, q, q);
    Vec<F> coeffs;
    for (std::size_t i = 0; i < k; ++i) {
      Vec<F> y = vec_mat(std::span<const typename F::Elem>(w.rows()[i]), g);
      w.reduce(y, &coeffs);
      for (const auto& a : y)
        if (!f.is_zero(a)) throw ModuleError("subspace is not invariant");
      std::copy(coeffs.begin(), coeffs.end(), sg.row(i).begin());
    }
    for (std::size_t i = 0; i < q; ++i) {
      Vec<F> y(g.row(free_cols[i]).begin(), g.row(free_cols[i]).end());
      w.reduce(y);
      for (std::size_t j = 0; j < q; ++j) qg(i, j) = y[free_cols[j]];
    }
    sub.push_back(std::move(sg));
    quo.push_back(std::move(qg));
  }
  return {with_generators(m, k, std::move(sub)), with_generators(m, q, std::move(quo))};
}

// ------------------------------------------------------------- Hom spaces

template <ExactField F>
struct HomSpace {
  std::size_t dim = 0;
  /// Each basis matrix P (dim m x dim k) satisfies M_m(g) P = P M_k(g).
  std::vector<Matrix<F>> basis;
};

template <ExactField F>
HomSpace<F> hom_space(const Module<F>& m, const Module<F>& k) {
  if (!m.same_algebra(k)) throw DescriptorMismatch("hom space between modules over different algebras");
  const F& f = m.field();
  const std::size_t dm = m.dim(), dk = k.dim(), unknowns = dm * dk;
  HomSpace<F> out;
  if (unknowns == 0) return out;
  SemiEchelon<F> eqs(f, unknowns);
  Vec<F> row(unknowns);
  for (std::size_t g = 0; g < m.spin_count() && !eqs.full(); ++g) {
    const auto& a = m.generators()[g];
    const auto& b = k.generators()[g];
    // (A P)[r][c] - (P B)[r][c] with P[t][c] at index t * dk + c
    for (std::size_t r = 0; r < dm && !eqs.full(); ++r)
      for (std::size_t c = 0; c < dk && !eqs.full(); ++c) {
        std::fill(row.begin(), row.end(), f.zero());
        for (std::size_t t = 0; t < dm; ++t) row[t * dk + c] = a(r, t);
        for (std::size_t s = 0; s < dk; ++s)
          row[r * dk + s] = f.sub(row[r * dk + s], b(s, c));
        eqs.insert(row);
      }
  }
  Matrix<F> ns = null_space(eqs);
  out.dim = ns.rows();
  for (std::size_t i = 0; i < ns.rows(); ++i) {
    Matrix<F> p(f, dm, dk);
    std::copy(ns.row(i).begin(), ns.row(i).end(), p.data());
    out.basis.push_back(std::move(p));
  }
  return out;
}

/// An invertible intertwiner m -> k, searched among random elements of the
/// Hom space. A nullopt answer after all attempts is not a proof of
/// non-isomorphism over very small fields.
template <ExactField F>
std::optional<Matrix<F>> find_isomorphism(const Module<F>& m, const Module<F>& k, Rng& rng,
                                          int attempts = 30) {
  if (m.dim() != k.dim() || !m.same_algebra(k)) return std::nullopt;
  const auto hom = hom_space(m, k);
  if (hom.dim == 0) return m.dim() == 0 ? std::optional(Matrix<F>(m.field())) : std::nullopt;
  const F& f = m.field();
  for (int t = 0; t < attempts; ++t) {
    Matrix<F> p(f, m.dim(), k.dim());
    for (const auto& b : hom.basis) p = p + scaled(b, t == 0 && hom.dim == 1 ? f.one() : f.random(rng));
    if (rank(p) == m.dim()) return p;
  }
  return std::nullopt;
}

// ------------------------------------------------------------- JSON

template <ExactField F>
nlohmann::json to_json(const Module<F>& m) {
  const auto& alg = m.algebra();
  nlohmann::json actions = nlohmann::json::object();
  const F& f = m.field();
  for (std::size_t g = 0; g < m.generators().size(); ++g) {
    const auto& a = m.generators()[g];
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      nlohmann::json r = nlohmann::json::array();
      for (std::size_t j = 0; j < a.cols(); ++j) r.push_back(f.format(a(i, j)));
      rows.push_back(std::move(r));
    }
    actions[m.generator_names()[g]] = std::move(rows);
  }
  return {{"descriptor",
           {{"n", alg.n()},
            {"u", f.format(alg.u())},
            {"flavor", flavor_name(alg.flavor())},
            {"field", f.name()},
            {"composition", m.composition().parts()}}},
          {"dim", m.dim()},
          {"actions", std::move(actions)}};
}

template <ExactField F>
Module<F> module_from_json(const F& field, const nlohmann::json& j) {
  try {
    const auto& d = j.at("descriptor");
    if (d.at("field").get<std::string>() != field.name())
      throw ParseError("module is over " + d.at("field").get<std::string>() + ", not " +
                       field.name());
    const int n = d.at("n").get<int>();
    const auto flavor_text = d.at("flavor").get<std::string>();
    if (flavor_text != "finite" && flavor_text != "affine") throw ParseError("bad flavor");
    const Flavor flavor = flavor_text == "affine" ? Flavor::affine : Flavor::finite;
    auto alg = Algebra<F>::get(field, n, parse_scalar(field, d.at("u").get<std::string>()), flavor);
    Composition alpha(d.at("composition").get<std::vector<int>>());
    const std::size_t dim = j.at("dim").get<std::size_t>();
    auto read = [&](const std::string& name) {
      const auto& rows = j.at("actions").at(name);
      if (rows.size() != dim) throw ParseError("matrix " + name + " has the wrong shape");
      Matrix<F> a(field, dim, dim);
      for (std::size_t r = 0; r < dim; ++r) {
        if (rows[r].size() != dim) throw ParseError("matrix " + name + " has the wrong shape");
        for (std::size_t c = 0; c < dim; ++c)
          a(r, c) = parse_scalar(field, rows[r][c].get<std::string>());
      }
      return a;
    };
    std::map<int, Matrix<F>> s;
    for (int i = 1; i < n; ++i)
      if (alpha.contains_generator(i)) s.emplace(i, read("S" + std::to_string(i)));
    std::vector<Matrix<F>> x, xi;
    if (flavor == Flavor::affine)
      for (int jx = 1; jx <= n; ++jx) {
        x.push_back(read("X" + std::to_string(jx)));
        xi.push_back(read("X" + std::to_string(jx) + "^-1"));
      }
    return Module<F>(alg, alpha, dim, std::move(s), std::move(x), std::move(xi));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed module JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed module JSON: ") + e.what());
  }
}

}  // namespace hecke
