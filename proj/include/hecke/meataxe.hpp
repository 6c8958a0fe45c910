#pragma once

// Composition factors of modules over exact fields (randomized MeatAxe with
// Norton's irreducibility test) and a registry of simple modules up to
// isomorphism.

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/module.hpp"
#include "hecke/poly.hpp"

namespace hecke {

/// A simple module whose endomorphism ring is larger than the ground field:
/// it splits only over an extension.
class NonSplitError : public std::runtime_error {
 public:
  NonSplitError(std::size_t dim, std::size_t end_dim)
      : std::runtime_error("non-split endomorphism ring detected (simple of dimension " +
                           std::to_string(dim) + " with endomorphism algebra of dimension " +
                           std::to_string(end_dim) + "); extend the field"),
        end_dim_(end_dim) {}
  std::size_t end_dim() const { return end_dim_; }

 private:
  std::size_t end_dim_;
};

/// The randomized search neither split a module nor certified it simple.
class MeatAxeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <ExactField F>
struct CompositionSeries {
  std::vector<Module<F>> factors;
  std::size_t total_dim() const {
    std::size_t d = 0;
    for (const auto& f : factors) d += f.dim();
    return d;
  }
};

namespace detail {

/// Span of the orbit of the seed vectors under the generators.
template <ExactField F>
SemiEchelon<F> spin(const std::vector<Vec<F>>& seeds, const std::vector<const Matrix<F>*>& gens,
                    const F& f, std::size_t dim) {
  SemiEchelon<F> w(f, dim);
  for (const auto& s : seeds) w.insert(s);
  for (std::size_t next = 0; next < w.size() && !w.full(); ++next) {
    const Vec<F> b = w.rows()[next];
    for (const auto* g : gens) {
      w.insert(vec_mat(std::span<const typename F::Elem>(b), *g));
      if (w.full()) break;
    }
  }
  return w;
}

template <ExactField F>
struct SplitOutcome {
  std::optional<SemiEchelon<F>> sub;  // proper nonzero submodule, if found
  bool simple = false;
};

template <ExactField F>
std::vector<Poly<F>> candidate_factors(const F& f, const Poly<F>& cp, std::size_t dim, Rng& rng) {
  if constexpr (F::is_finite) {
    return small_irreducible_factors(f, cp, static_cast<int>(std::min<std::size_t>(dim, 12)), rng);
  } else {
    std::vector<Poly<F>> out;
    for (const auto& r : rational_roots(cp)) out.push_back(poly::linear(f, r));
    return out;
  }
}

template <ExactField F>
SplitOutcome<F> try_split(const Module<F>& m, Rng& rng, int max_attempts = 400) {
  const F& f = m.field();
  const std::size_t d = m.dim();
  std::vector<const Matrix<F>*> gens, gens_t_ptr;
  for (std::size_t g = 0; g < m.spin_count(); ++g) gens.push_back(&m.generators()[g]);
  std::vector<Matrix<F>> gens_t;
  gens_t.reserve(gens.size());
  for (const auto* g : gens) gens_t.push_back(transpose(*g));
  for (const auto& g : gens_t) gens_t_ptr.push_back(&g);

  auto proper = [&](const SemiEchelon<F>& w) { return w.size() > 0 && w.size() < d; };
  auto random_vec = [&](const Matrix<F>& basis) {
    Vec<F> v(d, f.zero());
    for (std::size_t i = 0; i < basis.rows(); ++i)
      axpy(f, std::span(v), basis.row(i), f.random(rng));
    return v;
  };

  Matrix<F> word = Matrix<F>::identity(f, d);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Matrix<F> a(f);
    if (static_cast<std::size_t>(attempt) < gens.size()) {
      a = *gens[attempt];
    } else {
      // random words in the generators plus a random combination of them
      word = word * *gens[pick(rng)];
      a = word;
      for (const auto* g : gens) a = a + scaled(*g, f.random(rng));
    }
    const Poly<F> cp = charpoly(a);
    for (const auto& fac : candidate_factors(f, cp, d, rng)) {
      const Matrix<F> fa = poly::eval_matrix(fac, a);
      const Matrix<F> ker = left_kernel(fa);
      if (ker.rows() == 0) continue;
      Vec<F> v(ker.row(0).begin(), ker.row(0).end());
      auto w = spin<F>({v}, gens, f, d);
      if (proper(w)) return {std::move(w), false};
      if (static_cast<int>(ker.rows()) == fac.degree()) {
        // Norton: v generates; the module is simple unless the dual splits
        const Matrix<F> kt = left_kernel(transpose(fa));
        Vec<F> wt(kt.row(0).begin(), kt.row(0).end());
        auto u = spin<F>({wt}, gens_t_ptr, f, d);
        if (proper(u)) {
          SemiEchelon<F> ann(f, d);
          const Matrix<F> rk = right_kernel(u.basis());
          for (std::size_t i = 0; i < rk.rows(); ++i)
            ann.insert(Vec<F>(rk.row(i).begin(), rk.row(i).end()));
          return {std::move(ann), false};
        }
        if (fac.degree() > 1) {
          const std::size_t e = hom_space(m, m).dim;
          if (e != 1) throw NonSplitError(d, e);
        }
        return {std::nullopt, true};
      }
      for (int k = 0; k < 2; ++k) {
        auto w2 = spin<F>({random_vec(ker)}, gens, f, d);
        if (proper(w2)) return {std::move(w2), false};
      }
    }
  }
  throw MeatAxeError("could not split or certify a module of dimension " + std::to_string(d));
}

template <ExactField F>
std::vector<std::int64_t> trace_key(const Module<F>& m) {
  std::vector<std::int64_t> key{static_cast<std::int64_t>(m.dim())};
  for (const auto& g : m.generators()) key.push_back(m.field().lift(trace(g)));
  return key;
}

}  // namespace detail

/// Composition factors, sorted by (dimension, traces of the generators).
/// Deterministic for a given seed.
template <ExactField F>
CompositionSeries<F> composition_factors(const Module<F>& m, std::uint64_t seed = 1) {
  Rng rng(seed);
  CompositionSeries<F> out;
  std::vector<Module<F>> work{m};
  while (!work.empty()) {
    Module<F> cur = std::move(work.back());
    work.pop_back();
    if (cur.dim() == 0) continue;
    if (cur.dim() == 1) {
      out.factors.push_back(std::move(cur));
      continue;
    }
    auto res = detail::try_split(cur, rng);
    if (res.simple) {
      out.factors.push_back(std::move(cur));
      continue;
    }
    auto [sub, quo] = split_by(cur, *res.sub);
    work.push_back(std::move(sub));
    work.push_back(std::move(quo));
  }
  std::stable_sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    return detail::trace_key(a) < detail::trace_key(b);
  });
  return out;
}

template <ExactField F>
bool is_simple(const Module<F>& m, std::uint64_t seed = 1) {
  if (m.dim() == 0) return false;
  if (m.dim() == 1) return true;
  Rng rng(seed);
  return detail::try_split(m, rng).simple;
}

/// Simple modules up to isomorphism, with stable integer ids in order of
/// registration. Registration is serialized.
template <ExactField F>
class SimpleRegistry {
 public:
  explicit SimpleRegistry(std::uint64_t seed = 1) : seed_(seed) {}

  /// Registers a module after certifying that it is simple.
  int add(const Module<F>& s) {
    if (!is_simple(s, seed_)) throw ModuleError("module is not simple");
    return add_certified(s);
  }

  /// Registers a module already known to be simple (a composition factor).
  int add_certified(const Module<F>& s) {
    std::lock_guard lock(mutex_);
    if (auto id = find_locked(s)) return *id;
    entries_.push_back({s, detail::trace_key(s), ""});
    return static_cast<int>(entries_.size()) - 1;
  }

  std::optional<int> find(const Module<F>& s) const {
    std::lock_guard lock(mutex_);
    return find_locked(s);
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }
  const Module<F>& representative(int id) const {
    std::lock_guard lock(mutex_);
    return entries_.at(static_cast<std::size_t>(id)).module;
  }
  std::string label(int id) const {
    std::lock_guard lock(mutex_);
    return entries_.at(static_cast<std::size_t>(id)).label;
  }
  void set_label(int id, std::string label) {
    std::lock_guard lock(mutex_);
    entries_.at(static_cast<std::size_t>(id)).label = std::move(label);
  }
  std::optional<int> find_label(const std::string& label) const {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].label == label) return static_cast<int>(i);
    return std::nullopt;
  }
  std::uint64_t seed() const { return seed_; }

 private:
  struct Entry {
    Module<F> module;
    std::vector<std::int64_t> key;
    std::string label;
  };

  std::optional<int> find_locked(const Module<F>& s) const {
    const auto key = detail::trace_key(s);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      if (e.key != key || !e.module.same_algebra(s)) continue;
      if (hom_space(e.module, s).dim > 0) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  std::uint64_t seed_;
  mutable std::mutex mutex_;
  std::deque<Entry> entries_;  // references stay valid as entries are added
};

/// [{id, dim, multiplicity}], registering the factors.
template <ExactField F>
nlohmann::json series_json(const CompositionSeries<F>& series, SimpleRegistry<F>& reg) {
  std::map<int, std::pair<std::size_t, int>> counts;
  for (const auto& fac : series.factors) {
    auto& c = counts[reg.add_certified(fac)];
    c.first = fac.dim();
    ++c.second;
  }
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [id, c] : counts)
    out.push_back({{"id", id}, {"dim", c.first}, {"multiplicity", c.second}});
  return out;
}

}  // namespace hecke
