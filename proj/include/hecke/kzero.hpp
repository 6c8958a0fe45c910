#pragma once

// Grothendieck groups of finite-dimensional modules over the affine Hecke
// algebras H~(n,u), n >= 0: semisimplification, the alternating sum
// sum_gamma (-1)^{n - r(gamma)} i_gamma r_gamma, standard modules and
// multiplicity matrices.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/meataxe.hpp"
#include "hecke/segments.hpp"

namespace hecke {

/// Finitely supported integer combination of registered simples.
struct VirtualModule {
  int degree = 0;
  std::map<int, std::int64_t> coeffs;

  void add(int id, std::int64_t c) {
    if (c == 0) return;
    auto& v = coeffs[id];
    v += c;
    if (v == 0) coeffs.erase(id);
  }
  VirtualModule& operator+=(const VirtualModule& o) {
    for (const auto& [id, c] : o.coeffs) add(id, c);
    return *this;
  }
  VirtualModule scaled(std::int64_t k) const {
    VirtualModule r{degree, {}};
    for (const auto& [id, c] : coeffs) r.add(id, k * c);
    return r;
  }
  /// Id standing for the one-dimensional module of the degree-0 algebra.
  static constexpr int unit_id = -1;
  static VirtualModule unit() { return {0, {{unit_id, 1}}}; }

  /// The id when this is exactly one simple with coefficient +1.
  std::optional<int> single_simple() const {
    if (coeffs.size() == 1 && coeffs.begin()->second == 1) return coeffs.begin()->first;
    return std::nullopt;
  }
  friend bool operator==(const VirtualModule& a, const VirtualModule& b) {
    return a.degree == b.degree && a.coeffs == b.coeffs;
  }
  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [id, c] : coeffs) j[std::to_string(id)] = c;
    return j;
  }
};

/// How [i_gamma r_gamma m] is computed.
enum class InductionMode {
  /// semisimplify the coinduced module itself
  direct,
  /// sum of [i_gamma N] over the composition factors N of r_gamma m, each
  /// computed once per isomorphism class (i_gamma is exact)
  factorwise,
};

/// Sign convention of the alternating sum.
enum class DualSign {
  /// (-1)^{n - r(gamma)}: the sum equals the tau twist
  hecke,
  /// (-1)^{r(gamma)}: differs from hecke by the global sign (-1)^n
  group,
};

/// Labeling of simples by multisegments failed.
class LabelingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shared state for K_0 computations over one (field, u, flavor): registries
/// of simples (full algebras of every degree, and parabolic subalgebras) and
/// memoized classes.
template <ExactField F>
class K0Context {
 public:
  using Elem = typename F::Elem;
  using Mod = Module<F>;

  K0Context(F field, Elem u, Flavor flavor = Flavor::affine, std::uint64_t seed = 0)
      : field_(std::move(field)), u_(std::move(u)), flavor_(flavor), seed_(seed),
        e_(static_cast<int>(e_invariant(field_, u_))), simples_(seed), parabolic_(seed) {}

  const F& field() const { return field_; }
  const Elem& u() const { return u_; }
  Flavor flavor() const { return flavor_; }
  std::uint64_t seed() const { return seed_; }
  int e() const { return e_; }
  std::shared_ptr<const Algebra<F>> algebra(int n) const {
    return Algebra<F>::get(field_, n, u_, flavor_);
  }
  SimpleRegistry<F>& simples() { return simples_; }
  const SimpleRegistry<F>& simples() const { return simples_; }

  void check_module(const Mod& m) const {
    if (!m.algebra().same_descriptor(*algebra(m.n())))
      throw DescriptorMismatch("module is over " + m.algebra().describe() +
                               ", context is over " + algebra(m.n())->describe());
  }

  VirtualModule semisimplify(const Mod& m) {
    check_module(m);
    if (!m.is_full()) throw ModuleError("semisimplify expects a module over the full algebra");
    VirtualModule v{m.n(), {}};
    for (const auto& fac : composition_factors(m, seed_).factors)
      v.add(simples_.add_certified(fac), 1);
    return v;
  }

  /// [i_gamma r_gamma m]
  VirtualModule induced_restriction(const Mod& m, const Composition& gamma,
                                    InductionMode mode = InductionMode::factorwise) {
    check_module(m);
    auto r = restrict(m, gamma);
    if (mode == InductionMode::direct) return semisimplify(coinduce(r));
    VirtualModule v{m.n(), {}};
    std::map<int, std::int64_t> counts;
    for (const auto& fac : composition_factors(r, seed_).factors)
      ++counts[parabolic_.add_certified(fac)];
    for (const auto& [pid, c] : counts) v += coinduced_class(pid).scaled(c);
    return v;
  }

  /// sum over compositions gamma of n of sign(gamma) [i_gamma r_gamma m]
  VirtualModule kato_dual(const Mod& m, DualSign sign = DualSign::hecke,
                          InductionMode mode = InductionMode::factorwise) {
    if (!m.is_full()) throw ModuleError("the dual is defined for modules over the full algebra");
    const int n = m.n();
    VirtualModule total{n, {}};
    for (const auto& gamma : compositions_of(n)) {
      int exponent = sign == DualSign::hecke ? n - gamma.length() : gamma.length();
      total += induced_restriction(m, gamma, mode).scaled(exponent % 2 ? -1 : 1);
    }
    return total;
  }

  VirtualModule twist_class(const Mod& m) { return semisimplify(tau_twist(m)); }

  /// Outer product of Z-type characters, one per segment (a, n), in the
  /// canonical segment order.
  Mod standard_module(const Multisegment& mu) const {
    if (mu.e() != e_)
      throw std::invalid_argument("multisegment period " + std::to_string(mu.e()) +
                                  " does not match e = " + std::to_string(e_));
    if (mu.weight() == 0) throw std::invalid_argument("standard module of weight 0");
    if (field_.is_zero(field_.sub(u_, field_.one())))
      throw DomainError("segment characters need u != 1 (eigenvalues u^a would coincide)");
    std::vector<Mod> chars;
    for (const auto& s : mu.segments())
      chars.push_back(make_character(algebra(s.length), CharKind::Z, s.start));
    return outer_product(chars);
  }

  /// [s] . [t] for registered simples, extended bilinearly.
  VirtualModule product(const VirtualModule& a, const VirtualModule& b) {
    VirtualModule out{a.degree + b.degree, {}};
    for (const auto& [s, cs] : a.coeffs)
      for (const auto& [t, ct] : b.coeffs) {
        if (s == VirtualModule::unit_id || t == VirtualModule::unit_id) {
          VirtualModule one{out.degree, {}};
          one.add(s == VirtualModule::unit_id ? t : s, 1);
          out += one.scaled(cs * ct);
          continue;
        }
        auto key = std::make_pair(s, t);
        auto it = product_cache_.find(key);
        if (it == product_cache_.end()) {
          auto ps = simples_.representative(s), pt = simples_.representative(t);
          it = product_cache_.emplace(key, semisimplify(outer_product(std::vector<Mod>{ps, pt}))).first;
        }
        out += it->second.scaled(cs * ct);
      }
    return out;
  }

 private:
  VirtualModule coinduced_class(int parabolic_id) {
    auto it = coinduced_cache_.find(parabolic_id);
    if (it != coinduced_cache_.end()) return it->second;
    auto v = semisimplify(coinduce(parabolic_.representative(parabolic_id)));
    coinduced_cache_.emplace(parabolic_id, v);
    return v;
  }

  F field_;
  Elem u_;
  Flavor flavor_;
  std::uint64_t seed_;
  int e_;
  SimpleRegistry<F> simples_;
  SimpleRegistry<F> parabolic_;
  std::map<int, VirtualModule> coinduced_cache_;
  std::map<std::pair<int, int>, VirtualModule> product_cache_;
};

// ------------------------------------------------------------ blocks

/// mu <= nu for triangularity: equal, or strictly below in length profile.
/// Distinct multisegments with the same profile count as incomparable.
inline bool below(const Multisegment& mu, const Multisegment& nu) {
  return mu == nu || (mu.lengths() != nu.lengths() && preceq(mu, nu));
}

/// Standard modules of one block (fixed weight and support) with their
/// classes, and the labeling nu -> L_nu of the simples.
template <ExactField F>
struct Block {
  int n = 0;
  Support support;
  std::vector<Multisegment> all;        // every multisegment of the block
  std::vector<Multisegment> aperiodic;  // the rows and columns
  std::map<Multisegment, VirtualModule> standard_classes;
  std::map<Multisegment, int> label_id;  // nu -> id of L_nu
  std::map<int, Multisegment> id_label;
};

/// Classes of all standard modules of the block and the labeling: L_nu is the
/// unique simple with multiplicity one in M_nu that occurs only in M_mu with
/// mu <= nu, found in increasing order of nu.
template <ExactField F>
Block<F> analyze_block(K0Context<F>& ctx, int n, const Support& support) {
  Block<F> b;
  b.n = n;
  b.support = support;
  const int e = ctx.e();
  b.all = enumerate_multisegments(n, e, support, false);
  for (const auto& mu : b.all)
    if (mu.is_aperiodic()) b.aperiodic.push_back(mu);
  for (const auto& mu : b.all) b.standard_classes.emplace(mu, ctx.semisimplify(ctx.standard_module(mu)));
  std::set<int> assigned;
  for (const auto& nu : b.aperiodic) {
    std::vector<int> candidates;
    for (const auto& [id, c] : b.standard_classes.at(nu).coeffs) {
      if (c != 1 || assigned.count(id)) continue;
      bool only_lower = true;
      for (const auto& mu : b.aperiodic)
        if (b.standard_classes.at(mu).coeffs.count(id) && !below(mu, nu)) only_lower = false;
      if (only_lower) candidates.push_back(id);
    }
    if (candidates.size() != 1) {
      std::string msg = "no unique simple for " + nu.to_string() + " (candidates:";
      for (int c : candidates) msg += " " + std::to_string(c);
      msg += "; class of M_nu: " + b.standard_classes.at(nu).to_json().dump() + ")";
      throw LabelingError(msg);
    }
    assigned.insert(candidates[0]);
    b.label_id.emplace(nu, candidates[0]);
    b.id_label.emplace(candidates[0], nu);
    ctx.simples().set_label(candidates[0], nu.to_string());
  }
  for (const auto& mu : b.aperiodic)
    for (const auto& [id, c] : b.standard_classes.at(mu).coeffs)
      if (!assigned.count(id))
        throw LabelingError("simple " + std::to_string(id) + " in M_" + mu.to_string() +
                            " has no aperiodic label");
  return b;
}

struct MultiplicityMatrix {
  int e = 0;
  std::string support;
  std::vector<std::string> labels;  // rows and columns, same order
  std::vector<int> column_ids;
  std::vector<std::vector<std::int64_t>> entries;  // [mu][nu]

  /// Unit diagonal and m(mu, nu) != 0 only for mu <= nu; returns the
  /// violations found.
  std::vector<std::string> violations(const std::vector<Multisegment>& ms) const {
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = 0; j < ms.size(); ++j) {
        if (i == j && entries[i][j] != 1)
          bad.push_back("diagonal entry at " + labels[i] + " is " + std::to_string(entries[i][j]));
        if (entries[i][j] != 0 && !below(ms[i], ms[j]))
          bad.push_back("m(" + labels[i] + ", " + labels[j] + ") != 0 but not mu <= nu");
      }
    return bad;
  }

  std::string to_csv() const {
    auto quote = [](const std::string& s) { return "\"" + s + "\""; };
    std::string out = quote("mu\\nu");
    for (const auto& l : labels) out += "," + quote(l);
    out += "\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out += quote(labels[i]);
      for (auto v : entries[i]) out += "," + std::to_string(v);
      out += "\n";
    }
    return out;
  }

  nlohmann::json to_json() const {
    return {{"e", e}, {"support", support}, {"labels", labels}, {"simple_ids", column_ids},
            {"entries", entries}};
  }

  friend bool operator==(const MultiplicityMatrix& a, const MultiplicityMatrix& b) {
    return a.labels == b.labels && a.entries == b.entries;
  }
};

template <ExactField F>
MultiplicityMatrix multiplicity_matrix(const Block<F>& b, int e) {
  MultiplicityMatrix m;
  m.e = e;
  m.support = format_support(b.support);
  for (const auto& nu : b.aperiodic) {
    m.labels.push_back(nu.to_string());
    m.column_ids.push_back(b.label_id.at(nu));
  }
  for (const auto& mu : b.aperiodic) {
    std::vector<std::int64_t> row;
    const auto& cls = b.standard_classes.at(mu);
    for (const auto& nu : b.aperiodic) {
      auto it = cls.coeffs.find(b.label_id.at(nu));
      row.push_back(it == cls.coeffs.end() ? 0 : it->second);
    }
    m.entries.push_back(std::move(row));
  }
  return m;
}

struct DualityRow {
  int id;
  std::string label;
  std::optional<int> dual_id;  // nullopt when the dual is not a single simple
  std::string dual_label;
  nlohmann::json dual_class;
  bool matches_twist = false;
};

/// For every labeled simple of the block: its dual class, which should be a
/// single simple equal to the class of the tau twist.
template <ExactField F>
std::vector<DualityRow> duality_table(K0Context<F>& ctx, const Block<F>& b,
                                      InductionMode mode = InductionMode::factorwise) {
  std::vector<DualityRow> rows;
  for (const auto& [id, nu] : b.id_label) {
    const auto& simple = ctx.simples().representative(id);
    auto dual = ctx.kato_dual(simple, DualSign::hecke, mode);
    DualityRow r{id, nu.to_string(), dual.single_simple(), "", dual.to_json(), false};
    r.matches_twist = dual == ctx.twist_class(simple);
    if (r.dual_id) r.dual_label = ctx.simples().label(*r.dual_id);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace hecke
