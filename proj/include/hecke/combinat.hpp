#pragma once

// Type A Weyl group combinatorics: permutations, reduced words, compositions
// and minimal-length coset representatives.
//
// Convention: w = d * v with v in the parabolic subgroup W_alpha and
// length(w) = length(d) + length(v); d is the unique shortest element of the
// left coset d * W_alpha. Products compose right to left: (v * w)(i) = v(w(i)).

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hecke {

class Permutation {
 public:
  Permutation() = default;
  /// One-line notation, values 1..n. Throws std::invalid_argument unless the
  /// images form a permutation.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation longest(int n);
  /// The adjacent transposition s_i (1 <= i < n).
  static Permutation simple(int n, int i);
  /// Parses "[2,1,3]".
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(images_.size()); }
  /// w(i) for 1 <= i <= n
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  int length() const;
  bool is_identity() const;
  Permutation inverse() const;
  /// s_i * w: swaps the values i and i+1.
  Permutation left_simple(int i) const;
  /// w * s_i: swaps the positions i and i+1.
  Permutation right_simple(int i) const;
  /// length(s_i w) < length(w)
  bool has_left_descent(int i) const;
  /// length(w s_i) < length(w)
  bool has_right_descent(int i) const { return images_[i - 1] > images_[i]; }

  std::string to_string() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Indices i1..ik with w = s_{i1} ... s_{ik} and k = length(w).
std::vector<int> reduced_word(const Permutation& w);

/// All permutations of {1..n} in lexicographic order of one-line notation.
std::vector<Permutation> all_permutations(int n);

class Composition {
 public:
  Composition() = default;
  /// Throws std::invalid_argument on an empty list or a part < 1.
  explicit Composition(std::vector<int> parts);

  static Composition whole(int n) { return Composition({n}); }
  /// Parses "(2,1)".
  static Composition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  int n() const { return n_; }
  /// r(alpha), the number of parts
  int length() const { return static_cast<int>(parts_.size()); }
  bool is_whole() const { return parts_.size() == 1; }
  /// True when S_i lies in the parabolic subalgebra (i is not a block end).
  bool contains_generator(int i) const;
  /// First position (1-based) of each block.
  std::vector<int> block_starts() const;
  /// True when every block of *this lies inside a block of coarser.
  bool refines(const Composition& coarser) const;
  Composition reversed() const;
  /// n! / (n_1! ... n_r!)
  std::size_t coset_count() const;

  std::string to_string() const;

  friend auto operator<=>(const Composition&, const Composition&) = default;
  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// All 2^{n-1} compositions of n, lexicographic by parts. Throws
/// std::invalid_argument for n < 1.
std::vector<Composition> compositions_of(int n);

/// Minimal-length representatives of W / W_alpha (one-line notation is
/// increasing inside every block), in lexicographic order.
std::vector<Permutation> distinguished_reps(const Composition& alpha);

/// w = d * v with d distinguished and v in W_alpha.
struct CosetFactor {
  Permutation d;
  Permutation v;
};
CosetFactor coset_factor(const Permutation& w, const Composition& alpha);

/// True when w lies in W_alpha.
bool in_parabolic(const Permutation& w, const Composition& alpha);

}  // namespace hecke
