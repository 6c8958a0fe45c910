#pragma once

// Segments (start residue, length) and multisegments over Z/e (e = 0 means
// plain integers), with aperiodicity, the length-profile order and
// enumeration by weight and support.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hecke/errors.hpp"
#include "json.hpp"

namespace hecke {

struct Segment {
  int start = 0;
  int length = 1;
  friend auto operator<=>(const Segment&, const Segment&) = default;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Multiset of residues with multiplicities.
using Support = std::map<int, int>;

/// Parses "0,1,1,2" into a support, residues reduced mod e.
Support parse_support(std::string_view csv, int e);
std::string format_support(const Support& s);

class Multisegment {
 public:
  Multisegment() = default;
  /// Starts are reduced mod e when e > 0. Throws std::invalid_argument for
  /// e < 0 or a length < 1.
  Multisegment(int e, std::vector<Segment> segments);

  /// Parses "(a,n)+(a',n')"; "{}" or "" is the empty multisegment.
  static Multisegment parse(std::string_view text, int e);
  static Multisegment from_json(const nlohmann::json& j);

  int e() const { return e_; }
  /// Sorted by decreasing length, then increasing start.
  const std::vector<Segment>& segments() const { return segs_; }
  int weight() const;
  /// Lengths in decreasing order.
  std::vector<int> lengths() const;
  /// Residues a, a+1, ..., a+n-1 of every segment.
  Support support() const;
  bool is_aperiodic() const;
  Multisegment shifted(int k) const;

  std::string to_string() const;
  nlohmann::json to_json() const;

  /// Ascending length profile (lexicographic), then segments: a linear
  /// extension of the length-profile order.
  friend std::strong_ordering operator<=>(const Multisegment& a, const Multisegment& b);
  friend bool operator==(const Multisegment& a, const Multisegment& b) {
    return a.e_ == b.e_ && a.segs_ == b.segs_;
  }

 private:
  int e_ = 0;
  std::vector<Segment> segs_;
};

/// mu <= nu: prefix sums of the decreasing length lists of mu are bounded by
/// those of nu. Throws std::invalid_argument when the weights differ.
bool preceq(const Multisegment& mu, const Multisegment& nu);

/// All multisegments of weight n over Z/e, restricted to the given support
/// when present (required when e = 0), sorted. Throws std::invalid_argument
/// for n < 0, e < 0 or e = 0 without a support.
std::vector<Multisegment> enumerate_multisegments(int n, int e,
                                                  const std::optional<Support>& support,
                                                  bool aperiodic_only = false);

/// The support {0, 1, ..., n-1} reduced mod e.
Support consecutive_support(int n, int e);

}  // namespace hecke
