#include "hecke/combinat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hecke/field.hpp"

namespace hecke {

namespace {

std::vector<int> parse_int_list(std::string_view text, char open, char close) {
  text = detail::trim(text);
  if (text.size() < 2 || text.front() != open || text.back() != close)
    throw ParseError("expected " + std::string(1, open) + "..." +
                     std::string(1, close) + ", got '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<int> out;
  if (detail::trim(text).empty()) return out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t comma = text.find(',', pos);
    out.push_back(static_cast<int>(detail::parse_int64(
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos))));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string join(const std::vector<int>& v, char open, char close) {
  std::string s(1, open);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + close;
}

}  // namespace

// --------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size() + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > size() || seen[v])
      throw std::invalid_argument("not a permutation: " + join(images_, '[', ']'));
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::longest(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = n - i;
  return Permutation(std::move(img));
}

Permutation Permutation::simple(int n, int i) {
  if (i < 1 || i >= n) throw std::invalid_argument("simple reflection out of range");
  return identity(n).right_simple(i);
}

Permutation Permutation::parse(std::string_view text) {
  try {
    return Permutation(parse_int_list(text, '[', ']'));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

int Permutation::length() const {
  int inv = 0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (images_[i] > images_[j]) ++inv;
  return inv;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (images_[i] != i + 1) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[images_[i] - 1] = i + 1;
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

Permutation Permutation::left_simple(int i) const {
  Permutation p = *this;
  for (int& v : p.images_) {
    if (v == i)
      v = i + 1;
    else if (v == i + 1)
      v = i;
  }
  return p;
}

Permutation Permutation::right_simple(int i) const {
  Permutation p = *this;
  std::swap(p.images_[i - 1], p.images_[i]);
  return p;
}

bool Permutation::has_left_descent(int i) const {
  // the value i+1 appears before the value i
  for (int v : images_) {
    if (v == i) return false;
    if (v == i + 1) return true;
  }
  return false;
}

std::string Permutation::to_string() const { return join(images_, '[', ']'); }

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> img(b.images_.size());
  for (int i = 0; i < b.size(); ++i) img[i] = a.images_[b.images_[i] - 1];
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

std::vector<int> reduced_word(const Permutation& w) {
  std::vector<int> rev;
  Permutation cur = w;
  for (;;) {
    int i = 1;
    while (i < cur.size() && !cur.has_right_descent(i)) ++i;
    if (i >= cur.size()) break;
    rev.push_back(i);
    cur = cur.right_simple(i);
  }
  return {rev.rbegin(), rev.rend()};
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// --------------------------------------------------------------- Composition

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("empty composition");
  for (int p : parts_) {
    if (p < 1) throw std::invalid_argument("composition parts must be >= 1");
    n_ += p;
  }
}

Composition Composition::parse(std::string_view text) {
  try {
    return Composition(parse_int_list(text, '(', ')'));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

bool Composition::contains_generator(int i) const {
  int end = 0;
  for (std::size_t k = 0; k + 1 < parts_.size(); ++k) {
    end += parts_[k];
    if (end == i) return false;
  }
  return i >= 1 && i < n_;
}

std::vector<int> Composition::block_starts() const {
  std::vector<int> s;
  int pos = 1;
  for (int p : parts_) {
    s.push_back(pos);
    pos += p;
  }
  return s;
}

bool Composition::refines(const Composition& coarser) const {
  if (coarser.n() != n_) return false;
  for (int i = 1; i < n_; ++i)
    if (!coarser.contains_generator(i) && contains_generator(i)) return false;
  return true;
}

Composition Composition::reversed() const {
  return Composition(std::vector<int>(parts_.rbegin(), parts_.rend()));
}

std::size_t Composition::coset_count() const {
  std::size_t result = 1;
  int sofar = 0;
  for (int p : parts_) {
    // multiply by binom(sofar + p, p) incrementally
    for (int k = 1; k <= p; ++k) {
      ++sofar;
      result = result * static_cast<std::size_t>(sofar) / static_cast<std::size_t>(k);
    }
  }
  return result;
}

std::string Composition::to_string() const { return join(parts_, '(', ')'); }

std::vector<Composition> compositions_of(int n) {
  if (n < 1) throw std::invalid_argument("compositions_of requires n >= 1");
  std::vector<Composition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = 1; p <= left; ++p) {
      cur.push_back(p);
      self(self, left - p);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

std::vector<Permutation> distinguished_reps(const Composition& alpha) {
  // label[v] = block receiving value v; values within a block ascend
  std::vector<int> labels;
  for (int k = 0; k < alpha.length(); ++k)
    labels.insert(labels.end(), alpha.parts()[k], k);
  const auto starts = alpha.block_starts();
  std::vector<Permutation> out;
  do {
    std::vector<int> img(alpha.n());
    std::vector<int> fill(starts.begin(), starts.end());
    for (int v = 1; v <= alpha.n(); ++v) img[fill[labels[v - 1]]++ - 1] = v;
    out.emplace_back(std::move(img));
  } while (std::next_permutation(labels.begin(), labels.end()));
  std::sort(out.begin(), out.end());
  return out;
}

CosetFactor coset_factor(const Permutation& w, const Composition& alpha) {
  std::vector<int> d = w.images();
  int pos = 0;
  for (int p : alpha.parts()) {
    std::sort(d.begin() + pos, d.begin() + pos + p);
    pos += p;
  }
  Permutation dp(std::move(d));
  return {dp, dp.inverse() * w};
}

bool in_parabolic(const Permutation& w, const Composition& alpha) {
  int pos = 0;
  for (int p : alpha.parts()) {
    for (int i = pos; i < pos + p; ++i)
      if (w.images()[i] <= pos || w.images()[i] > pos + p) return false;
    pos += p;
  }
  return true;
}

}  // namespace hecke
