#include "hecke/segments.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "hecke/field.hpp"

namespace hecke {

namespace {

int reduce(int a, int e) { return e > 0 ? ((a % e) + e) % e : a; }

bool canonical_less(const Segment& x, const Segment& y) {
  if (x.length != y.length) return x.length > y.length;
  return x.start < y.start;
}

}  // namespace

Support parse_support(std::string_view csv, int e) {
  Support s;
  csv = detail::trim(csv);
  if (csv.empty()) return s;
  std::size_t pos = 0;
  for (;;) {
    std::size_t comma = csv.find(',', pos);
    auto tok = csv.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    ++s[reduce(static_cast<int>(detail::parse_int64(tok)), e)];
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return s;
}

std::string format_support(const Support& s) {
  std::string out;
  for (const auto& [r, c] : s)
    for (int i = 0; i < c; ++i) {
      if (!out.empty()) out += ",";
      out += std::to_string(r);
    }
  return out;
}

Support consecutive_support(int n, int e) {
  Support s;
  for (int i = 0; i < n; ++i) ++s[reduce(i, e)];
  return s;
}

Multisegment::Multisegment(int e, std::vector<Segment> segments) : e_(e), segs_(std::move(segments)) {
  if (e < 0) throw std::invalid_argument("period e must be >= 0");
  for (auto& s : segs_) {
    if (s.length < 1) throw std::invalid_argument("segment length must be >= 1");
    s.start = reduce(s.start, e);
  }
  std::sort(segs_.begin(), segs_.end(), canonical_less);
}

Multisegment Multisegment::parse(std::string_view text, int e) {
  text = detail::trim(text);
  std::vector<Segment> segs;
  if (text.empty() || text == "{}") return Multisegment(e, segs);
  std::size_t pos = 0;
  for (;;) {
    std::size_t open = text.find('(', pos), close = text.find(')', pos);
    if (open != pos || close == std::string_view::npos)
      throw ParseError("expected (a,n) in multisegment '" + std::string(text) + "'");
    auto inner = text.substr(open + 1, close - open - 1);
    std::size_t comma = inner.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected (a,n)");
    Segment s{static_cast<int>(detail::parse_int64(inner.substr(0, comma))),
              static_cast<int>(detail::parse_int64(inner.substr(comma + 1)))};
    if (s.length < 1) throw ParseError("segment length must be >= 1");
    segs.push_back(s);
    pos = close + 1;
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos == text.size()) break;
    if (text[pos] != '+') throw ParseError("expected '+' between segments");
    ++pos;
    while (pos < text.size() && text[pos] == ' ') ++pos;
  }
  return Multisegment(e, std::move(segs));
}

Multisegment Multisegment::from_json(const nlohmann::json& j) {
  try {
    std::vector<Segment> segs;
    for (const auto& s : j.at("segments")) segs.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
    return Multisegment(j.at("e").get<int>(), std::move(segs));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed multisegment JSON: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
}

int Multisegment::weight() const {
  int w = 0;
  for (const auto& s : segs_) w += s.length;
  return w;
}

std::vector<int> Multisegment::lengths() const {
  std::vector<int> l;
  for (const auto& s : segs_) l.push_back(s.length);
  return l;
}

Support Multisegment::support() const {
  Support sup;
  for (const auto& s : segs_)
    for (int i = 0; i < s.length; ++i) ++sup[reduce(s.start + i, e_)];
  return sup;
}

bool Multisegment::is_aperiodic() const {
  if (e_ == 0) return true;
  std::map<int, std::set<int>> starts;
  for (const auto& s : segs_) starts[s.length].insert(s.start);
  for (const auto& [len, st] : starts)
    if (static_cast<int>(st.size()) == e_) return false;
  return true;
}

Multisegment Multisegment::shifted(int k) const {
  std::vector<Segment> segs = segs_;
  for (auto& s : segs) s.start += k;
  return Multisegment(e_, std::move(segs));
}

std::string Multisegment::to_string() const {
  if (segs_.empty()) return "{}";
  std::string out;
  for (const auto& s : segs_) {
    if (!out.empty()) out += "+";
    out += "(" + std::to_string(s.start) + "," + std::to_string(s.length) + ")";
  }
  return out;
}

nlohmann::json Multisegment::to_json() const {
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : segs_) segs.push_back({s.start, s.length});
  return {{"e", e_}, {"segments", segs}};
}

std::strong_ordering operator<=>(const Multisegment& a, const Multisegment& b) {
  if (auto c = a.e_ <=> b.e_; c != 0) return c;
  if (auto c = a.lengths() <=> b.lengths(); c != 0) return c;
  return a.segs_ <=> b.segs_;
}

bool preceq(const Multisegment& mu, const Multisegment& nu) {
  if (mu.weight() != nu.weight())
    throw std::invalid_argument("preceq needs multisegments of equal weight");
  const auto a = mu.lengths(), b = nu.lengths();
  int sa = 0, sb = 0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    sa += k < a.size() ? a[k] : 0;
    sb += k < b.size() ? b[k] : 0;
    if (sa > sb) return false;
  }
  return true;
}

std::vector<Multisegment> enumerate_multisegments(int n, int e, const std::optional<Support>& support,
                                                  bool aperiodic_only) {
  if (n < 0) throw std::invalid_argument("weight must be >= 0");
  if (e < 0) throw std::invalid_argument("period e must be >= 0");
  if (e == 0 && !support) throw std::invalid_argument("e = 0 needs a support filter");
  Support target;
  if (support) {
    for (const auto& [r, c] : *support)
      if (c > 0) target[reduce(r, e)] += c;
    int total = 0;
    for (const auto& [r, c] : target) total += c;
    if (total != n) return {};
  }
  // candidate segments in canonical order
  std::vector<Segment> cand;
  std::vector<int> starts;
  if (support)
    for (const auto& [r, c] : target) starts.push_back(r);
  else
    for (int r = 0; r < e; ++r) starts.push_back(r);
  for (int len = n; len >= 1; --len)
    for (int a : starts) {
      if (support) {
        Support need;
        for (int i = 0; i < len; ++i) ++need[reduce(a + i, e)];
        bool fits = true;
        for (const auto& [r, c] : need)
          if (target.count(r) == 0 || target[r] < c) fits = false;
        if (!fits) continue;
      }
      cand.push_back({a, len});
    }
  std::vector<Multisegment> out;
  std::vector<Segment> cur;
  Support used;
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    if (left == 0) {
      Multisegment m(e, cur);
      if (!aperiodic_only || m.is_aperiodic()) out.push_back(std::move(m));
      return;
    }
    for (std::size_t i = from; i < cand.size(); ++i) {
      const Segment s = cand[i];
      if (s.length > left) continue;
      bool ok = true;
      if (support) {
        for (int k = 0; k < s.length; ++k)
          if (++used[reduce(s.start + k, e)] > target[reduce(s.start + k, e)]) ok = false;
      }
      if (ok) {
        cur.push_back(s);
        self(self, i, left - s.length);
        cur.pop_back();
      }
      if (support)
        for (int k = 0; k < s.length; ++k) --used[reduce(s.start + k, e)];
    }
  };
  rec(rec, 0, n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hecke
