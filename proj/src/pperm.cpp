#include "sofic/pperm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace sofic {

PartialPermutation::PartialPermutation(std::size_t degree)
    : images_(degree, kUndefined), dom_(degree), ran_(degree) {}

PartialPermutation::PartialPermutation(std::size_t degree, std::vector<std::int32_t> images)
    : images_(std::move(images)) {
  if (images_.size() != degree) throw DegreeMismatch("image vector length differs from degree");
  rebuild_masks();
}

void PartialPermutation::rebuild_masks() {
  const std::size_t d = images_.size();
  dom_.resize(d);
  ran_.resize(d);
  dom_.reset();
  ran_.reset();
  for (std::size_t x = 0; x < d; ++x) {
    std::int32_t y = images_[x];
    if (y == kUndefined) continue;
    if (y < 0 || static_cast<std::size_t>(y) >= d) {
      throw std::invalid_argument("image " + std::to_string(y + 1) + " out of range for degree " + std::to_string(d));
    }
    if (ran_.test(y)) throw std::invalid_argument("not injective: point " + std::to_string(y + 1) + " hit twice");
    dom_.set(x);
    ran_.set(y);
  }
}

PartialPermutation PartialPermutation::identity(std::size_t degree) {
  std::vector<std::int32_t> img(degree);
  std::iota(img.begin(), img.end(), 0);
  return PartialPermutation(degree, std::move(img));
}

PartialPermutation PartialPermutation::projection(std::size_t degree, const std::vector<std::size_t> &points) {
  std::vector<std::int32_t> img(degree, kUndefined);
  for (std::size_t x : points) {
    if (x >= degree) throw std::invalid_argument("projection point out of range");
    img[x] = static_cast<std::int32_t>(x);
  }
  return PartialPermutation(degree, std::move(img));
}

std::size_t PartialPermutation::fixed_point_count() const {
  std::size_t n = 0;
  for (std::size_t x = 0; x < images_.size(); ++x) n += images_[x] == static_cast<std::int32_t>(x);
  return n;
}

std::vector<std::size_t> PartialPermutation::fixed_points() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] == static_cast<std::int32_t>(x)) out.push_back(x);
  }
  return out;
}

bool PartialPermutation::is_projection() const {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != kUndefined && images_[x] != static_cast<std::int32_t>(x)) return false;
  }
  return true;
}

PartialPermutation PartialPermutation::inverse() const {
  std::vector<std::int32_t> img(images_.size(), kUndefined);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != kUndefined) img[images_[x]] = static_cast<std::int32_t>(x);
  }
  return PartialPermutation(images_.size(), std::move(img));
}

Rational PartialPermutation::trace() const {
  if (images_.empty()) throw std::invalid_argument("trace of a degree-0 map");
  return Rational(static_cast<long long>(fixed_point_count()), static_cast<long long>(images_.size()));
}

PartialPermutation PartialPermutation::restrict_domain(const boost::dynamic_bitset<> &keep) const {
  if (keep.size() != degree()) throw DegreeMismatch("restriction mask has the wrong size");
  std::vector<std::int32_t> img = images_;
  for (std::size_t x = 0; x < img.size(); ++x) {
    if (!keep.test(x)) img[x] = kUndefined;
  }
  return PartialPermutation(degree(), std::move(img));
}

std::string PartialPermutation::to_string() const {
  std::ostringstream os;
  os << images_.size() << ":[";
  bool first = true;
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] == kUndefined) continue;
    if (!first) os << ", ";
    os << (x + 1) << "->" << (images_[x] + 1);
    first = false;
  }
  os << "]";
  return os.str();
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::size_t number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 9) fail("number too large");
    return std::stoul(std::string(s_.substr(start, pos_ - start)));
  }
  bool at_end() {
    skip_ws();
    return pos_ == s_.size();
  }
  [[noreturn]] void fail(const std::string &what) const {
    throw std::invalid_argument("partial permutation '" + std::string(s_) + "': " + what + " at offset " +
                                std::to_string(pos_));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

PartialPermutation PartialPermutation::parse(std::string_view text) {
  Cursor c(text);
  std::size_t d = c.number();
  c.expect(":");
  c.expect("[");
  std::vector<std::int32_t> img(d, kUndefined);
  if (!c.eat("]")) {
    do {
      std::size_t x = c.number();
      c.expect("->");
      std::size_t y = c.number();
      if (x == 0 || y == 0 || x > d || y > d) c.fail("point out of range");
      if (img[x - 1] != kUndefined) c.fail("point " + std::to_string(x) + " mapped twice");
      img[x - 1] = static_cast<std::int32_t>(y - 1);
    } while (c.eat(","));
    c.expect("]");
  }
  if (!c.at_end()) c.fail("trailing characters");
  return PartialPermutation(d, std::move(img));
}

PartialPermutation compose(const PartialPermutation &s, const PartialPermutation &t) {
  if (s.degree() != t.degree()) throw DegreeMismatch("compose: degrees differ");
  std::vector<std::int32_t> img(t.degree(), PartialPermutation::kUndefined);
  for (std::size_t x = 0; x < img.size(); ++x) {
    std::int32_t y = t(x);
    if (y != PartialPermutation::kUndefined) img[x] = s(static_cast<std::size_t>(y));
  }
  return PartialPermutation(t.degree(), std::move(img));
}

std::size_t disagreement_count(const PartialPermutation &s, const PartialPermutation &t) {
  if (s.degree() != t.degree()) throw DegreeMismatch("distance: degrees differ");
  std::size_t n = 0;
  for (std::size_t x = 0; x < s.degree(); ++x) n += s(x) != t(x);
  return n;
}

Distances distances(const PartialPermutation &s, const PartialPermutation &t) {
  const std::size_t d = s.degree();
  std::size_t diff = disagreement_count(s, t);
  std::size_t agree = 0;
  for (std::size_t x = 0; x < d; ++x) agree += s(x) != PartialPermutation::kUndefined && s(x) == t(x);
  const long long dd = static_cast<long long>(d);
  Distances out;
  out.uniform = Rational(static_cast<long long>(diff), dd);
  out.two_norm_sq = Rational(static_cast<long long>(s.rank() + t.rank()) - 2 * static_cast<long long>(agree), dd);
  return out;
}

bool orthogonal(const PartialPermutation &s, const PartialPermutation &t) {
  if (s.degree() != t.degree()) throw DegreeMismatch("orthogonal: degrees differ");
  return !s.domain().intersects(t.domain()) && !s.range().intersects(t.range());
}

PartialPermutation orthogonal_sum(const std::vector<PartialPermutation> &parts) {
  if (parts.empty()) throw std::invalid_argument("orthogonal_sum of an empty family has no degree");
  const std::size_t d = parts.front().degree();
  std::vector<std::int32_t> img(d, PartialPermutation::kUndefined);
  boost::dynamic_bitset<> dom(d), ran(d);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto &p = parts[i];
    if (p.degree() != d) throw DegreeMismatch("orthogonal_sum: degrees differ");
    if (dom.intersects(p.domain()) || ran.intersects(p.range())) {
      throw OverlapError("orthogonal_sum: summand " + std::to_string(i) + " overlaps an earlier summand");
    }
    for (std::size_t x = 0; x < d; ++x) {
      if (p.defined_at(x)) img[x] = p(x);
    }
    dom |= p.domain();
    ran |= p.range();
  }
  return PartialPermutation(d, std::move(img));
}

PartialPermutation corrected_sum(const PartialPermutation &s, const PartialPermutation &t) {
  if (s.degree() != t.degree()) throw DegreeMismatch("corrected_sum: degrees differ");
  std::vector<std::int32_t> img = s.images();
  for (std::size_t x = 0; x < img.size(); ++x) {
    std::int32_t y = t(x);
    if (y == PartialPermutation::kUndefined || s.defined_at(x) || s.range().test(y)) continue;
    img[x] = y;
  }
  return PartialPermutation(s.degree(), std::move(img));
}

namespace {

void matchings(std::size_t d, std::vector<std::size_t> &dom, std::vector<std::size_t> &ran,
               const std::function<void(const PartialPermutation &)> &f) {
  std::vector<std::size_t> perm(ran);
  do {
    std::vector<std::int32_t> img(d, PartialPermutation::kUndefined);
    for (std::size_t i = 0; i < dom.size(); ++i) img[dom[i]] = static_cast<std::int32_t>(perm[i]);
    f(PartialPermutation(d, std::move(img)));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

void subsets(std::size_t d, std::size_t k, std::size_t start, std::vector<std::size_t> &cur,
             const std::function<void(const std::vector<std::size_t> &)> &f) {
  if (cur.size() == k) {
    f(cur);
    return;
  }
  for (std::size_t x = start; x + (k - cur.size()) <= d; ++x) {
    cur.push_back(x);
    subsets(d, k, x + 1, cur, f);
    cur.pop_back();
  }
}

} // namespace

void for_each_partial_permutation(std::size_t d, const std::function<void(const PartialPermutation &)> &f) {
  for (std::size_t k = 0; k <= d; ++k) {
    std::vector<std::size_t> cd, cr;
    subsets(d, k, 0, cd, [&](const std::vector<std::size_t> &dom) {
      subsets(d, k, 0, cr, [&](const std::vector<std::size_t> &ran) {
        std::vector<std::size_t> dd(dom), rr(ran);
        matchings(d, dd, rr, f);
      });
    });
  }
}

void for_each_permutation(std::size_t d, const std::function<void(const PartialPermutation &)> &f) {
  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> dom(all), ran(all);
  matchings(d, dom, ran, f);
}

PartialPermutation conjugate(const PartialPermutation &s, const PartialPermutation &pi) {
  if (!pi.is_total()) throw std::invalid_argument("conjugate: pi must be a total permutation");
  return compose(compose(pi, s), pi.inverse());
}

std::size_t PartialPermutationHash::operator()(const PartialPermutation &p) const {
  std::size_t h = p.degree() * 0x9E3779B97F4A7C15ULL;
  for (std::int32_t y : p.images()) h = (h ^ static_cast<std::size_t>(y + 2)) * 0x100000001B3ULL;
  return h;
}

} // namespace sofic
