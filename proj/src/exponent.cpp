#include "adjforge/exponent.hpp"

#include "adjforge/error.hpp"

namespace adjforge {

namespace {

std::strong_ordering cmp(const Rational &a, const Rational &b) {
  int c = ::cmp(a, b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

} // namespace

Exponent Exponent::from_coefficient(const Coefficient &c) {
  if (!c.is_polynomial())
    throw ArgumentError("exponent must be affine in the parameters");
  Exponent e;
  for (const auto &[m, q] : c.num().terms()) {
    if (m.empty()) {
      e.constant_ = q;
    } else if (m.size() == 1 && m[0].second == 1) {
      e.linear_.emplace_back(m[0].first, q);
    } else {
      throw ArgumentError("exponent must be affine in the parameters");
    }
  }
  std::sort(e.linear_.begin(), e.linear_.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  return e;
}

Exponent Exponent::operator-() const { return scaled(Rational(-1)); }

Exponent &Exponent::operator+=(const Exponent &o) {
  constant_ += o.constant_;
  std::vector<std::pair<Symbol, Rational>> out;
  std::size_t i = 0, j = 0;
  while (i < linear_.size() || j < o.linear_.size()) {
    if (j == o.linear_.size() || (i < linear_.size() && linear_[i].first < o.linear_[j].first)) {
      out.push_back(linear_[i++]);
    } else if (i == linear_.size() || o.linear_[j].first < linear_[i].first) {
      out.push_back(o.linear_[j++]);
    } else {
      Rational s = linear_[i].second + o.linear_[j].second;
      if (s != 0)
        out.emplace_back(linear_[i].first, s);
      ++i;
      ++j;
    }
  }
  linear_ = std::move(out);
  return *this;
}

Exponent Exponent::scaled(const Rational &k) const {
  if (k == 0)
    return Exponent();
  Exponent e = *this;
  e.constant_ *= k;
  for (auto &[s, q] : e.linear_)
    q *= k;
  return e;
}

Coefficient Exponent::to_coefficient() const {
  Poly p(constant_);
  for (const auto &[s, q] : linear_)
    p += Poly::variable(s).scaled(q);
  return Coefficient(p);
}

long double Exponent::evaluate(const std::function<long double(Symbol)> &value) const {
  long double v = constant_.get_d();
  for (const auto &[s, q] : linear_)
    v += q.get_d() * value(s);
  return v;
}

std::strong_ordering operator<=>(const Exponent &a, const Exponent &b) {
  if (auto c = cmp(a.constant_, b.constant_); c != 0)
    return c;
  const std::size_t n = std::min(a.linear_.size(), b.linear_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.linear_[i].first <=> b.linear_[i].first; c != 0)
      return c;
    if (auto c = cmp(a.linear_[i].second, b.linear_[i].second); c != 0)
      return c;
  }
  return a.linear_.size() <=> b.linear_.size();
}

} // namespace adjforge
