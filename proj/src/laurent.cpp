#include "refcurve/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace refcurve {

LaurentY::LaurentY(long c) {
  if (c != 0) terms_.emplace_back(0, Rational(c));
}

LaurentY::LaurentY(const Rational& c) {
  if (sgn(c) != 0) {
    terms_.emplace_back(0, c);
    terms_.back().second.canonicalize();
  }
}

LaurentY LaurentY::monomial(int half, const Rational& c) {
  LaurentY r;
  if (sgn(c) != 0) {
    r.terms_.emplace_back(half, c);
    r.terms_.back().second.canonicalize();
  }
  return r;
}

LaurentY LaurentY::y_pow(int k, const Rational& c) { return monomial(2 * k, c); }

LaurentY LaurentY::quantum_int(int n) {
  LaurentY r;
  if (n == 0) return r;
  int a = n < 0 ? -n : n;
  // exponents (a-1)/2, (a-3)/2, ..., -(a-1)/2 in half-units
  for (int h = -(a - 1); h <= a - 1; h += 2) r.terms_.emplace_back(h, Rational(n < 0 ? -1 : 1));
  return r;
}

LaurentY LaurentY::geometric(int k) {
  if (k < 0) throw std::invalid_argument("geometric: negative k");
  LaurentY r;
  for (int i = 0; i < k; ++i) r.terms_.emplace_back(2 * i, Rational(1));
  return r;
}

LaurentY LaurentY::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  LaurentY r;
  for (auto& t : terms) {
    t.second.canonicalize();
    if (!r.terms_.empty() && r.terms_.back().first == t.first)
      r.terms_.back().second += t.second;
    else
      r.terms_.push_back(std::move(t));
  }
  r.prune();
  return r;
}

void LaurentY::prune() {
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [](const Term& t) { return sgn(t.second) == 0; }),
               terms_.end());
}

Rational LaurentY::coeff(int half) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), half,
                             [](const Term& t, int h) { return t.first < h; });
  if (it != terms_.end() && it->first == half) return it->second;
  return Rational(0);
}

bool LaurentY::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first % 2 == 0; });
}

bool LaurentY::is_symmetric() const {
  std::size_t n = terms_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Term& a = terms_[i];
    const Term& b = terms_[n - 1 - i];
    if (a.first != -b.first || a.second != b.second) return false;
  }
  return true;
}

bool LaurentY::has_integer_coeffs() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.second.get_den() == 1; });
}

bool LaurentY::is_nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return sgn(t.second) > 0; });
}

bool LaurentY::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

LaurentY LaurentY::negate_exponents() const {
  LaurentY r;
  r.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.emplace_back(-it->first, it->second);
  return r;
}

LaurentY LaurentY::pow(unsigned e) const {
  LaurentY result(1L);
  LaurentY base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

LaurentY LaurentY::shift(int half) const {
  LaurentY r = *this;
  for (auto& t : r.terms_) t.first += half;
  return r;
}

LaurentY LaurentY::scale_exponents(int k) const {
  if (k <= 0) throw std::invalid_argument("scale_exponents: k must be positive");
  LaurentY r = *this;
  for (auto& t : r.terms_) t.first *= k;
  return r;
}

LaurentY LaurentY::monomial_inverse() const {
  if (terms_.size() != 1) throw std::domain_error("LaurentY: inverse of a non-monomial");
  return monomial(-terms_[0].first, 1 / terms_[0].second);
}

bool rational_sqrt(const Rational& a, Rational& out) {
  if (sgn(a) < 0) return false;
  mpz_class n = a.get_num(), d = a.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = Rational(rn, rd);
  out.canonicalize();
  return true;
}

namespace {

Rational rational_pow(const Rational& b, int e) {
  Rational r = 1;
  Rational base = e < 0 ? Rational(1 / b) : b;
  unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
  while (k > 0) {
    if (k & 1U) r *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return r;
}

}  // namespace

Rational LaurentY::specialize(const Rational& y0) const {
  if (terms_.empty()) return 0;
  bool half = !is_integral();
  if (sgn(y0) == 0) {
    if (terms_.front().first < 0)
      throw std::domain_error("specialize_y: y=0 with negative exponents");
    return coeff(0);
  }
  Rational base = y0;
  if (half) {
    if (!rational_sqrt(y0, base))
      throw std::domain_error("specialize_y: half-integer exponents need a rational square");
  }
  Rational sum = 0;
  for (const auto& t : terms_) {
    int e = half ? t.first : t.first / 2;
    sum += t.second * rational_pow(base, e);
  }
  return sum;
}

LaurentY& LaurentY::operator+=(const LaurentY& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (sgn(s) != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentY LaurentY::operator-() const {
  LaurentY r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LaurentY& LaurentY::operator-=(const LaurentY& o) { return *this += -o; }

LaurentY& LaurentY::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

LaurentY operator*(const LaurentY& a, const LaurentY& b) {
  LaurentY r;
  r.add_product(a, b);
  return r;
}

LaurentY& LaurentY::operator*=(const LaurentY& o) {
  LaurentY r;
  r.add_product(*this, o);
  *this = std::move(r);
  return *this;
}

void LaurentY::add_product(const LaurentY& a, const LaurentY& b) {
  if (a.terms_.empty() || b.terms_.empty()) return;
  int lo = a.min_half() + b.min_half();
  int hi = a.max_half() + b.max_half();
  if (!terms_.empty()) {
    lo = std::min(lo, min_half());
    hi = std::max(hi, max_half());
  }
  std::vector<Rational> dense(static_cast<std::size_t>(hi - lo + 1));
  std::vector<char> used(dense.size(), 0);
  for (auto& t : terms_) {
    auto i = static_cast<std::size_t>(t.first - lo);
    dense[i] = std::move(t.second);
    used[i] = 1;
  }
  mpq_class tmp;
  for (const auto& x : a.terms_) {
    for (const auto& z : b.terms_) {
      auto i = static_cast<std::size_t>(x.first + z.first - lo);
      mpq_mul(tmp.get_mpq_t(), x.second.get_mpq_t(), z.second.get_mpq_t());
      dense[i] += tmp;
      used[i] = 1;
    }
  }
  terms_.clear();
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (used[i] && sgn(dense[i]) != 0) terms_.emplace_back(static_cast<int>(i) + lo, std::move(dense[i]));
  }
}

bool operator==(const LaurentY& a, const LaurentY& b) { return a.terms_ == b.terms_; }

std::string rational_to_string(const Rational& q) { return q.get_str(); }

std::string LaurentY::to_text(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->second;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    int h = it->first;
    std::string mono;
    if (h != 0) {
      mono = var;
      if (h % 2 != 0)
        mono += "^(" + std::to_string(h) + "/2)";
      else if (h != 2)
        mono += "^" + std::to_string(h / 2);
    }
    if (mono.empty())
      os << c.get_str();
    else if (c == 1)
      os << mono;
    else
      os << c.get_str() << "*" << mono;
  }
  return os.str();
}

}  // namespace refcurve
