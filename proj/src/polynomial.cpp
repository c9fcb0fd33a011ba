#include "conemod/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "conemod/errors.hpp"

namespace conemod {

namespace {

int sign_of(const Rational& q) { return q == 0 ? 0 : (q > 0 ? 1 : -1); }

Polynomial poly_rem(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> r = a.coefficients();
  const auto& d = b.coefficients();
  int db = b.degree();
  while (static_cast<int>(r.size()) - 1 >= db) {
    int dr = static_cast<int>(r.size()) - 1;
    Rational factor = r.back() / d.back();
    for (int i = 0; i <= db; ++i)
      r[static_cast<size_t>(dr - db + i)] -= factor * d[static_cast<size_t>(i)];
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return Polynomial(std::move(r));
}

// Only positive rescaling is allowed: Sturm counting is sign-sensitive.
Polynomial positive_scaled(const Polynomial& p) {
  if (p.is_zero()) return p;
  Rational lead = p.coefficients().back();
  if (lead < 0) lead = -lead;
  std::vector<Rational> c = p.coefficients();
  for (auto& x : c) x /= lead;
  return Polynomial(std::move(c));
}

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain;
  chain.push_back(p);
  chain.push_back(p.derivative());
  while (!chain.back().is_zero() && chain.back().degree() >= 0) {
    const Polynomial& s2 = chain[chain.size() - 2];
    const Polynomial& s1 = chain.back();
    if (s1.degree() == 0) break;
    Polynomial r = poly_rem(s2, s1);
    if (r.is_zero()) break;
    std::vector<Rational> neg = r.coefficients();
    for (auto& c : neg) c = -c;
    chain.push_back(positive_scaled(Polynomial(std::move(neg))));
  }
  return chain;
}

int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int variations_at(const std::vector<Polynomial>& chain, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(sign_of(q.eval(x)));
  return variations(signs);
}

int variations_at_infinity(const std::vector<Polynomial>& chain, bool positive) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) {
    if (q.is_zero()) {
      signs.push_back(0);
      continue;
    }
    int s = sign_of(q.coefficients().back());
    if (!positive && q.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return variations(signs);
}

// Divisors of |n|, ascending; empty when n is too large to enumerate.
std::vector<Integer> small_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  if (n == 0 || n > Integer(1000000000000LL)) return out;
  for (Integer i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      out.push_back(i);
      if (i * i != n) out.push_back(n / i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Exact synthetic division by (x - root); remainder must vanish.
Polynomial deflate(const Polynomial& p, const Rational& root) {
  const auto& c = p.coefficients();
  std::vector<Rational> q(c.size() - 1);
  Rational carry = 0;
  for (int i = p.degree(); i >= 1; --i) {
    carry = c[static_cast<size_t>(i)] + carry * root;
    q[static_cast<size_t>(i - 1)] = carry;
  }
  return Polynomial(std::move(q));
}

Rational cauchy_bound(const Polynomial& p) {
  Rational m = 0;
  const auto& c = p.coefficients();
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    Rational a = c[i] / c.back();
    if (a < 0) a = -a;
    if (a > m) m = a;
  }
  return m + 1;
}

void append_quadratic_roots(const Polynomial& p, std::vector<Rate>& out) {
  const Rational& a = p.coefficient(2);
  const Rational& b = p.coefficient(1);
  const Rational& c = p.coefficient(0);
  Rational disc = b * b - 4 * a * c;
  if (disc < 0)
    fail(ErrorKind::AssumptionViolation, "indicial polynomial has non-real roots");
  if (disc == 0)
    fail(ErrorKind::AssumptionViolation, "indicial polynomial has a repeated root");
  if (auto root = exact_sqrt(disc)) {
    out.push_back(Rate::from_rational((-b + *root) / (2 * a)));
    out.push_back(Rate::from_rational((-b - *root) / (2 * a)));
    return;
  }
  auto [coef, d] = sqrt_decompose(disc);
  Rational u = -b / (2 * a);
  Rational v = coef / (2 * a);
  double sq = std::sqrt(d.template convert_to<double>());
  out.push_back(Rate::from_double(to_double(u) + to_double(v) * sq, surd_label(u, v, d)));
  out.push_back(Rate::from_double(to_double(u) - to_double(v) * sq, surd_label(u, -v, d)));
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::eval(double x) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Integer(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (coeffs_.empty()) return *this;
  std::vector<Rational> c = coeffs_;
  Rational lead = c.back();
  for (auto& x : c) x /= lead;
  return Polynomial(std::move(c));
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = poly_rem(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a.is_zero() ? a : a.monic();
}

int count_real_roots(const Polynomial& p) {
  if (p.degree() <= 0) return 0;
  auto chain = sturm_chain(p);
  return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

int count_real_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.degree() <= 0) return 0;
  auto chain = sturm_chain(p);
  return variations_at(chain, a) - variations_at(chain, b);
}

std::string surd_label(const Rational& u, const Rational& v, const Integer& d) {
  std::string surd;
  Rational av = v < 0 ? -v : v;
  if (av != 1) surd = format_rational(av) + "*";
  surd += "sqrt(" + d.str() + ")";
  if (u == 0) return (v < 0 ? "-" : "") + surd;
  return format_rational(u) + (v < 0 ? "-" : "+") + surd;
}

std::vector<Rate> real_simple_roots(const Polynomial& p) {
  if (p.is_zero()) fail(ErrorKind::Validation, "zero polynomial has no well-defined root set");
  if (p.degree() == 0) return {};

  Polynomial g = poly_gcd(p, p.derivative());
  if (g.degree() >= 1)
    fail(ErrorKind::AssumptionViolation, "indicial polynomial has a repeated root");

  std::vector<Rate> roots;
  if (p.degree() == 1) {
    roots.push_back(Rate::from_rational(-p.coefficient(0) / p.coefficient(1)));
    return roots;
  }
  if (p.degree() == 2) {
    append_quadratic_roots(p, roots);
    std::sort(roots.begin(), roots.end(), rate_less);
    return roots;
  }

  if (count_real_roots(p) < p.degree())
    fail(ErrorKind::AssumptionViolation, "indicial polynomial has non-real roots");

  // Exact rational roots first (candidates p/q from the primitive integer form).
  Polynomial work = p;
  if (work.coefficient(0) == 0) {
    roots.push_back(Rate::from_rational(0));
    work = deflate(work, 0);
  }
  if (work.degree() >= 1) {
    Integer den_lcm = 1;
    for (const auto& c : work.coefficients())
      den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
    Integer a0 = numerator(Rational(work.coefficient(0) * den_lcm));
    Integer al = numerator(Rational(work.coefficients().back() * den_lcm));
    auto ps = small_divisors(a0);
    auto qs = small_divisors(al);
    for (const auto& num : ps) {
      for (const auto& den : qs) {
        for (int s : {1, -1}) {
          if (work.degree() < 1) break;
          Rational cand(s * num, den);
          if (work.eval(cand) == 0) {
            roots.push_back(Rate::from_rational(cand));
            work = deflate(work, cand);
          }
        }
      }
    }
  }

  // Remaining roots are irrational; isolate with Sturm counts and bisect.
  if (work.degree() == 2) {
    append_quadratic_roots(work, roots);
  } else if (work.degree() >= 1) {
    auto chain = sturm_chain(work);
    Rational bound = cauchy_bound(work);
    std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
    std::vector<std::pair<Rational, Rational>> isolated;
    while (!stack.empty()) {
      auto [lo, hi] = stack.back();
      stack.pop_back();
      int n = variations_at(chain, lo) - variations_at(chain, hi);
      if (n == 0) continue;
      if (n == 1) {
        isolated.emplace_back(lo, hi);
        continue;
      }
      Rational mid = (lo + hi) / 2;
      if (work.eval(mid) == 0) {
        roots.push_back(Rate::from_rational(mid));
        work = deflate(work, mid);
        chain = sturm_chain(work);
        stack.clear();
        isolated.clear();
        stack.emplace_back(-bound, bound);
        continue;
      }
      stack.emplace_back(lo, mid);
      stack.emplace_back(mid, hi);
    }
    for (auto [lo, hi] : isolated) {
      for (int it = 0; it < 90 && work.eval(lo) != 0; ++it) {
        Rational mid = (lo + hi) / 2;
        Rational fm = work.eval(mid);
        if (fm == 0) {
          lo = mid;
          break;
        }
        if (sign_of(work.eval(lo)) * sign_of(fm) < 0)
          hi = mid;
        else
          lo = mid;
      }
      if (work.eval(lo) == 0)
        roots.push_back(Rate::from_rational(lo));
      else
        roots.push_back(Rate::from_double(to_double((lo + hi) / 2)));
    }
  }

  std::sort(roots.begin(), roots.end(), rate_less);
  return roots;
}

}  // namespace conemod
