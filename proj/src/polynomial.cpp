#include "hwv/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "hwv/matrix.hpp"

namespace hwv {

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

UniPoly UniPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return UniPoly(std::move(v));
}

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  return (1 / leading()) * *this;
}

UniPoly UniPoly::primitive() const {
  if (is_zero()) return {};
  auto ints = primitive_integer_vector(coeffs_);
  // primitive_integer_vector fixes the sign of the first entry; we want the leading one positive.
  if (sgn(ints.back()) < 0) {
    for (auto& e : ints) e = -e;
  }
  std::vector<Rational> v;
  v.reserve(ints.size());
  for (auto& e : ints) v.emplace_back(e);
  return UniPoly(std::move(v));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] += b.coeffs_[k];
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + Rational(-1) * b; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(v));
}

UniPoly operator*(const Rational& c, const UniPoly& a) {
  std::vector<Rational> v = a.coeffs_;
  for (auto& e : v) e *= c;
  return UniPoly(std::move(v));
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = (mag == 1);
    if (k == 0 || !unit) out << hwv::to_string(mag);
    if (k > 0) {
      if (!unit) out << "*";
      out << var;
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Rational> quot(a.degree() - db + 1, Rational(0));
  const Rational lead = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational c = rem[k] / lead;
    quot[k - db] = c;
    if (sgn(c) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= c * b.coefficients()[j];
  }
  rem.resize(db);
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.primitive();
  }
  return x.monic();
}

UniPoly interpolate(std::span<const std::pair<Rational, Rational>> points, std::optional<int> max_degree) {
  std::vector<Rational> xs, ys;
  for (const auto& [x, y] : points) {
    auto it = std::find(xs.begin(), xs.end(), x);
    if (it != xs.end()) {
      if (ys[it - xs.begin()] != y) {
        throw DomainError("inconsistent interpolation data: two values at q = " + hwv::to_string(x));
      }
      continue;
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.empty()) return {};

  // Newton divided differences, then expand into the monomial basis.
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    }
  }
  UniPoly result = UniPoly::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    result = result * UniPoly({-xs[i], Rational(1)}) + UniPoly::constant(dd[i]);
  }
  if (max_degree && result.degree() > *max_degree) {
    throw DomainError("inconsistent interpolation data: degree " + std::to_string(result.degree()) +
                      " exceeds bound " + std::to_string(*max_degree));
  }
  return result;
}

namespace {

int sign_of(const UniPoly& p, const Rational& x) { return sgn(p(x)); }

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    UniPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign sequence intact.
    Rational scale = 1 / abs(r.leading());
    chain.push_back(Rational(-1) * (scale * r));
  }
  return chain;
}

int variations(const std::vector<UniPoly>& chain, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& p : chain) {
    int s = sign_of(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

std::vector<Rational> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("rational_roots of the zero polynomial");
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;

  UniPoly sf = divmod(p, gcd(p, p.derivative())).first.primitive();
  if (sgn(sf.coefficient(0)) == 0) {
    roots.emplace_back(0);
    sf = UniPoly(std::vector<Rational>(sf.coefficients().begin() + 1, sf.coefficients().end()));
  }
  if (sf.degree() <= 0) return roots;

  // Any rational root has the form m / a_n with m an integer, so isolating a
  // real root to width below 1/(2|a_n|) leaves at most one candidate to test.
  const Rational lead = abs(sf.leading());
  Rational bound = 0;
  for (const auto& c : sf.coefficients()) bound = std::max(bound, Rational(Rational(abs(c)) / lead));
  bound += 1;
  const Rational target_width = 1 / (2 * lead);
  auto chain = sturm_chain(sf);

  struct Interval {
    Rational lo, hi;
  };
  std::vector<Interval> work{{-bound, bound}};
  auto count = [&](const Rational& lo, const Rational& hi) { return variations(chain, lo) - variations(chain, hi); };

  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    int n = count(iv.lo, iv.hi);
    if (n == 0) continue;
    if (n == 1 && iv.hi - iv.lo < target_width) {
      Rational scaled = iv.lo * lead;
      Integer m;
      mpz_cdiv_q(m.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      for (int step = 0; step < 2; ++step, ++m) {
        Rational cand = Rational(m) / lead;
        cand.canonicalize();
        if (cand > iv.lo && cand < iv.hi && sgn(sf(cand)) == 0) roots.push_back(cand);
      }
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    if (sign_of(sf, mid) == 0) {
      roots.push_back(mid);
      Rational delta = (iv.hi - iv.lo) / 4;
      while (sign_of(sf, mid - delta) == 0 || sign_of(sf, mid + delta) == 0 || count(mid - delta, mid + delta) != 1) {
        delta /= 2;
      }
      work.push_back({iv.lo, mid - delta});
      work.push_back({mid + delta, iv.hi});
      continue;
    }
    work.push_back({iv.lo, mid});
    work.push_back({mid, iv.hi});
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

CommonRoots common_roots(std::span<const UniPoly> polys) {
  UniPoly g;
  for (const auto& p : polys) g = gcd(g, p);
  if (g.is_zero()) throw DomainError("common_roots needs at least one nonzero polynomial");
  return {rational_roots(g), g};
}

}  // namespace hwv
