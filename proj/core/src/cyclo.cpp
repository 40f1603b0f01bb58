#include "ellchar/cyclo.hpp"

#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include "ellchar/error.hpp"

namespace ellchar {

std::string rational_to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw InvalidArgument("empty rational");
  Rational r;
  if (r.set_str(str, 10) != 0) throw InvalidArgument("malformed rational: " + str);
  if (r.get_den() == 0) throw InvalidArgument("zero denominator: " + str);
  r.canonicalize();
  return r;
}

Rational make_rational(i64 num, i64 den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- RootOfUnity

RootOfUnity::RootOfUnity(i64 numerator, i64 order) {
  if (order <= 0) throw InvalidArgument("RootOfUnity: order must be positive");
  i64 a = mod(numerator, order);
  i64 g = std::gcd(a, order);
  if (a == 0) {
    num_ = 0;
    ord_ = 1;
  } else {
    num_ = a / g;
    ord_ = order / g;
  }
}

RootOfUnity operator+(const RootOfUnity& a, const RootOfUnity& b) {
  i64 l = lcm_checked(a.ord_, b.ord_);
  i64 n = mod(static_cast<i64>((static_cast<__int128>(a.num_) * (l / a.ord_) +
                                static_cast<__int128>(b.num_) * (l / b.ord_)) %
                               l),
              l);
  return RootOfUnity(n, l);
}

RootOfUnity RootOfUnity::operator-() const { return RootOfUnity(-num_, ord_); }

RootOfUnity operator-(const RootOfUnity& a, const RootOfUnity& b) { return a + (-b); }

RootOfUnity operator*(i64 k, const RootOfUnity& a) {
  return RootOfUnity(mulmod(k, a.num_, a.ord_), a.ord_);
}

std::strong_ordering operator<=>(const RootOfUnity& a, const RootOfUnity& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.ord_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.ord_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string RootOfUnity::str() const { return std::to_string(num_) + "/" + std::to_string(ord_); }

RootOfUnity RootOfUnity::parse(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) throw InvalidArgument("RootOfUnity: expected a/N");
  i64 a = 0, n = 0;
  auto r1 = std::from_chars(s.data(), s.data() + slash, a);
  auto r2 = std::from_chars(s.data() + slash + 1, s.data() + s.size(), n);
  if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != s.data() + slash ||
      r2.ptr != s.data() + s.size())
    throw InvalidArgument("RootOfUnity: malformed '" + std::string(s) + "'");
  if (n <= 0) throw InvalidArgument("RootOfUnity: order must be positive");
  return RootOfUnity(a, n);
}

std::pair<RootOfUnity, RootOfUnity> ell_split(const RootOfUnity& x, i64 ell) {
  if (!is_prime(ell)) throw InvalidArgument("ell_split: ell must be prime");
  i64 n = x.order();
  i64 lpart = 1;
  while (n % ell == 0) {
    n /= ell;
    lpart *= ell;
  }
  const i64 rest = n;
  // x = a/(lpart*rest) = u/lpart + w/rest with u = a*rest^{-1} mod lpart, w = a*lpart^{-1} mod rest.
  i64 u = lpart == 1 ? 0 : mulmod(x.numerator(), invmod(rest, lpart), lpart);
  i64 w = rest == 1 ? 0 : mulmod(x.numerator(), invmod(lpart, rest), rest);
  return {RootOfUnity(u, lpart), RootOfUnity(w, rest)};
}

RootOfUnity r_ell_project(const RootOfUnity& x, i64 ell) { return ell_split(x, ell).second; }

RootOfUnity teich_section(const RootOfUnity& u, i64 ell) {
  if (!is_prime(ell)) throw InvalidArgument("teich_section: ell must be prime");
  if (u.order() % ell == 0)
    throw InvalidArgument("teich_section: " + u.str() + " has order divisible by ell=" +
                          std::to_string(ell));
  return u;
}

// ---------------------------------------------------------- cyclotomic bases

namespace {

struct Basis {
  i64 n = 1;
  i64 phi = 1;
  std::vector<i64> cyc;    // monic, size phi + 1
  std::vector<i64> table;  // x^k mod Phi_n for k in [0, n), row-major n x phi; empty when large
};

constexpr i64 kTableLimit = 1 << 22;

std::shared_mutex g_basis_mutex;
std::map<i64, std::unique_ptr<Basis>> g_bases;

std::vector<i64> poly_divide_exact(std::vector<i64> num, const std::vector<i64>& den) {
  // den monic.
  const std::size_t dn = den.size() - 1;
  std::vector<i64> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    i64 c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] = checked_sub(num[i - dn + j], checked_mul(c, den[j]));
  }
  return q;
}

const Basis& basis(i64 n);

std::vector<i64> compute_cyclotomic(i64 n) {
  std::vector<i64> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (i64 d : divisors(n)) {
    if (d == n) continue;
    p = poly_divide_exact(p, basis(d).cyc);
  }
  return p;
}

const Basis& basis(i64 n) {
  {
    std::shared_lock lock(g_basis_mutex);
    auto it = g_bases.find(n);
    if (it != g_bases.end()) return *it->second;
  }
  auto b = std::make_unique<Basis>();
  b->n = n;
  if (n == 1) {
    b->cyc = {-1, 1};
  } else {
    b->cyc = compute_cyclotomic(n);
  }
  b->phi = static_cast<i64>(b->cyc.size()) - 1;
  if (checked_mul(n, b->phi) <= kTableLimit) {
    b->table.assign(static_cast<std::size_t>(n * b->phi), 0);
    std::vector<i64> row(static_cast<std::size_t>(b->phi), 0);
    row[0] = 1;
    for (i64 k = 0; k < n; ++k) {
      std::copy(row.begin(), row.end(), b->table.begin() + k * b->phi);
      // row <- x * row mod Phi_n
      i64 top = row.back();
      for (i64 i = b->phi - 1; i > 0; --i) row[i] = row[i - 1];
      row[0] = 0;
      if (top != 0)
        for (i64 i = 0; i < b->phi; ++i) row[i] = checked_sub(row[i], checked_mul(top, b->cyc[i]));
    }
  }
  std::unique_lock lock(g_basis_mutex);
  auto [it, inserted] = g_bases.emplace(n, std::move(b));
  return *it->second;
}

// Adds c * x^k (mod Phi_n) into coords.
void add_power(const Basis& b, i64 k, const Rational& c, std::vector<Rational>& coords) {
  k = mod(k, b.n);
  if (k < b.phi) {
    coords[k] += c;
    return;
  }
  if (!b.table.empty()) {
    const i64* row = &b.table[k * b.phi];
    for (i64 i = 0; i < b.phi; ++i)
      if (row[i] != 0) coords[i] += c * Rational(static_cast<long>(row[i]));
    return;
  }
  std::vector<Rational> poly(static_cast<std::size_t>(k) + 1);
  poly[k] = c;
  for (i64 deg = k; deg >= b.phi; --deg) {
    if (poly[deg] == 0) continue;
    Rational top = poly[deg];
    for (i64 i = 0; i < b.phi; ++i)
      if (b.cyc[i] != 0) poly[deg - b.phi + i] -= top * Rational(static_cast<long>(b.cyc[i]));
    poly[deg] = 0;
  }
  for (i64 i = 0; i < b.phi; ++i) coords[i] += poly[i];
}

}  // namespace

const std::vector<i64>& cyclotomic_polynomial(i64 n) {
  if (n <= 0) throw InvalidArgument("cyclotomic_polynomial: n must be positive");
  return basis(n).cyc;
}

// --------------------------------------------------------------- CycloNumber

CycloNumber::CycloNumber() : conductor_(1), coords_(1) {}

CycloNumber::CycloNumber(const Rational& r, i64 conductor) : conductor_(conductor) {
  if (conductor <= 0) throw InvalidArgument("CycloNumber: conductor must be positive");
  coords_.assign(static_cast<std::size_t>(basis(conductor).phi), Rational(0));
  coords_[0] = r;
}

CycloNumber::CycloNumber(i64 conductor, std::vector<Rational> coords)
    : conductor_(conductor), coords_(std::move(coords)) {
  for (auto& c : coords_) c.canonicalize();
  if (conductor <= 0) throw InvalidArgument("CycloNumber: conductor must be positive");
  if (static_cast<i64>(coords_.size()) != basis(conductor).phi)
    throw InvalidArgument("CycloNumber: coordinate count must equal phi(conductor)");
}

CycloNumber CycloNumber::root(const RootOfUnity& z, i64 conductor) {
  if (conductor == 0) conductor = z.order();
  if (conductor % z.order() != 0)
    throw InvalidArgument("CycloNumber::root: order " + std::to_string(z.order()) +
                          " does not divide conductor " + std::to_string(conductor));
  const Basis& b = basis(conductor);
  CycloNumber out;
  out.conductor_ = conductor;
  out.coords_.assign(static_cast<std::size_t>(b.phi), Rational(0));
  add_power(b, z.numerator() * (conductor / z.order()), Rational(1), out.coords_);
  return out;
}

CycloNumber CycloNumber::embed(i64 m) const {
  if (m == conductor_) return *this;
  if (m <= 0 || m % conductor_ != 0)
    throw InvalidArgument("CycloNumber::embed: target conductor must be a multiple");
  const Basis& b = basis(m);
  const i64 step = m / conductor_;
  CycloNumber out;
  out.conductor_ = m;
  out.coords_.assign(static_cast<std::size_t>(b.phi), Rational(0));
  for (std::size_t j = 0; j < coords_.size(); ++j)
    if (coords_[j] != 0) add_power(b, static_cast<i64>(j) * step, coords_[j], out.coords_);
  return out;
}

bool CycloNumber::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

std::optional<Rational> CycloNumber::as_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return std::nullopt;
  return coords_[0];
}

CycloNumber CycloNumber::galois(i64 k) const {
  if (std::gcd(mod(k, conductor_), conductor_) != 1 && conductor_ > 1)
    throw InvalidArgument("CycloNumber::galois: exponent not coprime to conductor");
  const Basis& b = basis(conductor_);
  CycloNumber out;
  out.conductor_ = conductor_;
  out.coords_.assign(coords_.size(), Rational(0));
  for (std::size_t j = 0; j < coords_.size(); ++j)
    if (coords_[j] != 0) add_power(b, mulmod(static_cast<i64>(j), k, conductor_), coords_[j], out.coords_);
  return out;
}

std::optional<CycloNumber> CycloNumber::restrict_to(i64 d) const {
  if (d <= 0 || conductor_ % d != 0) throw InvalidArgument("restrict_to: d must divide the conductor");
  if (d == conductor_) return *this;
  // Fixed by every sigma_k with k = 1 mod d?
  for (i64 k = 1 + d; k < conductor_ + d; k += d) {
    if (std::gcd(k, conductor_) != 1) continue;
    if (!(galois(k).coords_ == coords_)) return std::nullopt;
  }
  // Solve E y = coords where the columns of E embed the power basis of Q(zeta_d).
  const Basis& small = basis(d);
  const Basis& big = basis(conductor_);
  const i64 step = conductor_ / d;
  const std::size_t rows = coords_.size(), cols = static_cast<std::size_t>(small.phi);
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<Rational> col(rows, Rational(0));
    add_power(big, static_cast<i64>(j) * step, Rational(1), col);
    for (std::size_t i = 0; i < rows; ++i) a[i][j] = col[i];
  }
  for (std::size_t i = 0; i < rows; ++i) a[i][cols] = coords_[i];
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t k = c; k <= cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][cols] != 0) return std::nullopt;
  std::vector<Rational> y(cols, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) y[pivots[i]] = a[i][cols];
  return CycloNumber(d, std::move(y));
}

CycloNumber CycloNumber::minimal() const {
  if (auto r = as_rational()) return CycloNumber(*r);
  for (i64 d : divisors(conductor_)) {
    if (d == 1) continue;
    if (auto c = restrict_to(d)) return *c;
  }
  return *this;
}

namespace {

std::pair<CycloNumber, CycloNumber> common(const CycloNumber& a, const CycloNumber& b) {
  if (a.conductor() == b.conductor()) return {a, b};
  i64 l = lcm_checked(a.conductor(), b.conductor());
  return {a.embed(l), b.embed(l)};
}

}  // namespace

CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
  CycloNumber r = a;
  r += b;
  return r;
}

CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
  CycloNumber r = a;
  r -= b;
  return r;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& b) {
  if (b.conductor_ == conductor_) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += b.coords_[i];
    return *this;
  }
  if (auto r = b.as_rational()) {
    coords_[0] += *r;
    return *this;
  }
  auto [x, y] = common(*this, b);
  for (std::size_t i = 0; i < x.coords_.size(); ++i) x.coords_[i] += y.coords_[i];
  return *this = std::move(x);
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& b) { return *this += -b; }

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

CycloNumber operator*(const Rational& r, const CycloNumber& a) {
  CycloNumber out = a;
  for (auto& c : out.coords_) c *= r;
  return out;
}

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  if (auto r = a.as_rational()) return *r * b;
  if (auto r = b.as_rational()) return *r * a;
  auto [x, y] = common(a, b);
  const Basis& bs = basis(x.conductor());
  const i64 phi = bs.phi;
  std::vector<Rational> poly(static_cast<std::size_t>(2 * phi - 1), Rational(0));
  for (i64 i = 0; i < phi; ++i) {
    if (x.coords()[i] == 0) continue;
    for (i64 j = 0; j < phi; ++j)
      if (y.coords()[j] != 0) poly[i + j] += x.coords()[i] * y.coords()[j];
  }
  for (i64 deg = 2 * phi - 2; deg >= phi; --deg) {
    if (poly[deg] == 0) continue;
    Rational top = poly[deg];
    for (i64 i = 0; i < phi; ++i)
      if (bs.cyc[i] != 0) poly[deg - phi + i] -= top * Rational(static_cast<long>(bs.cyc[i]));
  }
  poly.resize(static_cast<std::size_t>(phi));
  return CycloNumber(x.conductor(), std::move(poly));
}

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw InvalidArgument("CycloNumber::inverse: zero");
  if (auto r = as_rational()) return CycloNumber(1 / *r);
  // a^{-1} = (prod_{k != 1} sigma_k(a)) / N(a).
  CycloNumber prod(Rational(1));
  for (i64 k = 2; k < conductor_; ++k)
    if (std::gcd(k, conductor_) == 1) prod = prod * galois(k);
  CycloNumber norm = *this * prod;
  auto nr = norm.as_rational();
  if (!nr) throw CheckFailed("CycloNumber::inverse: norm not rational");
  return Rational(1 / *nr) * prod;
}

void CycloNumber::add_root(const RootOfUnity& z, const Rational& c) {
  if (conductor_ % z.order() != 0) {
    *this = embed(lcm_checked(conductor_, z.order()));
  }
  add_power(basis(conductor_), z.numerator() * (conductor_ / z.order()), c, coords_);
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  if (a.conductor_ == b.conductor_) return a.coords_ == b.coords_;
  auto [x, y] = common(a, b);
  return x.coords_ == y.coords_;
}

std::string CycloNumber::str() const {
  if (auto r = as_rational()) return rational_to_string(*r);
  std::string s = "Q(z" + std::to_string(conductor_) + ")[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += rational_to_string(coords_[i]);
  }
  return s + "]";
}

}  // namespace ellchar
