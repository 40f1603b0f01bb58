#include "ellchar/fields.hpp"

#include <map>
#include <mutex>

#include "ellchar/error.hpp"
#include "ellchar/limits.hpp"

namespace ellchar {

namespace {

using Poly = std::vector<i64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, i64 p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  i64 lead_inv = invmod(f.back(), p);
  while (a.size() > df) {
    i64 c = mulmod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) a[shift + i] = mod(a[shift + i] - c * f[i], p);
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, i64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, i64 p) { return poly_mod(poly_mul(a, b, p), f, p); }

Poly poly_powmod(Poly base, i64 e, const Poly& f, i64 p) {
  Poly r = poly_mod({1}, f, p);
  base = poly_mod(base, f, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly decode(u64 code, i64 p, int k) {
  Poly c(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    c[i] = static_cast<i64>(code % static_cast<u64>(p));
    code /= static_cast<u64>(p);
  }
  trim(c);
  return c;
}

u64 encode(const Poly& c, i64 p) {
  u64 code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * static_cast<u64>(p) + static_cast<u64>(mod(c[i], p));
  return code;
}

// Polynomial-basis arithmetic used before the tables exist.
struct RawField {
  i64 p;
  int k;
  Poly f;
  u64 mul(u64 a, u64 b) const { return encode(poly_mulmod(decode(a, p, k), decode(b, p, k), f, p), p); }
  u64 pow(u64 a, i64 e) const { return encode(poly_powmod(decode(a, p, k), e, f, p), p); }
  u64 eval(const Poly& poly, u64 x) const {
    Poly acc;
    Poly xp = decode(x, p, k);
    for (std::size_t i = poly.size(); i-- > 0;) {
      acc = poly_mulmod(acc, xp, f, p);
      if (acc.empty()) acc.push_back(0);
      acc[0] = mod(acc[0] + poly[i], p);
      trim(acc);
    }
    return encode(acc, p);
  }
};

bool is_primitive(const RawField& rf, u64 c, i64 units, const std::vector<std::pair<i64, int>>& primes) {
  if (c == 0) return false;
  if (rf.pow(c, units) != 1) return false;
  for (auto [r, e] : primes)
    if (rf.pow(c, units / r) == 1) return false;
  return true;
}

std::mutex g_cache_mutex;
std::map<std::pair<i64, int>, FieldPtr> g_cache;

}  // namespace

bool is_irreducible(const std::vector<i64>& poly_in, i64 p) {
  Poly f = poly_in;
  for (auto& c : f) c = mod(c, p);
  trim(f);
  if (f.size() < 2) return false;
  if (f.back() != 1) throw InvalidArgument("is_irreducible: modulus must be monic");
  const i64 k = static_cast<i64>(f.size()) - 1;
  if (k == 1) return true;
  // x^{p^k} = x mod f, and gcd(x^{p^{k/r}} - x, f) = 1 for primes r | k.
  std::vector<Poly> frob(static_cast<std::size_t>(k) + 1);
  frob[0] = poly_mod({0, 1}, f, p);
  for (i64 i = 1; i <= k; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
  if (frob[k] != frob[0]) return false;
  for (auto [r, e] : factorize(k)) {
    Poly d = frob[k / r];
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = mod(d[1] - 1, p);
    trim(d);
    Poly g = poly_gcd(f, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

FieldPtr build_field(i64 p, int k, std::vector<i64> modulus, bool compatible) {
  const i64 size = ipow(p, k);
  check_cap(size, limits().field_size, "finite field");
  auto field = std::shared_ptr<FiniteField>(new FiniteField());
  FiniteField& F = *field;
  F.p_ = p;
  F.k_ = k;
  F.size_ = size;
  F.units_ = static_cast<u32>(size - 1);
  F.modulus_ = modulus;
  F.compatible_ = compatible;

  RawField rf{p, k, modulus};
  const i64 units = size - 1;
  auto primes = factorize(units);
  std::vector<std::pair<Poly, i64>> conditions;  // (minimal polynomial, exponent)
  if (compatible) {
    for (i64 a : divisors(k)) {
      if (a == k) continue;
      FieldPtr sub = make_field(p, static_cast<int>(a));
      conditions.emplace_back(sub->minimal_polynomial(sub->generator()), units / (sub->size() - 1));
    }
  }
  u64 gen = 0;
  for (u64 c = 1; c < static_cast<u64>(size); ++c) {
    if (!is_primitive(rf, c, units, primes)) continue;
    bool ok = true;
    for (const auto& [mp, e] : conditions) {
      if (rf.eval(mp, rf.pow(c, e)) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = c;
      break;
    }
  }
  if (gen == 0 && size > 2) throw CheckFailed("finite field: no compatible generator found");
  if (size == 2) gen = 1;
  F.gen_ = static_cast<FFCode>(gen);

  F.exp_.assign(static_cast<std::size_t>(units), 0);
  F.log_.assign(static_cast<std::size_t>(size), 0);
  const Poly g = decode(gen, p, k);
  Poly cur{1};
  for (i64 d = 0; d < units; ++d) {
    u64 code = encode(cur, p);
    F.exp_[d] = static_cast<u32>(code);
    F.log_[code] = static_cast<u32>(d);
    cur = poly_mulmod(cur, g, modulus, p);
  }
  F.zech_.assign(static_cast<std::size_t>(units), F.units_);
  for (i64 d = 0; d < units; ++d) {
    Poly c = decode(F.exp_[d], p, k);
    if (c.empty()) c.push_back(0);
    c[0] = mod(c[0] + 1, p);
    trim(c);
    if (!c.empty()) F.zech_[d] = F.log_[encode(c, p)];
  }
  return field;
}

FieldPtr make_field(i64 p, int k, const std::optional<std::vector<i64>>& modulus) {
  if (!is_prime(p)) throw InvalidArgument("make_field: characteristic must be prime");
  if (k < 1) throw InvalidArgument("make_field: degree must be positive");
  if (modulus) {
    Poly f = *modulus;
    for (auto& c : f) c = mod(c, p);
    trim(f);
    if (static_cast<int>(f.size()) != k + 1) throw InvalidArgument("make_field: modulus has wrong degree");
    if (f.back() != 1) throw InvalidArgument("make_field: modulus must be monic");
    if (!is_irreducible(f, p)) throw InvalidArgument("make_field: modulus is reducible");
    return build_field(p, k, std::move(f), false);
  }
  {
    std::lock_guard lock(g_cache_mutex);
    auto it = g_cache.find({p, k});
    if (it != g_cache.end()) return it->second;
  }
  check_cap(ipow(p, k), limits().field_size, "finite field");
  Poly f;
  const i64 size = ipow(p, k);
  for (i64 low = 0; low < size; ++low) {
    Poly cand = decode(static_cast<u64>(low), p, k);
    cand.resize(static_cast<std::size_t>(k) + 1, 0);
    cand[k] = 1;
    if (is_irreducible(cand, p)) {
      f = std::move(cand);
      break;
    }
  }
  FieldPtr field = build_field(p, k, std::move(f), true);
  std::lock_guard lock(g_cache_mutex);
  return g_cache.emplace(std::make_pair(p, k), field).first->second;
}

FFCode FiniteField::add(FFCode a, FFCode b) const {
  if (p_ == 2) return a ^ b;
  if (a == 0) return b;
  if (b == 0) return a;
  u32 la = log_[a];
  u32 d = log_[b] >= la ? log_[b] - la : log_[b] + units_ - la;
  u32 z = zech_[d];
  if (z == units_) return 0;
  u32 s = la + z;
  if (s >= units_) s -= units_;
  return exp_[s];
}

FFCode FiniteField::neg(FFCode a) const {
  if (p_ == 2 || a == 0) return a;
  // -1 = g^{units/2} for odd p.
  u32 s = log_[a] + units_ / 2;
  if (s >= units_) s -= units_;
  return exp_[s];
}

FFCode FiniteField::inv(FFCode a) const {
  if (a == 0) throw InvalidArgument("FiniteField::inv: zero");
  return exp_[log_[a] == 0 ? 0 : units_ - log_[a]];
}

FFCode FiniteField::pow(FFCode a, i64 e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw InvalidArgument("FiniteField::pow: zero to a negative power");
    return 0;
  }
  return exp(static_cast<i64>(static_cast<__int128>(log_[a]) * mod(e, units_) % units_));
}

i64 FiniteField::dlog(FFCode x) const {
  if (x == 0 || x >= size_) throw InvalidArgument("FiniteField::dlog: argument must be a nonzero element");
  return log_[x];
}

FFCode FiniteField::frobenius(FFCode x, int base_degree) const {
  if (base_degree <= 0 || k_ % base_degree != 0)
    throw InvalidArgument("frobenius: base degree must divide the field degree");
  if (x == 0) return 0;
  return pow(x, ipow(p_, base_degree));
}

RootOfUnity FiniteField::teich_lift(FFCode x) const {
  if (x == 0) throw InvalidArgument("teich_lift: zero has no Teichmueller lift");
  return RootOfUnity(dlog(x), units_);
}

FFCode FiniteField::teich_inverse(const RootOfUnity& z) const {
  if (units_ % z.order() != 0)
    throw InvalidArgument("teich_inverse: root of unity " + z.str() + " not in F_" + std::to_string(size_));
  return exp(z.numerator() * (units_ / z.order()));
}

i64 FiniteField::element_order(FFCode x) const { return teich_lift(x).order(); }

std::vector<i64> FiniteField::coeffs(FFCode x) const {
  Poly c = decode(x, p_, k_);
  c.resize(static_cast<std::size_t>(k_), 0);
  return c;
}

FFCode FiniteField::from_coeffs(const std::vector<i64>& c) const {
  Poly r = c;
  for (auto& v : r) v = mod(v, p_);
  r = poly_mod(std::move(r), modulus_, p_);
  return static_cast<FFCode>(encode(r, p_));
}

std::vector<i64> FiniteField::minimal_polynomial(FFCode x) const {
  std::vector<FFCode> conj{x};
  for (FFCode y = pow(x, p_); y != x; y = pow(y, p_)) conj.push_back(y);
  std::vector<FFCode> poly{1};  // product of (X - c)
  for (FFCode c : conj) {
    std::vector<FFCode> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = add(next[i + 1], poly[i]);
      next[i] = sub(next[i], mul(poly[i], c));
    }
    poly = std::move(next);
  }
  std::vector<i64> out;
  for (FFCode c : poly) {
    if (c >= p_) throw CheckFailed("minimal_polynomial: coefficient outside the prime field");
    out.push_back(c);
  }
  return out;
}

FFCode FiniteField::embed_from(const FiniteField& sub, FFCode x) const {
  if (sub.p_ != p_ || k_ % sub.k_ != 0) throw InvalidArgument("embed_from: not a subfield");
  if (!compatible_ || !sub.compatible_) throw InvalidArgument("embed_from: fields are not tower compatible");
  if (x == 0) return 0;
  const i64 e = units_ / sub.units_;
  return exp(static_cast<i64>(sub.log_[x]) * e);
}

std::string FiniteField::str(FFCode x) const {
  auto c = coeffs(x);
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

FFElem frobenius(const FFElem& x, int base_degree) { return {x.field, x.field->frobenius(x.code, base_degree)}; }

RootOfUnity teich_lift(const FFElem& x) { return x.field->teich_lift(x.code); }

}  // namespace ellchar
