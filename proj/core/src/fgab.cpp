#include "ellchar/fgab.hpp"

#include <deque>
#include <unordered_map>

#include "ellchar/error.hpp"
#include "ellchar/limits.hpp"

namespace ellchar {

// ---------------------------------------------------------------------- FinAb

FinAb::FinAb(std::vector<i64> invariant_factors) : d_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i] < 2) throw InvalidArgument("FinAb: invariant factors must be at least 2");
    if (i > 0 && d_[i] % d_[i - 1] != 0) throw InvalidArgument("FinAb: invariant factors must form a divisibility chain");
    order_ = checked_mul(order_, d_[i]);
  }
}

AbElem FinAb::generator(std::size_t i) const {
  AbElem e = zero();
  e.at(i) = 1;
  return e;
}

AbElem FinAb::normalize(AbElem x) const {
  if (x.size() != d_.size()) throw InvalidArgument("FinAb: element has wrong length");
  for (std::size_t i = 0; i < d_.size(); ++i) x[i] = mod(x[i], d_[i]);
  return x;
}

AbElem FinAb::add(const AbElem& a, const AbElem& b) const {
  AbElem r(d_.size());
  for (std::size_t i = 0; i < d_.size(); ++i) {
    r[i] = a[i] + b[i];
    if (r[i] >= d_[i]) r[i] -= d_[i];
  }
  return r;
}

AbElem FinAb::neg(const AbElem& a) const {
  AbElem r(d_.size());
  for (std::size_t i = 0; i < d_.size(); ++i) r[i] = a[i] == 0 ? 0 : d_[i] - a[i];
  return r;
}

AbElem FinAb::scale(i64 k, const AbElem& a) const {
  AbElem r(d_.size());
  for (std::size_t i = 0; i < d_.size(); ++i) r[i] = mulmod(k, a[i], d_[i]);
  return r;
}

i64 FinAb::element_order(const AbElem& a) const {
  i64 o = 1;
  for (std::size_t i = 0; i < d_.size(); ++i) o = lcm_checked(o, d_[i] / std::gcd(a[i], d_[i]));
  return o;
}

i64 FinAb::index(const AbElem& x) const {
  i64 idx = 0;
  for (std::size_t i = d_.size(); i-- > 0;) idx = idx * d_[i] + x[i];
  return idx;
}

AbElem FinAb::element(i64 index) const {
  AbElem x(d_.size());
  for (std::size_t i = 0; i < d_.size(); ++i) {
    x[i] = index % d_[i];
    index /= d_[i];
  }
  return x;
}

std::vector<AbElem> FinAb::elements() const {
  check_cap(order_, limits().enumeration, "abelian group enumeration");
  std::vector<AbElem> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (i64 i = 0; i < order_; ++i) out.push_back(element(i));
  return out;
}

std::string FinAb::str() const {
  if (d_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(d_[i]);
  }
  return s;
}

// ---------------------------------------------------------------------- AbHom

AbHom AbHom::identity(const FinAb& a) {
  AbHom f{a, a, {}};
  for (std::size_t i = 0; i < a.rank(); ++i) f.images.push_back(a.generator(i));
  return f;
}

AbElem AbHom::apply(const AbElem& x) const {
  AbElem r = codomain.zero();
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j)
      r[j] = mod(r[j] + static_cast<i64>(static_cast<__int128>(x[i]) * images[i][j] % codomain.invariant_factors()[j]),
                 codomain.invariant_factors()[j]);
  }
  return r;
}

AbHom AbHom::compose(const AbHom& other) const {
  if (!(other.codomain == domain)) throw InvalidArgument("AbHom::compose: domain mismatch");
  AbHom r{other.domain, codomain, {}};
  for (const auto& img : other.images) r.images.push_back(apply(img));
  return r;
}

AbHom AbHom::power(i64 k) const {
  if (!(domain == codomain)) throw InvalidArgument("AbHom::power: not an endomorphism");
  AbHom r = identity(domain);
  AbHom base = *this;
  while (k > 0) {
    if (k & 1) r = base.compose(r);
    base = base.compose(base);
    k >>= 1;
  }
  return r;
}

void AbHom::validate() const {
  if (images.size() != domain.rank()) throw CheckFailed("AbHom: wrong number of images");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].size() != codomain.rank()) throw CheckFailed("AbHom: image has wrong length");
    if (domain.invariant_factors()[i] % codomain.element_order(codomain.normalize(images[i])) != 0)
      throw CheckFailed("AbHom: relations not respected at generator " + std::to_string(i));
  }
}

bool AbHom::is_identity() const { return domain == codomain && *this == identity(domain); }

bool AbHom::is_injective() const { return kernel(*this).group.order() == 1; }

bool AbHom::is_automorphism() const { return domain == codomain && is_injective(); }

// --------------------------------------------------------------------- AbChar

AbChar AbChar::trivial(const FinAb& a) { return AbChar{a, std::vector<RootOfUnity>(a.rank())}; }

AbChar AbChar::from_exponents(const FinAb& a, const std::vector<i64>& e) {
  AbChar c{a, {}};
  for (std::size_t i = 0; i < a.rank(); ++i) c.values.emplace_back(e.at(i), a.invariant_factors()[i]);
  return c;
}

std::vector<i64> AbChar::exponents() const {
  std::vector<i64> e(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    e[i] = values[i].numerator() * (domain.invariant_factors()[i] / values[i].order());
  return e;
}

RootOfUnity AbChar::operator()(const AbElem& x) const {
  // Sum of x_i * e_i / d_i over the common denominator d_r.
  if (values.empty()) return {};
  const i64 top = domain.exponent();
  __int128 acc = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (x[i] == 0 || values[i].is_identity()) continue;
    acc = (acc + static_cast<__int128>(mod(x[i], values[i].order())) * values[i].numerator() % values[i].order() * (top / values[i].order())) % top;
  }
  return RootOfUnity(static_cast<i64>(acc), top);
}

AbChar AbChar::compose(const AbHom& phi) const {
  if (!(phi.codomain == domain)) throw InvalidArgument("AbChar::compose: domain mismatch");
  AbChar r{phi.domain, {}};
  for (const auto& img : phi.images) r.values.push_back((*this)(img));
  return r;
}

i64 AbChar::order() const {
  i64 o = 1;
  for (const auto& v : values) o = lcm_checked(o, v.order());
  return o;
}

bool AbChar::is_trivial() const {
  for (const auto& v : values)
    if (!v.is_identity()) return false;
  return true;
}

void AbChar::validate() const {
  if (values.size() != domain.rank()) throw CheckFailed("AbChar: wrong number of values");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (domain.invariant_factors()[i] % values[i].order() != 0)
      throw CheckFailed("AbChar: value order does not divide the invariant factor");
}

AbChar operator+(const AbChar& a, const AbChar& b) {
  AbChar r{a.domain, {}};
  for (std::size_t i = 0; i < a.values.size(); ++i) r.values.push_back(a.values[i] + b.values[i]);
  return r;
}

AbChar AbChar::operator-() const {
  AbChar r{domain, {}};
  for (const auto& v : values) r.values.push_back(-v);
  return r;
}

// ------------------------------------------------------------- presentations

AbElem Presentation::project(const std::vector<i64>& x) const {
  const auto& d = group.invariant_factors();
  AbElem r(d.size(), 0);
  for (std::size_t j = 0; j < d.size(); ++j) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<__int128>(mod(x[i], d[j])) * mod(v[i][j], d[j]) % d[j];
    r[j] = static_cast<i64>(acc % d[j]);
  }
  return r;
}

Presentation from_relations(const IntMatrix& relations, std::size_t generators) {
  Presentation p;
  if (generators == 0) return p;
  if (relations.size() < generators) throw InvalidArgument("from_relations: cokernel is infinite");
  for (const auto& r : relations)
    if (r.size() != generators) throw InvalidArgument("from_relations: ragged relation matrix");
  SmithForm s = smith_normal_form(relations, generators);
  std::vector<i64> factors;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < generators; ++j) {
    if (s.diagonal[j] == 0) throw InvalidArgument("from_relations: cokernel is infinite");
    if (s.diagonal[j] > 1) {
      factors.push_back(s.diagonal[j]);
      keep.push_back(j);
    }
  }
  p.group = FinAb(factors);
  p.v.assign(generators, std::vector<i64>(keep.size()));
  for (std::size_t i = 0; i < generators; ++i)
    for (std::size_t k = 0; k < keep.size(); ++k) p.v[i][k] = mod(s.v[i][keep[k]], factors[k]);
  for (std::size_t k = 0; k < keep.size(); ++k) p.lifts.push_back(s.vinv[keep[k]]);
  return p;
}

namespace {

// Integer left kernel of `m` (rows x cols): rows y with y m = 0, as a lattice basis.
IntMatrix left_kernel(const IntMatrix& m, std::size_t cols) {
  if (cols == 0) return identity_matrix(m.size());
  SmithForm s = smith_normal_form(m, cols);
  std::size_t rank = 0;
  for (i64 d : s.diagonal)
    if (d != 0) ++rank;
  IntMatrix out;
  for (std::size_t i = rank; i < m.size(); ++i) out.push_back(s.u[i]);
  return out;
}

}  // namespace

AbSubgroup subgroup(const FinAb& a, const std::vector<AbElem>& gens) {
  const std::size_t s = gens.size(), r = a.rank();
  if (s == 0 || r == 0) return {FinAb{}, AbHom{FinAb{}, a, {}}};
  IntMatrix m;
  for (const auto& g : gens) m.push_back(a.normalize(g));
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<i64> row(r, 0);
    row[i] = a.invariant_factors()[i];
    m.push_back(row);
  }
  IntMatrix rel;
  for (const auto& y : left_kernel(m, r)) rel.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(s));
  Presentation p = from_relations(rel, s);
  AbHom inc{p.group, a, {}};
  for (const auto& lift : p.lifts) {
    AbElem img = a.zero();
    for (std::size_t i = 0; i < s; ++i) img = a.add(img, a.scale(mod(lift[i], a.exponent()), a.normalize(gens[i])));
    inc.images.push_back(img);
  }
  return {p.group, inc};
}

AbHom quotient(const FinAb& a, const std::vector<AbElem>& gens) {
  const std::size_t r = a.rank();
  if (r == 0) return AbHom{a, FinAb{}, {}};
  IntMatrix m;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<i64> row(r, 0);
    row[i] = a.invariant_factors()[i];
    m.push_back(row);
  }
  for (const auto& g : gens) m.push_back(a.normalize(g));
  Presentation p = from_relations(m, r);
  AbHom proj{a, p.group, {}};
  for (std::size_t i = 0; i < r; ++i) proj.images.push_back(p.project(a.generator(i)));
  return proj;
}

AbSubgroup kernel(const AbHom& f) {
  const std::size_t r = f.domain.rank(), t = f.codomain.rank();
  if (r == 0) return {FinAb{}, AbHom{FinAb{}, f.domain, {}}};
  if (t == 0) return {f.domain, AbHom::identity(f.domain)};
  IntMatrix m;
  for (const auto& img : f.images) m.push_back(img);
  for (std::size_t j = 0; j < t; ++j) {
    std::vector<i64> row(t, 0);
    row[j] = f.codomain.invariant_factors()[j];
    m.push_back(row);
  }
  std::vector<AbElem> gens;
  for (const auto& y : left_kernel(m, t)) gens.push_back(f.domain.normalize(AbElem(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(r))));
  return subgroup(f.domain, gens);
}

AbSubgroup image(const AbHom& f) { return subgroup(f.codomain, f.images); }

std::vector<AbChar> dual_enumerate(const FinAb& a) {
  check_cap(a.order(), limits().enumeration, "dual group enumeration");
  std::vector<AbChar> out;
  out.reserve(static_cast<std::size_t>(a.order()));
  const auto& d = a.invariant_factors();
  std::vector<i64> e(d.size(), 0);
  for (i64 n = 0; n < a.order(); ++n) {
    out.push_back(AbChar::from_exponents(a, e));
    // Increment with the last coordinate fastest (lexicographic order).
    for (std::size_t i = d.size(); i-- > 0;) {
      if (++e[i] < d[i]) break;
      e[i] = 0;
    }
  }
  return out;
}

std::vector<AbChar> char_orbit(const AbChar& chi, const AbHom& phi, i64 n) {
  if (n < 1) throw InvalidArgument("char_orbit: n must be positive");
  if (!phi.is_automorphism()) throw InvalidArgument("char_orbit: phi is not an automorphism");
  if (!phi.power(n).is_identity()) throw InvalidArgument("char_orbit: phi^n is not the identity");
  if (!(chi.domain == phi.domain)) throw InvalidArgument("char_orbit: domain mismatch");
  std::vector<AbChar> orbit{chi};
  for (AbChar c = chi.compose(phi); !(c == chi); c = c.compose(phi)) orbit.push_back(c);
  return orbit;
}

AbelianClosure abelian_closure(u64 identity, std::size_t num_gens,
                               const std::function<u64(u64, std::size_t)>& times_generator) {
  const i64 cap = limits().enumeration;
  std::unordered_map<u64, std::size_t> seen;
  std::vector<u64> elems{identity};
  std::vector<std::vector<i64>> words{std::vector<i64>(num_gens, 0)};
  seen.emplace(identity, 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < num_gens; ++j) {
      u64 y = times_generator(elems[i], j);
      if (seen.emplace(y, elems.size()).second) {
        elems.push_back(y);
        auto w = words[i];
        ++w[j];
        words.push_back(std::move(w));
        check_cap(static_cast<i64>(elems.size()), cap, "abelian closure");
      }
    }
  }
  const i64 n = static_cast<i64>(elems.size());
  AbelianClosure out;
  out.elements = elems;
  if (num_gens == 0 || n == 1) {
    out.coords.assign(elems.size(), AbElem{});
    out.generator_coords.assign(num_gens, AbElem{});
    return out;
  }
  LatticeAccumulator lattice(num_gens, n);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < num_gens; ++j) {
      std::size_t y = seen.at(times_generator(elems[i], j));
      std::vector<i64> rel = words[i];
      ++rel[j];
      bool zero = true;
      for (std::size_t k = 0; k < num_gens; ++k) {
        rel[k] -= words[y][k];
        if (rel[k] != 0) zero = false;
      }
      if (!zero) lattice.add(std::move(rel));
    }
  Presentation p = from_relations(lattice.basis(), num_gens);
  if (p.group.order() != n) throw CheckFailed("abelian_closure: structure does not match the element count");
  out.group = p.group;
  for (std::size_t j = 0; j < num_gens; ++j) {
    std::vector<i64> e(num_gens, 0);
    e[j] = 1;
    out.generator_coords.push_back(p.project(e));
  }
  out.coords.reserve(elems.size());
  for (const auto& w : words) out.coords.push_back(p.project(w));
  return out;
}

}  // namespace ellchar
