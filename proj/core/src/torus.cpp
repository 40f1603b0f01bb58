#include "ellchar/torus.hpp"

#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "ellchar/error.hpp"
#include "ellchar/limits.hpp"

namespace ellchar {

std::vector<FFCode> TorusLevel::unpack(u64 x) const {
  std::vector<FFCode> c(static_cast<std::size_t>(h_));
  for (int i = 0; i < h_; ++i) {
    c[i] = static_cast<FFCode>(x % static_cast<u64>(residue_size_));
    x /= static_cast<u64>(residue_size_);
  }
  return c;
}

u64 TorusLevel::pack(const std::vector<FFCode>& c) const {
  u64 x = 0;
  for (std::size_t i = c.size(); i-- > 0;) x = x * static_cast<u64>(residue_size_) + c[i];
  return x;
}

u64 TorusLevel::ring_mul(u64 a, u64 b) const {
  const FiniteField& F = *field_;
  auto ca = unpack(a), cb = unpack(b);
  std::vector<FFCode> r(static_cast<std::size_t>(h_), 0);
  for (int i = 0; i < h_; ++i) {
    if (ca[i] == 0) continue;
    for (int j = 0; i + j < h_; ++j) r[i + j] = F.add(r[i + j], F.mul(ca[i], cb[j]));
  }
  return pack(r);
}

u64 TorusLevel::ring_frobenius(u64 a) const {
  auto c = unpack(a);
  for (auto& x : c) x = field_->frobenius(x, f_);
  return pack(c);
}

AbElem TorusLevel::coords(u64 unit) const {
  if (unit >= ring_size_ || index_of_code_[unit] < 0) throw InvalidArgument("TorusLevel::coords: not a unit");
  return group_.element(index_of_code_[unit]);
}

u64 TorusLevel::unit(const AbElem& x) const { return code_of_index_.at(static_cast<std::size_t>(group_.index(group_.normalize(x)))); }

std::vector<AbElem> TorusLevel::filtration_generators(int a) const {
  if (a < 1 || a > h_) throw InvalidArgument("filtration: level a must satisfy 1 <= a <= h");
  return filtration_gens_[static_cast<std::size_t>(a)];
}

AbSubgroup TorusLevel::filtration_subgroup(int a) const { return subgroup(group_, filtration_generators(a)); }

SplitSES TorusLevel::split_ses() const {
  SplitSES s;
  s.kernel = filtration_subgroup(1);
  const i64 units = residue_size_ - 1;
  s.quotient = units > 1 ? FinAb({units}) : FinAb{};
  s.projection = AbHom{group_, s.quotient, {}};
  for (std::size_t i = 0; i < group_.rank(); ++i) {
    u64 x = unit(group_.generator(i));
    FFCode residue = static_cast<FFCode>(x % static_cast<u64>(residue_size_));
    s.projection.images.push_back(units > 1 ? AbElem{field_->dlog(residue)} : AbElem{});
  }
  s.splitting = AbHom{s.quotient, group_, {}};
  if (units > 1) s.splitting.images.push_back(coords(field_->generator()));
  s.quotient_frobenius = AbHom{s.quotient, s.quotient, {}};
  if (units > 1) s.quotient_frobenius.images.push_back(AbElem{mod(q_, units)});
  return s;
}

AbHom TorusLevel::projection_to(const TorusLevel& lower) const {
  if (lower.q_ != q_ || lower.n_ != n_ || lower.h_ > h_) throw InvalidArgument("projection_to: incompatible tori");
  AbHom f{group_, lower.group_, {}};
  const u64 modulus = lower.ring_size_;
  for (std::size_t i = 0; i < group_.rank(); ++i) f.images.push_back(lower.coords(unit(group_.generator(i)) % modulus));
  return f;
}

void TorusLevel::verify() const {
  const i64 qn = residue_size_;
  if (group_.order() != checked_mul(qn - 1, ipow(qn, h_ - 1))) throw CheckFailed("torus: |T_h| != (q^n-1) q^{n(h-1)}");
  if (!frob_.power(n_).is_identity()) throw CheckFailed("torus: Frobenius^n != id");
  frob_.validate();
  for (int a = 1; a <= h_; ++a)
    if (filtration_subgroup(a).group.order() != ipow(qn, h_ - a)) throw CheckFailed("torus: |T^a_h| != q^{n(h-a)}");
  // Structure map on a deterministic sample of products.
  std::mt19937_64 rng(0x5eed ^ static_cast<u64>(q_ * 1000 + n_ * 10 + h_));
  const i64 order = group_.order();
  for (int s = 0; s < 256; ++s) {
    AbElem x = group_.element(static_cast<i64>(rng() % static_cast<u64>(order)));
    AbElem y = group_.element(static_cast<i64>(rng() % static_cast<u64>(order)));
    if (coords(ring_mul(unit(x), unit(y))) != group_.add(x, y)) throw CheckFailed("torus: structure map is not multiplicative");
    if (coords(ring_frobenius(unit(x))) != frob_.apply(x)) throw CheckFailed("torus: Frobenius matrix mismatch");
  }
}

TorusPtr build_torus(i64 q, int n, int h) {
  auto pp = prime_power(q);
  if (!pp) throw InvalidArgument("build_torus: q must be a prime power");
  if (n < 1 || h < 1) throw InvalidArgument("build_torus: n and h must be positive");
  const i64 ring = ipow(q, static_cast<i64>(n) * h);
  check_cap(ring, limits().enumeration, "torus ring enumeration");
  static std::mutex cache_mutex;
  static std::map<std::tuple<i64, int, int>, TorusPtr> cache;
  const auto key = std::make_tuple(q, n, h);
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  auto t = std::shared_ptr<TorusLevel>(new TorusLevel());
  TorusLevel& T = *t;
  T.q_ = q;
  T.p_ = pp->first;
  T.f_ = pp->second;
  T.n_ = n;
  T.h_ = h;
  T.field_ = make_field(T.p_, T.f_ * n);
  T.residue_size_ = T.field_->size();
  T.ring_size_ = static_cast<u64>(ring);

  // Generators: the Teichmueller constant g and 1 + x^j w^i.
  const int fn = T.f_ * n;
  std::vector<u64> gens;
  std::vector<int> gen_level;  // filtration index of each generator (0 for g)
  if (T.residue_size_ > 2) {
    gens.push_back(T.field_->generator());
    gen_level.push_back(0);
  }
  for (int i = 1; i < h; ++i)
    for (int j = 0; j < fn; ++j) {
      std::vector<FFCode> c(static_cast<std::size_t>(h), 0);
      c[0] = 1;
      c[i] = static_cast<FFCode>(ipow(T.p_, j));
      gens.push_back(T.pack(c));
      gen_level.push_back(i);
    }
  AbelianClosure cl = abelian_closure(1, gens.size(), [&](u64 x, std::size_t j) { return T.ring_mul(x, gens[j]); });
  T.group_ = cl.group;
  T.index_of_code_.assign(static_cast<std::size_t>(ring), -1);
  T.code_of_index_.assign(static_cast<std::size_t>(T.group_.order()), 0);
  for (std::size_t i = 0; i < cl.elements.size(); ++i) {
    i64 idx = T.group_.index(cl.coords[i]);
    T.index_of_code_[cl.elements[i]] = idx;
    T.code_of_index_[static_cast<std::size_t>(idx)] = cl.elements[i];
  }
  T.filtration_gens_.assign(static_cast<std::size_t>(h) + 1, {});
  for (int a = 1; a <= h; ++a)
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (gen_level[j] >= a) T.filtration_gens_[a].push_back(cl.generator_coords[j]);
  T.frob_ = AbHom{T.group_, T.group_, {}};
  for (std::size_t i = 0; i < T.group_.rank(); ++i)
    T.frob_.images.push_back(T.coords(T.ring_frobenius(T.unit(T.group_.generator(i)))));
  T.verify();
  std::lock_guard lock(cache_mutex);
  return cache.emplace(key, t).first->second;
}

// ------------------------------------------------------------------ TorusChar

void TorusChar::validate() const {
  if (!torus) throw CheckFailed("TorusChar: missing torus");
  if (!(level_part.domain == torus->unit_group())) throw CheckFailed("TorusChar: level part not defined on T_h");
  level_part.validate();
  if (!coeff.is_char0()) {
    if (uniformizer.valuation != 0) throw CheckFailed("TorusChar: mod-ell character with nonzero valuation");
    if (uniformizer.unit.order() % coeff.ell == 0 || level_part.order() % coeff.ell == 0)
      throw CheckFailed("TorusChar: mod-ell character with a value of order divisible by ell");
  }
}

TorusChar TorusChar::inflate(const TorusPtr& higher) const {
  return TorusChar{higher, level_part.compose(higher->projection_to(*torus)), uniformizer, coeff};
}

TorusChar TorusChar::frobenius_twist() const {
  return TorusChar{torus, level_part.compose(torus->frobenius()), uniformizer, coeff};
}

bool operator<(const TorusChar& a, const TorusChar& b) {
  auto ea = a.level_part.exponents(), eb = b.level_part.exponents();
  if (ea != eb) return ea < eb;
  if (a.uniformizer.unit != b.uniformizer.unit) return a.uniformizer.unit < b.uniformizer.unit;
  if (a.uniformizer.valuation != b.uniformizer.valuation) return a.uniformizer.valuation < b.uniformizer.valuation;
  return a.coeff.ell < b.coeff.ell;
}

}  // namespace ellchar
