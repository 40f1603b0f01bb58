#include "ellchar/ggroup.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "ellchar/error.hpp"
#include "ellchar/limits.hpp"

namespace ellchar {

// ------------------------------------------------------------------ FinGroup

namespace {

std::vector<int> closure_of(int n, const std::vector<int>& gens, const FinGroup::Product& mul) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int g : gens) {
      int y = mul(out[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  return out;
}

std::vector<int> greedy_generators(int n, const FinGroup::Product& mul) {
  std::vector<int> gens;
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  in[0] = 1;
  for (int x = 1; x < n; ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    for (int y : closure_of(n, gens, mul)) in[y] = 1;
  }
  return gens;
}

}  // namespace

FinGroupPtr FinGroup::from_product(int order, const Product& mul, std::vector<int> generators, std::string name) {
  if (order < 1) throw InvalidArgument("FinGroup: order must be positive");
  check_cap(order, limits().group_order, "finite group");
  auto g = std::shared_ptr<FinGroup>(new FinGroup());
  g->name_ = std::move(name);
  g->n_ = order;
  if (order <= limits().table_order && order <= 65535) {
    g->table_.resize(static_cast<std::size_t>(order) * order);
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b) g->table_[static_cast<std::size_t>(a) * order + b] = static_cast<std::uint16_t>(mul(a, b));
  } else {
    g->product_ = mul;
  }
  g->finish(std::move(generators));
  return g;
}

void FinGroup::finish(std::vector<int> generators) {
  generators.erase(std::remove(generators.begin(), generators.end(), 0), generators.end());
  generators_ = std::move(generators);
  Product m = [this](int a, int b) { return mul(a, b); };
  // Breadth-first tree.
  parent_.assign(n_, -1);
  parent_gen_.assign(n_, -1);
  std::vector<int> order{0};
  parent_[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      int y = mul(order[i], generators_[j]);
      if (parent_[y] == -1) {
        parent_[y] = order[i];
        parent_gen_[y] = static_cast<int>(j);
        order.push_back(y);
      }
    }
  if (static_cast<int>(order.size()) != n_) throw CheckFailed("FinGroup: generators do not generate the group");
  orders_.assign(n_, 0);
  inverse_.assign(n_, 0);
  for (int a = 0; a < n_; ++a) {
    int x = a, k = 1;
    while (x != 0) {
      x = mul(x, a);
      ++k;
      if (k > n_ + 1) throw CheckFailed("FinGroup: element of infinite order");
    }
    orders_[a] = k;
    inverse_[a] = pow(a, orders_[a] - 1);
  }
  // Conjugacy classes by closure under conjugation by the generators.
  class_of_.assign(n_, -1);
  classes_.clear();
  for (int x = 0; x < n_; ++x) {
    if (class_of_[x] != -1) continue;
    const int c = static_cast<int>(classes_.size());
    std::vector<int> cls{x};
    class_of_[x] = c;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (int g : generators_) {
        int y = mul(mul(g, cls[i]), inverse_[g]);
        if (class_of_[y] == -1) {
          class_of_[y] = c;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
}

int FinGroup::pow(int a, i64 k) const {
  k = mod(k, orders_.empty() || orders_[a] == 0 ? n_ : orders_[a]);
  int r = 0, base = a;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

int FinGroup::exponent() const {
  i64 e = 1;
  for (int o : orders_) e = lcm_checked(e, o);
  return static_cast<int>(e);
}

std::vector<int> FinGroup::regular_classes(i64 ell) const {
  std::vector<int> out;
  for (int c = 0; c < num_classes(); ++c)
    if (class_order(c) % ell != 0) out.push_back(c);
  return out;
}

int FinGroup::regular_index(int c, i64 ell) const {
  if (class_order(c) % ell == 0) return -1;
  int idx = 0;
  for (int k = 0; k < c; ++k)
    if (class_order(k) % ell != 0) ++idx;
  return idx;
}

bool FinGroup::is_abelian() const {
  for (int a : generators_)
    for (int b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FinGroupPtr FinGroup::from_table(const std::vector<std::vector<int>>& table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InvalidArgument("FinGroup::from_table: empty table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw InvalidArgument("FinGroup::from_table: table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw InvalidArgument("FinGroup::from_table: entry out of range");
  }
  for (int x = 0; x < n; ++x)
    if (table[0][x] != x || table[x][0] != x) throw CheckFailed("FinGroup::from_table: 0 is not the identity");
  for (int x = 0; x < n; ++x) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int y = 0; y < n; ++y) {
      row[table[x][y]] = 1;
      col[table[y][x]] = 1;
    }
    for (int y = 0; y < n; ++y)
      if (!row[y] || !col[y]) throw CheckFailed("FinGroup::from_table: not a Latin square");
  }
  Product mul = [&table](int a, int b) { return table[a][b]; };
  auto gens = greedy_generators(n, mul);
  // Light's associativity test on the generating set.
  for (int g : gens)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (table[table[x][g]][y] != table[x][table[g][y]])
          throw CheckFailed("FinGroup::from_table: product is not associative");
  return from_product(n, mul, gens, std::move(name));
}

FinGroupPtr FinGroup::from_codes(u64 identity, const std::vector<u64>& gens, const std::function<u64(u64, u64)>& mul,
                                 std::string name) {
  std::vector<u64> elems{identity};
  std::unordered_map<u64, int> index{{identity, 0}};
  const i64 cap = limits().group_order;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (u64 g : gens) {
      u64 y = mul(elems[i], g);
      if (index.emplace(y, static_cast<int>(elems.size())).second) {
        elems.push_back(y);
        check_cap(static_cast<i64>(elems.size()), cap, "finite group closure");
      }
    }
  auto shared_elems = std::make_shared<std::vector<u64>>(std::move(elems));
  auto shared_index = std::make_shared<std::unordered_map<u64, int>>(std::move(index));
  Product prod = [shared_elems, shared_index, mul](int a, int b) {
    return shared_index->at(mul((*shared_elems)[a], (*shared_elems)[b]));
  };
  std::vector<int> gen_idx;
  for (u64 g : gens) gen_idx.push_back(shared_index->at(g));
  return from_product(static_cast<int>(shared_elems->size()), prod, gen_idx, std::move(name));
}

FinGroupPtr FinGroup::from_permutations(const std::vector<std::vector<int>>& gens, std::string name) {
  if (gens.empty()) return cyclic(1);
  const std::size_t deg = gens[0].size();
  std::vector<std::vector<int>> elems;
  std::map<std::vector<int>, int> index;
  std::vector<int> id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = static_cast<int>(i);
  elems.push_back(id);
  index.emplace(id, 0);
  auto compose = [](const std::vector<int>& a, const std::vector<int>& b) {
    // (a * b)(x) = a(b(x)): apply b first.
    std::vector<int> r(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
    return r;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      if (g.size() != deg) throw InvalidArgument("from_permutations: permutations of different degrees");
      auto y = compose(elems[i], g);
      if (index.emplace(y, static_cast<int>(elems.size())).second) {
        elems.push_back(y);
        check_cap(static_cast<i64>(elems.size()), limits().group_order, "permutation group");
      }
    }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
  std::vector<int> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(index.at(g));
  return from_product(n, [table](int a, int b) { return table[a][b]; }, gen_idx, std::move(name));
}

FinGroupPtr FinGroup::cyclic(i64 n) {
  std::vector<int> gens;
  if (n > 1) gens.push_back(1);
  const int m = static_cast<int>(n);
  return from_product(m, [m](int a, int b) { return (a + b) % m; }, gens, "Z/" + std::to_string(n));
}

FinGroupPtr FinGroup::abelian(const FinAb& a) {
  check_cap(a.order(), limits().group_order, "abelian group");
  std::vector<int> gens;
  for (std::size_t i = 0; i < a.rank(); ++i) gens.push_back(static_cast<int>(a.index(a.generator(i))));
  auto prod = [a](int x, int y) { return static_cast<int>(a.index(a.add(a.element(x), a.element(y)))); };
  auto g = std::const_pointer_cast<FinGroup>(from_product(static_cast<int>(a.order()), prod, gens, a.str()));
  g->abelian_ = a;
  return g;
}

FinGroupPtr FinGroup::direct_product(const FinGroupPtr& g, const FinGroupPtr& h) {
  const int nh = h->order();
  std::vector<int> gens;
  for (int x : g->generators()) gens.push_back(x * nh);
  for (int y : h->generators()) gens.push_back(y);
  auto prod = [g, h, nh](int a, int b) { return g->mul(a / nh, b / nh) * nh + h->mul(a % nh, b % nh); };
  auto p = std::const_pointer_cast<FinGroup>(
      from_product(checked_mul(g->order(), nh) > 0 ? g->order() * nh : 0, prod, gens, "(" + g->name() + ")x(" + h->name() + ")"));
  p->left_ = g;
  p->right_ = h;
  return p;
}

// ----------------------------------------------------------------- subgroups

Subgroup generate_subgroup(const FinGroupPtr& g, const std::vector<int>& gens) {
  auto elems = closure_of(g->order(), gens, [&g](int a, int b) { return g->mul(a, b); });
  std::vector<int> local(static_cast<std::size_t>(g->order()), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) local[elems[i]] = static_cast<int>(i);
  std::vector<int> local_gens;
  for (int x : gens)
    if (x != 0) local_gens.push_back(local[x]);
  auto prod = [g, elems, local](int a, int b) { return local[g->mul(elems[a], elems[b])]; };
  Subgroup s;
  s.parent = g;
  s.group = FinGroup::from_product(static_cast<int>(elems.size()), prod, local_gens);
  s.embedding = elems;
  s.members = elems;
  std::sort(s.members.begin(), s.members.end());
  return s;
}

std::vector<Subgroup> all_subgroups(const FinGroupPtr& g) {
  std::map<std::vector<int>, std::vector<int>> found;  // members -> generators
  for (int x = 0; x < g->order(); ++x) {
    auto s = generate_subgroup(g, {x});
    found.emplace(s.members, std::vector<int>{x});
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> gen_lists;
    for (const auto& [m, gens] : found) gen_lists.push_back(gens);
    for (std::size_t i = 0; i < gen_lists.size(); ++i)
      for (std::size_t j = i + 1; j < gen_lists.size(); ++j) {
        std::vector<int> gens = gen_lists[i];
        gens.insert(gens.end(), gen_lists[j].begin(), gen_lists[j].end());
        auto elems = closure_of(g->order(), gens, [&g](int a, int b) { return g->mul(a, b); });
        std::sort(elems.begin(), elems.end());
        if (found.emplace(elems, gens).second) grew = true;
      }
  }
  std::vector<Subgroup> out;
  for (const auto& [m, gens] : found) out.push_back(generate_subgroup(g, gens));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.group->order() != b.group->order()) return a.group->order() < b.group->order();
    return a.members < b.members;
  });
  return out;
}

// ------------------------------------------------------------- gl_truncated

FinGroupPtr gl_truncated(i64 q, int n, int h) {
  auto pp = prime_power(q);
  if (!pp) throw InvalidArgument("gl_truncated: q must be a prime power");
  if (n < 1 || h < 1) throw InvalidArgument("gl_truncated: n and h must be positive");
  // |GL_n(F_q)| q^{n^2 (h-1)}
  i64 order = 1;
  for (int i = 0; i < n; ++i) order = checked_mul(order, ipow(q, n) - ipow(q, i));
  order = checked_mul(order, ipow(q, static_cast<i64>(n) * n * (h - 1)));
  check_cap(order, limits().group_order, "gl_truncated");
  FieldPtr F = make_field(pp->first, pp->second);
  const u64 rq = static_cast<u64>(ipow(q, h));  // ring size
  auto unpack = [q, h](u64 x) {
    std::vector<FFCode> c(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) {
      c[i] = static_cast<FFCode>(x % static_cast<u64>(q));
      x /= static_cast<u64>(q);
    }
    return c;
  };
  auto pack = [q](const std::vector<FFCode>& c) {
    u64 x = 0;
    for (std::size_t i = c.size(); i-- > 0;) x = x * static_cast<u64>(q) + c[i];
    return x;
  };
  auto rmul = [F, h, unpack, pack](u64 a, u64 b) {
    auto ca = unpack(a), cb = unpack(b);
    std::vector<FFCode> r(static_cast<std::size_t>(h), 0);
    for (int i = 0; i < h; ++i)
      for (int j = 0; i + j < h; ++j) r[i + j] = F->add(r[i + j], F->mul(ca[i], cb[j]));
    return pack(r);
  };
  auto radd = [F, h, unpack, pack](u64 a, u64 b) {
    auto ca = unpack(a), cb = unpack(b);
    for (int i = 0; i < h; ++i) ca[i] = F->add(ca[i], cb[i]);
    return pack(ca);
  };
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  auto decode = [rq, nn](u64 code) {
    std::vector<u64> m(nn);
    for (std::size_t i = 0; i < nn; ++i) {
      m[i] = code % rq;
      code /= rq;
    }
    return m;
  };
  auto encode = [rq](const std::vector<u64>& m) {
    u64 code = 0;
    for (std::size_t i = m.size(); i-- > 0;) code = code * rq + m[i];
    return code;
  };
  auto mmul = [n, decode, encode, rmul, radd](u64 a, u64 b) {
    auto ma = decode(a), mb = decode(b);
    std::vector<u64> r(ma.size(), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        u64 acc = 0;
        for (int k = 0; k < n; ++k) acc = radd(acc, rmul(ma[i * n + k], mb[k * n + j]));
        r[i * n + j] = acc;
      }
    return encode(r);
  };
  std::vector<u64> ident(nn, 0);
  for (int i = 0; i < n; ++i) ident[i * n + i] = 1;
  std::vector<u64> gens;
  // Additive generators of the ring: x^j w^i.
  std::vector<u64> ring_basis;
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < pp->second; ++j) {
      std::vector<FFCode> c(static_cast<std::size_t>(h), 0);
      c[i] = static_cast<FFCode>(ipow(pp->first, j));
      ring_basis.push_back(pack(c));
    }
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      if (r == s) continue;
      for (u64 b : ring_basis) {
        auto m = ident;
        m[r * n + s] = b;
        gens.push_back(encode(m));
      }
    }
  // Diagonal unit generators: the Teichmueller generator and 1 + x^j w^i.
  std::vector<u64> unit_gens;
  if (q > 2) unit_gens.push_back(F->generator());
  for (int i = 1; i < h; ++i)
    for (int j = 0; j < pp->second; ++j) {
      std::vector<FFCode> c(static_cast<std::size_t>(h), 0);
      c[0] = 1;
      c[i] = static_cast<FFCode>(ipow(pp->first, j));
      unit_gens.push_back(pack(c));
    }
  for (u64 u : unit_gens) {
    auto m = ident;
    m[0] = u;
    gens.push_back(encode(m));
  }
  auto g = FinGroup::from_codes(encode(ident), gens, mmul,
                                "GL_" + std::to_string(n) + "(F_" + std::to_string(q) + "[w]/w^" + std::to_string(h) + ")");
  if (g->order() != order) throw CheckFailed("gl_truncated: order mismatch");
  return g;
}

// -------------------------------------------------------------------- GClass

GClass GClass::zero(const FinGroupPtr& g, Coefficient c) {
  std::size_t k = c.is_char0() ? static_cast<std::size_t>(g->num_classes()) : g->regular_classes(c.ell).size();
  return GClass{g, c, std::vector<CycloNumber>(k)};
}

GClass GClass::from_class_function(const FinGroupPtr& g, Coefficient c, const std::function<CycloNumber(int)>& at_class) {
  GClass x{g, c, {}};
  if (c.is_char0()) {
    for (int k = 0; k < g->num_classes(); ++k) x.values.push_back(at_class(k));
  } else {
    for (int k : g->regular_classes(c.ell)) x.values.push_back(at_class(k));
  }
  return x;
}

CycloNumber GClass::at_class(int c) const {
  if (coeff.is_char0()) return values.at(static_cast<std::size_t>(c));
  int idx = group->regular_index(c, coeff.ell);
  if (idx < 0) throw InvalidArgument("GClass: Brauer class evaluated at an ell-singular class");
  return values.at(static_cast<std::size_t>(idx));
}

CycloNumber GClass::at(int element) const { return at_class(group->class_of(element)); }

bool GClass::is_zero() const {
  for (const auto& v : values)
    if (!v.is_zero()) return false;
  return true;
}

namespace {
void check_compatible(const GClass& a, const GClass& b) {
  if (a.group != b.group || !(a.coeff == b.coeff)) throw InvalidArgument("GClass: operands on different groups or coefficients");
}
}  // namespace

GClass operator+(const GClass& a, const GClass& b) {
  check_compatible(a, b);
  GClass r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
  return r;
}

GClass operator-(const GClass& a, const GClass& b) {
  check_compatible(a, b);
  GClass r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
  return r;
}

GClass operator*(const Rational& s, const GClass& a) {
  GClass r = a;
  for (auto& v : r.values) v = s * v;
  return r;
}

GClass GClass::operator-() const {
  GClass r = *this;
  for (auto& v : r.values) v = -v;
  return r;
}

bool operator==(const GClass& a, const GClass& b) {
  if (a.group != b.group || !(a.coeff == b.coeff) || a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (!(a.values[i] == b.values[i])) return false;
  return true;
}

std::string GClass::str() const {
  std::string s = coeff.is_char0() ? "char0[" : "mod" + std::to_string(coeff.ell) + "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += values[i].minimal().str();
  }
  return s + "]";
}

GClass decomposition_map(const GClass& x, i64 ell) {
  if (!x.coeff.is_char0()) throw InvalidArgument("decomposition_map: expected a characteristic-zero class");
  if (!is_prime(ell)) throw InvalidArgument("decomposition_map: ell must be prime");
  GClass r{x.group, Coefficient{ell}, {}};
  for (int c : x.group->regular_classes(ell)) r.values.push_back(x.values[c]);
  return r;
}

GClass induce(const Subgroup& h, const GClass& x) {
  if (x.group != h.group) throw InvalidArgument("induce: class is not on the subgroup");
  const FinGroup& G = *h.parent;
  const FinGroup& H = *h.group;
  std::vector<CycloNumber> acc(static_cast<std::size_t>(G.num_classes()));
  std::vector<char> used(static_cast<std::size_t>(G.num_classes()), 0);
  for (int e = 0; e < H.order(); ++e) {
    int c = G.class_of(h.embedding[e]);
    if (!x.coeff.is_char0() && G.class_order(c) % x.coeff.ell == 0) continue;
    acc[c] += x.at_class(H.class_of(e));
    used[c] = 1;
  }
  return GClass::from_class_function(h.parent, x.coeff, [&](int c) {
    if (!used[c]) return CycloNumber();
    return make_rational(G.order(), static_cast<i64>(H.order()) * G.class_size(c)) * acc[c];
  });
}

GClass restrict_to(const Subgroup& h, const GClass& x) {
  if (x.group != h.parent) throw InvalidArgument("restrict_to: class is not on the parent group");
  return GClass::from_class_function(h.group, x.coeff, [&](int k) { return x.at(h.embedding[h.group->class_rep(k)]); });
}

CycloNumber inner_product(const GClass& x, const GClass& y) {
  check_compatible(x, y);
  if (!x.coeff.is_char0()) throw InvalidArgument("inner_product: characteristic zero only");
  const FinGroup& G = *x.group;
  CycloNumber s;
  for (int c = 0; c < G.num_classes(); ++c)
    s += Rational(G.class_size(c)) * (x.values[c] * y.values[c].conj());
  return make_rational(1, G.order()) * s;
}

GClass trivial_class(const FinGroupPtr& g, Coefficient c) {
  return GClass::from_class_function(g, c, [](int) { return CycloNumber(1); });
}

GClass regular_class(const FinGroupPtr& g, Coefficient c) {
  return GClass::from_class_function(g, c, [&](int k) { return k == 0 ? CycloNumber(g->order()) : CycloNumber(); });
}

GClass permutation_class(const Subgroup& h, Coefficient c) { return induce(h, trivial_class(h.group, c)); }

std::vector<std::vector<RootOfUnity>> linear_characters(const FinGroupPtr& g) {
  const FinGroup& G = *g;
  std::vector<int> comms;
  std::vector<char> seen(static_cast<std::size_t>(G.order()), 0);
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b) {
      int c = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)));
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  Subgroup d = generate_subgroup(g, comms);
  std::vector<int> rep(static_cast<std::size_t>(G.order()), -1);
  for (int x = 0; x < G.order(); ++x) {
    if (rep[x] != -1) continue;
    for (int m : d.members) rep[G.mul(x, m)] = x;  // x is the least element of its coset
  }
  const auto& gens = G.generators();
  AbelianClosure cl = abelian_closure(0, gens.size(), [&](u64 x, std::size_t j) {
    return static_cast<u64>(rep[G.mul(static_cast<int>(x), gens[j])]);
  });
  std::unordered_map<u64, AbElem> coords;
  for (std::size_t i = 0; i < cl.elements.size(); ++i) coords.emplace(cl.elements[i], cl.coords[i]);
  std::vector<std::vector<RootOfUnity>> out;
  for (const auto& chi : dual_enumerate(cl.group)) {
    std::vector<RootOfUnity> vals(static_cast<std::size_t>(G.order()));
    for (int x = 0; x < G.order(); ++x) vals[x] = chi(coords.at(static_cast<u64>(rep[x])));
    out.push_back(std::move(vals));
  }
  return out;
}

GClass linear_class(const FinGroupPtr& g, const std::vector<RootOfUnity>& lambda) {
  return GClass::from_class_function(g, Coefficient{}, [&](int c) { return CycloNumber::root(lambda[g->class_rep(c)]); });
}

GClass naive_isotypic(const GClass& m, const AbChar& psi) {
  const FinGroupPtr& gt = m.group;
  if (!gt->left_factor() || !gt->right_factor() || !gt->right_factor()->abelian_structure())
    throw InvalidArgument("naive_isotypic: class must live on G x T with T abelian");
  const FinGroup& T = *gt->right_factor();
  if (!(*T.abelian_structure() == psi.domain)) throw InvalidArgument("naive_isotypic: character on the wrong group");
  const FinAb& A = psi.domain;
  const i64 ell = m.coeff.ell;
  if (!m.coeff.is_char0() && psi.order() % ell == 0)
    throw InvalidArgument("naive_isotypic: mod-ell character must have ell' order");
  std::vector<int> ts;
  for (int t = 0; t < T.order(); ++t)
    if (m.coeff.is_char0() || T.element_order(t) % ell != 0) ts.push_back(t);
  const int kt = T.num_classes();
  const Rational scale = make_rational(1, static_cast<i64>(ts.size()));
  return GClass::from_class_function(gt->left_factor(), m.coeff, [&](int c) {
    CycloNumber s;
    for (int t : ts) {
      CycloNumber v = m.at_class(c * kt + T.class_of(t));
      s += v * CycloNumber::root(-psi(A.element(t)));
    }
    return scale * s;
  });
}

}  // namespace ellchar
