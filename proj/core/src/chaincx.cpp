#include "ellchar/chaincx.hpp"

#include <algorithm>
#include <random>

#include "ellchar/error.hpp"
#include "ellchar/limits.hpp"

namespace ellchar {

// ----------------------------------------------------------------- CoeffSpec

CoeffSpec CoeffSpec::cyclotomic(i64 n) {
  if (n < 1) throw InvalidArgument("CoeffSpec: conductor must be positive");
  CoeffSpec s;
  s.kind = Kind::Cyclotomic;
  s.conductor = n;
  return s;
}

CoeffSpec CoeffSpec::finite(i64 ell, int k) {
  if (!is_prime(ell) || k < 1) throw InvalidArgument("CoeffSpec: finite field needs a prime and a positive degree");
  CoeffSpec s;
  s.kind = Kind::Finite;
  s.field = make_field(ell, k);
  return s;
}

Coefficient CoeffSpec::coefficient() const {
  return kind == Kind::Finite ? Coefficient{field->characteristic()} : Coefficient{};
}

bool CoeffSpec::realizes(const RootOfUnity& z) const {
  switch (kind) {
    case Kind::Integers:
      return z.order() <= 2;
    case Kind::Cyclotomic:
      return lcm_checked(conductor, 2) % z.order() == 0;
    case Kind::Finite:
      return (field->size() - 1) % z.order() == 0;
  }
  return false;
}

std::string CoeffSpec::str() const {
  switch (kind) {
    case Kind::Integers:
      return "Z";
    case Kind::Cyclotomic:
      return conductor == 1 ? "Q" : "Q(z" + std::to_string(conductor) + ")";
    case Kind::Finite:
      return "F_" + std::to_string(field->size());
  }
  return "";
}

// --------------------------------------------------------------- PermComplex

PermComplex::PermComplex(FinGroupPtr g, FinAb t, int lo, std::vector<std::vector<Orbit>> terms,
                         std::vector<IntMatrix> differentials)
    : g_(std::move(g)), t_(std::move(t)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(differentials)) {
  if (terms_.empty()) throw InvalidArgument("PermComplex: at least one term is required");
  if (diffs_.size() != terms_.size()) throw InvalidArgument("PermComplex: one differential slot per term is required");
  tg_ = FinGroup::abelian(t_);
  gt_ = FinGroup::direct_product(g_, tg_);
  const FinGroup& GT = *gt_;
  for (const auto& term : terms_) {
    TermData td;
    int offset = 0;
    for (const auto& orbit : term) {
      const auto& h = orbit.stabilizer;
      if (h.empty() || h.front() != 0 || !std::is_sorted(h.begin(), h.end()))
        throw InvalidArgument("PermComplex: stabilizer must be sorted and contain the identity");
      for (int a : h) {
        if (a < 0 || a >= GT.order()) throw InvalidArgument("PermComplex: stabilizer element out of range");
        for (int b : h)
          if (!std::binary_search(h.begin(), h.end(), GT.mul(a, b)))
            throw InvalidArgument("PermComplex: stabilizer is not a subgroup");
      }
      std::vector<int> coset(static_cast<std::size_t>(GT.order()), -1), reps;
      for (int x = 0; x < GT.order(); ++x) {
        if (coset[x] != -1) continue;
        for (int y : h) coset[GT.mul(x, y)] = static_cast<int>(reps.size());
        reps.push_back(x);
      }
      td.offsets.push_back(offset);
      for (std::size_t c = 0; c < reps.size(); ++c) td.point_orbit.push_back(static_cast<int>(td.coset_of.size()));
      offset += static_cast<int>(reps.size());
      td.coset_of.push_back(std::move(coset));
      td.reps.push_back(std::move(reps));
    }
    data_.push_back(std::move(td));
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& d = diffs_[i];
    if (i == 0) {
      if (!d.empty()) throw InvalidArgument("PermComplex: the lowest term has no differential");
      continue;
    }
    const std::size_t rows = data_[i - 1].point_orbit.size(), cols = data_[i].point_orbit.size();
    if (d.size() != rows) throw InvalidArgument("PermComplex: differential has the wrong number of rows");
    for (const auto& r : d)
      if (r.size() != cols) throw InvalidArgument("PermComplex: differential has the wrong number of columns");
  }
}

std::size_t PermComplex::slot(int degree) const {
  if (degree < lo_ || degree > hi()) throw InvalidArgument("PermComplex: degree " + std::to_string(degree) + " out of range");
  return static_cast<std::size_t>(degree - lo_);
}

std::size_t PermComplex::size(int degree) const { return data_[slot(degree)].point_orbit.size(); }

int PermComplex::orbit_of(int degree, int s) const { return data_[slot(degree)].point_orbit.at(s); }

int PermComplex::act(int degree, int x, int s) const {
  const TermData& td = data_[slot(degree)];
  const int o = td.point_orbit[s];
  const int c = s - td.offsets[o];
  return td.offsets[o] + td.coset_of[o][gt_->mul(x, td.reps[o][c])];
}

void PermComplex::verify() const {
  for (int deg = lo_ + 1; deg <= hi(); ++deg) {
    const IntMatrix& d = differential(deg);
    const std::size_t rows = size(deg - 1), cols = size(deg);
    if (deg - 1 > lo_) {
      const IntMatrix& e = differential(deg - 1);
      const std::size_t below = size(deg - 2);
      for (std::size_t r = 0; r < below; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
          i64 s = 0;
          for (std::size_t k = 0; k < rows; ++k)
            if (e[r][k] != 0 && d[k][c] != 0) s = checked_add(s, checked_mul(e[r][k], d[k][c]));
          if (s != 0) throw CheckFailed("PermComplex: d o d != 0 at degree " + std::to_string(deg));
        }
    }
    for (int x : gt_->generators())
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
          if (d[act(deg - 1, x, static_cast<int>(r))][act(deg, x, static_cast<int>(c))] != d[r][c])
            throw CheckFailed("PermComplex: differential is not equivariant at degree " + std::to_string(deg));
  }
}

bool PermComplex::is_t_free() const {
  const int nt = static_cast<int>(t_.order());
  for (const auto& term : terms_)
    for (const auto& o : term)
      if (o.stabilizer.size() > 1 && o.stabilizer[1] < nt) return false;
  return true;
}

bool PermComplex::is_t_projective(i64 ell) const {
  const int nt = static_cast<int>(t_.order());
  for (const auto& term : terms_)
    for (const auto& o : term) {
      i64 k = std::count_if(o.stabilizer.begin(), o.stabilizer.end(), [nt](int x) { return x < nt; });
      if (k % ell == 0) return false;
    }
  return true;
}

PermComplex PermComplex::shift(int k) const { return PermComplex(g_, t_, lo_ + k, terms_, diffs_); }

int stability_shift(int n, int h, int h_prime) { return 2 * (n - 1) * (h - h_prime); }

// ------------------------------------------------------------ MatrixComplex

namespace {

template <class D>
using Moves = std::vector<typename MatrixComplex<D>::Move>;

// Monomial action of every group element on one term, through the BFS tree.
template <class D>
std::vector<Moves<D>> element_actions(const MatrixComplex<D>& m, std::size_t slot) {
  const FinGroup& G = *m.group;
  const std::size_t dim = m.dims[slot];
  std::vector<Moves<D>> out(static_cast<std::size_t>(G.order()));
  out[0].resize(dim);
  for (std::size_t b = 0; b < dim; ++b) out[0][b] = {static_cast<int>(b), m.dom.one()};
  std::vector<int> order{0};
  std::vector<char> done(static_cast<std::size_t>(G.order()), 0);
  done[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < G.generators().size(); ++j) {
      const int x = order[i];
      const int y = G.mul(x, G.generators()[j]);
      if (done[y]) continue;
      done[y] = 1;
      order.push_back(y);
      // y b = x (s b)
      const auto& sj = m.action[slot][j];
      out[y].resize(dim);
      for (std::size_t b = 0; b < dim; ++b) {
        const auto& first = sj[b];
        const auto& second = out[x][first.target];
        out[y][b] = {second.target, m.dom.mul(first.coef, second.coef)};
      }
    }
  return out;
}

template <class D>
void verify_matrix_complex(const MatrixComplex<D>& m) {
  const D& dom = m.dom;
  for (std::size_t i = 1; i < m.dims.size(); ++i) {
    const auto& d = m.diffs[i];
    if (i >= 2) {
      auto dd = multiply(dom, m.diffs[i - 1], d, m.dims[i - 1], m.dims[i]);
      for (const auto& row : dd)
        for (const auto& x : row)
          if (!dom.is_zero(x)) throw CheckFailed("LinearComplex: d o d != 0 in degree " + std::to_string(m.lo + static_cast<int>(i)));
    }
    // g d e_b = d g e_b for each generator.
    for (std::size_t j = 0; j < m.group->generators().size(); ++j) {
      const auto& src = m.action[i][j];
      const auto& dst = m.action[i - 1][j];
      for (std::size_t b = 0; b < m.dims[i]; ++b) {
        std::vector<typename D::T> lhs(m.dims[i - 1], dom.zero()), rhs(m.dims[i - 1], dom.zero());
        for (std::size_t r = 0; r < m.dims[i - 1]; ++r)
          if (!dom.is_zero(d[r][b])) lhs[dst[r].target] = dom.add(lhs[dst[r].target], dom.mul(dst[r].coef, d[r][b]));
        for (std::size_t r = 0; r < m.dims[i - 1]; ++r)
          rhs[r] = dom.mul(src[b].coef, d[r][src[b].target]);
        for (std::size_t r = 0; r < m.dims[i - 1]; ++r)
          if (!dom.is_zero(dom.sub(lhs[r], rhs[r])))
            throw CheckFailed("LinearComplex: differential is not equivariant in degree " + std::to_string(m.lo + static_cast<int>(i)));
      }
    }
  }
}

template <class D>
std::size_t diff_rank(const MatrixComplex<D>& m, std::size_t slot) {
  if (slot == 0 || slot >= m.dims.size()) return 0;
  return rank(m.dom, m.diffs[slot], m.dims[slot]);
}

// Cycles Z (null space of d_slot) and boundaries B (image of d_{slot+1}) in RREF.
template <class D>
std::pair<Matrix<D>, Matrix<D>> cycles_and_boundaries(const MatrixComplex<D>& m, std::size_t slot) {
  const std::size_t dim = m.dims[slot];
  Matrix<D> z;
  if (slot == 0 || m.dims[slot - 1] == 0) {
    z = identity(m.dom, dim);
  } else {
    z = null_space(m.dom, m.diffs[slot], dim);
  }
  rref(m.dom, z, dim);
  Matrix<D> b;
  if (slot + 1 < m.dims.size() && m.dims[slot + 1] > 0) {
    b = transpose(m.dom, m.diffs[slot + 1], m.dims[slot + 1]);
    rref(m.dom, b, dim);
  }
  return {std::move(z), std::move(b)};
}

// Matrix of g on the span of RREF rows w_j: entry (j', j) is (g w_j)[p_j'].
template <class D>
Matrix<D> restricted_action(const D& dom, const Moves<D>& g, const Matrix<D>& w, std::size_t dim) {
  std::vector<int> pivot_pos(dim, -1);
  std::vector<std::size_t> pivots;
  for (std::size_t j = 0; j < w.size(); ++j) {
    std::size_t p = 0;
    while (dom.is_zero(w[j][p])) ++p;
    pivots.push_back(p);
    pivot_pos[p] = static_cast<int>(j);
  }
  auto out = zero_matrix(dom, w.size(), w.size());
  for (std::size_t j = 0; j < w.size(); ++j)
    for (std::size_t k = 0; k < dim; ++k) {
      if (dom.is_zero(w[j][k])) continue;
      const int row = pivot_pos[g[k].target];
      if (row >= 0) out[row][j] = dom.add(out[row][j], dom.mul(w[j][k], g[k].coef));
    }
  return out;
}

CycloNumber to_cyclo(const CycloDomain&, const CycloNumber& x) { return x; }

template <class D>
std::vector<GClass> homology_classes(const MatrixComplex<D>& m, Coefficient coeff, std::size_t slots) {
  const FinGroup& G = *m.group;
  std::vector<GClass> out;
  for (std::size_t slot = 0; slot < slots; ++slot) {
    const std::size_t dim = m.dims[slot];
    auto [z, b] = cycles_and_boundaries(m, slot);
    auto acts = element_actions(m, slot);
    out.push_back(GClass::from_class_function(m.group, coeff, [&](int c) {
      const int g = G.class_rep(c);
      if (z.size() == b.size()) return CycloNumber();
      auto mz = restricted_action(m.dom, acts[g], z, dim);
      auto mb = restricted_action(m.dom, acts[g], b, dim);
      if constexpr (std::is_same_v<D, FieldDomain>) {
        return brauer_trace(m.dom.field, mz, G.element_order(g)) - brauer_trace(m.dom.field, mb, G.element_order(g));
      } else {
        CycloNumber tr;
        for (std::size_t j = 0; j < mz.size(); ++j) tr += to_cyclo(m.dom, mz[j][j]);
        for (std::size_t j = 0; j < mb.size(); ++j) tr -= to_cyclo(m.dom, mb[j][j]);
        return tr;
      }
    }));
  }
  return out;
}

template <class D>
typename D::T realize(const D& dom, const RootOfUnity& z);

template <>
CycloNumber realize(const CycloDomain& dom, const RootOfUnity& z) {
  return CycloNumber::root(z, lcm_checked(dom.conductor, z.order()));
}

template <>
FFCode realize(const FieldDomain& dom, const RootOfUnity& z) {
  return dom.field->teich_inverse(z);
}

template <class D>
MatrixComplex<D> base_change_as(const PermComplex& c, const D& dom) {
  MatrixComplex<D> m{dom, c.gt(), c.lo(), {}, {}, {}};
  for (int deg = c.lo(); deg <= c.hi(); ++deg) {
    const std::size_t n = c.size(deg);
    m.dims.push_back(n);
    if (deg == c.lo()) {
      m.diffs.emplace_back();
    } else {
      const IntMatrix& d = c.differential(deg);
      auto md = zero_matrix(dom, c.size(deg - 1), n);
      for (std::size_t r = 0; r < md.size(); ++r)
        for (std::size_t k = 0; k < n; ++k)
          if (d[r][k] != 0) md[r][k] = dom.from_int(d[r][k]);
      m.diffs.push_back(std::move(md));
    }
    std::vector<Moves<D>> acts;
    for (int x : c.gt()->generators()) {
      Moves<D> mv(n);
      for (std::size_t s = 0; s < n; ++s) mv[s] = {c.act(deg, x, static_cast<int>(s)), dom.one()};
      acts.push_back(std::move(mv));
    }
    m.action.push_back(std::move(acts));
  }
  return m;
}

}  // namespace

// ------------------------------------------------------------- LinearComplex

LinearComplex::LinearComplex(CoeffSpec spec, Data data, int valid_top)
    : spec_(std::move(spec)), data_(std::move(data)), valid_top_(valid_top) {}

const FinGroupPtr& LinearComplex::group() const {
  return std::visit([](const auto& m) -> const FinGroupPtr& { return m.group; }, data_);
}

int LinearComplex::lo() const {
  return std::visit([](const auto& m) { return m.lo; }, data_);
}

int LinearComplex::hi() const {
  return std::visit([](const auto& m) { return m.lo + static_cast<int>(m.dims.size()) - 1; }, data_);
}

std::size_t LinearComplex::dim(int degree) const {
  return std::visit(
      [degree](const auto& m) -> std::size_t {
        const int s = degree - m.lo;
        return s < 0 || s >= static_cast<int>(m.dims.size()) ? 0 : m.dims[static_cast<std::size_t>(s)];
      },
      data_);
}

void LinearComplex::verify() const {
  std::visit([](const auto& m) { verify_matrix_complex(m); }, data_);
}

std::vector<std::size_t> LinearComplex::homology_dims() const {
  return std::visit(
      [this](const auto& m) {
        std::vector<std::size_t> out;
        for (int deg = m.lo; deg <= valid_top_; ++deg) {
          const std::size_t s = static_cast<std::size_t>(deg - m.lo);
          out.push_back(m.dims[s] - diff_rank(m, s) - diff_rank(m, s + 1));
        }
        return out;
      },
      data_);
}

std::vector<GClass> LinearComplex::homology() const {
  return std::visit(
      [this](const auto& m) {
        return homology_classes(m, spec_.coefficient(), static_cast<std::size_t>(valid_top_ - m.lo + 1));
      },
      data_);
}

LinearComplex base_change(const PermComplex& c, const CoeffSpec& spec) {
  if (spec.kind == CoeffSpec::Kind::Finite)
    return LinearComplex(spec, base_change_as(c, FieldDomain{spec.field}), c.hi());
  return LinearComplex(spec, base_change_as(c, CycloDomain{spec.conductor}), c.hi());
}

std::vector<IntegerHomology> integer_homology(const PermComplex& c) {
  std::vector<SmithForm> forms;
  std::vector<std::size_t> ranks;
  for (int deg = c.lo(); deg <= c.hi() + 1; ++deg) {
    if (deg == c.lo() || deg > c.hi() || c.size(deg - 1) == 0 || c.size(deg) == 0) {
      forms.emplace_back();
      ranks.push_back(0);
      continue;
    }
    forms.push_back(smith_normal_form(c.differential(deg), c.size(deg)));
    ranks.push_back(static_cast<std::size_t>(
        std::count_if(forms.back().diagonal.begin(), forms.back().diagonal.end(), [](i64 d) { return d != 0; })));
  }
  std::vector<IntegerHomology> out;
  for (int deg = c.lo(); deg <= c.hi(); ++deg) {
    const std::size_t s = static_cast<std::size_t>(deg - c.lo());
    IntegerHomology h{deg, c.size(deg) - ranks[s] - ranks[s + 1], {}};
    for (i64 d : forms[s + 1].diagonal)
      if (d > 1) h.torsion.push_back(d);
    out.push_back(std::move(h));
  }
  return out;
}

// ------------------------------------------------------------------ isotypic

namespace detail {

// T-orbit data of one term: for each point its orbit's basis index (-1 when
// theta is nontrivial on the stabilizer) and the element t_s with s = t_s b.
struct OrbitTwist {
  std::vector<int> basis;
  std::vector<int> twist;
  std::vector<int> base_points;
};

OrbitTwist t_orbits(const PermComplex& c, int degree, const std::vector<int>& t_elements, const AbChar& theta) {
  const std::size_t n = c.size(degree);
  OrbitTwist o{std::vector<int>(n, -2), std::vector<int>(n, 0), {}};
  const FinAb& T = c.t();
  for (std::size_t s0 = 0; s0 < n; ++s0) {
    if (o.basis[s0] != -2) continue;
    bool killed = false;
    std::vector<int> members;
    for (int t : t_elements) {
      const int s = c.act(degree, t, static_cast<int>(s0));
      if (s == static_cast<int>(s0) && !theta(T.element(t)).is_identity()) killed = true;
      if (o.basis[s] == -2) {
        o.basis[s] = -3;
        o.twist[s] = t;
        members.push_back(s);
      }
    }
    const int idx = killed ? -1 : static_cast<int>(o.base_points.size());
    if (!killed) o.base_points.push_back(static_cast<int>(s0));
    for (int s : members) o.basis[s] = idx;
  }
  return o;
}

}  // namespace detail

namespace {

template <class D>
MatrixComplex<D> isotypic_as(const PermComplex& c, const AbChar& theta, const std::vector<int>& t_elements,
                              const D& dom, const FinGroupPtr& acting, const std::vector<int>& acting_gens) {
  const FinAb& T = c.t();
  MatrixComplex<D> m{dom, acting, c.lo(), {}, {}, {}};
  std::vector<detail::OrbitTwist> tw;
  for (int deg = c.lo(); deg <= c.hi(); ++deg) tw.push_back(detail::t_orbits(c, deg, t_elements, theta));
  for (int deg = c.lo(); deg <= c.hi(); ++deg) {
    const std::size_t slot = static_cast<std::size_t>(deg - c.lo());
    const auto& o = tw[slot];
    const std::size_t n = o.base_points.size();
    m.dims.push_back(n);
    if (slot == 0) {
      m.diffs.emplace_back();
    } else {
      const IntMatrix& d = c.differential(deg);
      const auto& below = tw[slot - 1];
      auto md = zero_matrix(dom, below.base_points.size(), n);
      for (std::size_t j = 0; j < n; ++j) {
        const int b = o.base_points[j];
        for (std::size_t r = 0; r < d.size(); ++r) {
          if (d[r][b] == 0 || below.basis[r] < 0) continue;
          auto coef = dom.mul(dom.from_int(d[r][b]), realize(dom, theta(T.element(below.twist[r]))));
          md[below.basis[r]][j] = dom.add(md[below.basis[r]][j], coef);
        }
      }
      m.diffs.push_back(std::move(md));
    }
    std::vector<Moves<D>> acts;
    for (int x : acting_gens) {
      Moves<D> mv(n);
      for (std::size_t j = 0; j < n; ++j) {
        const int s = c.act(deg, x, o.base_points[j]);
        mv[j] = {o.basis[s], realize(dom, theta(T.element(o.twist[s])))};
      }
      acts.push_back(std::move(mv));
    }
    m.action.push_back(std::move(acts));
  }
  return m;
}

void check_realizable(const AbChar& theta, const CoeffSpec& spec) {
  for (const auto& v : theta.values)
    if (!spec.realizes(v))
      throw InvalidArgument("isotypic: value " + v.str() + " is not realizable over " + spec.str());
}

std::vector<int> all_t_elements(const PermComplex& c) {
  std::vector<int> t(static_cast<std::size_t>(c.t().order()));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<int>(i);
  return t;
}

std::vector<int> g_generators_in_gt(const PermComplex& c) {
  std::vector<int> out;
  const int nt = static_cast<int>(c.t().order());
  for (int g : c.g()->generators()) out.push_back(g * nt);
  return out;
}

}  // namespace

LinearComplex isotypic(const PermComplex& c, const AbChar& theta, const CoeffSpec& spec) {
  if (!(theta.domain == c.t())) throw InvalidArgument("isotypic: character is not on T");
  check_realizable(theta, spec);
  const auto ts = all_t_elements(c);
  const auto gens = g_generators_in_gt(c);
  if (spec.kind == CoeffSpec::Kind::Finite)
    return LinearComplex(spec, isotypic_as(c, theta, ts, FieldDomain{spec.field}, c.g(), gens), c.hi());
  return LinearComplex(spec, isotypic_as(c, theta, ts, CycloDomain{spec.conductor}, c.g(), gens), c.hi());
}

LinearComplex derived_isotypic(const PermComplex& c, const AbChar& theta, const CoeffSpec& spec, int truncation) {
  if (spec.kind != CoeffSpec::Kind::Finite) throw InvalidArgument("derived_isotypic: finite-field coefficients required");
  if (!(theta.domain == c.t())) throw InvalidArgument("derived_isotypic: character is not on T");
  const i64 ell = spec.field->characteristic();
  if (theta.order() % ell == 0) throw InvalidArgument("derived_isotypic: character must have ell' order");
  check_realizable(theta, spec);
  const int length = c.hi() - c.lo();
  if (truncation < length)
    throw InvalidArgument("derived_isotypic: truncation " + std::to_string(truncation) + " is below the complex length " +
                          std::to_string(length) + " (homology would stop at degree " +
                          std::to_string(c.lo() + truncation) + ")");
  const FinAb& T = c.t();
  const i64 lpart = ipow(ell, valuation(T.exponent(), ell));
  const i64 rest = T.exponent() / lpart;
  // u = 1 mod lpart, 0 mod rest: multiplication by u projects onto the ell-part.
  const i64 u = lpart == 1 ? 0 : mod(rest * invmod(mod(rest, lpart), lpart), T.exponent());
  std::vector<AbElem> lgens;
  for (std::size_t i = 0; i < T.rank(); ++i) lgens.push_back(T.scale(u, T.generator(i)));
  const AbSubgroup tl = subgroup(T, lgens);
  std::vector<int> tl_elems, tlp_elems;
  for (i64 a = 0; a < tl.group.order(); ++a)
    tl_elems.push_back(static_cast<int>(T.index(tl.inclusion.apply(tl.group.element(a)))));
  for (i64 x = 0; x < T.order(); ++x) {
    const AbElem e = T.element(x);
    if (T.scale(u, e) == T.zero()) tlp_elems.push_back(static_cast<int>(x));
  }
  FieldDomain dom{spec.field};
  const auto gens = g_generators_in_gt(c);
  // T_ell'-isotypic terms with their G-action and T_ell-action.
  const auto m = isotypic_as(c, theta, tlp_elems, dom, c.g(), gens);
  const auto ml = isotypic_as(c, theta, tlp_elems, dom, c.g(), tl_elems);
  const int top_j = truncation + 1;
  const auto res = minimal_resolution(spec.field, tl.group, top_j);
  const std::size_t na = static_cast<std::size_t>(tl.group.order());

  struct Block {
    int i, j;
    std::size_t m, offset;
  };
  const int lo = c.lo(), hi = c.hi() + top_j;
  std::vector<std::vector<Block>> blocks;
  MatrixComplex<FieldDomain> tot{dom, c.g(), lo, {}, {}, {}};
  for (int k = lo; k <= hi; ++k) {
    std::vector<Block> bs;
    std::size_t off = 0;
    for (int i = c.lo(); i <= c.hi(); ++i) {
      const int j = k - i;
      if (j < 0 || j > top_j) continue;
      for (std::size_t r = 0; r < res.ranks[j]; ++r) {
        bs.push_back({i, j, r, off});
        off += m.dims[static_cast<std::size_t>(i - c.lo())];
      }
    }
    blocks.push_back(bs);
    tot.dims.push_back(off);
  }
  auto find_block = [&](int k, int i, int j, std::size_t r) -> const Block& {
    for (const auto& b : blocks[static_cast<std::size_t>(k - lo)])
      if (b.i == i && b.j == j && b.m == r) return b;
    throw CheckFailed("derived_isotypic: missing block");
  };
  for (int k = lo; k <= hi; ++k) {
    const std::size_t ks = static_cast<std::size_t>(k - lo);
    if (ks == 0) {
      tot.diffs.emplace_back();
    } else {
      auto d = zero_matrix(dom, tot.dims[ks - 1], tot.dims[ks]);
      for (const auto& b : blocks[ks]) {
        const std::size_t is = static_cast<std::size_t>(b.i - c.lo());
        const std::size_t dim = m.dims[is];
        if (b.i > c.lo()) {
          const Block& t = find_block(k - 1, b.i - 1, b.j, b.m);
          const auto& dm = m.diffs[is];
          for (std::size_t r = 0; r < dm.size(); ++r)
            for (std::size_t q = 0; q < dim; ++q) d[t.offset + r][b.offset + q] = dm[r][q];
        }
        if (b.j > 0) {
          const FFCode sign = b.i % 2 == 0 ? dom.one() : dom.neg(dom.one());
          const auto& bnd = res.boundaries[static_cast<std::size_t>(b.j)][b.m];
          for (std::size_t r = 0; r < res.ranks[static_cast<std::size_t>(b.j - 1)]; ++r) {
            const Block& t = find_block(k - 1, b.i, b.j - 1, r);
            for (std::size_t a = 0; a < na; ++a) {
              const FFCode coef = bnd[r * na + a];
              if (coef == 0) continue;
              const auto& moves = ml.action[is][a];
              for (std::size_t q = 0; q < dim; ++q) {
                const auto& mv = moves[q];
                d[t.offset + mv.target][b.offset + q] =
                    dom.add(d[t.offset + mv.target][b.offset + q], dom.mul(sign, dom.mul(coef, mv.coef)));
              }
            }
          }
        }
      }
      tot.diffs.push_back(std::move(d));
    }
    std::vector<Moves<FieldDomain>> acts;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Moves<FieldDomain> mv(tot.dims[ks]);
      for (const auto& b : blocks[ks]) {
        const auto& src = m.action[static_cast<std::size_t>(b.i - c.lo())][g];
        for (std::size_t q = 0; q < src.size(); ++q)
          mv[b.offset + q] = {static_cast<int>(b.offset) + src[q].target, src[q].coef};
      }
      acts.push_back(std::move(mv));
    }
    tot.action.push_back(std::move(acts));
  }
  return LinearComplex(spec, std::move(tot), c.lo() + truncation);
}

// -------------------------------------------------------------- Euler class

GClass euler_class(const LinearComplex& c) {
  auto hs = c.homology();
  GClass out = GClass::zero(c.group(), c.spec().coefficient());
  for (std::size_t i = 0; i < hs.size(); ++i) out = (c.lo() + static_cast<int>(i)) % 2 == 0 ? out + hs[i] : out - hs[i];
  return out;
}

GClass euler_class(const PermComplex& c, const CoeffSpec& spec, const std::optional<AbChar>& theta) {
  const Coefficient coeff = spec.coefficient();
  if (!theta) {
    const FinGroup& GT = *c.gt();
    return GClass::from_class_function(c.gt(), coeff, [&](int cls) {
      const int x = GT.class_rep(cls);
      i64 total = 0;
      for (int deg = c.lo(); deg <= c.hi(); ++deg) {
        i64 fixed = 0;
        for (std::size_t s = 0; s < c.size(deg); ++s)
          if (c.act(deg, x, static_cast<int>(s)) == static_cast<int>(s)) ++fixed;
        total += (deg % 2 == 0 ? fixed : -fixed);
      }
      return CycloNumber(total);
    });
  }
  if (!(theta->domain == c.t())) throw InvalidArgument("euler_class: character is not on T");
  if (!coeff.is_char0()) {
    if (theta->order() % coeff.ell == 0) throw InvalidArgument("euler_class: mod-ell character must have ell' order");
    if (!c.is_t_projective(coeff.ell))
      throw InvalidArgument("euler_class: terms are not projective over F_ell[T]");
  }
  const FinAb& T = c.t();
  const auto ts = all_t_elements(c);
  std::vector<detail::OrbitTwist> tw;
  for (int deg = c.lo(); deg <= c.hi(); ++deg) tw.push_back(detail::t_orbits(c, deg, ts, *theta));
  const int nt = static_cast<int>(T.order());
  const FinGroup& G = *c.g();
  return GClass::from_class_function(c.g(), coeff, [&](int cls) {
    const int x = G.class_rep(cls) * nt;
    CycloNumber total;
    for (int deg = c.lo(); deg <= c.hi(); ++deg) {
      const auto& o = tw[static_cast<std::size_t>(deg - c.lo())];
      CycloNumber tr;
      for (std::size_t j = 0; j < o.base_points.size(); ++j) {
        const int s = c.act(deg, x, o.base_points[j]);
        if (o.basis[s] == static_cast<int>(j)) tr.add_root((*theta)(T.element(o.twist[s])));
      }
      if (deg % 2 == 0)
        total += tr;
      else
        total -= tr;
    }
    return total;
  });
}

// ------------------------------------------------------------- projectivity

bool is_projective_perm(const Subgroup& h, const CoeffSpec& spec) {
  if (spec.kind != CoeffSpec::Kind::Finite) return true;
  const FinGroup& G = *h.parent;
  const int n = G.order();
  FieldDomain dom{spec.field};
  std::vector<int> coset(static_cast<std::size_t>(n), -1);
  int num_cosets = 0;
  for (int x = 0; x < n; ++x) {
    if (coset[x] != -1) continue;
    for (int y : h.members) coset[G.mul(x, y)] = num_cosets;
    ++num_cosets;
  }
  // Unknowns v_x (x in G) plus the right-hand side column.
  Matrix<FieldDomain> sys;
  for (int hg : h.group->generators()) {
    const int hp = h.embedding[hg];
    const int hinv = G.inv(hp);
    for (int x = 0; x < n; ++x) {
      std::vector<FFCode> row(static_cast<std::size_t>(n) + 1, 0);
      const int y = G.mul(hinv, x);
      if (y == x) continue;
      row[y] = dom.add(row[y], dom.one());
      row[x] = dom.sub(row[x], dom.one());
      sys.push_back(std::move(row));
    }
  }
  for (int cs = 0; cs < num_cosets; ++cs) {
    std::vector<FFCode> row(static_cast<std::size_t>(n) + 1, 0);
    for (int x = 0; x < n; ++x)
      if (coset[x] == cs) row[x] = dom.one();
    row[n] = cs == coset[0] ? dom.one() : dom.zero();
    sys.push_back(std::move(row));
  }
  auto pivots = rref(dom, sys, static_cast<std::size_t>(n) + 1);
  return pivots.empty() || pivots.back() != static_cast<std::size_t>(n);
}

// ----------------------------------------------------------- torsor complexes

PermComplex make_torsor_complex(const FinGroupPtr& g, const FinAb& t, std::uint64_t seed, const TorsorOptions& opt) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int nt = static_cast<int>(t.order());
  auto subgroups = all_subgroups(g);
  std::erase_if(subgroups, [&](const Subgroup& h) { return h.group->order() < opt.min_stabilizer; });
  if (subgroups.empty()) throw InvalidArgument("make_torsor_complex: no subgroup of the requested order");
  std::vector<std::vector<Orbit>> terms;
  std::vector<std::vector<char>> is_source;
  if (opt.single_regular) {
    terms.push_back({Orbit{{0}}});
    return PermComplex(g, t, 0, terms, {IntMatrix{}});
  }
  const int length = uniform(1, std::max(1, opt.max_terms));
  for (int i = 0; i < length; ++i) {
    std::vector<Orbit> term;
    std::vector<char> src;
    const int k = uniform(1, std::max(1, opt.max_orbits));
    for (int j = 0; j < k; ++j) {
      const Subgroup& h = subgroups[static_cast<std::size_t>(uniform(0, static_cast<int>(subgroups.size()) - 1))];
      Orbit o;
      std::vector<AbElem> f(h.members.size(), t.zero());
      if (opt.twisted) {
        const auto lambdas = linear_characters(h.group);
        for (std::size_t i = 0; i < t.rank(); ++i) {
          const i64 d = t.invariant_factors()[i];
          std::vector<const std::vector<RootOfUnity>*> fits;
          for (const auto& lam : lambdas)
            if (std::all_of(lam.begin(), lam.end(), [d](const RootOfUnity& z) { return d % z.order() == 0; }))
              fits.push_back(&lam);
          const auto& lam = *fits[static_cast<std::size_t>(uniform(0, static_cast<int>(fits.size()) - 1))];
          for (std::size_t e = 0; e < h.members.size(); ++e) f[e][i] = lam[e].numerator() * (d / lam[e].order());
        }
      }
      for (std::size_t e = 0; e < h.members.size(); ++e)
        o.stabilizer.push_back(h.embedding[e] * nt + static_cast<int>(t.index(f[e])));
      std::sort(o.stabilizer.begin(), o.stabilizer.end());
      term.push_back(std::move(o));
      src.push_back(i > 0 && uniform(0, 2) > 0);
    }
    terms.push_back(std::move(term));
    is_source.push_back(std::move(src));
  }
  // A scaffold complex (no differentials) gives the coset bookkeeping.
  std::vector<IntMatrix> empty(terms.size());
  for (std::size_t i = 1; i < terms.size(); ++i) {
    std::size_t rows = 0, cols = 0;
    for (const auto& o : terms[i - 1]) rows += static_cast<std::size_t>(g->order() * nt) / o.stabilizer.size();
    for (const auto& o : terms[i]) cols += static_cast<std::size_t>(g->order() * nt) / o.stabilizer.size();
    empty[i] = IntMatrix(rows, std::vector<i64>(cols, 0));
  }
  PermComplex scaffold(g, t, 0, terms, empty);
  const FinGroup& GT = *scaffold.gt();

  auto offsets = [&](int deg) {
    std::vector<int> off{0};
    for (const auto& o : terms[static_cast<std::size_t>(deg)])
      off.push_back(off.back() + GT.order() / static_cast<int>(o.stabilizer.size()));
    return off;
  };
  // Random equivariant map from orbit a of term `from` to orbit b of term `to`,
  // added into matrix m (rows: term `to`, columns: term `from`).
  auto add_orbit_map = [&](IntMatrix& m, int from, int a, int to, int b, int lo_coef, int hi_coef) {
    const auto off_from = offsets(from), off_to = offsets(to);
    const auto& h1 = terms[static_cast<std::size_t>(from)][static_cast<std::size_t>(a)].stabilizer;
    const int base_from = off_from[a];
    const int base_to = off_to[b];
    const int size_to = off_to[b + 1] - off_to[b];
    // H1-orbits on the target orbit.
    std::vector<i64> v(static_cast<std::size_t>(size_to), 0);
    std::vector<char> seen(static_cast<std::size_t>(size_to), 0);
    for (int p = 0; p < size_to; ++p) {
      if (seen[p]) continue;
      const int coef = uniform(lo_coef, hi_coef);
      for (int x : h1) {
        const int q = scaffold.act(to, x, base_to + p) - base_to;
        if (!seen[q]) {
          seen[q] = 1;
          v[q] = coef;
        }
      }
    }
    // f(r H1) = r v.
    const int size_from = off_from[a + 1] - off_from[a];
    std::vector<int> rep(static_cast<std::size_t>(size_from), -1);
    for (int x = 0; x < GT.order(); ++x) {
      const int s = scaffold.act(from, x, base_from) - base_from;
      if (rep[s] == -1) rep[s] = x;
    }
    for (int s = 0; s < size_from; ++s)
      for (int p = 0; p < size_to; ++p)
        if (v[p] != 0) {
          const int r = scaffold.act(to, rep[s], base_to + p);
          m[r][base_from + s] += v[p];
        }
  };

  std::vector<IntMatrix> diffs = empty;
  for (int i = 1; i < length; ++i)
    for (int a = 0; a < static_cast<int>(terms[i].size()); ++a) {
      if (!is_source[i][a]) continue;
      for (int b = 0; b < static_cast<int>(terms[i - 1].size()); ++b)
        if (!is_source[i - 1][b]) add_orbit_map(diffs[i], i, a, i - 1, b, -1, 1);
    }
  // Mix with unipotent automorphisms phi_i = 1 + E_i (E_i maps orbit a to orbit b > a).
  std::vector<IntMatrix> phi(terms.size()), phi_inv(terms.size());
  for (int i = 0; i < length; ++i) {
    const std::size_t n = scaffold.size(i);
    IntMatrix e(n, std::vector<i64>(n, 0));
    for (int a = 0; a < static_cast<int>(terms[i].size()); ++a)
      for (int b = a + 1; b < static_cast<int>(terms[i].size()); ++b)
        if (uniform(0, 1)) add_orbit_map(e, i, a, i, b, -1, 1);
    phi[i] = identity_matrix(n);
    phi_inv[i] = identity_matrix(n);
    IntMatrix power = identity_matrix(n);
    for (std::size_t k = 1; k <= terms[i].size(); ++k) {
      power = matmul(power, e, n);
      const i64 sign = k % 2 == 0 ? 1 : -1;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t cc = 0; cc < n; ++cc) phi_inv[i][r][cc] += sign * power[r][cc];
    }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t cc = 0; cc < n; ++cc) phi[i][r][cc] += e[r][cc];
  }
  for (int i = 1; i < length; ++i)
    diffs[i] = matmul(matmul(phi[i - 1], diffs[i], scaffold.size(i - 1)), phi_inv[i], scaffold.size(i));
  PermComplex out(g, t, 0, std::move(terms), std::move(diffs));
  out.verify();
  return out;
}

}  // namespace ellchar
