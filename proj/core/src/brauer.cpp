#include "ellchar/error.hpp"
#include "ellchar/ggroup.hpp"
#include "ellchar/limits.hpp"
#include "ellchar/linalg.hpp"

namespace ellchar {

int splitting_degree(i64 ell, int k, i64 m) {
  if (m % ell == 0) throw InvalidArgument("splitting_degree: order must be prime to ell");
  i64 K = lcm_checked(k, multiplicative_order(mod(ell, m), m));
  return static_cast<int>(K);
}

CycloNumber brauer_trace(const FieldPtr& field, const std::vector<std::vector<FFCode>>& m, i64 order) {
  const i64 ell = field->characteristic();
  const std::size_t dim = m.size();
  const int K = splitting_degree(ell, field->degree(), order);
  check_cap(ipow(ell, K), limits().field_size, "Brauer character splitting field");
  FieldPtr E = field;
  if (K != field->degree()) {
    if (!field->tower_compatible())
      throw InvalidArgument("brauer_trace: eigenvalues need an extension of a field with a custom modulus");
    E = make_field(ell, K);
  }
  FieldDomain edom{E};
  Matrix<FieldDomain> a = m;
  if (E != field)
    for (auto& row : a)
      for (auto& x : row) x = E->embed_from(*field, x);
  const i64 units = E->size() - 1;
  CycloNumber value;
  std::size_t total = 0;
  for (i64 j = 0; j < order && total < dim; ++j) {
    FFCode lambda = E->exp(j * (units / order));
    Matrix<FieldDomain> b = a;
    for (std::size_t i = 0; i < dim; ++i) b[i][i] = E->sub(b[i][i], lambda);
    std::size_t mult = dim - rank(edom, b, dim);
    if (mult == 0) continue;
    total += mult;
    value += Rational(static_cast<long>(mult)) * CycloNumber::root(E->teich_lift(lambda));
  }
  if (total != dim) throw CheckFailed("brauer_trace: eigenvalues do not account for the dimension");
  return value;
}

GClass brauer_character(const FinGroupPtr& g, const FieldPtr& field,
                        const std::vector<std::vector<std::vector<FFCode>>>& generator_matrices,
                        std::optional<std::size_t> dimension) {
  const FinGroup& G = *g;
  const i64 ell = field->characteristic();
  if (generator_matrices.size() != G.generators().size())
    throw InvalidArgument("brauer_character: one matrix per generator required");
  const std::size_t dim = dimension ? *dimension : generator_matrices.empty() ? 0 : generator_matrices[0].size();
  for (const auto& m : generator_matrices) {
    if (m.size() != dim) throw InvalidArgument("brauer_character: matrices of different sizes");
    for (const auto& row : m)
      if (row.size() != dim) throw InvalidArgument("brauer_character: matrices must be square");
  }
  FieldDomain dom{field};
  // rho on every element through the breadth-first tree, then the relation check.
  std::vector<Matrix<FieldDomain>> rho(static_cast<std::size_t>(G.order()));
  rho[0] = identity(dom, dim);
  std::vector<int> order{0};
  std::vector<char> done(static_cast<std::size_t>(G.order()), 0);
  done[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < G.generators().size(); ++j) {
      int y = G.mul(order[i], G.generators()[j]);
      if (done[y]) continue;
      done[y] = 1;
      rho[y] = multiply(dom, rho[order[i]], generator_matrices[j], dim, dim);
      order.push_back(y);
    }
  for (int x = 0; x < G.order(); ++x)
    for (std::size_t j = 0; j < G.generators().size(); ++j)
      if (multiply(dom, rho[x], generator_matrices[j], dim, dim) != rho[G.mul(x, G.generators()[j])])
        throw CheckFailed("brauer_character: matrices do not satisfy the group relations (element " +
                          std::to_string(x) + ", generator " + std::to_string(j) + ")");

  return GClass::from_class_function(g, Coefficient{ell}, [&](int c) {
    const int rep = G.class_rep(c);
    return brauer_trace(field, rho[rep], G.element_order(rep));
  });
}

}  // namespace ellchar
