#include <gtest/gtest.h>

#include "ellchar/error.hpp"
#include "ellchar/fields.hpp"
#include "oracles.hpp"

namespace ellchar {
namespace {

struct FieldCase {
  i64 p;
  int k;
};

std::vector<FieldCase> small_fields() {
  std::vector<FieldCase> out;
  for (i64 p : {2, 3, 5, 7, 11, 13})
    for (int k = 1; oracle::ipow(p, k) <= 128; ++k) out.push_back({p, k});
  return out;
}

TEST(FiniteField, MatchesBruteForcePolynomialArithmetic) {
  for (const auto [p, k] : small_fields()) {
    const FieldPtr f = make_field(p, k);
    const oracle::PolyField ref(p, k);
    ASSERT_EQ(f->size(), ref.size());
    // Both are F_{p^k}; compare the multiplicative structure through element orders.
    std::map<i64, int> ours, theirs;
    for (i64 x = 1; x < f->size(); ++x) {
      ++ours[f->element_order(static_cast<FFCode>(x))];
      i64 o = 1;
      for (i64 y = x; y != 1; y = ref.mul(y, x)) ++o;
      ++theirs[o];
    }
    EXPECT_EQ(ours, theirs) << "F_" << p << "^" << k;
  }
}

TEST(FiniteField, GeneratorHasFullOrder) {
  for (const auto [p, k] : small_fields()) {
    const FieldPtr f = make_field(p, k);
    EXPECT_EQ(f->element_order(f->generator()), f->size() - 1);
    EXPECT_TRUE(is_irreducible(f->modulus(), p));
  }
}

TEST(FiniteField, InverseAndDlog) {
  const FieldPtr f = make_field(3, 4);
  for (i64 x = 1; x < f->size(); ++x) {
    const auto c = static_cast<FFCode>(x);
    ASSERT_EQ(f->mul(c, f->inv(c)), 1u);
    ASSERT_EQ(f->exp(f->dlog(c)), c);
  }
  EXPECT_THROW(f->inv(0), InvalidArgument);
}

TEST(TeichLift, HomomorphismExhaustive) {
  for (const auto [p, k] : small_fields()) {
    const FieldPtr f = make_field(p, k);
    for (i64 x = 1; x < f->size(); ++x)
      for (i64 y = 1; y < f->size(); ++y) {
        const auto a = static_cast<FFCode>(x), b = static_cast<FFCode>(y);
        ASSERT_EQ(f->teich_lift(f->mul(a, b)), f->teich_lift(a) + f->teich_lift(b));
      }
  }
}

TEST(TeichLift, BijectiveOntoRootsOfUnity) {
  for (const auto [p, k] : small_fields()) {
    const FieldPtr f = make_field(p, k);
    std::set<RootOfUnity> image;
    for (i64 x = 1; x < f->size(); ++x) {
      const RootOfUnity z = f->teich_lift(static_cast<FFCode>(x));
      ASSERT_EQ((f->size() - 1) % z.order(), 0);
      ASSERT_EQ(f->teich_inverse(z), static_cast<FFCode>(x));
      image.insert(z);
    }
    EXPECT_EQ(static_cast<i64>(image.size()), f->size() - 1);
  }
}

TEST(Frobenius, CyclicOfOrderDegreeOverBase) {
  for (const auto [p, k] : small_fields())
    for (int base = 1; base <= k; ++base) {
      if (k % base != 0) continue;
      const FieldPtr f = make_field(p, k);
      int order = 0;
      bool identity = false;
      while (!identity) {
        ++order;
        identity = true;
        for (i64 x = 0; x < f->size() && identity; ++x) {
          FFCode y = static_cast<FFCode>(x);
          for (int i = 0; i < order; ++i) y = f->frobenius(y, base);
          identity = y == static_cast<FFCode>(x);
        }
      }
      EXPECT_EQ(order, k / base) << "F_" << p << "^" << k << " over base degree " << base;
    }
}

TEST(Tower, EmbeddingCommutesWithTeichLift) {
  for (i64 p : {2, 3, 5})
    for (int a = 1; a <= 3; ++a)
      for (int b = a; b <= 6; b += a) {
        if (oracle::ipow(p, b) > 20000) continue;
        const FieldPtr sub = make_field(p, a), big = make_field(p, b);
        ASSERT_TRUE(sub->tower_compatible() && big->tower_compatible());
        for (i64 x = 1; x < sub->size(); ++x) {
          const auto c = static_cast<FFCode>(x);
          ASSERT_EQ(big->teich_lift(big->embed_from(*sub, c)), sub->teich_lift(c));
        }
        for (i64 x = 0; x < sub->size(); ++x)
          for (i64 y = 0; y < sub->size(); ++y) {
            const auto c = static_cast<FFCode>(x), d = static_cast<FFCode>(y);
            ASSERT_EQ(big->embed_from(*sub, sub->add(c, d)), big->add(big->embed_from(*sub, c), big->embed_from(*sub, d)));
          }
      }
}

TEST(FiniteField, RejectsBadParameters) {
  EXPECT_THROW(make_field(4, 1), InvalidArgument);
  EXPECT_THROW(make_field(2, 0), InvalidArgument);
  EXPECT_THROW(make_field(2, 2, std::vector<i64>{1, 0, 1}), InvalidArgument);
}

}  // namespace
}  // namespace ellchar
