#include <gtest/gtest.h>

#include <random>

#include "nielsen/fgab.hpp"
#include "nielsen/smith.hpp"
#include "support.hpp"

using namespace nielsen;
using testing_support::all_elements;
using testing_support::closure;
using testing_support::el;

namespace {

bool is_diagonal_chain(const SmithForm& s) {
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      if (i != j && s.D(i, j) != 0) return false;
      if (i == j && i < s.rank && s.D(i, i) <= 0) return false;
      if (i == j && i >= s.rank && s.D(i, i) != 0) return false;
    }
  for (std::size_t i = 1; i < s.rank; ++i)
    if (s.D(i, i) % s.D(i - 1, i - 1) != 0) return false;
  return true;
}

void expect_valid_snf(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.U * m * s.V, s.D) << m;
  EXPECT_TRUE(is_diagonal_chain(s)) << s.D;
  auto du = determinant(s.U);
  auto dv = determinant(s.V);
  EXPECT_TRUE(du == 1 || du == -1);
  EXPECT_TRUE(dv == 1 || dv == -1);
}

}  // namespace

TEST(Smith, ZeroMatrix) {
  SmithForm s = smith_normal_form(IntMatrix{{0}});
  EXPECT_EQ(s.D, (IntMatrix{{0}}));
  EXPECT_EQ(s.rank, 0u);
}

TEST(Smith, TwoByTwo) {
  IntMatrix m{{2, 4}, {6, 8}};
  SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.D, (IntMatrix{{2, 0}, {0, 4}}));
  expect_valid_snf(m);
}

TEST(Smith, Identity) {
  SmithForm s = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(s.D, IntMatrix::identity(3));
  EXPECT_EQ(s.rank, 3u);
}

TEST(Smith, EmptyShapes) {
  expect_valid_snf(IntMatrix(0, 3));
  expect_valid_snf(IntMatrix(2, 0));
}

TEST(Smith, Deterministic) {
  IntMatrix m{{6, -4, 9}, {3, 12, 0}};
  EXPECT_EQ(smith_normal_form(m).U, smith_normal_form(m).U);
  EXPECT_EQ(smith_normal_form(m).V, smith_normal_form(m).V);
}

TEST(SmithProperty, RandomMatrices) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 19) - 9;
    expect_valid_snf(m);
  }
}

TEST(SmithProperty, BigEntriesStayExact) {
  IntMatrix m(2, 2);
  m(0, 0) = Integer("123456789012345678901234567890");
  m(0, 1) = Integer("987654321098765432109876543210");
  m(1, 0) = 3;
  m(1, 1) = 7;
  expect_valid_snf(m);
}

TEST(FgAbGroup, RejectsBrokenChain) {
  EXPECT_THROW(FgAbGroup(0, {4, 2}), InvalidArgument);
  EXPECT_THROW(FgAbGroup(0, {1}), InvalidArgument);
  EXPECT_THROW(FgAbGroup(0, {0}), InvalidArgument);
  EXPECT_NO_THROW(FgAbGroup(1, {2, 6}));
}

TEST(FgAbGroup, Printing) {
  EXPECT_EQ(FgAbGroup{}.to_string(), "0");
  EXPECT_EQ(FgAbGroup(1, {2}).to_string(), "Z + Z_2");
  EXPECT_EQ(FgAbGroup(2, {}).to_string(), "Z^2");
}

TEST(FgAbGroup, FromRelationsNormalizes) {
  // Z^2 / <(2,0), (0,3)> = Z_6.
  auto p = FgAbGroup::from_relations(2, IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(p.group, FgAbGroup(0, {6}));
  // Z^2 / <(4,6)> = Z + Z_2.
  auto q = FgAbGroup::from_relations(2, IntMatrix{{4}, {6}});
  EXPECT_EQ(q.group, FgAbGroup(1, {2}));
}

TEST(GroupElement, CanonicalReduction) {
  FgAbGroup g(1, {4});
  EXPECT_EQ(el(g, {3, 7}).coords()[1], 3);
  EXPECT_EQ(el(g, {3, -1}), el(g, {3, 3}));
  EXPECT_THROW(el(g, {1}), ShapeMismatch);
  EXPECT_THROW(el(g, {1, 0}) + el(FgAbGroup(1, {}), {1}), ShapeMismatch);
}

TEST(Eval, Examples) {
  FgAbGroup z4(0, {4}), z(1, {}), z2(0, {2});
  EXPECT_TRUE(Homomorphism::zero(z4, z)(el(z4, {3})).is_zero());
  EXPECT_EQ(Homomorphism::identity(z4)(el(z4, {3})), el(z4, {3}));
  Homomorphism h(z, z2, IntMatrix{{1}});
  EXPECT_EQ(h(el(z, {6})), el(z2, {0}));
  EXPECT_THROW(h(el(z2, {1})), ShapeMismatch);
}

TEST(Homomorphism, RejectsIllDefined) {
  FgAbGroup z2(0, {2}), z(1, {}), z4(0, {4});
  EXPECT_THROW(Homomorphism(z2, z, IntMatrix{{1}}), InvalidArgument);
  EXPECT_THROW(Homomorphism(z2, z4, IntMatrix{{1}}), InvalidArgument);
  EXPECT_NO_THROW(Homomorphism(z2, z4, IntMatrix{{2}}));
  EXPECT_THROW(Homomorphism(z2, z4, IntMatrix{{2, 0}}), ShapeMismatch);
}

TEST(Compose, Examples) {
  FgAbGroup z(1, {}), z2(0, {2});
  Homomorphism boundary(z, z2, IntMatrix{{1}});
  Homomorphism e(z2, z, IntMatrix{{0}});
  EXPECT_TRUE(compose(e, boundary).is_zero());
  EXPECT_EQ(compose(Homomorphism::identity(z2), boundary), boundary);
  EXPECT_TRUE(compose(Homomorphism::zero(z2, z), boundary).is_zero());
  EXPECT_THROW(compose(boundary, boundary), ShapeMismatch);
}

TEST(Kernel, Examples) {
  FgAbGroup z6(0, {6}), z(1, {}), z2(0, {2});
  auto k1 = kernel(Homomorphism::zero(z6, z));
  EXPECT_EQ(closure(z6, k1.generators()).size(), 6u);
  auto k2 = kernel(Homomorphism(z, z, IntMatrix{{2}}));
  EXPECT_TRUE(k2.is_trivial());
  auto k3 = kernel(Homomorphism(z, z2, IntMatrix{{1}}));
  ASSERT_EQ(k3.generators().size(), 1u);
  const auto& gen = k3.generators()[0];
  EXPECT_TRUE(gen == el(z, {2}) || gen == el(z, {-2})) << gen.to_string();
  EXPECT_EQ(k3.isomorphism_type(), FgAbGroup(1, {}));
}

TEST(InImage, Examples) {
  FgAbGroup z(1, {}), z2(0, {2}), z4(0, {4});
  Homomorphism twice(z, z, IntMatrix{{2}});
  auto w0 = in_image(twice, el(z, {0}));
  ASSERT_TRUE(w0);
  EXPECT_TRUE(w0->is_zero());
  EXPECT_FALSE(in_image(twice, el(z, {3})));
  Homomorphism h(z2, z4, IntMatrix{{2}});
  auto w = in_image(h, el(z4, {2}));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, el(z2, {1}));
  EXPECT_FALSE(in_image(h, el(z4, {1})));
}

TEST(InSubgroup, Examples) {
  FgAbGroup z(1, {});
  Subgroup evens(z, {el(z, {2})});
  EXPECT_TRUE(in_subgroup(evens, el(z, {0})));
  EXPECT_TRUE(in_subgroup(evens, el(z, {4})));
  EXPECT_FALSE(in_subgroup(evens, el(z, {3})));
  // Z_4 + Z_9 given by relations, then moved to canonical coordinates.
  auto p = FgAbGroup::from_relations(2, IntMatrix{{4, 0}, {0, 9}});
  ASSERT_EQ(p.group, FgAbGroup(0, {36}));
  auto canon = [&](long a, long b) { return GroupElement(p.group, p.to_canonical * std::vector<Integer>{a, b}); };
  Subgroup s(p.group, {canon(2, 0), canon(0, 3)});
  EXPECT_FALSE(in_subgroup(s, canon(1, 0)));
  EXPECT_EQ(closure(p.group, s.generators()).size(), 6u);
  for (long a = 0; a < 4; ++a)
    for (long b = 0; b < 9; ++b) EXPECT_EQ(in_subgroup(s, canon(a, b)), a % 2 == 0 && b % 3 == 0) << a << "," << b;
}

TEST(Injectivity, Examples) {
  FgAbGroup z2(0, {2}), z(1, {});
  EXPECT_TRUE(is_injective(Homomorphism::identity(z2)));
  EXPECT_FALSE(is_injective(Homomorphism::zero(z2, z2)));
  EXPECT_TRUE(paired_injective(Homomorphism::zero(z2, z), Homomorphism::identity(z2)));
  EXPECT_FALSE(paired_injective(Homomorphism::zero(z2, z), Homomorphism::zero(z2, z2)));
  EXPECT_THROW(paired_injective(Homomorphism::identity(z), Homomorphism::identity(z2)), ShapeMismatch);
}

TEST(Exactness, Examples) {
  FgAbGroup g(1, {3}), z(1, {}), z2(0, {2}), zero;
  EXPECT_TRUE(exact_at(Homomorphism::zero(zero, g), Homomorphism::identity(g)));
  EXPECT_TRUE(exact_at(Homomorphism(z, z, IntMatrix{{2}}), Homomorphism(z, z2, IntMatrix{{1}})));
  // 0 -> Z -> Z_2 is not exact at Z: the boundary is not injective.
  EXPECT_FALSE(exact_at(Homomorphism::zero(zero, z), Homomorphism(z, z2, IntMatrix{{1}})));
  EXPECT_THROW(exact_at(Homomorphism::identity(z), Homomorphism::identity(z2)), ShapeMismatch);
}

TEST(FgAbProperty, EvalIsAdditive) {
  std::mt19937_64 rng(11);
  auto groups = testing_support::finite_groups(36, 2);
  for (int t = 0; t < 200; ++t) {
    const auto& s = groups[rng() % groups.size()];
    const auto& g = groups[rng() % groups.size()];
    auto h = testing_support::random_hom(s, g, rng);
    auto xs = all_elements(s);
    EXPECT_TRUE(h(GroupElement::zero(s)).is_zero());
    for (int k = 0; k < 10 && !xs.empty(); ++k) {
      const auto& x = xs[rng() % xs.size()];
      const auto& y = xs[rng() % xs.size()];
      EXPECT_EQ(h(x + y), h(x) + h(y));
    }
  }
}

TEST(FgAbProperty, ComposeIsAssociativeAndPointwise) {
  std::mt19937_64 rng(13);
  auto groups = testing_support::finite_groups(24, 2);
  for (int t = 0; t < 150; ++t) {
    const auto& a = groups[rng() % groups.size()];
    const auto& b = groups[rng() % groups.size()];
    const auto& c = groups[rng() % groups.size()];
    const auto& d = groups[rng() % groups.size()];
    auto f = testing_support::random_hom(a, b, rng);
    auto g = testing_support::random_hom(b, c, rng);
    auto h = testing_support::random_hom(c, d, rng);
    EXPECT_EQ(compose(h, compose(g, f)), compose(compose(h, g), f));
    for (const auto& x : all_elements(a)) EXPECT_EQ(compose(g, f)(x), g(f(x)));
  }
}

TEST(FgAbProperty, FreeGroupsKernelAndImage) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 7) - 3;
    Homomorphism h(FgAbGroup::free(c), FgAbGroup::free(r), m);
    for (const auto& k : kernel(h).generators()) EXPECT_TRUE(h(k).is_zero());
    for (const auto& x : testing_support::box_elements(h.source(), 2)) {
      auto y = h(x);
      auto w = in_image(h, y);
      ASSERT_TRUE(w);
      EXPECT_EQ(h(*w), y);
      EXPECT_EQ(in_subgroup(kernel(h), x), y.is_zero());
    }
  }
}
