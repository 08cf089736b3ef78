#include <gtest/gtest.h>

#include "oracle.hpp"
#include "trivext/errors.hpp"
#include "trivext/resolve.hpp"

namespace trivext {
namespace {

TrivialExtension z4_z2() {
  auto a = make_zmod(4);
  return trivial_extension(a, residue_field_power(a, 1));
}

void expect_exact(const Presentation& p) {
  EXPECT_EQ(image(p.augmentation).carrier(), p.module.carrier());
  for (std::size_t j = 0; j < p.steps.size(); ++j) {
    EXPECT_EQ(image(p.steps[j]).carrier(), p.syzygies[j].carrier());
  }
}

TEST(Presentation, PeriodicOverZ4) {
  auto r = make_zmod(4);
  ModulePtr r1 = free_module(r, 1);
  Submodule two = Submodule::generated(r1, {{2}});
  Presentation p = presentation(two, 2);
  ASSERT_EQ(p.depth(), 2u);
  expect_exact(p);
  EXPECT_EQ(p.augmentation.images, Mat{{2}});
  for (const ModuleMap& s : p.steps) EXPECT_EQ(s.images, Mat{{2}});
}

TEST(Presentation, FreeModuleHasZeroSyzygies) {
  auto r = make_zmod(9);
  Submodule whole = Submodule::whole(free_module(r, 1));
  Presentation p = presentation(whole, 3);
  for (const Submodule& k : p.syzygies) EXPECT_TRUE(k.is_zero());
  expect_exact(p);
}

TEST(Presentation, MaximalIdealOfZ4OverZ2NeedsTwoGenerators) {
  TrivialExtension t = z4_z2();
  ModulePtr r1 = free_module(t.ring, 1);
  Submodule me = Submodule::generated(r1, {{2, 0}, {0, 1}});
  Presentation p = presentation(me, 1);
  EXPECT_EQ(p.augmentation.source->rank(), 2 * t.ring->rank());
  expect_exact(p);
}

TEST(Presentation, NonLocalRingIsExact) {
  auto r = make_zmod(12);
  ModulePtr r2 = free_module(r, 2);
  Submodule n = Submodule::generated(r2, {{2, 3}, {4, 0}});
  expect_exact(presentation(n, 3));
}

TEST(MinimalSyzygy, Examples) {
  auto z4 = make_zmod(4);
  EXPECT_EQ(oracle::as_set(minimal_syzygy(z4, {{2}}).carrier()), (oracle::ElemSet{{0}, {2}}));

  auto a = make_quotient_poly(2, {0, 0, 1});
  TrivialExtension t = trivial_extension(a, residue_field_power(a, 1));
  const RingPtr& r = t.ring;
  Ideal m = *local_maximal_ideal(r);
  std::vector<Elem> gens{{0, 1, 0}, {0, 0, 1}};
  ASSERT_EQ(Ideal::generated(r, gens), m);
  Submodule k = minimal_syzygy(r, gens);
  // M^2 as a submodule of R^2
  oracle::ElemSet expect;
  for (const Elem& x : oracle::as_set(m.carrier())) {
    for (const Elem& y : oracle::as_set(m.carrier())) {
      Vec v = x;
      v.insert(v.end(), y.begin(), y.end());
      expect.insert(v);
    }
  }
  EXPECT_EQ(oracle::as_set(k.carrier()), expect);
  EXPECT_EQ(oracle::as_set(k.carrier()), oracle::syzygy(*r, gens));

  EXPECT_TRUE(minimal_syzygy(z4, {{1}}).is_zero());
  EXPECT_THROW(minimal_syzygy(z4, {{2}, {2}}), NotMinimalError);
  EXPECT_THROW(minimal_syzygy(make_zmod(6), {{2}}), AlgebraError);
}

TEST(Syzygy, AgreesWithBruteForce) {
  auto r = make_zmod(12);
  std::vector<Elem> gens{{4}, {6}};
  EXPECT_EQ(oracle::as_set(syzygy(r, gens).carrier()), oracle::syzygy(*r, gens));
}

TEST(ProjectiveDimension, Examples) {
  auto z4 = make_zmod(4);
  ModulePtr r1 = free_module(z4, 1);
  PdResult two = projective_dimension_up_to(Submodule::generated(r1, {{2}}), 4);
  EXPECT_EQ(two.kind, PdResult::Kind::NotFreeUpTo);
  EXPECT_EQ(two.bound, 4u);
  ASSERT_EQ(two.syzygies.size(), 4u);
  for (const Submodule& s : two.syzygies) {
    EXPECT_EQ(oracle::as_set(s.carrier()), (oracle::ElemSet{{0}, {2}}));
  }
  PdResult whole = projective_dimension_up_to(Submodule::whole(r1), 4);
  EXPECT_TRUE(whole.is_free());
  EXPECT_EQ(whole.basis.size(), 1u);

  auto z6 = make_zmod(6);
  QuotientModule q = cyclic_module(Ideal::principal(z6, {2}));
  PdResult pd = projective_dimension_up_to(Submodule::whole(q.module), 4);
  EXPECT_TRUE(pd.is_free());
  EXPECT_EQ(pd.factors.size(), 2u);
}

TEST(ProjectiveDimension, LocalDichotomy) {
  auto a = make_quotient_poly(2, {0, 0, 1});
  TrivialExtension t = trivial_extension(a, residue_field_power(a, 1));
  ModulePtr r1 = free_module(t.ring, 1);
  for (const Ideal& i : all_ideals(t.ring)) {
    PdResult pd = projective_dimension_up_to(ideal_as_submodule(i, r1), 3);
    if (pd.is_free()) {
      EXPECT_TRUE(i.is_zero() || i.is_whole());
    } else {
      ASSERT_EQ(pd.syzygies.size(), 3u);
      for (const Submodule& s : pd.syzygies) EXPECT_FALSE(s.is_zero());
    }
  }
}

TEST(ProjectiveCyclic, Examples) {
  auto z6 = make_zmod(6);
  ProjectiveCyclic p = is_projective_cyclic(Ideal::principal(z6, {2}));
  EXPECT_TRUE(p.projective);
  EXPECT_EQ(p.idempotent, Elem{4});
  auto z4 = make_zmod(4);
  EXPECT_FALSE(is_projective_cyclic(Ideal::principal(z4, {2})).projective);
  ProjectiveCyclic z = is_projective_cyclic(Ideal::zero(z4));
  EXPECT_TRUE(z.projective);
  EXPECT_EQ(z.idempotent, Elem{0});
}

TEST(WeakNd, Examples) {
  EXPECT_TRUE(weak_nd_check_finite(make_zmod(6), 2, 0, 4, 1000).holds);
  auto z4 = make_zmod(4);
  WeakNdReport rep = weak_nd_check_finite(z4, 2, 0, 4, 1000);
  EXPECT_FALSE(rep.holds);
  ASSERT_TRUE(rep.witness);
  EXPECT_EQ(*rep.witness, Ideal::principal(z4, {2}));
  EXPECT_TRUE(weak_nd_check_finite(make_quotient_poly(3, {1, 0, 1}), 2, 0, 4, 1000).holds);
  EXPECT_TRUE(weak_nd_check_finite(make_zmod(5), 3, 1, 4, 1000).holds);
  EXPECT_THROW(weak_nd_check_finite(z4, 2, 4, 4, 1000), AlgebraError);
}

TEST(WeakNd, AgreesWithVonNeumannRegularity) {
  for (const RingPtr& r : {make_zmod(30), make_zmod(12), make_product({make_zmod(2), make_zmod(5)}),
                           make_product({make_zmod(3), make_quotient_poly(2, {0, 0, 1})})}) {
    EXPECT_EQ(weak_nd_check_finite(r, 2, 0, 4, 1000).holds, is_von_neumann_regular(r).holds)
        << r->label();
  }
}

}  // namespace
}  // namespace trivext
