#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "trivext/errors.hpp"
#include "trivext/finmod.hpp"
#include "trivext/idealops.hpp"

namespace trivext {
namespace {

TrivialExtension z4_z2() {
  auto a = make_zmod(4);
  return trivial_extension(a, residue_field_power(a, 1));
}

oracle::ElemSet set_of(const Ideal& i) { return oracle::as_set(i.carrier()); }

TEST(Annihilator, TrivialExtensionCases) {
  TrivialExtension t = z4_z2();
  const RingPtr& r = t.ring;
  EXPECT_EQ(set_of(annihilator(r, {0, 1})),
            (oracle::ElemSet{{0, 0}, {2, 0}, {0, 1}, {2, 1}}));
  Ideal ann = annihilator(r, {2, 1});
  EXPECT_EQ(ann.size(), 4u);
  EXPECT_EQ(set_of(ann), oracle::annihilator(*r, {2, 1}));
  EXPECT_TRUE(annihilator(r, r->one()).is_zero());
}

TEST(Annihilator, AgreesWithBruteForceAndColon) {
  for (const RingPtr& r : {z4_z2().ring, make_zmod(12), make_quotient_poly(2, {0, 0, 0, 1})}) {
    for (const Elem& x : oracle::elements(*r)) {
      Ideal a = annihilator(r, x);
      EXPECT_EQ(set_of(a), oracle::annihilator(*r, x));
      EXPECT_EQ(a, colon(Ideal::zero(r), Ideal::principal(r, x)));
    }
  }
}

TEST(IdealArithmetic, IntersectSumProduct) {
  TrivialExtension t = z4_z2();
  const RingPtr& r = t.ring;
  Ideal a = Ideal::principal(r, {2, 0});
  Ideal b = Ideal::principal(r, {2, 1});
  EXPECT_EQ(set_of(a), (oracle::ElemSet{{0, 0}, {2, 0}}));
  EXPECT_EQ(set_of(b), (oracle::ElemSet{{0, 0}, {2, 1}}));
  EXPECT_TRUE(intersect(a, b).is_zero());
  EXPECT_EQ(intersect(a, Ideal::whole(r)), a);
  Ideal zero_e = Ideal::principal(r, {0, 1});
  EXPECT_TRUE(product(zero_e, zero_e).is_zero());
  EXPECT_EQ(sum(a, zero_e).size(), 4u);
  EXPECT_THROW(sum(a, Ideal::zero(make_zmod(4))), AlgebraError);
}

TEST(IdealArithmetic, AgreesWithBruteForceOnPairs) {
  auto r = make_zmod(12);
  for (const Elem& x : oracle::elements(*r)) {
    for (const Elem& y : oracle::elements(*r)) {
      Ideal i = Ideal::principal(r, x), j = Ideal::principal(r, y);
      oracle::ElemSet si = set_of(i), sj = set_of(j), cap, prod_seed, colon_set;
      for (const Elem& z : si) {
        if (sj.count(z)) cap.insert(z);
        for (const Elem& w : sj) prod_seed.insert(r->mul(z, w));
      }
      for (const Elem& z : oracle::elements(*r)) {
        bool ok = true;
        for (const Elem& w : sj) ok = ok && si.count(r->mul(z, w));
        if (ok) colon_set.insert(z);
      }
      EXPECT_EQ(set_of(intersect(i, j)), cap);
      EXPECT_EQ(set_of(product(i, j)), oracle::ideal_closure(*r, prod_seed));
      EXPECT_EQ(set_of(colon(i, j)), colon_set);
    }
  }
}

TEST(Colon, Examples) {
  auto r = make_zmod(4);
  EXPECT_TRUE(colon(Ideal::whole(r), Ideal::whole(r)).is_whole());
  EXPECT_EQ(set_of(colon(Ideal::zero(r), Ideal::principal(r, {2}))),
            (oracle::ElemSet{{0}, {2}}));
  EXPECT_TRUE(colon(Ideal::principal(r, {2}), Ideal::zero(r)).is_whole());
}

TEST(VOperation, Examples) {
  auto z4 = make_zmod(4);
  Ideal two = Ideal::principal(z4, {2});
  EXPECT_TRUE(inverse_finite(two).is_whole());
  Ideal v = v_closure_finite(two);
  EXPECT_TRUE(v.is_whole());
  EXPECT_FALSE(v == two);
  EXPECT_TRUE(v_closure_finite(Ideal::whole(z4)).is_whole());
  TrivialExtension t = z4_z2();
  EXPECT_TRUE(v_closure_finite(Ideal::principal(t.ring, {0, 1})).is_whole());
  EXPECT_THROW(inverse_finite(Ideal::zero(z4)), AlgebraError);
  EXPECT_TRUE(v_finite_witness_finite(two).is_whole());
  EXPECT_TRUE(v_finite_witness_finite(Ideal::principal(t.ring, {2, 1})).is_whole());
  EXPECT_THROW(v_finite_witness_finite(Ideal::zero(z4)), AlgebraError);
}

TEST(MinimalGenerators, Examples) {
  TrivialExtension t = z4_z2();
  const RingPtr& r = t.ring;
  Ideal me = Ideal::generated(r, {{2, 0}, {0, 1}});
  EXPECT_EQ(me.size(), 4u);
  EXPECT_EQ(minimal_generators(me).mu, 2u);
  EXPECT_EQ(minimal_generators(Ideal::principal(r, {2, 1})).mu, 1u);
  EXPECT_EQ(minimal_generators(Ideal::zero(r)).mu, 0u);
  EXPECT_THROW(minimal_generators(Ideal::principal(make_zmod(6), {2})), AlgebraError);
}

TEST(MinimalGenerators, IndependentOfGeneratorList) {
  auto a = make_quotient_poly(2, {0, 0, 1});
  TrivialExtension t = trivial_extension(a, residue_field_power(a, 2));
  const RingPtr& r = t.ring;
  std::mt19937_64 rng(11);
  auto all = oracle::elements(*r);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Elem> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(all[rng() % all.size()]);
    Ideal i = Ideal::generated(r, gens);
    std::size_t mu = minimal_generators(i).mu;
    std::vector<Elem> redundant = gens;
    redundant.push_back(r->add(gens[0], gens[1]));
    redundant.push_back(r->mul(gens[2], all[rng() % all.size()]));
    std::shuffle(redundant.begin(), redundant.end(), rng);
    Ideal j = Ideal::generated(r, redundant);
    ASSERT_EQ(i, j);
    EXPECT_EQ(minimal_generators(j).mu, mu);
    EXPECT_EQ(minimal_generators(j, redundant).mu, mu);
  }
}

TEST(AllIdeals, CountsAgreeWithBruteForce) {
  EXPECT_EQ(all_ideals(make_zmod(4)).size(), 3u);
  EXPECT_EQ(all_ideals(z4_z2().ring).size(), 6u);
  EXPECT_EQ(all_ideals(make_zmod(2)).size(), 2u);
  auto a = make_quotient_poly(2, {0, 0, 1});
  for (const RingPtr& r : {make_zmod(12), trivial_extension(a, residue_field_power(a, 2)).ring,
                           make_product({make_zmod(4), make_zmod(2)})}) {
    std::set<oracle::ElemSet> got;
    for (const Ideal& i : all_ideals(r)) got.insert(set_of(i));
    EXPECT_EQ(got, oracle::all_ideals(*r)) << r->label();
  }
}

TEST(RingPredicates, VonNeumannRegular) {
  EXPECT_TRUE(is_von_neumann_regular(make_zmod(6)).holds);
  auto z4 = make_zmod(4);
  RingPredicate p = is_von_neumann_regular(z4);
  EXPECT_FALSE(p.holds);
  ASSERT_TRUE(p.witness);
  EXPECT_EQ(*p.witness, Ideal::principal(z4, {2}));
  EXPECT_TRUE(is_von_neumann_regular(make_product({make_zmod(2), make_zmod(3)})).holds);
}

TEST(RingPredicates, Bezout) {
  TrivialExtension t = z4_z2();
  RingPredicate p = is_bezout(t.ring);
  EXPECT_FALSE(p.holds);
  ASSERT_TRUE(p.witness);
  EXPECT_EQ(*p.witness, Ideal::generated(t.ring, {{2, 0}, {0, 1}}));
  EXPECT_EQ(minimal_generators(*p.witness).mu, 2u);
  EXPECT_TRUE(is_bezout(make_zmod(12)).holds);
}

TEST(Componentwise, Examples) {
  auto f2 = make_zmod(2), f3 = make_zmod(3);
  auto r = make_product({f2, f3});
  EXPECT_EQ(set_of(annihilator(r, {0, 1})), (oracle::ElemSet{{0, 0}, {1, 0}}));
  EXPECT_TRUE(annihilator(r, {1, 1}).is_zero());
  auto z4 = make_zmod(4);
  auto r2 = make_product({z4, z4});
  Ideal i = Ideal::generated(r2, {{2, 0}, {0, 2}});
  Ideal j = Ideal::generated(r2, {{2, 0}, {0, 1}});
  EXPECT_EQ(intersect(i, j), i);
  auto elems = oracle::elements(*r2);
  ComponentwiseReport rep = componentwise_check(r2, elems, all_ideals(r2));
  EXPECT_TRUE(rep.holds) << rep.detail;
  EXPECT_GT(rep.cases, 0u);
  EXPECT_THROW(componentwise_check(z4, {}, {}), AlgebraError);
}

TEST(TrivialExtensionAnnihilators, AnnihilatorFormulasOnSmallPairs) {
  auto a = make_zmod(8);
  TrivialExtension t = trivial_extension(a, residue_field_power(a, 2));
  Ideal m = *local_maximal_ideal(a);
  for (const Elem& x : oracle::elements(*t.ring)) {
    Elem ax = t.proj_a(x);
    Vec ex = t.proj_e(x);
    oracle::ElemSet expect;
    if (!a->is_zero(ax) && m.contains(ax)) {
      for (const Elem& y : oracle::annihilator(*a, ax)) {
        t.fiber->for_each_element([&](const Vec& e) { expect.insert(t.embed(y, e)); });
      }
    } else if (a->is_zero(ax) && !t.fiber->is_zero(ex)) {
      for (const Elem& y : oracle::as_set(m.carrier())) {
        t.fiber->for_each_element([&](const Vec& e) { expect.insert(t.embed(y, e)); });
      }
    } else {
      continue;
    }
    EXPECT_EQ(set_of(annihilator(t.ring, x)), expect) << t.ring->format(x);
  }
}

}  // namespace
}  // namespace trivext
