#include <gtest/gtest.h>

#include <algorithm>

#include "oracle.hpp"
#include "trivext/errors.hpp"
#include "trivext/finring.hpp"
#include "trivext/ideal.hpp"

namespace trivext {
namespace {

oracle::ElemSet carrier_set(const Ideal& i) { return oracle::as_set(i.carrier()); }

TEST(MakeZmod, CanonicalPresentation) {
  auto r = make_zmod(4);
  EXPECT_EQ(r->orders(), Vec{4});
  EXPECT_EQ(r->one(), Elem{1});
  EXPECT_EQ(r->size(), 4u);
  EXPECT_EQ(make_zmod(2)->size(), 2u);
  EXPECT_THROW(make_zmod(1), AlgebraError);
}

TEST(MakeZmod, SixHasNontrivialIdempotents) {
  auto r = make_zmod(6);
  std::vector<Elem> expect;
  for (const Elem& x : oracle::elements(*r)) {
    if (r->mul(x, x) == x) expect.push_back(x);
  }
  EXPECT_EQ(idempotents(*r), expect);
  EXPECT_EQ(expect, (std::vector<Elem>{{0}, {1}, {3}, {4}}));
}

TEST(MakeQuotientPoly, TruncatedAlgebra) {
  auto r = make_quotient_poly(2, {0, 0, 1});
  EXPECT_EQ(r->size(), 4u);
  Elem x{0, 1};
  EXPECT_TRUE(r->is_zero(r->mul(x, x)));
  auto m = local_maximal_ideal(r);
  ASSERT_TRUE(m);
  EXPECT_EQ(carrier_set(*m), oracle::ideal_closure(*r, {x}));
}

TEST(MakeQuotientPoly, DegreeOneIsThePrimeField) {
  auto r = make_quotient_poly(2, {0, 1});
  EXPECT_EQ(r->size(), 2u);
  EXPECT_TRUE(is_local(r));
  EXPECT_TRUE(local_maximal_ideal(r)->is_zero());
}

TEST(MakeQuotientPoly, NineElementField) {
  // x^2 + 1 has no root mod 3, so every nonzero element is invertible.
  for (std::int64_t a = 0; a < 3; ++a) EXPECT_NE((a * a + 1) % 3, 0);
  auto r = make_quotient_poly(3, {1, 0, 1});
  EXPECT_EQ(r->size(), 9u);
  for (const Elem& x : oracle::elements(*r)) {
    if (r->is_zero(x)) continue;
    EXPECT_TRUE(oracle::is_unit(*r, x));
    EXPECT_TRUE(r->is_unit(x));
  }
}

TEST(MakeQuotientPoly, RejectsBadInput) {
  EXPECT_THROW(make_quotient_poly(4, {0, 1}), AlgebraError);
  EXPECT_THROW(make_quotient_poly(2, {1, 0, 2}), AlgebraError);
  EXPECT_THROW(make_quotient_poly(3, {1, 0, 2}), AlgebraError);
}

TEST(MakeProduct, F2TimesF3IsZ6) {
  auto r = make_product({make_zmod(2), make_zmod(3)});
  auto z6 = make_zmod(6);
  EXPECT_EQ(r->size(), 6u);
  auto crt = [](std::int64_t k) { return Elem{k % 2, k % 3}; };
  for (std::int64_t a = 0; a < 6; ++a) {
    for (std::int64_t b = 0; b < 6; ++b) {
      EXPECT_EQ(crt((a + b) % 6), r->add(crt(a), crt(b)));
      EXPECT_EQ(crt((a * b) % 6), r->mul(crt(a), crt(b)));
    }
  }
}

TEST(MakeProduct, SingletonAndVnr) {
  auto single = make_product({make_zmod(4)});
  EXPECT_EQ(single->size(), 4u);
  EXPECT_EQ(single->mul({2}, {2}), Elem{0});
  auto r = make_product({make_zmod(2), make_zmod(2)});
  for (const Elem& x : oracle::elements(*r)) EXPECT_EQ(r->mul(x, x), x);
  EXPECT_THROW(make_product({}), AlgebraError);
}

TEST(MakeProduct, ProjectionsCommuteWithOperations) {
  auto a = make_zmod(4);
  auto b = make_quotient_poly(2, {1, 1, 1});
  auto r = make_product({a, b});
  for (const Elem& x : oracle::elements(*r)) {
    for (const Elem& y : oracle::elements(*r)) {
      EXPECT_EQ(product_component(*r, r->mul(x, y), 0),
                a->mul(product_component(*r, x, 0), product_component(*r, y, 0)));
      EXPECT_EQ(product_component(*r, r->add(x, y), 1),
                b->add(product_component(*r, x, 1), product_component(*r, y, 1)));
    }
  }
}

TEST(Units, SmallExamples) {
  auto r = make_zmod(4);
  EXPECT_TRUE(r->is_unit({3}));
  EXPECT_TRUE(r->is_regular({3}));
  EXPECT_FALSE(r->is_unit({2}));
  EXPECT_FALSE(r->is_regular({2}));
  EXPECT_TRUE(r->is_unit(r->one()));
  EXPECT_EQ(r->inverse({3}), Elem{3});
}

TEST(Units, RegularIffUnitAgreesWithOracle) {
  for (const RingPtr& r : {make_zmod(12), make_quotient_poly(2, {0, 0, 0, 1}),
                           make_product({make_zmod(4), make_zmod(3)})}) {
    r->assert_regular_is_unit();
    for (const Elem& x : oracle::elements(*r)) {
      EXPECT_EQ(r->is_unit(x), oracle::is_unit(*r, x));
      EXPECT_EQ(r->is_regular(x), oracle::is_regular(*r, x));
    }
  }
}

TEST(MaximalIdeals, AgreeWithBruteForce) {
  for (const RingPtr& r : {make_zmod(4), make_zmod(6), make_zmod(2), make_zmod(30),
                           make_product({make_zmod(4), make_quotient_poly(2, {0, 0, 1})})}) {
    std::vector<oracle::ElemSet> got;
    for (const Ideal& m : maximal_ideals(r)) got.push_back(carrier_set(m));
    auto expect = oracle::maximal_ideals(*r);
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(got, expect) << r->label();
  }
  auto z4 = make_zmod(4);
  EXPECT_TRUE(is_local(z4));
  EXPECT_EQ(carrier_set(*local_maximal_ideal(z4)), (oracle::ElemSet{{0}, {2}}));
  auto z6 = make_zmod(6);
  EXPECT_FALSE(is_local(z6));
  EXPECT_EQ(maximal_ideals(z6).size(), 2u);
}

TEST(Decompose, ZSixSplitsAlongThreeAndFour) {
  auto r = make_zmod(6);
  LocalDecomposition d = decompose_into_local(r);
  ASSERT_EQ(d.factors.size(), 2u);
  std::vector<std::uint64_t> sizes;
  std::vector<Elem> idem;
  for (const auto& f : d.factors) {
    sizes.push_back(f.ring->size());
    idem.push_back(f.idempotent);
  }
  std::sort(sizes.begin(), sizes.end());
  std::sort(idem.begin(), idem.end());
  EXPECT_EQ(sizes, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(idem, (std::vector<Elem>{{3}, {4}}));
}

TEST(Decompose, RoundTripAndMultiplicativeOnAllPairs) {
  for (const RingPtr& r : {make_zmod(4), make_zmod(60),
                           make_product({make_zmod(2), make_zmod(2)}),
                           make_product({make_zmod(9), make_quotient_poly(2, {1, 1, 1})})}) {
    LocalDecomposition d = decompose_into_local(r);
    std::uint64_t prod = 1;
    for (const auto& f : d.factors) {
      EXPECT_TRUE(is_local(f.ring));
      prod *= f.ring->size();
    }
    EXPECT_EQ(prod, r->size());
    for (const Elem& x : oracle::elements(*r)) {
      EXPECT_EQ(d.backward(d.forward(x)), x);
      for (const Elem& y : oracle::elements(*r)) {
        auto fx = d.forward(x), fy = d.forward(y), fxy = d.forward(r->mul(x, y));
        for (std::size_t c = 0; c < d.factors.size(); ++c) {
          EXPECT_EQ(fxy[c], d.factors[c].ring->mul(fx[c], fy[c]));
        }
      }
    }
  }
  EXPECT_EQ(decompose_into_local(make_zmod(4)).factors.size(), 1u);
  EXPECT_EQ(decompose_into_local(make_product({make_zmod(2), make_zmod(2)})).factors.size(), 2u);
}

TEST(FiniteRing, RejectsNonAssociativeConstants) {
  // b0 = 1, b1 with b1*b1 = b0 + b1 over Z/2 is fine (F4); break commutativity.
  std::vector<Mat> bad{{{1, 0}, {0, 1}}, {{1, 1}, {1, 1}}};
  EXPECT_THROW(FiniteRing(Vec{2, 2}, bad, Elem{1, 0}, "bad"), AlgebraError);
}

TEST(FiniteRing, TablesAgreeWithPolynomialProducts) {
  auto r = make_quotient_poly(3, {0, 0, 0, 1});
  ASSERT_TRUE(r->has_tables());
  for (const Elem& x : oracle::elements(*r)) {
    for (const Elem& y : oracle::elements(*r)) {
      Elem expect(3, 0);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; i + j < 3; ++j) {
          expect[i + j] = (expect[i + j] + x[i] * y[j]) % 3;
        }
      }
      EXPECT_EQ(r->mul(x, y), expect);
    }
  }
}

}  // namespace
}  // namespace trivext
