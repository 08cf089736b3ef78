#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "trivext/errors.hpp"
#include "trivext/zq.hpp"

namespace trivext {
namespace {

// Elements reachable from 0 by steps ±s_i inside [-w, w].  In one dimension
// any representation can be reordered to stay within max|s_i| of the
// segment [0, t], so a window of |t| + 2 max|s_i| decides membership of t.
bool reachable(const std::vector<long>& steps, long target) {
  long big = 0;
  for (long s : steps) big = std::max(big, std::labs(s));
  if (big == 0) return target == 0;
  const long w = std::labs(target) + 2 * big;
  std::vector<char> seen(static_cast<std::size_t>(2 * w + 1), 0);
  std::vector<long> stack{0};
  seen[static_cast<std::size_t>(w)] = 1;
  while (!stack.empty()) {
    long p = stack.back();
    stack.pop_back();
    if (p == target) return true;
    for (long s : steps) {
      for (long q : {p + s, p - s}) {
        if (q < -w || q > w || seen[static_cast<std::size_t>(q + w)]) continue;
        seen[static_cast<std::size_t>(q + w)] = 1;
        stack.push_back(q);
      }
    }
  }
  return false;
}

// x ∈ Σ R g_i, where r g = (b a, b q + f a) for r = (b, f).
bool generated_contains(const std::vector<ZQElement>& gens, const ZQElement& x) {
  std::vector<long> as;
  for (const ZQElement& g : gens) {
    if (g.a != 0) as.push_back(g.a.get_si());
  }
  if (!as.empty()) return reachable(as, x.a.get_si());
  if (x.a != 0) return false;
  mpz_class den = x.q.get_den();
  for (const ZQElement& g : gens) den = lcm(den, g.q.get_den());
  std::vector<long> qs;
  for (const ZQElement& g : gens) qs.push_back(mpz_class(g.q.get_num() * den / g.q.get_den()).get_si());
  return reachable(qs, mpz_class(x.q.get_num() * den / x.q.get_den()).get_si());
}

ZQElement random_element(std::mt19937_64& rng, bool zero_a = false) {
  std::uniform_int_distribution<long> coef(-12, 12);
  std::uniform_int_distribution<long> den(1, 12);
  return zq_make(zero_a ? 0 : coef(rng), coef(rng), den(rng));
}

TEST(ZQ, MultiplicationLaw) {
  ZQElement p = zq_mul(zq_make(2, 1, 3), zq_make(3, 1, 2));
  EXPECT_EQ(p, zq_make(6, 2));
  EXPECT_TRUE(zq_is_regular(zq_make(5, 9, 7)));
  EXPECT_FALSE(zq_is_regular(zq_make(0, 1)));
  ZQElement w = *zq_zero_divisor_witness(zq_make(0, 1));
  EXPECT_TRUE(zq_is_zero(zq_mul(zq_make(0, 1), w)));
}

TEST(ZQ, IdealNormalForms) {
  EXPECT_EQ(zq_ideal_nf({zq_make(4, 1, 2), zq_make(6, 7)}), ZQIdealNF::full_line(2));
  EXPECT_EQ(zq_ideal_nf({zq_make(0, 2, 3), zq_make(0, 1, 2)}),
            ZQIdealNF::zero_line(mpq_class(1, 6)));
  EXPECT_EQ(zq_ideal_nf({zq_make(0, 1)}), ZQIdealNF::zero_line(1));
  EXPECT_EQ(zq_format(zq_ideal_nf({zq_make(0, 1)})), "0 ∝ Z");
  EXPECT_TRUE(zq_ideal_nf({}).is_zero());
}

TEST(ZQ, NormalFormMembershipMatchesSearch) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<ZQElement> gens;
    const bool zero_a = coin(rng);
    for (int k = len(rng); k > 0; --k) gens.push_back(random_element(rng, zero_a));
    ZQIdealNF nf = zq_ideal_nf(gens);
    for (int s = 0; s < 200; ++s) {
      ZQElement x = random_element(rng, coin(rng));
      ASSERT_EQ(zq_contains(nf, x), generated_contains(gens, x))
          << zq_format(nf) << " at " << zq_format(x);
    }
  }
}

TEST(ZQ, IntersectionSumAnnihilator) {
  EXPECT_EQ(zq_intersect(ZQIdealNF::full_line(2), ZQIdealNF::full_line(3)),
            ZQIdealNF::full_line(6));
  EXPECT_EQ(zq_sum(ZQIdealNF::full_line(4), ZQIdealNF::zero_line(5)), ZQIdealNF::full_line(4));
  EXPECT_EQ(zq_intersect(ZQIdealNF::zero_line(mpq_class(2, 3)), ZQIdealNF::zero_line(mpq_class(1, 2))),
            ZQIdealNF::zero_line(2));
  ZQIdealResult ann = zq_annihilator(zq_make(0, 1));
  ASSERT_TRUE(std::holds_alternative<ZQFlagged>(ann));
  EXPECT_EQ(std::get<ZQFlagged>(ann).value, ZQFractional::zero_full());
  EXPECT_EQ(std::get<ZQIdealNF>(zq_annihilator(zq_make(5, 1, 2))), ZQIdealNF::zero());
}

TEST(ZQ, ColonMatchesDefinitionOnSamples) {
  std::mt19937_64 rng(11);
  std::vector<ZQIdealNF> ideals = {ZQIdealNF::zero(), ZQIdealNF::full_line(1),
                                   ZQIdealNF::full_line(4), ZQIdealNF::full_line(6),
                                   ZQIdealNF::zero_line(mpq_class(1, 6)),
                                   ZQIdealNF::zero_line(mpq_class(4, 3))};
  for (const ZQIdealNF& i : ideals) {
    for (const ZQIdealNF& j : ideals) {
      ZQIdealResult c = zq_colon(i, j);
      ZQFractional value = std::holds_alternative<ZQIdealNF>(c)
                               ? zq_fractional(std::get<ZQIdealNF>(c))
                               : std::get<ZQFlagged>(c).value;
      std::vector<ZQElement> jgens = zq_generators(j);
      // J ⊇ 0 ∝ Q for FullLine, so test against (0, t) as well.
      if (j.kind == ZQIdealNF::Kind::FullLine) {
        for (long t : {1, 7}) jgens.push_back(zq_make(0, 1, t));
      }
      for (int s = 0; s < 300; ++s) {
        ZQElement x = random_element(rng, s % 3 == 0);
        bool inside = std::all_of(jgens.begin(), jgens.end(), [&](const ZQElement& g) {
          return zq_contains(i, zq_mul(x, g));
        });
        ASSERT_EQ(zq_contains(value, zq_lift(x)), inside)
            << "(" << zq_format(i) << " : " << zq_format(j) << ") at " << zq_format(x);
      }
    }
  }
}

TEST(ZQ, InverseTable) {
  EXPECT_EQ(zq_inverse(ZQFractional::scaled_line(2)), ZQFractional::scaled_line(mpq_class(1, 2)));
  EXPECT_EQ(zq_format(zq_inverse(ZQFractional::scaled_line(2))), "(1/2)Z ∝ Q");
  EXPECT_EQ(zq_inverse(ZQFractional::ring()), ZQFractional::ring());
  EXPECT_EQ(zq_v_closure(ZQFractional::zero_scaled(mpq_class(1, 6))), ZQFractional::zero_full());
  EXPECT_THROW(zq_inverse(ZQFractional::zero()), AlgebraError);
  for (long d = 1; d <= 100; ++d) {
    ZQFractional f = zq_fractional(ZQIdealNF::full_line(d));
    EXPECT_EQ(zq_v_closure(f), f);
  }
}

TEST(ZQ, InverseMatchesDefinitionOnSamples) {
  std::mt19937_64 rng(5);
  std::vector<ZQFractional> variants = {
      ZQFractional::scaled_line(mpq_class(3, 2)), ZQFractional::scaled_line(4),
      ZQFractional::zero_scaled(mpq_class(1, 6)), ZQFractional::zero_full(),
      ZQFractional::total()};
  std::uniform_int_distribution<long> coef(-12, 12);
  std::uniform_int_distribution<long> den(1, 12);
  auto frac = [&]() { return mpq_class(mpz_class(coef(rng)), mpz_class(den(rng))); };
  for (const ZQFractional& f : variants) {
    ZQFractional inv = zq_inverse(f);
    // Generators of F: the lattice generators plus sampled elements.
    std::vector<ZQFraction> gens;
    if (f.kind == ZQFractional::Kind::ScaledLine) gens.push_back({f.c, 0});
    if (f.kind == ZQFractional::Kind::ZeroScaled) gens.push_back({0, f.c});
    for (long k = 1; k <= 13; ++k) {
      ZQFraction g{mpq_class(1, k), mpq_class(1, k)};
      g.a.canonicalize();
      g.q.canonicalize();
      if (zq_contains(f, {0, g.q})) gens.push_back({0, g.q});
      if (zq_contains(f, g)) gens.push_back(g);
    }
    for (int s = 0; s < 500; ++s) {
      ZQFraction x{frac(), frac()};
      x.a.canonicalize();
      x.q.canonicalize();
      bool inside = std::all_of(gens.begin(), gens.end(), [&](const ZQFraction& g) {
        ZQFraction p = zq_mul(x, g);
        return p.a.get_den() == 1;
      });
      ASSERT_EQ(zq_contains(inv, x), inside) << zq_format(f) << " at " << zq_format(x);
    }
  }
}

TEST(ZQ, VFiniteWitnessAndPrincipal) {
  EXPECT_EQ(zq_v_finite_witness(ZQIdealNF::full_line(2)), (std::vector<ZQElement>{zq_make(2)}));
  EXPECT_EQ(zq_v_finite_witness(ZQIdealNF::zero_line(mpq_class(1, 6))),
            (std::vector<ZQElement>{zq_make(0, 1)}));
  EXPECT_EQ(zq_v_finite_witness(ZQIdealNF::whole()), (std::vector<ZQElement>{zq_make(1)}));
  EXPECT_EQ(zq_v_finite_witness(zq_annihilator(zq_make(0, 1))),
            (std::vector<ZQElement>{zq_make(0, 1)}));
  EXPECT_THROW(zq_v_finite_witness(ZQIdealNF::zero()), AlgebraError);

  ZQPrincipal p = zq_is_principal(ZQIdealNF::zero_line(mpq_class(3, 4)));
  EXPECT_TRUE(p.principal);
  EXPECT_EQ(*p.generator, zq_make(0, 3, 4));
  EXPECT_EQ(*zq_is_principal(ZQIdealNF::full_line(2)).generator, zq_make(2));
  EXPECT_FALSE(zq_is_fg(ZQFractional::zero_full()));
  EXPECT_TRUE(zq_is_fg(ZQFractional::zero_scaled(3)));
}

TEST(ZQ, Hermite) {
  using Row = std::vector<mpz_class>;
  auto h = integer_hermite({Row{12, 7}, Row{5, 3}});
  EXPECT_EQ(h, (std::vector<Row>{Row{1, 0}, Row{0, 1}}));
  h = integer_hermite({Row{4, 6, 0}, Row{6, 9, 0}, Row{0, 0, 0}});
  EXPECT_EQ(h, (std::vector<Row>{Row{2, 3, 0}}));
}

TEST(ZQ, SubmoduleNormalForms) {
  auto vec = [](std::vector<long> u, std::vector<mpq_class> e) {
    ZQVector v;
    for (long x : u) v.u.emplace_back(x);
    v.e = std::move(e);
    return v;
  };
  ZQSubmoduleNF h = zq_submodule_nf(1, {vec({0}, {1})});
  EXPECT_FALSE(h.split());
  EXPECT_TRUE(zq_is_n_presented(h, 0));
  EXPECT_FALSE(zq_is_n_presented(h, 1));

  h = zq_submodule_nf(1, {vec({2}, {0})});
  EXPECT_TRUE(h.split());
  EXPECT_TRUE(zq_is_n_presented(h, 5));
  EXPECT_TRUE(zq_split_contains(h, vec({4}, {mpq_class(1, 3)})));
  EXPECT_FALSE(zq_split_contains(h, vec({3}, {0})));

  h = zq_submodule_nf(1, {vec({1}, {0}), vec({0}, {1})});
  EXPECT_TRUE(h.split());

  h = zq_submodule_nf(2, {vec({1, 1}, {2, 2}), vec({0, 0}, {0, 1})});
  EXPECT_FALSE(h.split());
  EXPECT_EQ(h.residues.size(), 1u);
  EXPECT_THROW(zq_submodule_nf(4, {}), ResourceError);
}

TEST(ZQ, FreeSubmoduleThatIsNotSplit) {
  // H = R((1,0),(0,1)) in R^2: (a,f)·h = ((a,0),(f,a)), so H ≅ R is free
  // while its e-part Q × Z is not a Q-space.
  ZQVector h{{1, 0}, {0, 1}};
  ZQSubmoduleNF nf = zq_submodule_nf(2, {h});
  EXPECT_FALSE(nf.split());
  EXPECT_TRUE(zq_is_n_presented(nf, 1));
  EXPECT_TRUE(zq_is_n_presented(nf, 3));
  std::mt19937_64 rng(2);
  for (int s = 0; s < 200; ++s) {
    ZQElement r = random_element(rng, s % 2 == 0);
    if (zq_is_zero(r)) continue;
    // r·h = (r.a u, r.a e + r.q u)
    std::vector<mpz_class> u{r.a * h.u[0], r.a * h.u[1]};
    std::vector<mpq_class> e{r.a * h.e[0] + r.q * h.u[0], r.a * h.e[1] + r.q * h.u[1]};
    bool zero = u[0] == 0 && u[1] == 0 && e[0] == 0 && e[1] == 0;
    EXPECT_FALSE(zero) << zq_format(r);
  }

  // Two generators with the same x-part: the relation (1,-1) on x does not
  // kill the residues, so the kernel is not finitely generated.
  ZQSubmoduleNF two = zq_submodule_nf(2, {ZQVector{{1, 0}, {0, 1}}, ZQVector{{1, 0}, {0, 0}}});
  EXPECT_FALSE(two.split());
  EXPECT_FALSE(zq_is_n_presented(two, 1));
}

}  // namespace
}  // namespace trivext
