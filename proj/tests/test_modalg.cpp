#include <gtest/gtest.h>

#include <random>

#include "kgb/catalog.hpp"
#include "kgb/error.hpp"
#include "kgb/modalg.hpp"
#include "oracle.hpp"

using namespace kgb;

namespace {

oracle::Row to_row(const AlgebraElement& x) { return {x.begin(), x.end()}; }

AlgebraElement random_element(const GroupAlgebra& a, std::mt19937& rng) {
  AlgebraElement x(a.dim());
  std::uniform_int_distribution<int> d(0, a.field().q() - 1);
  for (auto& c : x) c = static_cast<Scalar>(d(rng));
  return x;
}

struct Case {
  std::string spec;
  Params params;
  int p;
  int k;
};

const std::vector<Case>& cases() {
  static const std::vector<Case> kCases = {
      {"D8", {}, 2, 1},           {"Q8", {}, 2, 2},          {"D16", {}, 2, 1},
      {"SD16", {}, 2, 1},         {"M16", {}, 2, 1},         {"C4xC2xC2", {}, 2, 1},
      {"G4", {{"m", 4}}, 2, 1},   {"G5", {{"m", 4}}, 2, 1},  {"G13", {{"m", 5}}, 2, 1},
      {"G17", {{"m", 5}}, 2, 1},  {"M27", {}, 3, 1},         {"G1", {{"p", 3}, {"m", 3}}, 3, 1},
      {"C9xC3", {}, 3, 1},        {"G7", {{"p", 3}, {"m", 4}}, 3, 1},
  };
  return kCases;
}

}  // namespace

TEST(Filtration, RanksMatchBruteForcePowers) {
  for (const auto& c : cases()) {
    const auto ctx = make_context(parse_group_spec(c.spec, c.params), Field::make(c.p, c.k));
    const oracle::Gf f(c.p, c.k);
    const auto expected = oracle::ranks(f, oracle::ideal_powers(f, *ctx->group));
    auto got = ctx->filt.ranks();
    ASSERT_FALSE(got.empty());
    EXPECT_EQ(got.back(), 0) << c.spec;
    got.pop_back();
    EXPECT_EQ(got, expected) << c.spec;
    EXPECT_EQ(ctx->filt.nilpotency_index(), static_cast<int>(expected.size()) + 1);
  }
}

TEST(Jennings, GradedDimensionsFollowTheProductFormula) {
  for (const auto& c : cases()) {
    const auto ctx = make_context(parse_group_spec(c.spec, c.params), Field::make(c.p, c.k));
    std::map<int, int> d;
    for (int i : ctx->jennings.index_set()) d[i] = ctx->jennings.multiplicity(i);
    const auto series = oracle::jennings_series(c.p, d);
    const auto r = ctx->filt.ranks();
    for (std::size_t n = 1; n < series.size(); ++n) {
      const int graded = r[n - 1] - (n < r.size() ? r[n] : 0);
      EXPECT_EQ(graded, series[n]) << c.spec << " n=" << n;
    }
    EXPECT_TRUE(ctx->jennings.series_agree()) << c.spec;
  }
}

TEST(Jennings, DimensionSubgroupsByMembership) {
  for (const auto& c : cases()) {
    const auto ctx = make_context(parse_group_spec(c.spec, c.params), Field::make(c.p, c.k));
    const oracle::Gf f(c.p, c.k);
    const auto powers = oracle::ideal_powers(f, *ctx->group);
    for (int n = 1; n <= static_cast<int>(powers.size()); ++n) {
      oracle::Row row;
      std::vector<int> members;
      for (int g = 0; g < ctx->group->order(); ++g) {
        if (oracle::in_span(f, powers[n - 1], oracle::minus_one(f, *ctx->group, g))) {
          members.push_back(g);
        }
      }
      EXPECT_EQ(members, ctx->jennings.dimension_subgroup(n)) << c.spec << " n=" << n;
    }
  }
}

TEST(Jennings, RegularBasisIsGradedAndInvertible) {
  for (const auto& c : cases()) {
    const auto ctx = make_context(parse_group_spec(c.spec, c.params), Field::make(c.p, c.k));
    const oracle::Gf f(c.p, c.k);
    const auto powers = oracle::ideal_powers(f, *ctx->group);
    const auto& reg = ctx->jennings.regular();
    ASSERT_EQ(static_cast<int>(reg.size()), ctx->group->order());
    std::vector<oracle::Row> all;
    for (std::size_t i = 0; i < reg.size(); ++i) {
      if (i) EXPECT_LE(reg[i - 1].weight, reg[i].weight);
      if (reg[i].weight > 0) {
        EXPECT_TRUE(oracle::in_span(f, powers[reg[i].weight - 1], to_row(reg[i].value)))
            << c.spec << " " << reg[i].name;
      }
      all.push_back(to_row(reg[i].value));
    }
    EXPECT_EQ(oracle::rank(f, all), ctx->group->order());
  }
}

TEST(Jennings, CoordinatesRoundTrip) {
  std::mt19937 rng(7);
  const auto ctx = make_context(parse_group_spec("G13", {{"m", 5}}), Field::make(2, 2));
  const auto& reg = ctx->jennings.regular();
  for (int trial = 0; trial < 20; ++trial) {
    const AlgebraElement x = random_element(ctx->alg, rng);
    const Vec co = ctx->jennings.coordinates(x);
    AlgebraElement back = ctx->alg.zero();
    for (std::size_t i = 0; i < reg.size(); ++i) {
      back = ctx->alg.add(back, ctx->alg.scale(co[i], reg[i].value));
    }
    EXPECT_EQ(back, x);
  }
}

TEST(Jennings, ClassInQuotient) {
  const auto ctx = make_context(parse_group_spec("D16"), Field::make(2));
  const auto& alg = ctx->alg;
  const AlgebraElement a1 = alg.minus_one(ctx->group->generator(0));
  const Vec cls = ctx->jennings.class_in_quotient(a1, 1);
  EXPECT_EQ(static_cast<int>(cls.size()), ctx->filt.rank(1) - ctx->filt.rank(2));
  EXPECT_THROW(ctx->jennings.class_in_quotient(a1, 2), Error);
  EXPECT_THROW(ctx->jennings.class_in_quotient(alg.one(), 1), Error);
  EXPECT_EQ(ctx->filt.degree(a1), 1);
  EXPECT_EQ(ctx->filt.degree(alg.mul(a1, a1)), 2);
  EXPECT_EQ(ctx->filt.degree(alg.one()), 0);
}

TEST(GroupAlgebra, RingAxiomsOnRandomElements) {
  std::mt19937 rng(11);
  const auto ctx = make_context(parse_group_spec("SD16"), Field::make(2, 2));
  const auto& a = ctx->alg;
  const oracle::Gf f(2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
    EXPECT_EQ(a.mul(a.mul(x, y), z), a.mul(x, a.mul(y, z)));
    EXPECT_EQ(a.mul(x, a.add(y, z)), a.add(a.mul(x, y), a.mul(x, z)));
    EXPECT_EQ(to_row(a.mul(x, y)), oracle::mul(f, *ctx->group, to_row(x), to_row(y)));
    EXPECT_EQ(a.augmentation(a.mul(x, y)),
              a.field().mul(a.augmentation(x), a.augmentation(y)));
  }
  EXPECT_THROW(a.check(AlgebraElement(3, 0)), Error);
}

TEST(GroupAlgebra, CommutatorIdentityHoldsForAllPairs) {
  const auto ctx = make_context(parse_group_spec("G5", {{"m", 4}}), Field::make(2));
  const auto& a = ctx->alg;
  const auto& g = *ctx->group;
  for (int x = 0; x < g.order(); ++x) {
    for (int y = 0; y < g.order(); ++y) {
      const auto X = a.minus_one(x), Y = a.minus_one(y), Z = a.minus_one(g.commutator(y, x));
      const auto XY = a.mul(X, Y);
      const auto rhs = a.add(a.add(a.mul(a.add(a.add(XY, X), Y), Z), XY), Z);
      ASSERT_EQ(a.mul(Y, X), rhs);
    }
  }
}

TEST(GroupAlgebra, Format) {
  const auto ctx = make_context(parse_group_spec("C9"), Field::make(3));
  EXPECT_EQ(ctx->alg.format(ctx->alg.zero()), "0");
  EXPECT_NE(ctx->alg.format(ctx->alg.minus_one(1)).find('a'), std::string::npos);
}

TEST(Context, RefusesLargeGroups) {
  EXPECT_THROW(make_context(parse_group_spec("C512"), Field::make(2)), Error);
  EXPECT_THROW(make_context(parse_group_spec("D8"), Field::make(3)), Error);
}
