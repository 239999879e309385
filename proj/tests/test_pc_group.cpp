#include <gtest/gtest.h>

#include "kgb/catalog.hpp"
#include "kgb/error.hpp"
#include "kgb/pc_group.hpp"
#include "oracle.hpp"

using namespace kgb;

namespace {

// <a, b | a^n = 1, b a b^-1 = a^r, b^2 = a^s> in its right regular
// permutation representation on pairs (i, j).
std::vector<oracle::Perm> metacyclic(int n, int r, int s) {
  auto idx = [n](int i, int j) { return j * n + i; };
  auto mul = [&](int i, int j, int k, int l) {
    int rk = k;
    if (j) rk = (rk * r) % n;
    int e = i + rk + ((j && l) ? s : 0);
    return idx(((e % n) + n) % n, j ^ l);
  };
  oracle::Perm pa(2 * n), pb(2 * n);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < n; ++i) {
      pa[idx(i, j)] = mul(i, j, 1, 0);
      pb[idx(i, j)] = mul(i, j, 0, 1);
    }
  }
  return oracle::closure({pa, pb});
}

std::vector<oracle::Perm> cyclic_product(std::vector<int> orders) {
  int total = 1;
  for (int o : orders) total *= o;
  std::vector<oracle::Perm> gens;
  int stride = 1;
  for (int o : orders) {
    oracle::Perm g(total);
    for (int x = 0; x < total; ++x) {
      const int digit = (x / stride) % o;
      g[x] = x + ((digit + 1) % o - digit) * stride;
    }
    gens.push_back(g);
    stride *= o;
  }
  return oracle::closure(gens);
}

}  // namespace

TEST(PcGroup, MetacyclicFamiliesMatchPermutationModels) {
  struct Case {
    std::string spec;
    int n, r, s;
  };
  const std::vector<Case> cases = {
      {"D8", 4, 3, 0},   {"D16", 8, 7, 0},  {"D32", 16, 15, 0}, {"Q8", 4, 3, 2},
      {"Q16", 8, 7, 4},  {"Q32", 16, 15, 8}, {"SD16", 8, 3, 0}, {"SD32", 16, 7, 0},
      {"M16", 8, 5, 0},  {"M32", 16, 9, 0},
  };
  for (const auto& c : cases) {
    const PcGroup g(parse_group_spec(c.spec));
    EXPECT_EQ(oracle::profile(g), oracle::profile(metacyclic(c.n, c.r, c.s))) << c.spec;
  }
}

TEST(PcGroup, ModularOddMatchesModel) {
  // M27: b a b^-1 = a^4 in C9 x| C3
  const PcGroup g(parse_group_spec("M27"));
  oracle::Perm pa(27), pb(27);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 9; ++i) {
      pa[j * 9 + i] = j * 9 + (i + 1) % 9;
      pb[j * 9 + i] = ((j + 1) % 3) * 9 + (7 * i) % 9;
    }
  }
  EXPECT_EQ(oracle::profile(g), oracle::profile(oracle::closure({pa, pb})));
}

TEST(PcGroup, DirectProductsMatchModels) {
  EXPECT_EQ(oracle::profile(PcGroup(parse_group_spec("C4xC2xC2"))),
            oracle::profile(cyclic_product({4, 2, 2})));
  EXPECT_EQ(oracle::profile(PcGroup(parse_group_spec("C9xC3"))),
            oracle::profile(cyclic_product({9, 3})));
  const auto q8 = oracle::profile(metacyclic(4, 3, 2));
  const auto q8c2 = oracle::profile(PcGroup(parse_group_spec("Q8xC2")));
  EXPECT_EQ(q8c2.order, 16);
  EXPECT_EQ(q8c2.center, 2 * q8.center);
  EXPECT_EQ(q8c2.derived, q8.derived);
}

TEST(PcGroup, TableIsAGroupSatisfyingItsRelations) {
  for (const std::string spec : {"D16", "Q16", "SD16", "M16", "Q8xC2"}) {
    const PcPresentation pres = parse_group_spec(spec);
    const PcGroup g(pres);
    for (int x = 0; x < g.order(); ++x) {
      EXPECT_EQ(g.mul(x, g.inverse(x)), 0);
      for (int y = 0; y < g.order(); ++y) {
        for (int z = 0; z < g.order(); ++z) {
          ASSERT_EQ(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        }
        EXPECT_EQ(g.commutator(x, y),
                  g.mul(g.mul(g.inverse(x), g.inverse(y)), g.mul(x, y)));
      }
    }
    for (int i = 0; i < pres.rank(); ++i) {
      EXPECT_EQ(g.power(g.generator(i), pres.orders[i]), g.evaluate(pres.powers[i]));
    }
    for (const auto& [key, w] : pres.commutators) {
      EXPECT_EQ(g.commutator(g.generator(key.first), g.generator(key.second)), g.evaluate(w));
    }
  }
}

TEST(PcGroup, CollectAgreesWithTable) {
  const PcGroup g(catalog("G5", {{"m", 5}}));
  const Word w{{0, 3}, {2, 1}, {1, -2}, {0, -1}, {2, 5}, {1, 1}};
  EXPECT_EQ(g.collect(w), g.evaluate(w));
  EXPECT_EQ(g.collect({}), 0);
  for (int x = 0; x < g.order(); ++x) {
    const auto e = g.exponents(x);
    EXPECT_EQ(g.from_exponents(e), x);
  }
}

TEST(PcGroup, SubgroupStructure) {
  const PcGroup m16(parse_group_spec("M16"));
  EXPECT_TRUE(m16.is_powerful());
  EXPECT_FALSE(m16.is_abelian());
  const PcGroup d8(parse_group_spec("D8"));
  EXPECT_FALSE(d8.is_powerful());
  EXPECT_EQ(d8.frattini().size(), 2u);
  EXPECT_EQ(d8.center().size(), 2u);
  EXPECT_EQ(d8.agemo(1).size(), 2u);
  const PcGroup c(parse_group_spec("C8xC2"));
  EXPECT_TRUE(c.is_abelian());
  EXPECT_TRUE(c.is_powerful());
  EXPECT_EQ(c.derived_subgroup().size(), 1u);
}

TEST(Catalog, EveryFamilyBuildsAtItsSmallestParameters) {
  struct Case {
    std::string name;
    Params params;
    long long order;
  };
  const std::vector<Case> cases = {
      {"C", {{"p", 3}, {"n", 2}}, 9},     {"D", {{"n", 3}}, 8},
      {"Q", {{"n", 3}}, 8},               {"SD", {{"n", 4}}, 16},
      {"M", {{"p", 2}, {"n", 4}}, 16},    {"M", {{"p", 3}, {"n", 3}}, 27},
      {"G1", {{"p", 3}, {"m", 3}}, 27},   {"H", {{"p", 3}, {"m", 4}, {"r", 2}}, 81},
      {"G7", {{"p", 3}, {"m", 4}}, 81},   {"G11odd", {}, 81},
      {"G2", {{"m", 4}}, 16},             {"G3", {{"m", 4}}, 16},
      {"G4", {{"m", 4}}, 16},             {"G5", {{"m", 4}}, 16},
      {"G11", {{"m", 4}}, 32},            {"G12", {{"m", 5}}, 32},
      {"G13", {{"m", 5}}, 32},            {"G14", {{"m", 5}}, 32},
      {"G15", {{"m", 5}}, 32},            {"G16", {{"m", 5}}, 32},
      {"G17", {{"m", 5}}, 32},            {"G22", {{"m", 6}}, 64},
      {"G23", {{"m", 6}}, 64},            {"G24", {{"m", 6}}, 64},
      {"G25", {{"m", 5}}, 32},
  };
  for (const auto& c : cases) {
    const PcPresentation pres = catalog(c.name, c.params);
    const ValidationReport v = validate(pres);
    EXPECT_TRUE(v.ok) << c.name << ": " << v.failure;
    EXPECT_EQ(v.realized_order, c.order) << c.name;
  }
}

TEST(Catalog, Errors) {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return std::string(error_code_name(e.code()));
    }
    return std::string("none");
  };
  EXPECT_EQ(code_of([] { catalog("G99", {}); }), "UNKNOWN_GROUP");
  EXPECT_EQ(code_of([] { catalog("G5", {{"m", 2}}); }), "PARAMETER_OUT_OF_RANGE");
  EXPECT_EQ(code_of([] { parse_group_spec("D12"); }), "PARAMETER_OUT_OF_RANGE");
  EXPECT_EQ(code_of([] { PcGroup g(catalog("G18", {{"m", 4}})); }),
            "INCONSISTENT_PRESENTATION");
  EXPECT_FALSE(validate(catalog("G18", {{"m", 4}})).ok);
}
