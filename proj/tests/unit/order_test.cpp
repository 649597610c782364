#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "rieszmod/error.hpp"
#include "rieszmod/finite/sampling.hpp"
#include "rieszmod/order/idempotent.hpp"
#include "rieszmod/order/riesz.hpp"
#include "rieszmod/order/simple.hpp"

using namespace rieszmod;
using finite::Fn;
using Idem = order::Idempotent<Fn>;
using Partition = order::FinitePartition<Fn>;

namespace {

std::vector<double> oracle_max0(const std::vector<double>& x, double sign) {
  std::vector<double> out;
  for (double v : x) out.push_back(sign * v > 0 ? sign * v : 0.0);
  return out;
}

Partition unit_partition(std::vector<Fn> parts) {
  std::vector<Idem> idems;
  for (auto& p : parts) idems.emplace_back(std::move(p));
  const std::size_t n = idems.front().value().size();
  return Partition(std::move(idems), Idem(Fn::ones(n)));
}

// Fn wrapper whose meet is wrong wherever the arguments differ.
struct BrokenMeet {
  Fn f;
  friend bool operator==(const BrokenMeet&, const BrokenMeet&) = default;
};
BrokenMeet operator+(const BrokenMeet& a, const BrokenMeet& b) { return {a.f + b.f}; }
BrokenMeet operator-(const BrokenMeet& a, const BrokenMeet& b) { return {a.f - b.f}; }
BrokenMeet operator-(const BrokenMeet& a) { return {-a.f}; }
BrokenMeet operator*(double s, const BrokenMeet& a) { return {s * a.f}; }
BrokenMeet join(const BrokenMeet& a, const BrokenMeet& b) { return {join(a.f, b.f)}; }
BrokenMeet meet(const BrokenMeet& a, const BrokenMeet& b) {
  Fn m = meet(a.f, b.f);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (a.f[i] != b.f[i]) m[i] += 0.5;
  }
  return {m};
}
bool leq(const BrokenMeet& a, const BrokenMeet& b) { return leq(a.f, b.f); }
BrokenMeet zero_like(const BrokenMeet& a) { return {zero_like(a.f)}; }
double sup_norm(const BrokenMeet& a) { return sup_norm(a.f); }
nlohmann::json describe(const BrokenMeet& a) { return describe(a.f); }

static_assert(order::RieszCarrier<BrokenMeet>);
static_assert(!order::FAlgebraCarrier<BrokenMeet>);
static_assert(order::FAlgebraCarrier<Fn>);

}  // namespace

TEST(RieszDecompose, MixedSigns) {
  const auto parts = order::riesz_decompose(Fn{1, -2, 0});
  EXPECT_EQ(parts.positive, (Fn{1, 0, 0}));
  EXPECT_EQ(parts.negative, (Fn{0, 2, 0}));
  EXPECT_EQ(parts.abs, (Fn{1, 2, 0}));
}

TEST(RieszDecompose, Zero) {
  const auto parts = order::riesz_decompose(Fn::zeros(3));
  EXPECT_EQ(parts.positive, Fn::zeros(3));
  EXPECT_EQ(parts.negative, Fn::zeros(3));
  EXPECT_EQ(parts.abs, Fn::zeros(3));
}

TEST(RieszDecompose, MatchesPointwiseOracle) {
  Rng rng(11);
  for (int k = 0; k < 500; ++k) {
    const Fn u = finite::random_fn(rng, 1 + rng.index(8));
    const auto parts = order::riesz_decompose(u);
    EXPECT_EQ(parts.positive.values(), oracle_max0(u.values(), 1.0));
    EXPECT_EQ(parts.negative.values(), oracle_max0(u.values(), -1.0));
    EXPECT_EQ(meet(parts.positive, parts.negative), zero_like(u));
  }
  const auto two = order::riesz_decompose(Fn{-3, 5});
  EXPECT_EQ(two.positive, (Fn{0, 5}));
  EXPECT_EQ(two.negative, (Fn{3, 0}));
  EXPECT_EQ(two.abs, (Fn{3, 5}));
}

TEST(LawSuite, RandomTriplesOnFourAtomsPassAll) {
  Rng rng(7);
  const auto samples = finite::random_triples(rng, 10000, 4);
  const LawReport report = order::riesz_law_suite(samples);
  EXPECT_EQ(report.laws().size(), 18u);
  for (const auto& law : report.laws()) {
    EXPECT_TRUE(law.passed) << law.id << " " << law.counterexample.dump();
    EXPECT_GT(law.checked, 0u) << law.id;
  }
}

TEST(LawSuite, ZeroTriplePasses) {
  const std::vector<order::LawTriple<Fn>> samples{{Fn::zeros(3), Fn::zeros(3), Fn::zeros(3)}};
  EXPECT_TRUE(order::riesz_law_suite(samples).all_passed());
}

TEST(LawSuite, BrokenMeetIsCaught) {
  Rng rng(3);
  std::vector<order::LawTriple<BrokenMeet>> samples;
  for (const auto& t : finite::random_triples(rng, 200, 3)) samples.push_back({{t.u}, {t.v}, {t.w}});
  const LawReport report = order::riesz_law_suite(samples);
  EXPECT_EQ(report.laws().size(), 12u);
  const LawResult* law = report.find("riesz-4b");
  ASSERT_NE(law, nullptr);
  EXPECT_FALSE(law->passed);
  EXPECT_TRUE(law->counterexample.contains("u"));
  EXPECT_TRUE(report.find("riesz-1")->passed);
}

TEST(LawSuite, ReportJsonShape) {
  const std::vector<order::LawTriple<Fn>> samples{{Fn{1}, Fn{2}, Fn{3}}};
  const auto j = to_json(order::riesz_law_suite(samples));
  ASSERT_TRUE(j["laws"].is_array());
  EXPECT_EQ(j["laws"][0].dump(), R"({"counterexample":null,"id":"riesz-1","passed":true})");
}

TEST(Idempotent, RejectsNonIdempotent) {
  EXPECT_THROW(Idem(Fn{1, 0.5}), Error);
  try {
    Idem(Fn{2});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIdempotentInput);
  }
  EXPECT_EQ(Idem(Fn{1, 0}).complement().value(), (Fn{0, 1}));
}

TEST(FinitePartition, Validation) {
  EXPECT_THROW(unit_partition({Fn{1, 1}, Fn{0, 1}}), Error);
  EXPECT_THROW(unit_partition({Fn{1, 0}}), Error);
  EXPECT_NO_THROW(unit_partition({Fn{1, 0}, Fn{0, 1}}));
}

TEST(Disjointify, Examples) {
  auto out = order::disjointify(std::vector<Fn>{Fn{1, 1, 0}, Fn{0, 1, 1}});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].value(), (Fn{1, 1, 0}));
  EXPECT_EQ(out[1].value(), (Fn{0, 0, 1}));

  out = order::disjointify(std::vector<Fn>{Fn{0, 1, 1}});
  EXPECT_EQ(out[0].value(), (Fn{0, 1, 1}));

  out = order::disjointify(std::vector<Fn>{Fn{1, 0}, Fn{1, 0}, Fn{0, 1}});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].value(), (Fn{1, 0}));
  EXPECT_EQ(out[1].value(), (Fn{0, 0}));
  EXPECT_EQ(out[2].value(), (Fn{0, 1}));
}

TEST(Disjointify, RejectsNonIdempotent) {
  try {
    order::disjointify(std::vector<Fn>{Fn{1, 0}, Fn{0.5, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIdempotentInput);
  }
}

TEST(Disjointify, RandomInvariants) {
  Rng rng(21);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.index(8);
    std::vector<Fn> us;
    for (std::size_t i = 0, m = 1 + rng.index(6); i < m; ++i) us.push_back(finite::random_idempotent(rng, n));
    const auto out = order::disjointify(us);
    std::vector<Fn> values;
    for (const auto& o : out) values.push_back(o.value());
    EXPECT_TRUE(order::pairwise_products_vanish(values));
    // Prefix suprema: oracle is a running pointwise max.
    std::vector<double> sup_in(n, 0.0), sup_out(n, 0.0);
    for (std::size_t i = 0; i < us.size(); ++i) {
      for (std::size_t x = 0; x < n; ++x) {
        sup_in[x] = std::max(sup_in[x], us[i][x]);
        sup_out[x] = std::max(sup_out[x], values[i][x]);
      }
      EXPECT_EQ(sup_in, sup_out);
    }
  }
}

TEST(RefinePartitions, Examples) {
  const Partition p = unit_partition({Fn{1, 1, 0}, Fn{0, 0, 1}});
  const Partition q = unit_partition({Fn{1, 0, 0}, Fn{0, 1, 1}});
  const Partition r = order::refine_partitions(p, q);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0], (Fn{1, 0, 0}));
  EXPECT_EQ(r[1], (Fn{0, 1, 0}));
  EXPECT_EQ(r[2], (Fn{0, 0, 1}));

  EXPECT_EQ(order::refine_partitions(p, p), p);

  const Partition two = unit_partition({Fn{1, 0}, Fn{0, 1}});
  const Partition trivial = unit_partition({Fn{1, 1}});
  EXPECT_EQ(order::refine_partitions(two, trivial), two);
}

TEST(RefinePartitions, Mismatch) {
  const Partition p = unit_partition({Fn{1, 0}, Fn{0, 1}});
  const Partition q(std::vector<Idem>{Idem(Fn{1, 0})}, Idem(Fn{1, 0}));
  try {
    order::refine_partitions(p, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PartitionMismatch);
  }
}

TEST(RefinePartitions, RandomInvariants) {
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.index(8);
    const Partition p = finite::random_partition(rng, n, 4);
    const Partition q = finite::random_partition(rng, n, 4);
    std::vector<order::RefinedIndex> idx;
    const Partition r = order::refine_partitions(p, q, &idx);
    ASSERT_EQ(idx.size(), r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      EXPECT_EQ(r[i], p[idx[i].left] * q[idx[i].right]);
      if (i > 0) {
        const bool lex = idx[i - 1].left < idx[i].left ||
                         (idx[i - 1].left == idx[i].left && idx[i - 1].right < idx[i].right);
        EXPECT_TRUE(lex);
      }
    }
    // Every atom lies in exactly one cell.
    for (std::size_t x = 0; x < n; ++x) {
      int hits = 0;
      for (std::size_t i = 0; i < r.size(); ++i) hits += r[i][x] == 1.0;
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(SimpleCombine, Examples) {
  using order::SimpleElement;
  const Partition pu = unit_partition({Fn{1, 1, 0}, Fn{0, 0, 1}});
  const Partition pv = unit_partition({Fn{1, 0, 0}, Fn{0, 1, 1}});
  const SimpleElement<Fn> u({2, 3}, pu);
  const SimpleElement<Fn> v({1, 5}, pv);
  EXPECT_EQ(order::simple_combine(u, v, order::SimpleOp::Join).value(), (Fn{2, 5, 5}));

  const SimpleElement<Fn> one({1}, unit_partition({Fn{1, 1, 1}}));
  EXPECT_EQ(order::simple_combine(u, one, order::SimpleOp::Multiply).value(), u.value());

  const Partition pa = unit_partition({Fn{1, 0}, Fn{0, 1}});
  const SimpleElement<Fn> a({1, 0}, pa);
  const SimpleElement<Fn> b({0, 1}, pa);
  EXPECT_EQ(order::simple_combine(a, b, order::SimpleOp::Multiply).value(), (Fn{0, 0}));
}

TEST(SimpleCombine, AgreesWithPointwiseEvaluation) {
  Rng rng(99);
  const order::SimpleOp ops[] = {order::SimpleOp::Add, order::SimpleOp::Multiply, order::SimpleOp::Join,
                                 order::SimpleOp::Meet};
  for (int k = 0; k < 10000; ++k) {
    const std::size_t n = 1 + rng.index(8);
    const Partition pu = finite::random_partition(rng, n, 4);
    const Partition pv = finite::random_partition(rng, n, 4);
    std::vector<double> cu, cv;
    for (std::size_t i = 0; i < pu.size(); ++i) cu.push_back(std::round(rng.uniform(-8, 8) * 4) / 4);
    for (std::size_t i = 0; i < pv.size(); ++i) cv.push_back(std::round(rng.uniform(-8, 8) * 4) / 4);
    const order::SimpleElement<Fn> u(cu, pu), v(cv, pv);
    const auto op = ops[k % 4];
    const Fn got = order::simple_combine(u, v, op).value();
    const Fn uv = u.value(), vv = v.value();
    for (std::size_t x = 0; x < n; ++x) {
      double want = 0;
      switch (op) {
        case order::SimpleOp::Add: want = uv[x] + vv[x]; break;
        case order::SimpleOp::Multiply: want = uv[x] * vv[x]; break;
        case order::SimpleOp::Join: want = uv[x] > vv[x] ? uv[x] : vv[x]; break;
        case order::SimpleOp::Meet: want = uv[x] < vv[x] ? uv[x] : vv[x]; break;
      }
      ASSERT_EQ(got[x], want);
    }
  }
}

TEST(CheckDisjoint, Examples) {
  EXPECT_TRUE(order::check_disjoint(std::vector<Fn>{Fn{1, 0, 0}, Fn{0, -2, 0}}));
  EXPECT_FALSE(order::check_disjoint(std::vector<Fn>{Fn{1, 1}, Fn{0, 1}}));
}

TEST(CheckDisjoint, RandomFamiliesAgreeWithProductCriterion) {
  Rng rng(17);
  // Disjoint by construction: each atom belongs to at most one member.
  std::vector<Fn> family(5, Fn::zeros(8));
  for (std::size_t x = 0; x < 8; ++x) {
    const std::size_t owner = rng.index(6);
    if (owner < 5) family[owner][x] = rng.uniform(-3, 3) + 4.0;
  }
  EXPECT_TRUE(order::check_disjoint(family));
  EXPECT_TRUE(order::pairwise_products_vanish(family));

  for (int k = 0; k < 2000; ++k) {
    const std::size_t n = 1 + rng.index(6);
    std::vector<Fn> s;
    for (std::size_t i = 0, m = 1 + rng.index(4); i < m; ++i) {
      Fn f = finite::random_fn(rng, n);
      for (std::size_t x = 0; x < n; ++x) {
        if (rng.coin(0.6)) f[x] = 0.0;
      }
      s.push_back(f);
    }
    EXPECT_EQ(order::check_disjoint(s), order::pairwise_products_vanish(s));
  }
}
