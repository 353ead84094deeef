#include <gtest/gtest.h>

#include "facade/error.hpp"
#include "facade/eval.hpp"
#include "metrics_oracle.hpp"

using namespace facade;

namespace {

ConfusionMatrix two_by_two(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  ConfusionMatrix::Counts m(2, 2);
  m << a, b, c, d;
  return ConfusionMatrix({"A", "B"}, m);
}

}  // namespace

TEST(ConfusionMatrix, Accumulate) {
  ConfusionMatrix cm({"A", "B"});
  cm.accumulate("A", "A");
  EXPECT_EQ(cm.counts()(0, 0), 1);
  EXPECT_EQ(cm.total(), 1);
  EXPECT_THROW(cm.accumulate("A", "Z"), Error);
  EXPECT_THROW(cm.accumulate(2, 0), Error);
  EXPECT_THROW(cm.accumulate(0, 0, -1), Error);
}

TEST(ConfusionMatrix, CountConservation) {
  Rng rng(1);
  ConfusionMatrix cm({"a", "b", "c"});
  for (int i = 0; i < 100; ++i)
    cm.accumulate(static_cast<int>(uniform_index(rng, 3)), static_cast<int>(uniform_index(rng, 3)));
  EXPECT_EQ(cm.total(), 100);
  EXPECT_EQ(cm.counts().sum(), 100);
}

TEST(ConfusionMatrix, ConstructionErrors) {
  EXPECT_THROW(ConfusionMatrix(std::vector<std::string>{}), Error);
  EXPECT_THROW(ConfusionMatrix({"a", "a"}), Error);
  ConfusionMatrix::Counts bad(2, 2);
  bad << 1, -1, 0, 0;
  EXPECT_THROW(ConfusionMatrix({"a", "b"}, bad), Error);
  EXPECT_THROW(ConfusionMatrix({"a", "b", "c"}, bad), Error);
}

TEST(ConfusionMatrix, MergeEqualsConcatenation) {
  Rng rng(2);
  ConfusionMatrix a({"x", "y"}), b({"x", "y"}), all({"x", "y"});
  for (int i = 0; i < 50; ++i) {
    const int t = static_cast<int>(uniform_index(rng, 2)), p = static_cast<int>(uniform_index(rng, 2));
    (i % 2 ? a : b).accumulate(t, p);
    all.accumulate(t, p);
  }
  a.merge(b);
  EXPECT_EQ(a, all);
  EXPECT_EQ(a.trace(), all.trace());
  EXPECT_THROW(a.merge(ConfusionMatrix({"x", "z"})), Error);
}

TEST(Metrics, OverallAccuracyExamples) {
  EXPECT_EQ(overall_accuracy(two_by_two(5, 0, 0, 3)), 1.0);
  EXPECT_EQ(overall_accuracy(two_by_two(0, 5, 3, 0)), 0.0);
  EXPECT_NEAR(overall_accuracy(two_by_two(3, 1, 2, 4)), 0.7, 1e-12);
  EXPECT_THROW(overall_accuracy(ConfusionMatrix({"A"})), Error);
}

TEST(Metrics, ProducersUsersExamples) {
  const auto acc = producers_users_accuracy(two_by_two(3, 1, 2, 4));
  EXPECT_NEAR(*acc[0].producers, 0.75, 1e-12);
  EXPECT_NEAR(*acc[0].users, 0.6, 1e-12);
  EXPECT_NEAR(*acc[1].producers, 4.0 / 6, 1e-12);
  EXPECT_NEAR(*acc[1].users, 0.8, 1e-12);
  for (const auto& a : producers_users_accuracy(two_by_two(2, 0, 0, 7))) {
    EXPECT_EQ(*a.producers, 1.0);
    EXPECT_EQ(*a.users, 1.0);
  }
  const auto empty_row = producers_users_accuracy(two_by_two(0, 0, 3, 1));
  EXPECT_FALSE(empty_row[0].producers.has_value());
  EXPECT_EQ(*empty_row[0].users, 0.0);
}

TEST(Metrics, KappaExamples) {
  EXPECT_NEAR(kappa(two_by_two(50, 0, 0, 50)).kappa, 1.0, 1e-12);
  const auto k = kappa(two_by_two(25, 25, 25, 25));
  EXPECT_NEAR(k.random_match, 0.5, 1e-12);
  EXPECT_NEAR(k.kappa, 0.0, 1e-12);
  const auto k2 = kappa(two_by_two(3, 1, 2, 4));
  EXPECT_NEAR(k2.random_match, 0.5, 1e-12);
  EXPECT_NEAR(k2.kappa, 0.4, 1e-12);
}

TEST(Metrics, KappaUndefined) {
  ConfusionMatrix cm({"only"});
  cm.accumulate(0, 0, 4);
  try {
    kappa(cm);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("kappa undefined"), std::string::npos);
  }
  const auto r = metrics(cm);
  EXPECT_FALSE(r.kappa.has_value());
  EXPECT_EQ(r.overall_accuracy, 1.0);
}

TEST(Metrics, StreamingMatchesOneShotOracle) {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    const auto cm = test::random_confusion(rng);
    ASSERT_TRUE(test::metrics_agree(cm, 1e-12)) << t;
  }
}

TEST(Metrics, RangesAndKappaIffDiagonal) {
  Rng rng(4);
  for (int t = 0; t < 300; ++t) {
    const auto cm = test::random_confusion(rng, 4, 5);
    const auto r = metrics(cm);
    EXPECT_GE(r.overall_accuracy, 0.0);
    EXPECT_LE(r.overall_accuracy, 1.0);
    for (const auto& [id, v] : r.producers_accuracy)
      if (v) EXPECT_TRUE(*v >= 0 && *v <= 1);
    for (const auto& [id, v] : r.users_accuracy)
      if (v) EXPECT_TRUE(*v >= 0 && *v <= 1);
    if (r.kappa) {
      EXPECT_LE(*r.kappa, 1.0 + 1e-12);
      const bool diagonal = cm.trace() == cm.total();
      EXPECT_EQ(std::abs(*r.kappa - 1.0) < 1e-12, diagonal);
    }
  }
}

TEST(Metrics, ScaleInvariance) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto cm = test::random_confusion(rng);
    const ConfusionMatrix scaled(cm.classes(), cm.counts() * 7);
    const auto a = metrics(cm), b = metrics(scaled);
    EXPECT_NEAR(a.overall_accuracy, b.overall_accuracy, 1e-12);
    EXPECT_NEAR(a.random_match, b.random_match, 1e-12);
    EXPECT_TRUE(test::close(a.kappa, b.kappa, 1e-12));
    for (const auto& id : cm.classes()) {
      EXPECT_TRUE(test::close(a.producers_accuracy.at(id), b.producers_accuracy.at(id), 1e-12));
      EXPECT_TRUE(test::close(a.users_accuracy.at(id), b.users_accuracy.at(id), 1e-12));
    }
  }
}

TEST(Report, CsvFormat) {
  ConfusionMatrix::Counts m(3, 3);
  m << 3, 1, 0,  //
      2, 4, 0,   //
      0, 0, 0;
  const ConfusionMatrix cm({"A", "B", "C"}, m);
  const std::string csv = metrics_csv({{"run", metrics(cm), cm}});
  EXPECT_EQ(csv,
            "config,class,PA,UA\n"
            "run,A,0.75,0.59999999999999998\n"
            "run,B,0.66666666666666663,0.80000000000000004\n"
            "run,C,n/a,n/a\n"
            "run,OA,0.69999999999999996,\n"
            "run,kappa,0.39999999999999991,\n"
            "run,RM,0.5,\n");
  EXPECT_THROW(metrics_csv({{"a,b", metrics(cm), cm}}), Error);
}

TEST(Report, CsvRoundTrip) {
  Rng rng(6);
  std::vector<ReportEntry> entries;
  for (int t = 0; t < 20; ++t) {
    const auto cm = test::random_confusion(rng);
    entries.push_back({"sigma=" + std::to_string(t), metrics(cm), cm});
  }
  const auto back = parse_metrics_csv(metrics_csv(entries));
  ASSERT_EQ(back.size(), entries.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].first, entries[i].config);
    EXPECT_EQ(back[i].second, entries[i].metrics);
  }
  EXPECT_THROW(parse_metrics_csv("nope\n"), Error);
  EXPECT_THROW(parse_metrics_csv("config,class,PA,UA\nx,A,1\n"), ParseError);
  EXPECT_THROW(parse_metrics_csv("config,class,PA,UA\nx,A,abc,1\n"), Error);
}

TEST(Report, Json) {
  const auto cm = two_by_two(3, 1, 2, 4);
  const auto j = report_json({{"run", metrics(cm), cm}});
  const auto& r = j["reports"][0];
  EXPECT_EQ(r["config"], "run");
  EXPECT_NEAR(r["metrics"]["kappa"].get<double>(), 0.4, 1e-12);
  EXPECT_EQ(r["confusion"]["classes"], OrderedJson({"A", "B"}));
  EXPECT_EQ(r["confusion"]["counts"], OrderedJson({{3, 1}, {2, 4}}));

  ConfusionMatrix single({"only"});
  single.accumulate(0, 0);
  EXPECT_TRUE(to_json(metrics(single))["kappa"].is_null());
}
