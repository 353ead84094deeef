#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "codebook_recipe.hpp"
#include "facade/codebook.hpp"
#include "facade/kmeans.hpp"
#include "test_util.hpp"

using namespace facade;

namespace {

// Committed with tests/testdata/codebook_n25.json.
constexpr std::uint64_t kGoldenHash = 0xcaff57ae4041bb38ULL;

Eigen::MatrixXd random_bits(Rng& rng, Eigen::Index rows, Eigen::Index cols = 256) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = uniform01(rng) < 0.5 ? 0.0 : 1.0;
  return m;
}

// Exhaustive nearest centre with an explicit per-component loop.
int scan_nearest(const Eigen::MatrixXd& centers, const Eigen::RowVectorXd& x) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    double d = 0;
    for (Eigen::Index k = 0; k < x.size(); ++k) d += (centers(c, k) - x(k)) * (centers(c, k) - x(k));
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

double sse(const Eigen::MatrixXd& data, unsigned mask) {
  double total = 0;
  for (int side = 0; side < 2; ++side) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(data.cols());
    int count = 0;
    for (Eigen::Index i = 0; i < data.rows(); ++i)
      if (((mask >> i) & 1U) == static_cast<unsigned>(side)) {
        mean += data.row(i);
        ++count;
      }
    if (count == 0) return std::numeric_limits<double>::infinity();
    mean /= count;
    for (Eigen::Index i = 0; i < data.rows(); ++i)
      if (((mask >> i) & 1U) == static_cast<unsigned>(side)) total += (data.row(i) - mean).squaredNorm();
  }
  return total;
}

}  // namespace

TEST(KMeans, TwoBlobsMatchBruteForce) {
  Rng rng(5);
  const Eigen::RowVectorXd a = random_bits(rng, 1);
  Eigen::RowVectorXd b = a;
  for (int k = 0; k < 256; ++k)
    if (k % 2 == 0) b(k) = 1.0 - b(k);
  Eigen::MatrixXd data(12, 256);
  for (int i = 0; i < 12; ++i) {
    data.row(i) = i < 6 ? a : b;
    for (int f = 0; f < 8; ++f) {
      const auto k = static_cast<Eigen::Index>(uniform_index(rng, 256));
      data(i, k) = 1.0 - data(i, k);
    }
  }
  unsigned best_mask = 0;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1U << 11); ++mask) {  // row 11 fixed to side 0
    const double s = sse(data, mask);
    if (s < best) {
      best = s;
      best_mask = mask;
    }
  }
  KMeansOptions opt;
  opt.seed = 3;
  const auto res = kmeans(data, 2, opt);
  for (int i = 0; i < 12; ++i) {
    const bool same_as_last = res.assignment[static_cast<std::size_t>(i)] == res.assignment[11];
    EXPECT_EQ(same_as_last, ((best_mask >> i) & 1U) == 0) << i;
    EXPECT_EQ(res.assignment[static_cast<std::size_t>(i)], res.assignment[i < 6 ? 0U : 6U]);
  }
  EXPECT_NE(res.assignment[0], res.assignment[6]);
  EXPECT_NEAR(res.inertia_history.back(), best, 1e-9);
  for (int c = 0; c < 2; ++c) {
    const Eigen::RowVectorXd center = res.centers.row(c);
    const double da = (center - a).squaredNorm(), db = (center - b).squaredNorm();
    EXPECT_LT(std::min(da, db), 0.25 * (a - b).squaredNorm());
  }
}

TEST(KMeans, OneClusterPerPointHasZeroInertia) {
  Rng rng(9);
  const auto data = random_bits(rng, 30);
  const auto res = kmeans(data, 30, KMeansOptions{});
  EXPECT_EQ(res.inertia_history.back(), 0.0);
  std::set<int> used(res.assignment.begin(), res.assignment.end());
  EXPECT_EQ(used.size(), 30U);
  for (int i = 0; i < 30; ++i) EXPECT_EQ(res.centers.row(res.assignment[static_cast<std::size_t>(i)]), data.row(i));
}

TEST(KMeans, Deterministic) {
  const auto data = test::golden_descriptors();
  KMeansOptions opt;
  opt.seed = 11;
  const auto a = kmeans(data, 25, opt);
  const auto b = kmeans(data, 25, opt);
  EXPECT_EQ(a.centers, b.centers);
  EXPECT_EQ(a.assignment, b.assignment);
}

TEST(KMeans, InertiaNonIncreasing) {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const auto data = random_bits(rng, 200, 64);
    KMeansOptions opt;
    opt.seed = static_cast<std::uint64_t>(trial);
    const auto res = kmeans(data, 10, opt);
    ASSERT_GE(res.inertia_history.size(), 2U);
    for (std::size_t i = 1; i < res.inertia_history.size(); ++i)
      EXPECT_LE(res.inertia_history[i], res.inertia_history[i - 1] * (1 + 1e-12)) << trial << " iteration " << i;
  }
}

TEST(KMeans, Errors) {
  Rng rng(1);
  EXPECT_THROW(kmeans(random_bits(rng, 3), 4, KMeansOptions{}), Error);
  Eigen::MatrixXd same = Eigen::MatrixXd::Ones(10, 256);
  same.row(0).setZero();
  EXPECT_THROW(kmeans(same, 3, KMeansOptions{}), Error);
  EXPECT_THROW(train_codebook(random_bits(rng, 10), 1, 0), Error);
}

TEST(Codebook, CentersDistinctAndFinite) {
  const auto book = test::golden_codebook();
  ASSERT_EQ(book.n(), 25);
  ASSERT_EQ(book.dim(), 256);
  EXPECT_TRUE(book.centers.allFinite());
  for (int i = 0; i < book.n(); ++i)
    for (int j = 0; j < i; ++j) EXPECT_NE(book.centers.row(i), book.centers.row(j));
}

TEST(Quantize, ExactCenterGivesIndicator) {
  const auto book = test::golden_codebook();
  for (int j : {0, 7, 24}) {
    const Eigen::MatrixXd d = book.centers.row(j);
    const Eigen::VectorXd h = quantize(d, book);
    EXPECT_EQ(h, Eigen::VectorXd::Unit(25, j));
  }
}

TEST(Quantize, EmptySetGivesZeroHistogram) {
  const auto book = test::golden_codebook();
  EXPECT_EQ(quantize(Eigen::MatrixXd(0, 256), book), Eigen::VectorXd::Zero(25));
  EXPECT_EQ(quantize(DescriptorSet{}, book), Eigen::VectorXd::Zero(25));
}

TEST(Quantize, SumsToOneAndMatchesScan) {
  const auto book = test::golden_codebook();
  Rng rng(33);
  const auto d = random_bits(rng, 100);
  const Eigen::VectorXd h = quantize(d, book);
  EXPECT_NEAR(h.sum(), 1.0, 1e-12);
  const auto a = assign(d, book);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(25);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    EXPECT_EQ(a[static_cast<std::size_t>(i)], scan_nearest(book.centers, d.row(i)));
    counts(scan_nearest(book.centers, d.row(i))) += 1;
  }
  EXPECT_EQ(h, counts / 100.0);
}

TEST(Quantize, TiesGoToLowestIndex) {
  Codebook book;
  book.centers = Eigen::MatrixXd::Zero(3, 4);
  book.centers.row(0) << 1, 0, 0, 0;
  book.centers.row(1) << 0, 1, 0, 0;
  book.centers.row(2) << 1, 0, 0, 0.5;
  Eigen::MatrixXd x(2, 4);
  x << 0, 0, 0, 0,  //
      1, 1, 0, 0;
  EXPECT_EQ(assign(x, book), (std::vector<int>{0, 0}));
}

TEST(Quantize, DescriptorSetUsesEmbedding) {
  const auto book = test::golden_codebook();
  DescriptorSet set;
  for (int j : {3, 3, 12}) {
    OrbDescriptor od;
    for (int k = 0; k < 256; ++k)
      if (book.centers(j, k) >= 0.5) od.set_bit(k);
    set.descriptors.push_back(od);
  }
  const auto h = quantize(set, book);
  EXPECT_EQ(h, quantize(embed(set.descriptors), book));
  EXPECT_NEAR(h.sum(), 1.0, 1e-12);
}

TEST(Quantize, DimensionMismatchThrows) {
  const auto book = test::golden_codebook();
  EXPECT_THROW(quantize(Eigen::MatrixXd::Zero(2, 128), book), Error);
  Codebook small;
  small.centers = Eigen::MatrixXd::Zero(2, 8);
  small.centers(1, 0) = 1;
  DescriptorSet set;
  set.descriptors.resize(1);
  EXPECT_THROW(quantize(set, small), Error);
}

TEST(Fuse, ZeroHogBlock) {
  Eigen::VectorXd bow(3);
  bow << 0.5, 0.25, 0.25;
  const auto c = fuse(bow, Eigen::VectorXd::Zero(4), 1.0);
  EXPECT_EQ(c.size(), 7);
  EXPECT_EQ(c.block_boundary, 3);
  EXPECT_EQ(c.bow(), bow);
  EXPECT_EQ(c.hog(), Eigen::VectorXd::Zero(4));
}

TEST(Fuse, UnitWeightGivesMassTwo) {
  Rng rng(4);
  Eigen::VectorXd bow(25), hog(36);
  for (auto& v : bow) v = uniform01(rng);
  for (auto& v : hog) v = uniform01(rng);
  bow = l1_normalized(bow);
  const auto c = fuse(bow, hog, 1.0);
  EXPECT_NEAR(c.values.sum(), 2.0, 1e-12);
  EXPECT_EQ(c.bow(), bow);
  // internal ratios survive
  EXPECT_NEAR(c.hog()(3) / c.hog()(7), hog(3) / hog(7), 1e-12);
}

TEST(Fuse, DoublingWeightDoublesOnlyHog) {
  Eigen::VectorXd bow(2), hog(3);
  bow << 0.75, 0.25;
  hog << 1, 2, 5;
  const auto a = fuse(bow, hog, 1.0), b = fuse(bow, hog, 2.0);
  EXPECT_EQ(a.bow(), b.bow());
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(b.hog()(i), 2 * a.hog()(i), 1e-15);
  EXPECT_EQ(b.hog_weight, 2.0);
}

TEST(Fuse, Errors) {
  const Eigen::VectorXd bow = Eigen::VectorXd::Ones(2) / 2;
  EXPECT_THROW(fuse(bow, Eigen::VectorXd::Ones(2), 0.0), Error);
  EXPECT_THROW(fuse(bow, -Eigen::VectorXd::Ones(2), 1.0), Error);
}

TEST(Normalize, SumsToOne) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd v(1 + static_cast<Eigen::Index>(uniform_index(rng, 60)));
    for (auto& x : v) x = uniform01(rng) * 1000;
    EXPECT_NEAR(l1_normalized(v).sum(), 1.0, 1e-12);
  }
  EXPECT_EQ(l1_normalized(Eigen::VectorXd::Zero(4)), Eigen::VectorXd::Zero(4));
}

TEST(CodebookIo, RoundTrip) {
  const auto dir = test::scratch_dir();
  const auto book = test::golden_codebook();
  save_codebook(dir / "b.json", book);
  const auto back = load_codebook(dir / "b.json");
  EXPECT_EQ(back, book);
  EXPECT_EQ(content_hash(back), content_hash(book));

  Codebook hb = book;
  hb.metric = ClusterMetric::hamming;
  save_codebook(dir / "h.json", hb);
  EXPECT_EQ(load_codebook(dir / "h.json"), hb);
}

TEST(CodebookIo, WrongMagic) {
  const auto dir = test::scratch_dir();
  auto j = to_json(test::golden_codebook());
  j["format"] = "something-else";
  test::write_file(dir / "b.json", j.dump());
  EXPECT_THROW(load_codebook(dir / "b.json"), Error);
}

TEST(CodebookIo, VersionMismatch) {
  const auto dir = test::scratch_dir();
  auto j = to_json(test::golden_codebook());
  j["version"] = kCodebookVersion + 1;
  test::write_file(dir / "b.json", j.dump());
  try {
    load_codebook(dir / "b.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
}

TEST(CodebookIo, CorruptFiles) {
  const auto dir = test::scratch_dir();
  test::write_file(dir / "a.json", "{\"format\": \"facade-codebook\", ");
  EXPECT_THROW(load_codebook(dir / "a.json"), Error);
  auto j = to_json(test::golden_codebook());
  j["centers"].erase(0);
  test::write_file(dir / "b.json", j.dump());
  EXPECT_THROW(load_codebook(dir / "b.json"), Error);
  j = to_json(test::golden_codebook());
  j["centers"][0] = "x";
  test::write_file(dir / "c.json", j.dump());
  EXPECT_THROW(load_codebook(dir / "c.json"), Error);
  EXPECT_THROW(load_codebook(dir / "missing.json"), Error);
}

TEST(CodebookIo, GoldenFile) {
  const auto book = load_codebook(std::filesystem::path(FACADE_TESTDATA) / "codebook_n25.json");
  EXPECT_EQ(book.n(), 25);
  EXPECT_EQ(book.dim(), 256);
  EXPECT_EQ(book.feature_fingerprint, test::kGoldenFingerprint);
  EXPECT_EQ(content_hash(book), kGoldenHash);
  EXPECT_EQ(book, test::golden_codebook());
}

TEST(SuggestN, ReportsSweepAndPick) {
  const auto data = test::golden_descriptors();
  const auto report = suggest_n(data, {10, 25, 50, 1000}, 1, ClusterMetric::euclidean);
  ASSERT_EQ(report.sweep.size(), 3U);
  for (const auto& occ : report.sweep) {
    EXPECT_EQ(std::accumulate(occ.counts.begin(), occ.counts.end(), 0), 500);
    EXPECT_GE(occ.empty_fraction, 0.0);
    EXPECT_LE(occ.empty_fraction + occ.overloaded_fraction, 1.0);
  }
  EXPECT_EQ(report.sweep[1].empty_fraction, 0.0);
  EXPECT_EQ(report.sweep[1].overloaded_fraction, 0.0);
  double best = 2;
  int pick = 0;
  for (const auto& occ : report.sweep)
    if (occ.empty_fraction + occ.overloaded_fraction < best) {
      best = occ.empty_fraction + occ.overloaded_fraction;
      pick = occ.n;
    }
  EXPECT_EQ(report.suggested_n, pick);
  EXPECT_THROW(suggest_n(data, {1000}, 1, ClusterMetric::euclidean), Error);
}
