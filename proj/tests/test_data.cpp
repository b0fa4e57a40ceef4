#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "asics/data.hpp"
#include "asics/error.hpp"
#include "asics/stats.hpp"

using namespace asics;
using namespace asics::stats;

TEST(ParseLibsvm, SignedLabelsAndSparseColumns) {
  const Dataset ds = parse_libsvm("+1 1:0.5 3:-1.2\n-1 2:2.0");
  ASSERT_EQ(ds.n(), 2);
  ASSERT_EQ(ds.d(), 3);
  EXPECT_EQ(ds.y(0), 1.0);
  EXPECT_EQ(ds.y(1), 0.0);
  Eigen::MatrixXd expected(2, 3);
  expected << 0.5, 0.0, -1.2, 0.0, 2.0, 0.0;
  EXPECT_EQ(ds.x, expected);
}

TEST(ParseLibsvm, BinaryLabelsPassThrough) {
  const Dataset ds = parse_libsvm("1 1:1\n0 1:2");
  ASSERT_EQ(ds.d(), 1);
  EXPECT_EQ(ds.y, Eigen::Vector2d(1.0, 0.0));
  EXPECT_EQ(ds.x, Eigen::Vector2d(1.0, 2.0));
}

TEST(ParseLibsvm, BlankInputIsEmptyDataset) {
  EXPECT_THROW(parse_libsvm(""), FormatError);
  EXPECT_THROW(parse_libsvm("\n\n  \n# only a comment\n"), FormatError);
}

TEST(ParseLibsvm, RejectsMalformedLines) {
  EXPECT_THROW(parse_libsvm("2 1:1\n"), ParseError);
  EXPECT_THROW(parse_libsvm("1 0:1\n"), ParseError);
  EXPECT_THROW(parse_libsvm("1 3:1 2:1\n"), ParseError);
  EXPECT_THROW(parse_libsvm("1 1:abc\n"), ParseError);
  EXPECT_THROW(parse_libsvm("0 1:1\n-1 1:2\n"), FormatError);
  try {
    parse_libsvm("1 1:1\n1 1:1\nx 1:2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseLibsvm, DimensionHintWidensDesign) {
  const Dataset ds = parse_libsvm("1 1:1\n0 2:1", 5);
  EXPECT_EQ(ds.d(), 5);
  EXPECT_EQ(ds.x.rightCols(3).norm(), 0.0);
}

TEST(ParseLibsvm, RoundTripsRandomSparseData) {
  RandomStream rng(11, 0);
  for (int rep = 0; rep < 50; ++rep) {
    Dataset ds;
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform() * 30);
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.uniform() * 20);
    ds.x = Eigen::MatrixXd::Zero(n, d);
    ds.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      ds.y(i) = rng.bernoulli(0.5) ? 1.0 : 0.0;
      for (Eigen::Index j = 0; j < d; ++j)
        if (rng.bernoulli(0.3)) ds.x(i, j) = rng.normal() * std::pow(10.0, 6.0 * rng.uniform() - 3.0);
    }
    ds.x(0, d - 1) = 1.0;  // keeps the column count recoverable
    std::stringstream buf;
    write_libsvm(ds, buf);
    const Dataset back = parse_libsvm(buf);
    EXPECT_EQ(back.x, ds.x);
    EXPECT_EQ(back.y, ds.y);
  }
}

TEST(Standardize, ThreePointColumn) {
  Dataset ds;
  ds.x = Eigen::Vector3d(1.0, 2.0, 3.0);
  ds.y = Eigen::Vector3d(0.0, 1.0, 0.0);
  const Standardized st = standardize(ds);
  EXPECT_NEAR(st.data.x(0, 0), -1.224744871391589, 1e-12);
  EXPECT_NEAR(st.data.x(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(st.data.x(2, 0), 1.224744871391589, 1e-12);
  EXPECT_TRUE(st.constant_columns.empty());
}

TEST(Standardize, ConstantColumnIsZeroedAndReported) {
  Dataset ds;
  ds.x.resize(3, 2);
  ds.x << 5, 1, 5, 2, 5, 4;
  ds.y = Eigen::Vector3d(0.0, 1.0, 1.0);
  const Standardized st = standardize(ds);
  EXPECT_EQ(st.data.x.col(0).norm(), 0.0);
  ASSERT_EQ(st.constant_columns.size(), 1u);
  EXPECT_EQ(st.constant_columns[0], 0);
}

TEST(Standardize, Idempotent) {
  RandomStream rng(5, 0);
  const Dataset ds = generate_synthetic({40, 7, 0.3, Eigen::VectorXd::Zero(7)}, rng);
  const Dataset once = standardize(ds).data;
  const Dataset twice = standardize(once).data;
  EXPECT_LT((once.x - twice.x).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(once.x.colwise().mean().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Synthetic, SameKeySameData) {
  const SyntheticDesign design{50, 20, 0.5, Eigen::VectorXd::Constant(20, 0.1)};
  RandomStream a(99, 3);
  RandomStream b(99, 3);
  RandomStream c(99, 4);
  const Dataset da = generate_synthetic(design, a);
  const Dataset db = generate_synthetic(design, b);
  const Dataset dc = generate_synthetic(design, c);
  EXPECT_EQ(da.x, db.x);
  EXPECT_EQ(da.y, db.y);
  EXPECT_NE(da.x, dc.x);
}

TEST(Synthetic, IndependentColumnsAreStandardNormal) {
  RandomStream rng(2024, 0);
  const Dataset ds = generate_synthetic({10000, 3, 0.0, Eigen::VectorXd::Zero(3)}, rng);
  const boost::math::normal_distribution<> phi;
  const double crit = ks_critical_value(0.01, 10000);
  for (Eigen::Index j = 0; j < ds.d(); ++j) {
    std::vector<double> col(ds.x.col(j).data(), ds.x.col(j).data() + ds.n());
    EXPECT_LT(ks_statistic(col, [&](double v) { return boost::math::cdf(phi, v); }), crit) << "column " << j;
  }
  const Eigen::MatrixXd centered = ds.x.rowwise() - ds.x.colwise().mean();
  const Eigen::MatrixXd corr = (centered.transpose() * centered) / static_cast<double>(ds.n());
  EXPECT_LT(std::abs(corr(0, 1)), 4.0 / std::sqrt(10000.0));
}

TEST(Synthetic, Ar1LagOneCorrelation) {
  RandomStream rng(7, 0);
  const Eigen::Index n = 20000;
  const Dataset ds = generate_synthetic({n, 4, 0.5, Eigen::VectorXd::Zero(4)}, rng);
  for (Eigen::Index j = 0; j + 1 < ds.d(); ++j) {
    const Eigen::VectorXd a = ds.x.col(j).array() - ds.x.col(j).mean();
    const Eigen::VectorXd b = ds.x.col(j + 1).array() - ds.x.col(j + 1).mean();
    EXPECT_NEAR(a.dot(b) / (a.norm() * b.norm()), 0.5, 3.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST(Synthetic, NullResponseIsFairCoin) {
  RandomStream rng(8, 0);
  const Eigen::Index n = 10000;
  const Dataset ds = generate_synthetic({n, 2, 0.0, Eigen::VectorXd::Zero(2)}, rng);
  EXPECT_NEAR(ds.y.mean(), 0.5, 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}
