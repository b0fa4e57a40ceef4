#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "asics/data.hpp"
#include "asics/screening.hpp"

using namespace asics;

namespace {

std::vector<double> evaluate(const EventBlock& block) {
  std::vector<double> v;
  for (Eigen::Index l = 0; l < block.size(); ++l) v.push_back(block[l].value);
  return v;
}

}  // namespace

TEST(MarginalScores, HandExamples) {
  EXPECT_EQ(marginal_scores(Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 0)), Eigen::Vector2d(1, 0));
  Eigen::Matrix2d x;
  x << 1, 2, 3, 4;
  EXPECT_EQ(marginal_scores(x, Eigen::Vector2d(1, 1)), Eigen::Vector2d(4, 6));
  EXPECT_EQ(marginal_scores(x, Eigen::Vector2d::Zero()), Eigen::Vector2d::Zero());
}

TEST(SelectTopK, PicksLargestMagnitudes) {
  const ScreeningSelection sel = select_top_k(Eigen::Vector3d(3, -5, 1), 2);
  EXPECT_EQ(sel.indices, (std::vector<Eigen::Index>{0, 1}));
  EXPECT_EQ(sel.signs, (std::vector<int>{1, -1}));
  EXPECT_EQ(sel.max_abs_z_complement, 1.0);
}

TEST(SelectTopK, TiesGoToLowerIndex) {
  const ScreeningSelection sel = select_top_k(Eigen::Vector3d(2, 2, 1), 1);
  EXPECT_EQ(sel.indices, (std::vector<Eigen::Index>{0}));
  EXPECT_EQ(sel.max_abs_z_complement, 2.0);
}

TEST(SelectTopK, ZeroScoreHasPositiveSign) {
  const ScreeningSelection sel = select_top_k(Eigen::Vector2d(0, 0), 1);
  EXPECT_EQ(sel.indices, (std::vector<Eigen::Index>{0}));
  EXPECT_EQ(sel.signs, (std::vector<int>{1}));
}

TEST(SelectTopK, RejectsBadK) {
  EXPECT_THROW(select_top_k(Eigen::Vector2d(1, 2), 0), std::invalid_argument);
  EXPECT_THROW(select_top_k(Eigen::Vector2d(1, 2), 3), std::invalid_argument);
}

TEST(SelectTopK, MatchesFullSort) {
  RandomStream rng(42, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.uniform() * 60);
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.uniform() * d);
    Eigen::VectorXd z(d);
    for (Eigen::Index i = 0; i < d; ++i) z(i) = std::round(rng.normal() * 3.0);  // forces ties
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return std::abs(z(a)) > std::abs(z(b)); });
    std::vector<Eigen::Index> expected(order.begin(), order.begin() + k);
    std::sort(expected.begin(), expected.end());
    const ScreeningSelection sel = select_top_k(z, k);
    ASSERT_EQ(sel.indices, expected) << "rep " << rep;
    const double rest = k < d ? std::abs(z(order[static_cast<std::size_t>(k)])) : 0.0;
    EXPECT_EQ(sel.max_abs_z_complement, rest);
  }
}

TEST(SelectTopK, PermutingColumnsPermutesSelection) {
  RandomStream rng(3, 0);
  const Dataset ds = generate_synthetic({60, 25, 0.5, Eigen::VectorXd::Zero(25)}, rng);
  std::vector<Eigen::Index> perm(25);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd xp(ds.n(), ds.d());
  for (Eigen::Index j = 0; j < ds.d(); ++j) xp.col(j) = ds.x.col(perm[static_cast<std::size_t>(j)]);
  const ScreeningSelection a = select_top_k(marginal_scores(ds), 5);
  const ScreeningSelection b = select_top_k(marginal_scores(xp, ds.y), 5);
  std::vector<Eigen::Index> mapped;
  for (auto j : b.indices) mapped.push_back(perm[static_cast<std::size_t>(j)]);
  std::sort(mapped.begin(), mapped.end());
  EXPECT_EQ(mapped, a.indices);
}

TEST(SelectionEvent, RowsOfSingleBlock) {
  const Eigen::Vector3d z(1.0, 4.0, -2.0);
  const ScreeningSelection sel = select_top_k(z, 1);
  ASSERT_EQ(sel.indices, (std::vector<Eigen::Index>{1}));
  const EventBlock block = selection_event_rows(sel, 0);
  ASSERT_EQ(block.size(), 5);
  const double z1 = z(0), z2 = z(1), z3 = z(2);
  EXPECT_EQ(evaluate(block), (std::vector<double>{-z2, z1 - z2, -z1 - z2, z3 - z2, -z3 - z2}));
  EXPECT_EQ(block[0].selected_coef, -1.0);
}

TEST(SelectionEvent, FullSelectionHasOneRow) {
  const ScreeningSelection sel = select_top_k(Eigen::Vector3d(1.0, -4.0, 2.0), 3);
  for (Eigen::Index j = 0; j < 3; ++j) {
    const EventBlock block = selection_event_rows(sel, j);
    ASSERT_EQ(block.size(), 1);
    EXPECT_EQ(block[0].value, -std::abs(sel.z(sel.indices[static_cast<std::size_t>(j)])));
  }
}

TEST(SelectionEvent, HoldsAtObservedData) {
  RandomStream rng(17, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.uniform() * 80);
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.uniform() * d);
    const Dataset ds = generate_synthetic({30, d, 0.5, Eigen::VectorXd::Zero(d)}, rng);
    const ScreeningSelection sel = select_top_k(marginal_scores(ds), k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const EventBlock block = selection_event_rows(sel, j);
      EXPECT_EQ(block.size(), 2 * (d - k) + 1);
      for (Eigen::Index l = 0; l < block.size(); ++l) ASSERT_LE(block[l].value, 0.0);
    }
  }
}
