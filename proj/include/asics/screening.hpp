#pragma once

#include <Eigen/Dense>

#include <vector>

#include "asics/data.hpp"

namespace asics {

/// Outcome of marginal screening. Feature indices are 0-based column indices.
struct ScreeningSelection {
  std::vector<Eigen::Index> indices;  // the selected set S, ascending
  std::vector<int> signs;             // sign(z_j) for j in S, sign(0) := +1
  Eigen::VectorXd z;                  // marginal scores for all d features
  double max_abs_z_complement = 0.0;  // max |z_k| over k not in S; 0 when S is everything

  Eigen::Index k() const { return static_cast<Eigen::Index>(indices.size()); }
  Eigen::Index d() const { return z.size(); }
  bool contains(Eigen::Index feature) const;
};

/// z = X'y, with y used as is (not centered).
template <typename DerivedX, typename DerivedY>
Eigen::VectorXd marginal_scores(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  return x.transpose() * y;
}

inline Eigen::VectorXd marginal_scores(const Dataset& ds) { return marginal_scores(ds.x, ds.y); }

/// Picks the k largest |z_j|, ties going to the smaller index. Throws std::invalid_argument
/// unless 1 <= k <= z.size().
ScreeningSelection select_top_k(const Eigen::VectorXd& z, Eigen::Index k);

/// One row l of the selection-event matrix A, evaluated at the observed z.
struct EventRow {
  double value;          // (A z)_l, never positive at the observed data
  double selected_coef;  // entry of A in the column of this block's selected feature: -s_j
};

/// Block j of the affine selection event {A z <= 0}: the row -s_j z_j followed by
/// z_k - s_j z_j and -z_k - s_j z_j for every unselected k (in ascending k). Rows are
/// evaluated on demand; the block never materializes A.
class EventBlock {
 public:
  EventBlock(const ScreeningSelection& sel, Eigen::Index j_local);

  Eigen::Index size() const { return 2 * static_cast<Eigen::Index>(complement_.size()) + 1; }
  EventRow operator[](Eigen::Index l) const;
  Eigen::Index block() const { return j_local_; }

 private:
  const ScreeningSelection* sel_;
  Eigen::Index j_local_;
  double signed_z_;  // s_j z_j
  std::vector<Eigen::Index> complement_;
};

/// Rows of block `j_local` (0-based position within S).
EventBlock selection_event_rows(const ScreeningSelection& sel, Eigen::Index j_local);

/// Columns of `x` listed in `sel.indices`, in that order.
Eigen::MatrixXd selected_columns(const Eigen::MatrixXd& x, const ScreeningSelection& sel);

}  // namespace asics
