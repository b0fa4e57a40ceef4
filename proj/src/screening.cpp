#include "asics/screening.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace asics {

bool ScreeningSelection::contains(Eigen::Index feature) const {
  return std::binary_search(indices.begin(), indices.end(), feature);
}

ScreeningSelection select_top_k(const Eigen::VectorXd& z, Eigen::Index k) {
  const Eigen::Index d = z.size();
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (k > d) throw std::invalid_argument("k must not exceed the number of features");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto by_score = [&z](Eigen::Index a, Eigen::Index b) {
    const double za = std::abs(z(a));
    const double zb = std::abs(z(b));
    return za > zb || (za == zb && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + k, order.end(), by_score);

  ScreeningSelection sel;
  sel.z = z;
  sel.indices.assign(order.begin(), order.begin() + k);
  std::sort(sel.indices.begin(), sel.indices.end());
  sel.signs.reserve(sel.indices.size());
  for (const auto j : sel.indices) sel.signs.push_back(z(j) >= 0.0 ? 1 : -1);

  double m = 0.0;
  for (auto it = order.begin() + k; it != order.end(); ++it) m = std::max(m, std::abs(z(*it)));
  sel.max_abs_z_complement = m;
  return sel;
}

EventBlock::EventBlock(const ScreeningSelection& sel, Eigen::Index j_local)
    : sel_(&sel), j_local_(j_local) {
  if (j_local < 0 || j_local >= sel.k()) throw std::out_of_range("block index outside the selected set");
  const auto j = sel.indices[static_cast<std::size_t>(j_local)];
  signed_z_ = sel.signs[static_cast<std::size_t>(j_local)] * sel.z(j);
  complement_.reserve(static_cast<std::size_t>(sel.d() - sel.k()));
  for (Eigen::Index f = 0; f < sel.d(); ++f) {
    if (!sel.contains(f)) complement_.push_back(f);
  }
}

EventRow EventBlock::operator[](Eigen::Index l) const {
  const double coef = -static_cast<double>(sel_->signs[static_cast<std::size_t>(j_local_)]);
  if (l == 0) return {-signed_z_, coef};
  const auto pair = static_cast<std::size_t>((l - 1) / 2);
  const double zk = sel_->z(complement_[pair]);
  const double value = (l - 1) % 2 == 0 ? zk - signed_z_ : -zk - signed_z_;
  return {value, coef};
}

EventBlock selection_event_rows(const ScreeningSelection& sel, Eigen::Index j_local) {
  return EventBlock(sel, j_local);
}

Eigen::MatrixXd selected_columns(const Eigen::MatrixXd& x, const ScreeningSelection& sel) {
  Eigen::MatrixXd xs(x.rows(), sel.k());
  for (Eigen::Index c = 0; c < sel.k(); ++c) xs.col(c) = x.col(sel.indices[static_cast<std::size_t>(c)]);
  return xs;
}

}  // namespace asics
