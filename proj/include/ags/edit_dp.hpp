#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace ags {

// Source position consumed alone = Delete; target position consumed alone = Insert.
enum class EditOp : std::uint8_t { Substitute = 0, Delete = 1, Insert = 2 };

using TieOrder = std::array<EditOp, 3>;

template <typename Scalar>
struct EditStep {
  EditOp op;
  Eigen::Index source;  // -1 for Insert
  Eigen::Index target;  // -1 for Delete
  Scalar cost;
};

template <typename Scalar>
struct EditPath {
  Scalar cost{0};
  std::vector<EditStep<Scalar>> steps;
};

namespace detail {

template <typename Scalar>
using Grid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using OpGrid = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// Fills the cost grid; when `ops` is non-null also records, per cell, the first
// operator in `order` that attains the minimum.
template <typename Scalar, typename Sub, typename Del, typename Ins>
void fill_edit_grid(Eigen::Index n, Eigen::Index m, Sub&& sub, Del&& del, Ins&& ins, const TieOrder& order, Grid<Scalar>& cost,
                    OpGrid* ops) {
  cost.resize(n + 1, m + 1);
  if (ops) ops->resize(n + 1, m + 1);
  cost(0, 0) = Scalar(0);
  for (Eigen::Index i = 1; i <= n; ++i) {
    cost(i, 0) = static_cast<Scalar>(cost(i - 1, 0) + del(i - 1));
    if (ops) (*ops)(i, 0) = static_cast<std::uint8_t>(EditOp::Delete);
  }
  for (Eigen::Index j = 1; j <= m; ++j) {
    cost(0, j) = static_cast<Scalar>(cost(0, j - 1) + ins(j - 1));
    if (ops) (*ops)(0, j) = static_cast<std::uint8_t>(EditOp::Insert);
  }
  for (Eigen::Index i = 1; i <= n; ++i) {
    for (Eigen::Index j = 1; j <= m; ++j) {
      const std::array<Scalar, 3> candidate = {
          static_cast<Scalar>(cost(i - 1, j - 1) + sub(i - 1, j - 1)),
          static_cast<Scalar>(cost(i - 1, j) + del(i - 1)),
          static_cast<Scalar>(cost(i, j - 1) + ins(j - 1)),
      };
      EditOp best = order[0];
      Scalar best_cost = candidate[static_cast<std::size_t>(order[0])];
      for (std::size_t k = 1; k < order.size(); ++k) {
        const Scalar c = candidate[static_cast<std::size_t>(order[k])];
        if (c < best_cost) {
          best_cost = c;
          best = order[k];
        }
      }
      cost(i, j) = best_cost;
      if (ops) (*ops)(i, j) = static_cast<std::uint8_t>(best);
    }
  }
}

}  // namespace detail

// Minimum total cost of transforming a length-n source into a length-m target.
template <typename Scalar, typename Sub, typename Del, typename Ins>
Scalar min_edit_cost(Eigen::Index n, Eigen::Index m, Sub&& sub, Del&& del, Ins&& ins) {
  detail::Grid<Scalar> cost;
  detail::fill_edit_grid<Scalar>(n, m, sub, del, ins, TieOrder{EditOp::Substitute, EditOp::Delete, EditOp::Insert}, cost,
                                 nullptr);
  return cost(n, m);
}

// Minimum-cost monotone alignment with deterministic operator preference.
template <typename Scalar, typename Sub, typename Del, typename Ins>
EditPath<Scalar> min_edit_path(Eigen::Index n, Eigen::Index m, Sub&& sub, Del&& del, Ins&& ins, const TieOrder& order) {
  detail::Grid<Scalar> cost;
  detail::OpGrid ops;
  detail::fill_edit_grid<Scalar>(n, m, sub, del, ins, order, cost, &ops);

  EditPath<Scalar> path;
  path.cost = cost(n, m);
  Eigen::Index i = n;
  Eigen::Index j = m;
  while (i > 0 || j > 0) {
    const auto op = static_cast<EditOp>(ops(i, j));
    switch (op) {
      case EditOp::Substitute:
        path.steps.push_back({op, i - 1, j - 1, static_cast<Scalar>(sub(i - 1, j - 1))});
        --i;
        --j;
        break;
      case EditOp::Delete:
        path.steps.push_back({op, i - 1, -1, static_cast<Scalar>(del(i - 1))});
        --i;
        break;
      case EditOp::Insert:
        path.steps.push_back({op, -1, j - 1, static_cast<Scalar>(ins(j - 1))});
        --j;
        break;
    }
  }
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

}  // namespace ags
