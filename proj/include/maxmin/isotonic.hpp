#pragma once

#include <vector>

#include <Eigen/Core>

namespace maxmin {

/// Least-squares projection onto nondecreasing sequences with equal weights
/// (pool adjacent violators). Block means preserve the total sum.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> isotonic_projection(const Eigen::MatrixBase<Derived>& y) {
  using Scalar = typename Derived::Scalar;
  struct Block {
    Scalar sum;
    Eigen::Index count;
    Scalar mean() const { return sum / static_cast<Scalar>(count); }
  };
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(y.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    blocks.push_back({y(i), 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(y.size());
  Eigen::Index pos = 0;
  for (const Block& b : blocks) {
    out.segment(pos, b.count).setConstant(b.mean());
    pos += b.count;
  }
  return out;
}

}  // namespace maxmin
