#pragma once

#include <algorithm>
#include <vector>

#include "rieszmod/error.hpp"
#include "rieszmod/order/idempotent.hpp"

namespace rieszmod::order {

/// sum_i lambda_i u_i over a finite partition of the unit.
template <FAlgebraCarrier T>
class SimpleElement {
 public:
  SimpleElement(std::vector<double> coefficients, FinitePartition<T> partition)
      : coefficients_(std::move(coefficients)), partition_(std::move(partition)) {
    if (coefficients_.size() != partition_.size()) {
      throw Error(ErrorCode::InvalidInput, "one coefficient per partition part is required");
    }
    if (!(partition_.of().value() == one_like(partition_.of().value()))) {
      throw Error(ErrorCode::NotAPartition, "simple elements live on partitions of the unit");
    }
  }

  const std::vector<double>& coefficients() const { return coefficients_; }
  const FinitePartition<T>& partition() const { return partition_; }

  T value() const {
    T out = zero_like(partition_.of().value());
    for (std::size_t i = 0; i < coefficients_.size(); ++i) out = out + coefficients_[i] * partition_[i];
    return out;
  }

 private:
  std::vector<double> coefficients_;
  FinitePartition<T> partition_;
};

enum class SimpleOp { Add, Multiply, Join, Meet };

inline double apply_scalar(SimpleOp op, double a, double b) {
  switch (op) {
    case SimpleOp::Add: return a + b;
    case SimpleOp::Multiply: return a * b;
    case SimpleOp::Join: return std::max(a, b);
    case SimpleOp::Meet: return std::min(a, b);
  }
  return 0.0;
}

/// Combines on the common refinement, coefficient by coefficient.
template <FAlgebraCarrier T>
SimpleElement<T> simple_combine(const SimpleElement<T>& u, const SimpleElement<T>& v, SimpleOp op) {
  std::vector<RefinedIndex> cells;
  FinitePartition<T> refined = refine_partitions(u.partition(), v.partition(), &cells);
  std::vector<double> coeffs;
  coeffs.reserve(cells.size());
  for (const auto& c : cells) {
    coeffs.push_back(apply_scalar(op, u.coefficients()[c.left], v.coefficients()[c.right]));
  }
  return SimpleElement<T>(std::move(coeffs), std::move(refined));
}

}  // namespace rieszmod::order
