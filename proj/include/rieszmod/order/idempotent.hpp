#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rieszmod/error.hpp"
#include "rieszmod/order/carrier.hpp"

namespace rieszmod::order {

template <FAlgebraCarrier T>
bool is_idempotent(const T& u) {
  return u * u == u;
}

/// An element with u^2 = u; plays the role of an indicator.
template <FAlgebraCarrier T>
class Idempotent {
 public:
  explicit Idempotent(T u) : value_(std::move(u)) {
    if (!is_idempotent(value_)) {
      throw Error(ErrorCode::NonIdempotentInput, "element is not idempotent");
    }
  }

  const T& value() const { return value_; }
  operator const T&() const { return value_; }  // NOLINT(google-explicit-constructor)

  Idempotent complement() const { return Idempotent(one_like(value_) - value_); }
  friend bool operator==(const Idempotent&, const Idempotent&) = default;

 private:
  T value_;
};

/// Disjoint idempotents summing to `of`.
template <FAlgebraCarrier T>
class FinitePartition {
 public:
  FinitePartition(std::vector<Idempotent<T>> parts, Idempotent<T> of)
      : parts_(std::move(parts)), of_(std::move(of)) {
    const T zero = zero_like(of_.value());
    T total = zero;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      for (std::size_t j = i + 1; j < parts_.size(); ++j) {
        if (!(parts_[i].value() * parts_[j].value() == zero)) {
          throw Error(ErrorCode::NotAPartition, "partition parts are not pairwise disjoint");
        }
      }
      total = total + parts_[i].value();
    }
    if (!(total == of_.value())) {
      throw Error(ErrorCode::NotAPartition, "partition parts do not sum to the partitioned element");
    }
  }

  /// Partition of the unit element.
  static FinitePartition of_unit(std::vector<Idempotent<T>> parts, const T& shape) {
    return FinitePartition(std::move(parts), Idempotent<T>(one_like(shape)));
  }

  const std::vector<Idempotent<T>>& parts() const { return parts_; }
  const Idempotent<T>& of() const { return of_; }
  std::size_t size() const { return parts_.size(); }
  const T& operator[](std::size_t i) const { return parts_[i].value(); }

  friend bool operator==(const FinitePartition&, const FinitePartition&) = default;

 private:
  std::vector<Idempotent<T>> parts_;
  Idempotent<T> of_;
};

/// Turns a sequence of idempotents into a disjoint one with the same
/// running suprema, via u'_n = u_n - sum_{k<n} u_n u'_k.
template <FAlgebraCarrier T>
std::vector<Idempotent<T>> disjointify(const std::vector<T>& us) {
  std::vector<Idempotent<T>> out;
  out.reserve(us.size());
  for (const T& u : us) {
    if (!is_idempotent(u)) throw Error(ErrorCode::NonIdempotentInput, "disjointify input is not idempotent");
    T next = u;
    for (const auto& prev : out) next = next - u * prev.value();
    out.emplace_back(std::move(next));
  }
  return out;
}

struct RefinedIndex {
  std::size_t left;
  std::size_t right;
};

/// Common refinement: nonzero products u_i v_j, lexicographic in (i, j).
/// `indices`, when given, receives the source pair of every kept part.
template <FAlgebraCarrier T>
FinitePartition<T> refine_partitions(const FinitePartition<T>& p, const FinitePartition<T>& q,
                                     std::vector<RefinedIndex>* indices = nullptr) {
  if (!(p.of() == q.of())) {
    throw Error(ErrorCode::PartitionMismatch, "partitions refine different idempotents");
  }
  const T zero = zero_like(p.of().value());
  std::vector<Idempotent<T>> parts;
  if (indices) indices->clear();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      T cell = p[i] * q[j];
      if (cell == zero) continue;
      parts.emplace_back(std::move(cell));
      if (indices) indices->push_back({i, j});
    }
  }
  return FinitePartition<T>(std::move(parts), p.of());
}

/// |u| ^ |v| = 0 for every pair of distinct members.
template <RieszCarrier T>
bool check_disjoint(const std::vector<T>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j]) continue;
      if (!(meet(absolute(s[i]), absolute(s[j])) == zero_like(s[i]))) return false;
    }
  }
  return true;
}

/// The product criterion uv = 0; equivalent to check_disjoint on
/// Archimedean carriers.
template <FAlgebraCarrier T>
bool pairwise_products_vanish(const std::vector<T>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j]) continue;
      if (!(s[i] * s[j] == zero_like(s[i]))) return false;
    }
  }
  return true;
}

}  // namespace rieszmod::order
