#pragma once

#include <concepts>

#include <json.hpp>

namespace rieszmod::order {

/// Requirements on a Riesz-space carrier. Operations are found by ADL:
/// \arg \c join / \c meet = lattice supremum / infimum of two elements
/// \arg \c leq = the partial order
/// \arg \c zero_like = additive identity of the same shape
/// \arg \c sup_norm = largest absolute coordinate, used only for tolerances
/// \arg \c describe = JSON rendering for counterexamples
template <class T>
concept RieszCarrier = std::regular<T> && requires(const T& a, const T& b, double s) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { s * a } -> std::convertible_to<T>;
  { join(a, b) } -> std::convertible_to<T>;
  { meet(a, b) } -> std::convertible_to<T>;
  { leq(a, b) } -> std::convertible_to<bool>;
  { zero_like(a) } -> std::convertible_to<T>;
  { sup_norm(a) } -> std::convertible_to<double>;
  { describe(a) } -> std::convertible_to<nlohmann::json>;
};

/// A commutative f-algebra with unit: multiplication is \c operator*.
template <class T>
concept FAlgebraCarrier = RieszCarrier<T> && requires(const T& a, const T& b) {
  { a * b } -> std::convertible_to<T>;
  { one_like(a) } -> std::convertible_to<T>;
};

template <RieszCarrier T>
T positive_part(const T& u) {
  return join(u, zero_like(u));
}

template <RieszCarrier T>
T negative_part(const T& u) {
  return join(-u, zero_like(u));
}

template <RieszCarrier T>
T absolute(const T& u) {
  return join(-u, u);
}

template <RieszCarrier T>
bool approx_equal(const T& a, const T& b, double tol) {
  return sup_norm(a - b) <= tol;
}

template <RieszCarrier T>
bool approx_leq(const T& a, const T& b, double tol) {
  return sup_norm(positive_part(a - b)) <= tol;
}

}  // namespace rieszmod::order
