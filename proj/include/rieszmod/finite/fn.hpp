#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <json.hpp>

namespace rieszmod::finite {

/// A real function on the atoms of a finite space, one value per atom.
/// Values only: operations that need the measure take the space as an
/// argument. Binary operations on functions of different length throw
/// SpaceMismatch.
class Fn {
 public:
  Fn() = default;
  explicit Fn(std::vector<double> values) : values_(std::move(values)) {}
  Fn(std::initializer_list<double> values) : values_(values) {}

  static Fn constant(std::size_t n, double c) { return Fn(std::vector<double>(n, c)); }
  static Fn zeros(std::size_t n) { return constant(n, 0.0); }
  static Fn ones(std::size_t n) { return constant(n, 1.0); }
  /// 0/1 function equal to 1 exactly on the listed atoms.
  static Fn indicator(std::size_t n, std::initializer_list<std::size_t> atoms);
  static Fn indicator(std::size_t n, const std::vector<std::size_t>& atoms);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const Fn&, const Fn&) = default;

 private:
  std::vector<double> values_;
};

Fn operator+(const Fn& a, const Fn& b);
Fn operator-(const Fn& a, const Fn& b);
Fn operator-(const Fn& a);
Fn operator*(double s, const Fn& a);
Fn operator*(const Fn& a, const Fn& b);

Fn join(const Fn& a, const Fn& b);
Fn meet(const Fn& a, const Fn& b);
bool leq(const Fn& a, const Fn& b);
Fn zero_like(const Fn& a);
Fn one_like(const Fn& a);
double sup_norm(const Fn& a);
nlohmann::json describe(const Fn& a);

Fn abs(const Fn& a);
/// 1 where a > 0, else 0.
Fn positive_indicator(const Fn& a);
/// 1 where a != 0, else 0.
Fn nonzero_indicator(const Fn& a);
bool is_nonnegative(const Fn& a);
bool is_indicator(const Fn& a);

void require_same_size(const Fn& a, const Fn& b);

}  // namespace rieszmod::finite
