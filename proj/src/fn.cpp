#include "rieszmod/finite/fn.hpp"

#include <algorithm>
#include <cmath>

#include "rieszmod/error.hpp"

namespace rieszmod::finite {

namespace {

template <class Op>
Fn zip(const Fn& a, const Fn& b, Op op) {
  require_same_size(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  return Fn(std::move(out));
}

template <class Op>
Fn map(const Fn& a, Op op) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i]);
  return Fn(std::move(out));
}

}  // namespace

void require_same_size(const Fn& a, const Fn& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::SpaceMismatch, "functions live on spaces with different atom counts");
  }
}

Fn Fn::indicator(std::size_t n, std::initializer_list<std::size_t> atoms) {
  return indicator(n, std::vector<std::size_t>(atoms));
}

Fn Fn::indicator(std::size_t n, const std::vector<std::size_t>& atoms) {
  Fn out = zeros(n);
  for (std::size_t a : atoms) {
    if (a >= n) throw Error(ErrorCode::InvalidInput, "indicator atom index out of range");
    out[a] = 1.0;
  }
  return out;
}

Fn operator+(const Fn& a, const Fn& b) { return zip(a, b, [](double x, double y) { return x + y; }); }
Fn operator-(const Fn& a, const Fn& b) { return zip(a, b, [](double x, double y) { return x - y; }); }
Fn operator-(const Fn& a) { return map(a, [](double x) { return -x; }); }
Fn operator*(double s, const Fn& a) { return map(a, [s](double x) { return s * x; }); }
Fn operator*(const Fn& a, const Fn& b) { return zip(a, b, [](double x, double y) { return x * y; }); }

Fn join(const Fn& a, const Fn& b) { return zip(a, b, [](double x, double y) { return std::max(x, y); }); }
Fn meet(const Fn& a, const Fn& b) { return zip(a, b, [](double x, double y) { return std::min(x, y); }); }

bool leq(const Fn& a, const Fn& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] <= b[i])) return false;
  }
  return true;
}

Fn zero_like(const Fn& a) { return Fn::zeros(a.size()); }
Fn one_like(const Fn& a) { return Fn::ones(a.size()); }

double sup_norm(const Fn& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

nlohmann::json describe(const Fn& a) { return a.values(); }

Fn abs(const Fn& a) { return map(a, [](double x) { return std::abs(x); }); }
Fn positive_indicator(const Fn& a) { return map(a, [](double x) { return x > 0.0 ? 1.0 : 0.0; }); }
Fn nonzero_indicator(const Fn& a) { return map(a, [](double x) { return x != 0.0 ? 1.0 : 0.0; }); }

bool is_nonnegative(const Fn& a) {
  return std::all_of(a.begin(), a.end(), [](double x) { return x >= 0.0; });
}

bool is_indicator(const Fn& a) {
  return std::all_of(a.begin(), a.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

}  // namespace rieszmod::finite
