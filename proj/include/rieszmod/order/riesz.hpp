#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "rieszmod/law_report.hpp"
#include "rieszmod/order/carrier.hpp"

namespace rieszmod::order {

template <RieszCarrier T>
struct RieszParts {
  T positive;
  T negative;
  T abs;
};

template <RieszCarrier T>
RieszParts<T> riesz_decompose(const T& u) {
  T pos = positive_part(u);
  T neg = negative_part(u);
  T abs = pos + neg;
  return {std::move(pos), std::move(neg), std::move(abs)};
}

template <class T>
struct LawTriple {
  T u, v, w;
};

/// Ring-mixed identities are compared with this absolute tolerance; the
/// lattice-only identities are compared exactly.
inline constexpr double kRingTolerance = 1e-12;

/// Positive scalars used by the homogeneity identities.
inline constexpr std::array<double, 3> kLawScalars{0.5, 2.0, 3.25};

struct LawInfo {
  const char* id;
  const char* statement;
};

/// Stable ids of the lattice identities followed by the f-algebra ones.
inline constexpr std::array<LawInfo, 12> kRieszLaws{{
    {"riesz-1", "lambda(u v v) = lambda u v lambda v, lambda > 0"},
    {"riesz-1b", "|lambda u| = lambda |u|, lambda >= 0"},
    {"riesz-2", "-(u v v) = (-u) ^ (-v)"},
    {"riesz-3", "u + (v v w) = (u + v) v (u + w)"},
    {"riesz-4", "u + (v ^ w) = (u + v) ^ (u + w)"},
    {"riesz-4b", "u v v + u ^ v = u + v"},
    {"riesz-5", "u = u+ - u-"},
    {"riesz-6", "|u| = u+ v u- = u+ + u-"},
    {"riesz-6b", "u+ ^ u- = 0"},
    {"riesz-6c", "(u + v)+ <= u+ + v+"},
    {"riesz-6d", "|u + v| <= |u| + |v|"},
    {"riesz-6e", "u ^ (v + w) <= u ^ v + u ^ w on the positive cone"},
}};

inline constexpr std::array<LawInfo, 6> kFAlgebraLaws{{
    {"falg-7", "u+ u- = 0"},
    {"falg-8", "(uv)+ = u v+, u >= 0"},
    {"falg-prod-1", "|u - v| = |u + v| when u ^ v = 0"},
    {"falg-prod-2", "|u + v| = |u| + |v| when |u| ^ |v| = 0"},
    {"falg-prod", "|uv| = |u||v|"},
    {"falg-9", "uv <= uw, u >= 0, v <= w"},
}};

namespace detail {

template <RieszCarrier T>
nlohmann::json witness(const T& u, const T& v, const T& w) {
  return {{"u", describe(u)}, {"v", describe(v)}, {"w", describe(w)}};
}

template <RieszCarrier T>
void check_riesz_identities(const T& u, const T& v, const T& w, LawReport& report) {
  const auto wit = [&] { return witness(u, v, w); };
  const T zero = zero_like(u);

  for (double lambda : kLawScalars) {
    bool ok = lambda * join(u, v) == join(lambda * u, lambda * v);
    report.record("riesz-1", ok, ok ? nlohmann::json() : wit());
  }
  for (double lambda : {0.0, kLawScalars[0], kLawScalars[1], kLawScalars[2]}) {
    bool ok = absolute(lambda * u) == lambda * absolute(u);
    report.record("riesz-1b", ok, ok ? nlohmann::json() : wit());
  }
  {
    bool ok = -join(u, v) == meet(-u, -v);
    report.record("riesz-2", ok, ok ? nlohmann::json() : wit());
  }
  {
    bool ok = u + join(v, w) == join(u + v, u + w);
    report.record("riesz-3", ok, ok ? nlohmann::json() : wit());
  }
  {
    bool ok = u + meet(v, w) == meet(u + v, u + w);
    report.record("riesz-4", ok, ok ? nlohmann::json() : wit());
  }
  {
    bool ok = join(u, v) + meet(u, v) == u + v;
    report.record("riesz-4b", ok, ok ? nlohmann::json() : wit());
  }
  const T up = positive_part(u);
  const T un = negative_part(u);
  {
    bool ok = u == up - un;
    report.record("riesz-5", ok, ok ? nlohmann::json() : wit());
  }
  {
    const T au = absolute(u);
    bool ok = au == join(up, un) && au == up + un;
    report.record("riesz-6", ok, ok ? nlohmann::json() : wit());
  }
  {
    bool ok = meet(up, un) == zero;
    report.record("riesz-6b", ok, ok ? nlohmann::json() : wit());
  }
  {
    bool ok = leq(positive_part(u + v), up + positive_part(v));
    report.record("riesz-6c", ok, ok ? nlohmann::json() : wit());
  }
  {
    bool ok = leq(absolute(u + v), absolute(u) + absolute(v));
    report.record("riesz-6d", ok, ok ? nlohmann::json() : wit());
  }
  {
    const T a = absolute(u), b = absolute(v), c = absolute(w);
    bool ok = leq(meet(a, b + c), meet(a, b) + meet(a, c));
    report.record("riesz-6e", ok, ok ? nlohmann::json() : wit());
  }
}

template <FAlgebraCarrier T>
void check_falgebra_identities(const T& u, const T& v, const T& w, LawReport& report) {
  const auto wit = [&] { return witness(u, v, w); };
  const T zero = zero_like(u);
  const double tol = kRingTolerance;

  {
    bool ok = approx_equal(positive_part(u) * negative_part(u), zero, tol);
    report.record("falg-7", ok, ok ? nlohmann::json() : wit());
  }
  {
    const T a = absolute(u);
    bool ok = approx_equal(positive_part(a * v), a * positive_part(v), tol);
    report.record("falg-8", ok, ok ? nlohmann::json() : wit());
  }
  {
    // (u - v)+ and (u - v)- always meet at zero; the raw pair is used too
    // whenever it happens to be disjoint.
    const T a = positive_part(u - v), b = negative_part(u - v);
    bool ok = approx_equal(absolute(a - b), absolute(a + b), tol);
    if (meet(u, v) == zero) ok = ok && approx_equal(absolute(u - v), absolute(u + v), tol);
    report.record("falg-prod-1", ok, ok ? nlohmann::json() : wit());
  }
  {
    const T a = positive_part(u - w), b = -negative_part(u - w);
    bool ok = approx_equal(absolute(a + b), absolute(a) + absolute(b), tol);
    report.record("falg-prod-2", ok, ok ? nlohmann::json() : wit());
  }
  {
    bool ok = approx_equal(absolute(u * v), absolute(u) * absolute(v), tol);
    report.record("falg-prod", ok, ok ? nlohmann::json() : wit());
  }
  {
    const T a = absolute(u), lo = meet(v, w), hi = join(v, w);
    bool ok = approx_leq(a * lo, a * hi, tol);
    report.record("falg-9", ok, ok ? nlohmann::json() : wit());
  }
}

}  // namespace detail

/// Evaluates both sides of every Riesz-space identity (and, for f-algebra
/// carriers, the product identities) on each triple.
template <RieszCarrier T>
LawReport riesz_law_suite(std::span<const LawTriple<T>> samples) {
  LawReport report;
  for (const auto& law : kRieszLaws) report.declare(law.id);
  if constexpr (FAlgebraCarrier<T>) {
    for (const auto& law : kFAlgebraLaws) report.declare(law.id);
  }
  for (const auto& s : samples) {
    detail::check_riesz_identities(s.u, s.v, s.w, report);
    if constexpr (FAlgebraCarrier<T>) detail::check_falgebra_identities(s.u, s.v, s.w, report);
  }
  return report;
}

template <RieszCarrier T>
LawReport riesz_law_suite(const std::vector<LawTriple<T>>& samples) {
  return riesz_law_suite(std::span<const LawTriple<T>>(samples));
}

}  // namespace rieszmod::order
