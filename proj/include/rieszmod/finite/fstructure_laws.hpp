#pragma once

#include <functional>
#include <vector>

#include "rieszmod/finite/structure.hpp"
#include "rieszmod/law_report.hpp"
#include "rieszmod/order/riesz.hpp"

namespace rieszmod::finite {

using Distance = std::function<double(const Fn&, const Fn&)>;

/// Law ids checked by check_fstructure_laws, in report order.
inline constexpr std::array<const char*, 7> kStructureLaws{
    "metric-abs",       "metric-translation", "metric-monotone", "metric-modulus",
    "mult-continuity",  "glueing-bound",      "unit-vanishing",
};

/// Checks the metric axioms of U and V, the pointwise modulus that makes
/// multiplication continuous, and the partition glueing bound (with
/// delta = epsilon, which subadditivity allows on finite partitions).
/// V samples are restricted to the support of V. A non-empty
/// `replacement` is used as both distances instead of the declared ones;
/// the moduli still come from the declared kinds.
LawReport check_fstructure_laws(const FiniteFStructure& structure,
                                const std::vector<order::LawTriple<Fn>>& samples,
                                const Distance& replacement = {});

}  // namespace rieszmod::finite
