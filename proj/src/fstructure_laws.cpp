#include "rieszmod/finite/fstructure_laws.hpp"

#include <cmath>

#include "rieszmod/finite/stone.hpp"

namespace rieszmod::finite {

namespace {

constexpr double kRel = 1e-12;
constexpr double kTranslationTol = 1e-9;

// Pointwise |a| r with 0 * inf = 0: an atom where the factor vanishes
// contributes nothing whatever the radius.
Fn scaled_radius(const Fn& a, const Fn& r) {
  Fn out = zero_like(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] == 0.0 ? 0.0 : std::abs(a[i]) * r[i];
  return out;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b))); }
bool below(double a, double b, double tol) { return a <= b + tol * (1.0 + std::abs(b)); }

nlohmann::json witness(const Fn& u, const Fn& v, const Fn& w) {
  return {{"u", describe(u)}, {"v", describe(v)}, {"w", describe(w)}};
}

struct Slot {
  const char* name;
  const SpaceType& type;
  Distance d;
};

void check_metric(const Slot& slot, const FiniteFStructure& s, const Fn& u, const Fn& v, const Fn& w,
                  LawReport& report) {
  const Fn zero = zero_like(u);
  const auto wit = [&] {
    auto j = witness(u, v, w);
    j["slot"] = slot.name;
    return j;
  };
  {
    bool ok = close(slot.d(u, zero), slot.d(abs(u), zero), kRel);
    report.record("metric-abs", ok, ok ? nlohmann::json() : wit());
  }
  {
    bool ok = close(slot.d(u + w, v + w), slot.d(u, v), kTranslationTol);
    report.record("metric-translation", ok, ok ? nlohmann::json() : wit());
  }
  {
    const Fn hi = abs(v);
    const Fn lo = meet(abs(u), hi);
    bool ok = below(slot.d(lo, zero), slot.d(hi, zero), kRel);
    report.record("metric-monotone", ok, ok ? nlohmann::json() : wit());
  }
  {
    const Fn radius = slot.type.pointwise_radius(slot.d(u, v), s.space());
    bool ok = true;
    for (std::size_t i = 0; i < u.size() && ok; ++i) {
      ok = std::abs(u[i] - v[i]) <= radius[i] * (1.0 + kRel) + kRel;
    }
    report.record("metric-modulus", ok, ok ? nlohmann::json() : wit());
  }
}

}  // namespace

LawReport check_fstructure_laws(const FiniteFStructure& structure,
                                const std::vector<order::LawTriple<Fn>>& samples,
                                const Distance& replacement) {
  LawReport report;
  for (const char* id : kStructureLaws) report.declare(id);

  const FiniteMeasureSpace& space = structure.space();
  const Distance d_u = replacement ? replacement : Distance([&](const Fn& f, const Fn& g) { return structure.d_u(f, g); });
  const Distance d_v = replacement ? replacement : Distance([&](const Fn& f, const Fn& g) { return structure.d_v(f, g); });
  const Slot u_slot{"U", structure.u(), d_u};
  const Slot v_slot{"V", structure.v(), d_v};
  const Fn& mask = structure.v_support();

  for (const auto& t : samples) {
    space.check(t.u);
    space.check(t.v);
    space.check(t.w);
    const Fn zero = zero_like(t.u);
    check_metric(u_slot, structure, t.u, t.v, t.w, report);
    const Fn vu = mask * t.u, vv = mask * t.v, vw = mask * t.w;
    check_metric(v_slot, structure, vu, vv, vw, report);

    // |u v - u w| <= |u| r_V(d_V(v, w)) pointwise, hence in distance by
    // monotonicity; likewise for U x U.
    {
      const Fn bound_v = scaled_radius(t.u, structure.v().pointwise_radius(d_v(vv, vw), space));
      const Fn bound_u = scaled_radius(t.u, structure.u().pointwise_radius(d_u(t.v, t.w), space));
      bool ok = below(d_v(t.u * vv, t.u * vw), d_v(bound_v, zero), kRel) &&
                below(d_u(t.u * t.v, t.u * t.w), d_u(bound_u, zero), kRel);
      report.record("mult-continuity", ok, ok ? nlohmann::json() : witness(t.u, t.v, t.w));
    }
    // Partition by the sign pattern of (u, v); pieces u_n |w|.
    {
      const StoneAtoms cells = stone_atoms({positive_indicator(t.u), positive_indicator(t.v)});
      const Fn piece_source = abs(vw);
      double sum_of_pieces = 0.0;
      Fn glued = zero;
      for (const auto& cell : cells.atoms) {
        const Fn piece = cell * piece_source;
        sum_of_pieces += d_v(piece, zero);
        glued = join(glued, piece);
      }
      bool ok = below(d_v(glued, zero), sum_of_pieces, kRel);
      report.record("glueing-bound", ok, ok ? nlohmann::json() : witness(t.u, t.v, t.w));
    }
  }

  // d_U(eps 1, 0) decreases to 0 along eps = 2^-k.
  {
    const Fn one = Fn::ones(space.size());
    const Fn zero = zero_like(one);
    double prev = d_u(one, zero);
    bool ok = true;
    for (int k = 1; k <= 60; ++k) {
      const double cur = d_u(std::ldexp(1.0, -k) * one, zero);
      ok = ok && below(cur, prev, kRel);
      prev = cur;
    }
    ok = ok && prev <= 1e-12 * (1.0 + d_u(one, zero));
    report.record("unit-vanishing", ok, ok ? nlohmann::json() : nlohmann::json{{"last", prev}});
  }
  return report;
}

}  // namespace rieszmod::finite
