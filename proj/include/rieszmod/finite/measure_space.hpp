#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rieszmod/finite/fn.hpp"

namespace rieszmod::finite {

/// Named atoms with strictly positive weights, plus the auxiliary finite
/// measure used by the L0 distance.
class FiniteMeasureSpace {
 public:
  /// Without aux weights, the weights normalized to total mass 1 are used.
  FiniteMeasureSpace(std::vector<std::string> atoms, std::vector<double> weights,
                     std::optional<std::vector<double>> aux_weights = std::nullopt);

  /// Atoms "x0", "x1", ... with the given weights.
  static FiniteMeasureSpace unnamed(std::vector<double> weights);
  static FiniteMeasureSpace uniform(std::size_t n) { return unnamed(std::vector<double>(n, 1.0)); }

  std::size_t size() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& aux_weights() const { return aux_weights_; }
  double weight(std::size_t i) const { return weights_[i]; }
  double aux_weight(std::size_t i) const { return aux_weights_[i]; }
  std::size_t index_of(const std::string& atom) const;

  /// Throws SpaceMismatch unless f has one value per atom.
  void check(const Fn& f) const;

  friend bool operator==(const FiniteMeasureSpace&, const FiniteMeasureSpace&) = default;

 private:
  std::vector<std::string> atoms_;
  std::vector<double> weights_;
  std::vector<double> aux_weights_;
};

}  // namespace rieszmod::finite
