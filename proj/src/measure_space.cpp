#include "rieszmod/finite/measure_space.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "rieszmod/error.hpp"

namespace rieszmod::finite {

namespace {

void check_weights(const std::vector<double>& w, const char* what) {
  for (double x : w) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::InvalidSpace, std::string(what) + " must be finite and strictly positive");
    }
  }
}

}  // namespace

FiniteMeasureSpace::FiniteMeasureSpace(std::vector<std::string> atoms, std::vector<double> weights,
                                       std::optional<std::vector<double>> aux_weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw Error(ErrorCode::InvalidSpace, "a space needs at least one atom");
  if (atoms_.size() != weights_.size()) {
    throw Error(ErrorCode::InvalidSpace, "one weight per atom is required");
  }
  if (std::set<std::string>(atoms_.begin(), atoms_.end()).size() != atoms_.size()) {
    throw Error(ErrorCode::InvalidSpace, "atom names must be distinct");
  }
  check_weights(weights_, "weights");
  if (aux_weights) {
    aux_weights_ = std::move(*aux_weights);
    if (aux_weights_.size() != atoms_.size()) {
      throw Error(ErrorCode::InvalidSpace, "one auxiliary weight per atom is required");
    }
    check_weights(aux_weights_, "aux_weights");
  } else {
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    aux_weights_.reserve(weights_.size());
    for (double w : weights_) aux_weights_.push_back(w / total);
  }
}

FiniteMeasureSpace FiniteMeasureSpace::unnamed(std::vector<double> weights) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < weights.size(); ++i) names.push_back("x" + std::to_string(i));
  return FiniteMeasureSpace(std::move(names), std::move(weights));
}

std::size_t FiniteMeasureSpace::index_of(const std::string& atom) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == atom) return i;
  }
  throw Error(ErrorCode::InvalidInput, "unknown atom '" + atom + "'");
}

void FiniteMeasureSpace::check(const Fn& f) const {
  if (f.size() != size()) {
    throw Error(ErrorCode::SpaceMismatch, "function has " + std::to_string(f.size()) +
                                              " values but the space has " + std::to_string(size()) + " atoms");
  }
}

}  // namespace rieszmod::finite
