#include "rieszmod/finite/stone.hpp"

#include <map>

#include "rieszmod/error.hpp"

namespace rieszmod::finite {

StoneAtoms stone_atoms(const std::vector<Fn>& generators) {
  if (generators.empty()) throw Error(ErrorCode::InvalidInput, "at least one generator is required");
  const std::size_t n = generators.front().size();
  for (const auto& g : generators) {
    require_same_size(g, generators.front());
    if (!order::is_idempotent(g)) throw Error(ErrorCode::NonIdempotentInput, "generator is not idempotent");
  }

  // Points with the same membership pattern form one atom.
  std::map<std::vector<bool>, std::size_t> by_signature;
  StoneAtoms out;
  std::vector<std::vector<bool>> signatures;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<bool> sig;
    for (const auto& g : generators) sig.push_back(g[x] == 1.0);
    auto [it, fresh] = by_signature.try_emplace(sig, out.atoms.size());
    if (fresh) {
      out.atoms.push_back(Fn::zeros(n));
      signatures.push_back(sig);
    }
    out.atoms[it->second][x] = 1.0;
  }
  out.embedding.resize(generators.size());
  for (std::size_t a = 0; a < signatures.size(); ++a) {
    for (std::size_t k = 0; k < generators.size(); ++k) {
      if (signatures[a][k]) out.embedding[k].push_back(a);
    }
  }
  return out;
}

std::vector<std::size_t> represent(const StoneAtoms& s, const Fn& e) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < s.atoms.size(); ++a) {
    const Fn inside = s.atoms[a] * e;
    if (inside == s.atoms[a]) {
      out.push_back(a);
    } else if (!(inside == zero_like(inside))) {
      throw Error(ErrorCode::InvalidInput, "element is not in the generated algebra");
    }
  }
  return out;
}

Fn realize(const StoneAtoms& s, const std::vector<std::size_t>& atom_set) {
  Fn out = zero_like(s.atoms.front());
  for (std::size_t a : atom_set) out = out + s.atoms.at(a);
  return out;
}

Fn boolean_sum(const Fn& u, const Fn& v) { return u + v - 2.0 * (u * v); }
Fn boolean_product(const Fn& u, const Fn& v) { return u * v; }

}  // namespace rieszmod::finite
