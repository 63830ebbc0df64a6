// random_gen.hpp — deterministic random instance generation for testing.

#pragma once

#include <random>

#include "pmuller/lts.hpp"

namespace pmuller {

// Each ordered pair becomes a transition with probability `density`; a
// self-loop is added to any successor-less state to keep the LTS total.
// Labels p0..p{atoms-1} are assigned independently with probability 1/2.
// Fully deterministic per seed.
inline Lts random_instance(int n, double density, int atoms, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_instance: need n >= 1");
  if (atoms < 0) throw std::invalid_argument("random_instance: need atoms >= 0");
  if (!(density > 0.0) || density > 1.0)
    throw std::invalid_argument("random_instance: density must be in (0, 1]");

  std::mt19937_64 rng(seed);
  auto coin = [&](double p) {
    // uniform double in [0,1) from the top 53 bits, portable across libs
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u < p;
  };

  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("s" + std::to_string(i));

  std::vector<std::pair<std::string, std::string>> transitions;
  std::vector<bool> has_succ(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (coin(density)) {
        transitions.emplace_back(ids[i], ids[j]);
        has_succ[i] = true;
      }
  for (int i = 0; i < n; ++i)
    if (!has_succ[i]) transitions.emplace_back(ids[i], ids[i]);

  std::map<std::string, std::set<std::string>> labels;
  for (int i = 0; i < n; ++i) {
    std::set<std::string> labs;
    for (int a = 0; a < atoms; ++a)
      if (coin(0.5)) labs.insert("p" + std::to_string(a));
    labels[ids[i]] = std::move(labs);
  }
  return make_lts(std::move(ids), "s0", transitions, labels);
}

}  // namespace pmuller
