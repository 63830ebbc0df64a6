// prob.hpp — exact probabilities under the fair-coin measure: cylinder
// probabilities, BSCC reachability (rational Gaussian elimination over the
// transient states), and satisfaction probability for initialized formulas.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "pmuller/fair.hpp"

namespace pmuller {

using Rational = boost::multiprecision::cpp_rational;

struct ReachProfile {
  std::vector<int> bscc_components;        // component indices (bottom+reachable)
  std::vector<Rational> probabilities;     // aligned with bscc_components
  Rational residual;                       // 1 - sum, must be 0
};

inline Rational cylinder_probability(const Lts& l, const std::vector<int>& path) {
  if (path.empty()) throw std::invalid_argument("cylinder of an empty path");
  for (int s : path)
    if (s < 0 || s >= l.num_states())
      throw std::invalid_argument("cylinder path uses an unknown state");
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!l.has_edge(path[i], path[i + 1]))
      throw std::invalid_argument("cylinder path uses a missing transition");
  if (path[0] != l.init) return 0;
  Rational p = 1;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    p /= static_cast<int>(l.succ[path[i]].size());
  return p;
}

// Reach probability of each reachable BSCC: x_s = sum_t x_t / |Succ(s)| over
// transient states, with the target BSCC fixed to 1 and the others to 0.
inline ReachProfile reach_probabilities(const Lts& l) {
  auto d = sccs(l);
  ReachProfile out;
  std::vector<int> in_bottom(l.num_states(), -1);
  for (int ci = 0; ci < d.num_components(); ++ci)
    if (d.bottom[ci])
      for (int s : d.components[ci]) in_bottom[s] = ci;
  for (int ci = 0; ci < d.num_components(); ++ci)
    if (d.bottom[ci] && d.reachable[ci]) out.bscc_components.push_back(ci);

  // transient states (not in any bottom component), indexed densely
  std::vector<int> transient, row_of(l.num_states(), -1);
  for (int s = 0; s < l.num_states(); ++s)
    if (in_bottom[s] < 0) {
      row_of[s] = static_cast<int>(transient.size());
      transient.push_back(s);
    }
  int n = static_cast<int>(transient.size());

  for (int target : out.bscc_components) {
    if (in_bottom[l.init] >= 0) {
      out.probabilities.push_back(in_bottom[l.init] == target ? 1 : 0);
      continue;
    }
    // A x = b with A = I - P restricted to transient states
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, 0));
    for (int i = 0; i < n; ++i) {
      int s = transient[i];
      a[i][i] = 1;
      Rational w(1, static_cast<int>(l.succ[s].size()));
      for (int t : l.succ[s]) {
        if (row_of[t] >= 0)
          a[i][row_of[t]] -= w;
        else if (in_bottom[t] == target)
          a[i][n] += w;
      }
    }
    // Gaussian elimination with partial (first non-zero) pivoting
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int r = col; r < n; ++r)
        if (a[r][col] != 0) { piv = r; break; }
      if (piv < 0) throw std::logic_error("singular reachability system");
      std::swap(a[col], a[piv]);
      Rational inv = a[col][col];
      for (int c = col; c <= n; ++c) a[col][c] /= inv;
      for (int r = 0; r < n; ++r) {
        if (r == col || a[r][col] == 0) continue;
        Rational factor = a[r][col];
        for (int c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
      }
    }
    out.probabilities.push_back(a[row_of[l.init]][n]);
  }

  out.residual = 1;
  for (const auto& p : out.probabilities) out.residual -= p;
  return out;
}

inline Rational satisfaction_probability(const Lts& l, const FormulaPtr& f) {
  if (classify_fragment(f) != FragmentClass::InitializedMuller)
    throw UnsupportedError(
        "satisfaction probability requires an initialized formula F(...)");
  const FormulaPtr& body = f->children[0];
  auto d = sccs(l);
  ReachProfile profile = reach_probabilities(l);
  Rational p = 0;
  for (std::size_t i = 0; i < profile.bscc_components.size(); ++i) {
    const StateSet& b = d.components[profile.bscc_components[i]];
    if (check_bscc(l, b, body) == b) p += profile.probabilities[i];
  }
  return p;
}

}  // namespace pmuller
