// fair.hpp — almost-sure (fair) model checking.
//
// For the Muller fragment fair and universal checking coincide, so the
// verdict is delegated.  For initialized formulas F psi the check reduces
// to a per-BSCC fixpoint: a BSCC is good iff the sure attractor of the
// recursively-satisfied states covers it.

#pragma once

#include <unordered_map>

#include "pmuller/universal.hpp"

namespace pmuller {

struct BsccCheckResult {
  StateSet component;
  StateSet satisfied_states;
  bool good = false;
};

namespace detail {

inline StateSet check_bscc_rec(
    const Lts& l, const StateSet& b, const FormulaPtr& f,
    std::unordered_map<const Formula*, StateSet>& memo) {
  auto it = memo.find(f.get());
  if (it != memo.end()) return it->second;

  StateSet out;
  switch (f->kind) {
    case NodeKind::Atom:
      for (int s : b)
        if (l.labels[s].count(f->name)) out.push_back(s);
      break;
    case NodeKind::NegAtom:
      for (int s : b)
        if (!l.labels[s].count(f->name)) out.push_back(s);
      break;
    case NodeKind::True:
      out = b;
      break;
    case NodeKind::False:
      break;
    case NodeKind::Or: {
      std::vector<bool> in(l.num_states(), false);
      for (const auto& c : f->children)
        for (int s : check_bscc_rec(l, b, c, memo)) in[s] = true;
      for (int s : b)
        if (in[s]) out.push_back(s);
      break;
    }
    case NodeKind::And: {
      std::vector<int> count(l.num_states(), 0);
      for (const auto& c : f->children)
        for (int s : check_bscc_rec(l, b, c, memo)) ++count[s];
      int want = static_cast<int>(f->children.size());
      for (int s : b)
        if (count[s] == want) out.push_back(s);
      break;
    }
    case NodeKind::PromptMullerF: {
      StateSet inner = check_bscc_rec(l, b, f->children[0], memo);
      if (spred_star(l, b, inner) == b) out = b;
      break;
    }
    default:
      throw UnsupportedError(
          "check_bscc: formula uses an operator outside atoms/And/Or/FPinf");
  }
  memo.emplace(f.get(), out);
  return out;
}

inline bool is_bscc(const Lts& l, const StateSet& b) {
  if (b.empty()) return false;
  std::vector<bool> in(l.num_states(), false);
  for (int s : b) in[s] = true;
  for (int s : b)
    for (int t : l.succ[s])
      if (!in[t]) return false;
  auto reach = reachable_from(l, {b[0]}, &in);
  for (int s : b)
    if (!reach[s]) return false;
  return true;
}

}  // namespace detail

inline StateSet check_bscc(const Lts& l, const StateSet& b, const FormulaPtr& f) {
  if (!detail::is_bscc(l, b))
    throw std::invalid_argument("check_bscc: the given set is not a BSCC");
  std::unordered_map<const Formula*, StateSet> memo;
  return detail::check_bscc_rec(l, b, f, memo);
}

inline Verdict fair_check(const Lts& l, const FormulaPtr& f) {
  FragmentClass fc = classify_fragment(f);
  if (fc == FragmentClass::EvalOnly)
    throw UnsupportedError("formula is outside the prompt Muller fragments");

  if (fc != FragmentClass::InitializedMuller)
    return universal_check(l, f, CheckMode::Fair);

  Verdict v;
  v.mode = CheckMode::Fair;
  v.fragment = fc;
  v.bound_threshold = l.num_states() + 1;
  const FormulaPtr& body = f->children[0];
  auto d = sccs(l);
  for (int ci = 0; ci < d.num_components(); ++ci) {
    if (!d.bottom[ci] || !d.reachable[ci]) continue;
    if (check_bscc(l, d.components[ci], body) != d.components[ci])
      v.bad_bsccs.push_back(d.components[ci]);
  }
  v.holds = v.bad_bsccs.empty();
  return v;
}

}  // namespace pmuller
