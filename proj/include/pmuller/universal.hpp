// universal.hpp — universal model checking for the prompt Muller fragment
// and its initialized extension, via avoiding-sequence search.
//
// A formula in the Muller fragment fails universally iff some filtration
// theta \/ \/_i FPinf psi_i admits (a) an initial state falsifying theta and
// (b) a realisable avoiding sequence for the tree of the FPinf part.  For
// initialized formulas F psi the search runs inside each reachable
// non-trivial SCC instead of from the initial state.

#pragma once

#include <functional>

#include "pmuller/formula.hpp"
#include "pmuller/lts.hpp"
#include "pmuller/runs.hpp"

namespace pmuller {

class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SearchScope {
  std::vector<bool> domain;      // state mask
  StateSet entry_set;            // allowed first states of the realisation
  bool anchored_entry = false;   // realisation must start exactly at entry_set[0]
  std::optional<int> scc;        // component index, nullopt = whole LTS
};

inline SearchScope whole_scope(const Lts& l) {
  SearchScope s;
  s.domain.assign(l.num_states(), true);
  s.entry_set = {l.init};
  s.anchored_entry = true;
  return s;
}

inline SearchScope scc_scope(const Lts& l, const SccDecomposition& d, int comp) {
  SearchScope s;
  s.domain.assign(l.num_states(), false);
  for (int st : d.components[comp]) s.domain[st] = true;
  s.entry_set = d.components[comp];
  s.scc = comp;
  return s;
}

namespace detail {

// A state falsifies a node label when no literal of the label holds there.
inline bool falsifies_label(const Lts& l, int state, const TreeNode& n) {
  if (n.theta_true) return false;
  return !theta_holds(l.labels[state], n.theta, false);
}

// Enumerate linear extensions of the tree's ancestor order in lexicographic
// order of node-index sequences; stop once `visit` returns true.
inline bool for_each_linear_extension(
    const FormulaTree& tree,
    const std::function<bool(const std::vector<int>&)>& visit) {
  int n = static_cast<int>(tree.nodes.size());
  std::vector<int> pending(n, 0);  // unplaced ancestors
  for (int i = 0; i < n; ++i)
    for (int c : tree.nodes[i].children) pending[c]++;
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  auto rec = [&](auto&& self) -> bool {
    if (static_cast<int>(order.size()) == n) return visit(order);
    for (int i = 0; i < n; ++i) {
      if (placed[i] || pending[i] > 0) continue;
      placed[i] = 1;
      for (int c : tree.nodes[i].children) pending[c]--;
      order.push_back(i);
      if (self(self)) return true;
      order.pop_back();
      for (int c : tree.nodes[i].children) pending[c]++;
      placed[i] = 0;
    }
    return false;
  };
  return rec(rec);
}

// Greedy forward pass for one linear extension.  Maintains the reachable
// frontier; at each step keeps exactly the states lying on a cycle of the
// label-falsifying restriction.  Complete per extension: the maximal cycle
// set dominates any concrete choice of loops.
struct GreedyStep {
  StateSet cycle_states;          // candidates for this node's loop anchor
  std::vector<bool> avoid_mask;   // label-falsifying states the loop may use
};

inline std::optional<std::vector<GreedyStep>> greedy_forward(
    const Lts& l, const FormulaTree& tree, const SearchScope& scope,
    const std::vector<int>& order) {
  std::vector<bool> frontier =
      reachable_from(l, scope.entry_set, &scope.domain);
  std::vector<GreedyStep> steps;
  for (int node : order) {
    GreedyStep st;
    st.avoid_mask.assign(l.num_states(), false);
    for (int s = 0; s < l.num_states(); ++s)
      if (frontier[s] && falsifies_label(l, s, tree.nodes[node]))
        st.avoid_mask[s] = true;
    std::vector<bool> on_cycle = cycle_states(l, st.avoid_mask);
    for (int s = 0; s < l.num_states(); ++s)
      if (on_cycle[s]) st.cycle_states.push_back(s);
    if (st.cycle_states.empty()) return std::nullopt;
    frontier = reachable_from(l, st.cycle_states, &scope.domain);
    steps.push_back(std::move(st));
  }
  return steps;
}

// Backward anchor selection + concrete loop/connector construction.
inline AvoidingSequenceWitness materialize(
    const Lts& l, const FormulaTree& tree, const SearchScope& scope,
    const std::vector<int>& order, const std::vector<GreedyStep>& steps) {
  int m = static_cast<int>(order.size());
  std::vector<int> anchors(m, -1);
  anchors[m - 1] = steps[m - 1].cycle_states.front();
  for (int i = m - 2; i >= 0; --i) {
    for (int cand : steps[i].cycle_states) {
      auto reach = reachable_from(l, {cand}, &scope.domain);
      if (reach[anchors[i + 1]]) { anchors[i] = cand; break; }
    }
    if (anchors[i] < 0)
      throw std::logic_error("avoiding-sequence reconstruction failed");
  }

  AvoidingSequenceWitness w;
  w.tree = tree;
  w.order = order;
  w.scc = scope.scc;
  for (int i = 0; i < m; ++i) {
    auto loop = shortest_loop(l, anchors[i], steps[i].avoid_mask);
    if (loop.empty())
      throw std::logic_error("anchor not on an avoiding loop");
    w.loops.push_back(std::move(loop));
    std::vector<int> bridge;
    if (i == 0) {
      if (scope.anchored_entry && scope.entry_set[0] != anchors[0]) {
        auto p = shortest_path(l, scope.entry_set[0], anchors[0], &scope.domain);
        bridge.assign(p.begin(), p.end() - 1);
      }
    } else if (anchors[i] != anchors[i - 1]) {
      auto p = shortest_path(l, anchors[i - 1], anchors[i], &scope.domain);
      bridge.assign(p.begin(), p.end() - 1);
    }
    w.connectors.push_back(std::move(bridge));
  }
  return w;
}

}  // namespace detail

inline std::optional<AvoidingSequenceWitness> find_avoiding_sequence(
    const Lts& l, const FormulaTree& tree, const SearchScope& scope) {
  std::optional<AvoidingSequenceWitness> result;
  detail::for_each_linear_extension(tree, [&](const std::vector<int>& order) {
    auto steps = detail::greedy_forward(l, tree, scope, order);
    if (!steps) return false;
    result = detail::materialize(l, tree, scope, order, *steps);
    return true;
  });
  return result;
}

// Independent oracle: all extensions x all simple loops per node, with
// explicit breadth-first realisability checking.  Exponential; guarded.
inline std::optional<AvoidingSequenceWitness> bruteforce_find_avoiding_sequence(
    const Lts& l, const FormulaTree& tree, const SearchScope& scope,
    int size_guard = 8) {
  if (l.num_states() > size_guard)
    throw std::invalid_argument("bruteforce search: state count exceeds guard");

  // all simple loops inside the scope (each cycle enumerated from its
  // minimum state, closing state repeated)
  std::vector<std::vector<int>> all_loops;
  {
    std::vector<int> path;
    std::vector<char> on_path(l.num_states(), 0);
    auto dfs = [&](auto&& self, int start, int cur) -> void {
      for (int t : l.succ[cur]) {
        if (!scope.domain[t]) continue;
        if (t == start) {
          auto loop = path;
          loop.push_back(start);
          all_loops.push_back(std::move(loop));
        } else if (!on_path[t] && t > start) {
          on_path[t] = 1;
          path.push_back(t);
          self(self, start, t);
          path.pop_back();
          on_path[t] = 0;
        }
      }
    };
    for (int s = 0; s < l.num_states(); ++s) {
      if (!scope.domain[s]) continue;
      path = {s};
      on_path.assign(l.num_states(), 0);
      on_path[s] = 1;
      dfs(dfs, s, s);
    }
  }

  std::optional<AvoidingSequenceWitness> result;
  detail::for_each_linear_extension(tree, [&](const std::vector<int>& order) {
    int m = static_cast<int>(order.size());
    std::vector<std::vector<int>> cands(m);  // loop indices per step
    for (int i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < all_loops.size(); ++j) {
        bool ok = true;
        for (int s : all_loops[j])
          if (!detail::falsifies_label(l, s, tree.nodes[order[i]])) {
            ok = false;
            break;
          }
        if (ok) cands[i].push_back(static_cast<int>(j));
      }
      if (cands[i].empty()) return false;
    }
    std::vector<int> choice(m, 0);
    auto pick = [&](auto&& self, int i, const std::vector<bool>& frontier) -> bool {
      if (i == m) return true;
      for (int j : cands[i]) {
        const auto& loop = all_loops[j];
        if (!frontier[loop[0]]) continue;
        choice[i] = j;
        if (self(self, i + 1, reachable_from(l, {loop[0]}, &scope.domain)))
          return true;
      }
      return false;
    };
    auto start = reachable_from(l, scope.entry_set, &scope.domain);
    if (!pick(pick, 0, start)) return false;

    AvoidingSequenceWitness w;
    w.tree = tree;
    w.order = order;
    w.scc = scope.scc;
    int prev = -1;
    for (int i = 0; i < m; ++i) {
      const auto& loop = all_loops[choice[i]];
      std::vector<int> bridge;
      int from = (i == 0) ? (scope.anchored_entry ? scope.entry_set[0] : -1) : prev;
      if (from >= 0 && from != loop[0]) {
        auto p = shortest_path(l, from, loop[0], &scope.domain);
        bridge.assign(p.begin(), p.end() - 1);
      }
      w.loops.push_back(loop);
      w.connectors.push_back(std::move(bridge));
      prev = loop[0];
    }
    result = std::move(w);
    return true;
  });
  return result;
}

// ---------------------------------------------------------------------------
// Verdicts and the mode dispatchers.

enum class CheckMode { Universal, Fair, Weak };

inline std::string to_string(CheckMode m) {
  switch (m) {
    case CheckMode::Universal: return "universal";
    case CheckMode::Fair: return "fair";
    case CheckMode::Weak: return "weak";
  }
  return "?";
}

struct Counterexample {
  LassoRun lasso;
  int k = 0;  // the bound it falsifies
};

struct Verdict {
  bool holds = true;
  CheckMode mode = CheckMode::Universal;
  FragmentClass fragment = FragmentClass::EvalOnly;
  int bound_threshold = 0;  // |S| + 1
  std::optional<AvoidingSequenceWitness> witness;
  std::optional<Counterexample> counterexample;
  std::vector<StateSet> bad_bsccs;  // fair initialized mode only
};

namespace detail {

// Tree used by the search: root label cleared to false (theta is checked
// only at the entry state), one child subtree per FPinf disjunct.
inline FormulaTree search_tree(const CanonicalFormula& c) {
  CanonicalFormula stripped;
  stripped.children = c.children;
  return build_tree(stripped);
}

// Assemble the sample counterexample for a witness: a straight k-pumped
// lasso in whole-LTS scope, a pumped cycle through the SCC (reached from the
// initial state) in within-SCC scope.
inline Counterexample assemble_counterexample(const Lts& l,
                                              const AvoidingSequenceWitness& w,
                                              int k) {
  Counterexample ce;
  ce.k = k;
  if (!w.scc) {
    ce.lasso = k_pump(l, w, k);
    return ce;
  }
  // within-SCC: pump every loop (including the last) and close the cycle
  std::vector<int> word;
  for (std::size_t i = 0; i < w.loops.size(); ++i) {
    word.insert(word.end(), w.connectors[i].begin(), w.connectors[i].end());
    const auto& loop = w.loops[i];
    for (int rep = 0; rep < k; ++rep)
      word.insert(word.end(), loop.begin(), loop.end() - 1);
  }
  int last_anchor = w.loops.back()[0];
  int target = word.front();
  // the closing path may use the whole component
  std::vector<bool> domain(l.num_states(), false);
  auto d = sccs(l);
  for (int s : d.components[*w.scc]) domain[s] = true;
  // word ends just before the last anchor, whose loop edge re-enters it
  auto back = shortest_path(l, last_anchor, target, &domain);
  ce.lasso.cycle = word;
  ce.lasso.cycle.insert(ce.lasso.cycle.end(), back.begin(), back.end());
  ce.lasso.cycle.pop_back();  // the closing target is the cycle's first state
  auto in = shortest_path(l, l.init, target);
  ce.lasso.prefix.assign(in.begin(), in.end() - 1);
  validate_lasso(l, ce.lasso);
  return ce;
}

}  // namespace detail

inline Verdict universal_check(const Lts& l, const FormulaPtr& f,
                               CheckMode mode = CheckMode::Universal) {
  Verdict v;
  v.mode = mode;
  v.fragment = classify_fragment(f);
  v.bound_threshold = l.num_states() + 1;

  if (v.fragment == FragmentClass::EvalOnly)
    throw UnsupportedError("formula is outside the prompt Muller fragments");

  auto finish_fail = [&](AvoidingSequenceWitness w, const FormulaPtr& checked) {
    v.holds = false;
    auto ce = detail::assemble_counterexample(l, w, v.bound_threshold);
    if (eval_bounded(l, ce.lasso, ce.k, checked))
      throw std::logic_error("internal-witness-invalid");
    v.witness = std::move(w);
    v.counterexample = std::move(ce);
  };

  if (v.fragment == FragmentClass::InitializedMuller) {
    const FormulaPtr& body = f->children[0];
    auto d = sccs(l);
    for (int ci = 0; ci < d.num_components(); ++ci) {
      if (!d.reachable[ci] || d.trivial[ci]) continue;
      for (const auto& g : filtrations(body)) {
        CanonicalFormula c = canonicalize(g);
        if (c.theta_true) continue;
        SearchScope scope = scc_scope(l, d, ci);
        if (!c.theta.empty()) {
          // the counterexample tail may only visit theta-falsifying states
          StateSet entries;
          for (int s : d.components[ci])
            if (!l.state_satisfies(s, c.theta, false)) entries.push_back(s);
            else scope.domain[s] = false;
          scope.entry_set = std::move(entries);
          if (scope.entry_set.empty()) continue;
        }
        auto w = find_avoiding_sequence(l, detail::search_tree(c), scope);
        if (w) {
          w->filtration = g;
          finish_fail(std::move(*w), f);
          return v;
        }
      }
    }
    return v;
  }

  // Muller fragment, whole-LTS scope
  for (const auto& g : filtrations(f)) {
    CanonicalFormula c = canonicalize(g);
    if (c.theta_true) continue;
    if (l.state_satisfies(l.init, c.theta, false)) continue;
    auto w = find_avoiding_sequence(l, detail::search_tree(c), whole_scope(l));
    if (w) {
      w->filtration = g;
      finish_fail(std::move(*w), f);
      return v;
    }
  }
  return v;
}

inline Verdict weak_check(const Lts& l, const FormulaPtr& f) {
  FragmentClass fc = classify_fragment(f);
  bool strongly_connected = sccs(l).num_components() == 1;
  if (!strongly_connected && fc != FragmentClass::InitializedMuller)
    throw UnsupportedError(
        "weak checking is only supported for strongly connected systems or "
        "initialized formulas");
  return universal_check(l, f, CheckMode::Weak);
}

}  // namespace pmuller
