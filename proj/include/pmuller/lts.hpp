// lts.hpp — labeled transition systems, validation, SCC decomposition,
// strict predecessors and the sure attractor.
//
// States are kept in document order; every set-valued result is reported
// sorted by that order.  Totality (every state has a successor) is
// enforced at validation time since runs are infinite and the fair-coin
// measure divides by |Succ(s)|.

#pragma once

#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmuller/formula.hpp"

namespace pmuller {

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

using StateSet = std::vector<int>;  // sorted, unique state indices

struct Lts {
  std::vector<std::string> states;          // ids, document order
  int init = 0;                             // index into states
  std::vector<std::vector<int>> succ;       // sorted successor indices
  std::vector<std::set<std::string>> labels;

  int num_states() const { return static_cast<int>(states.size()); }

  int index_of(const std::string& id) const {
    for (int i = 0; i < num_states(); ++i)
      if (states[i] == id) return i;
    throw ValidationError("unknown state '" + id + "'");
  }

  bool has_edge(int from, int to) const {
    const auto& s = succ[from];
    return std::binary_search(s.begin(), s.end(), to);
  }

  bool state_satisfies(int s, const std::vector<Literal>& theta,
                       bool theta_true) const {
    return theta_holds(labels[s], theta, theta_true);
  }
};

// Builds and validates an Lts from parts; transitions and labels refer to
// states by id.
inline Lts make_lts(std::vector<std::string> state_ids, const std::string& init,
                    const std::vector<std::pair<std::string, std::string>>& transitions,
                    const std::map<std::string, std::set<std::string>>& labels) {
  Lts l;
  l.states = std::move(state_ids);
  if (l.states.empty()) throw ValidationError("LTS has no states");
  std::map<std::string, int> index;
  for (int i = 0; i < l.num_states(); ++i) {
    if (!index.emplace(l.states[i], i).second)
      throw ValidationError("duplicate state id '" + l.states[i] + "'");
  }
  auto idx = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end())
      throw ValidationError("transition endpoint '" + id + "' is not a state");
    return it->second;
  };
  auto it = index.find(init);
  if (it == index.end())
    throw ValidationError("initial state '" + init + "' is not a state");
  l.init = it->second;

  l.succ.assign(l.num_states(), {});
  std::set<std::pair<int, int>> seen;
  for (const auto& [from, to] : transitions) {
    int f = idx(from), t = idx(to);
    if (!seen.insert({f, t}).second)
      throw ValidationError("duplicate transition " + from + " -> " + to);
    l.succ[f].push_back(t);
  }
  for (auto& s : l.succ) std::sort(s.begin(), s.end());

  l.labels.assign(l.num_states(), {});
  for (const auto& [id, labs] : labels) l.labels[idx(id)] = labs;

  for (int i = 0; i < l.num_states(); ++i)
    if (l.succ[i].empty())
      throw ValidationError("state '" + l.states[i] + "' has no successor");
  return l;
}

inline StateSet successors(const Lts& l, int s) {
  if (s < 0 || s >= l.num_states())
    throw std::out_of_range("successors: unknown state");
  return l.succ[s];
}

// ---------------------------------------------------------------------------
// Strongly connected components (iterative Tarjan); components are sorted
// by their minimum state index, states within a component by index.

struct SccDecomposition {
  std::vector<StateSet> components;
  std::vector<int> component_of;
  std::vector<bool> bottom;     // no transition leaves the component
  std::vector<bool> reachable;  // from the initial state
  std::vector<bool> trivial;    // singleton without a self-loop

  int num_components() const { return static_cast<int>(components.size()); }
};

inline SccDecomposition sccs(const Lts& l) {
  int n = l.num_states();
  std::vector<int> low(n, -1), disc(n, -1), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<StateSet> comps;
  int timer = 0;

  struct Frame { int v; std::size_t child; };
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    disc[root] = low[root] = timer++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, child] = call.back();
      if (child < l.succ[v].size()) {
        int w = l.succ[v][child++];
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        if (low[v] == disc[v]) {
          StateSet c;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            c.push_back(w);
          } while (w != v);
          std::sort(c.begin(), c.end());
          comps.push_back(std::move(c));
        }
        int done = v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[done]);
      }
    }
  }

  std::sort(comps.begin(), comps.end(),
            [](const StateSet& a, const StateSet& b) { return a[0] < b[0]; });

  SccDecomposition d;
  d.components = std::move(comps);
  d.component_of.assign(n, -1);
  for (int ci = 0; ci < d.num_components(); ++ci)
    for (int s : d.components[ci]) d.component_of[s] = ci;

  d.bottom.assign(d.num_components(), true);
  for (int s = 0; s < n; ++s)
    for (int t : l.succ[s])
      if (d.component_of[t] != d.component_of[s])
        d.bottom[d.component_of[s]] = false;

  d.trivial.assign(d.num_components(), false);
  for (int ci = 0; ci < d.num_components(); ++ci) {
    const auto& c = d.components[ci];
    d.trivial[ci] = c.size() == 1 && !l.has_edge(c[0], c[0]);
  }

  d.reachable.assign(d.num_components(), false);
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(l.init);
  seen[l.init] = true;
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    d.reachable[d.component_of[s]] = true;
    for (int t : l.succ[s])
      if (!seen[t]) {
        seen[t] = true;
        q.push(t);
      }
  }
  return d;
}

// ---------------------------------------------------------------------------
// SPred / SPred*, relative to an explicit sub-domain so that per-BSCC calls
// need not copy the LTS.

inline StateSet spred(const Lts& l, const StateSet& domain, const StateSet& u) {
  std::vector<bool> in_dom(l.num_states(), false), in_u(l.num_states(), false);
  for (int s : domain) in_dom[s] = true;
  for (int s : u) in_u[s] = true;
  StateSet out;
  for (int s : domain) {
    bool ok = true;
    for (int t : l.succ[s])
      if (in_dom[t] && !in_u[t]) { ok = false; break; }
    if (ok) out.push_back(s);
  }
  return out;
}

// Least fixed point of V -> V u SPred(V), via a counting worklist (O(V+E)).
inline StateSet spred_star(const Lts& l, const StateSet& domain,
                           const StateSet& u) {
  int n = l.num_states();
  std::vector<bool> in_dom(n, false), in_fix(n, false);
  for (int s : domain) in_dom[s] = true;

  std::vector<std::vector<int>> pred(n);
  std::vector<int> pending(n, 0);  // domain successors not yet in the fixpoint
  for (int s : domain)
    for (int t : l.succ[s])
      if (in_dom[t]) {
        pred[t].push_back(s);
        ++pending[s];
      }

  std::queue<int> q;
  auto add = [&](int s) {
    if (!in_fix[s]) {
      in_fix[s] = true;
      q.push(s);
    }
  };
  for (int s : u) add(s);
  for (int s : domain)
    if (pending[s] == 0) add(s);  // all domain successors (vacuously) inside

  while (!q.empty()) {
    int s = q.front();
    q.pop();
    for (int p : pred[s])
      if (--pending[p] == 0) add(p);
  }

  StateSet out;
  for (int s : domain)
    if (in_fix[s]) out.push_back(s);
  return out;
}

// ---------------------------------------------------------------------------
// Small graph helpers shared by the checkers.

// States reachable (reflexively) from `starts`, optionally restricted to a
// domain mask.
inline std::vector<bool> reachable_from(const Lts& l, const StateSet& starts,
                                        const std::vector<bool>* domain = nullptr) {
  std::vector<bool> seen(l.num_states(), false);
  std::queue<int> q;
  for (int s : starts) {
    if (domain && !(*domain)[s]) continue;
    if (!seen[s]) {
      seen[s] = true;
      q.push(s);
    }
  }
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    for (int t : l.succ[s]) {
      if (domain && !(*domain)[t]) continue;
      if (!seen[t]) {
        seen[t] = true;
        q.push(t);
      }
    }
  }
  return seen;
}

// States lying on a cycle of the subgraph induced by `allowed`.
inline std::vector<bool> cycle_states(const Lts& l,
                                      const std::vector<bool>& allowed) {
  // SCCs of the induced subgraph; a state is on a cycle iff its component
  // has >= 2 states or a self-loop.
  int n = l.num_states();
  std::vector<int> order;
  std::vector<bool> seen(n, false);
  // iterative post-order
  for (int root = 0; root < n; ++root) {
    if (!allowed[root] || seen[root]) continue;
    std::vector<std::pair<int, std::size_t>> st{{root, 0}};
    seen[root] = true;
    while (!st.empty()) {
      auto& [v, i] = st.back();
      if (i < l.succ[v].size()) {
        int w = l.succ[v][i++];
        if (allowed[w] && !seen[w]) {
          seen[w] = true;
          st.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        st.pop_back();
      }
    }
  }
  std::vector<std::vector<int>> rpred(n);
  for (int s = 0; s < n; ++s)
    if (allowed[s])
      for (int t : l.succ[s])
        if (allowed[t]) rpred[t].push_back(s);
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != -1) continue;
    int c = nc++;
    std::vector<int> stack{*it};
    comp[*it] = c;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : rpred[v])
        if (comp[w] == -1) {
          comp[w] = c;
          stack.push_back(w);
        }
    }
  }
  std::vector<int> size(nc, 0);
  for (int s = 0; s < n; ++s)
    if (comp[s] != -1) ++size[comp[s]];
  std::vector<bool> out(n, false);
  for (int s = 0; s < n; ++s) {
    if (comp[s] == -1) continue;
    if (size[comp[s]] >= 2 || (allowed[s] && l.has_edge(s, s))) out[s] = true;
  }
  return out;
}

// Shortest path from -> to (BFS by state order), optionally within a domain
// mask.  Returns the full path including both endpoints, or empty if
// unreachable.  from == to yields the single-state path.
inline std::vector<int> shortest_path(const Lts& l, int from, int to,
                                      const std::vector<bool>* domain = nullptr) {
  if (domain && (!(*domain)[from] || !(*domain)[to])) return {};
  if (from == to) return {from};
  std::vector<int> parent(l.num_states(), -1);
  std::queue<int> q;
  q.push(from);
  parent[from] = from;
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    for (int t : l.succ[s]) {
      if (domain && !(*domain)[t]) continue;
      if (parent[t] == -1) {
        parent[t] = s;
        if (t == to) {
          std::vector<int> path{to};
          for (int v = to; v != from; v = parent[v]) path.push_back(parent[v]);
          std::reverse(path.begin(), path.end());
          return path;
        }
        q.push(t);
      }
    }
  }
  return {};
}

// Shortest closed path s -> ... -> s with >= 1 edge inside a domain mask.
// Returns the closed path (first == last) or empty if none.
inline std::vector<int> shortest_loop(const Lts& l, int s,
                                      const std::vector<bool>& domain) {
  std::vector<int> best;
  for (int t : l.succ[s]) {
    if (!domain[t]) continue;
    std::vector<int> back = shortest_path(l, t, s, &domain);
    if (back.empty()) continue;
    std::vector<int> loop{s};
    loop.insert(loop.end(), back.begin(), back.end());
    if (best.empty() || loop.size() < best.size()) best = loop;
  }
  return best;
}

}  // namespace pmuller
