// Shared fixtures and random-instance helpers for the test suites.

#pragma once

#include <random>

#include "pmuller/fair.hpp"
#include "pmuller/io.hpp"
#include "pmuller/prob.hpp"
#include "pmuller/random_gen.hpp"
#include "pmuller/runs.hpp"
#include "pmuller/universal.hpp"

namespace fixtures {

using namespace pmuller;

// Two fully connected states a{A}, b{B}.
inline Lts fig2() {
  return make_lts({"a", "b"}, "a",
                  {{"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "b"}},
                  {{"a", {"A"}}, {"b", {"B"}}});
}

// a{A} -> a, a -> b, b{B} -> b (two trivial-ish SCCs, one bottom).
inline Lts fig_tltl() {
  return make_lts({"a", "b"}, "a", {{"a", "a"}, {"a", "b"}, {"b", "b"}},
                  {{"a", {"A"}}, {"b", {"B"}}});
}

// Idle -> Query <-> Grant with self-loops.
inline Lts fig1() {
  return make_lts({"a", "b", "c"}, "a",
                  {{"a", "a"}, {"a", "b"}, {"b", "b"}, {"b", "c"},
                   {"c", "c"}, {"c", "b"}},
                  {{"a", {"Idle"}}, {"b", {"Query"}}, {"c", {"Grant"}}});
}

// The six-state system of the filtration example; states are labeled with
// the propositions that are TRUE there.
inline Lts lpsi() {
  return make_lts(
      {"s1", "v1", "v2", "s2", "s3", "s4"}, "s1",
      {{"s1", "s1"}, {"s1", "v1"}, {"s1", "v2"}, {"v1", "s2"}, {"s2", "v1"},
       {"v2", "s3"}, {"s3", "v2"}, {"s3", "s2"}, {"s2", "s4"}, {"s4", "s4"}},
      {{"s1", {"b", "c", "d"}}, {"v1", {"a", "b", "d"}},
       {"v2", {"a", "c", "d"}}, {"s2", {"a", "b", "d"}},
       {"s3", {"a", "c", "d"}}, {"s4", {"a", "b", "c"}}});
}

inline FormulaPtr lpsi_formula() {
  return parse_formula("FPinf(a | FPinf((b & c) | FPinf d) | (FPinf c & FPinf d))");
}

// a(no label) -> b{p}, self-loops on both: separates fair from universal.
inline Lts chain() {
  return make_lts({"a", "b"}, "a", {{"a", "a"}, {"a", "b"}, {"b", "b"}},
                  {{"b", {"p"}}});
}

// s branches to two absorbing states, only t1 labeled p.
inline Lts diamond() {
  return make_lts({"s", "t1", "t2"}, "s",
                  {{"s", "t1"}, {"s", "t2"}, {"t1", "t1"}, {"t2", "t2"}},
                  {{"t1", {"p"}}});
}

// ---------------------------------------------------------------------------
// Random generators (all deterministic from the provided RNG).

inline int rnd(std::mt19937_64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline FormulaPtr random_state_formula(std::mt19937_64& rng, int atoms) {
  switch (rnd(rng, 0, 5)) {
    case 0: return const_false();
    case 1: return neg_atom("p" + std::to_string(rnd(rng, 0, atoms - 1)));
    case 2: {
      auto a = atom("p" + std::to_string(rnd(rng, 0, atoms - 1)));
      auto b = atom("p" + std::to_string(rnd(rng, 0, atoms - 1)));
      return disj({a, b});
    }
    default: return atom("p" + std::to_string(rnd(rng, 0, atoms - 1)));
  }
}

// Muller-fragment formula with bounded FPinf and And counts.
inline FormulaPtr random_muller_formula(std::mt19937_64& rng, int atoms,
                                        int max_fpinf = 3, int max_and = 2) {
  int fpinf_budget = rnd(rng, 0, max_fpinf);
  int and_budget = rnd(rng, 0, max_and);
  std::function<FormulaPtr(int)> gen = [&](int depth) -> FormulaPtr {
    int pick = rnd(rng, 0, 9);
    if (fpinf_budget > 0 && pick < 4) {
      --fpinf_budget;
      return prompt_muller_f(gen(depth + 1));
    }
    if (and_budget > 0 && pick < 6 && depth < 4) {
      --and_budget;
      return conj({gen(depth + 1), gen(depth + 1)});
    }
    if (pick < 8 && depth < 4) return disj({gen(depth + 1), gen(depth + 1)});
    return random_state_formula(rng, atoms);
  };
  return gen(0);
}

// L^+ body: disjunction of FPinf-guarded Muller formulas (atoms guarded).
inline FormulaPtr random_positive_body(std::mt19937_64& rng, int atoms) {
  int n = rnd(rng, 1, 3);
  std::vector<FormulaPtr> cs;
  for (int i = 0; i < n; ++i)
    cs.push_back(prompt_muller_f(random_muller_formula(rng, atoms, 1, 1)));
  return cs.size() == 1 ? cs[0] : disj(std::move(cs));
}

// Random total LTS over atoms p0..p{atoms-1}.
inline Lts random_lts(std::mt19937_64& rng, int max_states, int atoms) {
  int n = rnd(rng, 1, max_states);
  return random_instance(n, 0.4, atoms, rng());
}

// Random strongly connected LTS: ring + extra edges.
inline Lts random_scc_lts(std::mt19937_64& rng, int n, int atoms,
                          double density = 0.2) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("s" + std::to_string(i));
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.insert({i, (i + 1) % n});
  int extra = static_cast<int>(density * n * n);
  for (int e = 0; e < extra; ++e)
    edges.insert({rnd(rng, 0, n - 1), rnd(rng, 0, n - 1)});
  std::vector<std::pair<std::string, std::string>> transitions;
  for (auto [i, j] : edges) transitions.emplace_back(ids[i], ids[j]);
  std::map<std::string, std::set<std::string>> labels;
  for (int i = 0; i < n; ++i) {
    std::set<std::string> labs;
    for (int a = 0; a < atoms; ++a)
      if (rng() & 1) labs.insert("p" + std::to_string(a));
    labels[ids[i]] = std::move(labs);
  }
  return make_lts(std::move(ids), "s0", transitions, labels);
}

// Random initialized lasso in l with small prefix/cycle.
inline LassoRun random_lasso(std::mt19937_64& rng, const Lts& l) {
  LassoRun run;
  int cur = l.init;
  int plen = rnd(rng, 0, 3);
  for (int i = 0; i < plen; ++i) {
    run.prefix.push_back(cur);
    const auto& s = l.succ[cur];
    cur = s[rnd(rng, 0, static_cast<int>(s.size()) - 1)];
  }
  // random walk until a state repeats, then close along the walk
  std::vector<int> walk{cur};
  for (;;) {
    const auto& s = l.succ[walk.back()];
    int nxt = s[rnd(rng, 0, static_cast<int>(s.size()) - 1)];
    auto it = std::find(walk.begin(), walk.end(), nxt);
    if (it != walk.end()) {
      run.prefix.insert(run.prefix.end(), walk.begin(), it);
      run.cycle.assign(it, walk.end());
      break;
    }
    walk.push_back(nxt);
  }
  validate_lasso(l, run);
  return run;
}

}  // namespace fixtures
