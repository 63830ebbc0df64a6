// runs.hpp — ultimately periodic (lasso) runs, exact bounded pLTL
// evaluation, lasso enumeration, and k-pumping of avoiding-sequence
// witnesses.
//
// A lasso prefix.cycle^w is evaluated on its finite suffix quotient:
// positions 0..|prefix|+|cycle|-1 where the successor of the last position
// wraps to |prefix|.  All position quantifiers are decided over this set;
// bounded operators unroll exactly k real steps.

#pragma once

#include <optional>
#include <unordered_map>

#include "pmuller/formula.hpp"
#include "pmuller/lts.hpp"

namespace pmuller {

struct LassoRun {
  std::vector<int> prefix;  // possibly empty
  std::vector<int> cycle;   // non-empty

  int quotient_size() const {
    return static_cast<int>(prefix.size() + cycle.size());
  }
  int state_at(int pos) const {
    int p = static_cast<int>(prefix.size());
    return pos < p ? prefix[pos] : cycle[pos - p];
  }
  int step(int pos) const {
    return pos + 1 < quotient_size() ? pos + 1 : static_cast<int>(prefix.size());
  }
};

inline void validate_lasso(const Lts& l, const LassoRun& run) {
  if (run.cycle.empty()) throw ValidationError("lasso cycle is empty");
  auto check = [&](int from, int to) {
    if (from < 0 || from >= l.num_states() || to < 0 || to >= l.num_states() ||
        !l.has_edge(from, to))
      throw ValidationError("lasso uses a missing transition");
  };
  std::vector<int> word = run.prefix;
  word.insert(word.end(), run.cycle.begin(), run.cycle.end());
  for (std::size_t i = 0; i + 1 < word.size(); ++i) check(word[i], word[i + 1]);
  check(word.back(), run.cycle.front());
}

// ---------------------------------------------------------------------------
// Bounded evaluation.  Per sub-formula we compute the truth vector over all
// quotient positions; vectors are memoized by node identity, so shared
// subtrees are evaluated once.

class BoundedEvaluator {
 public:
  BoundedEvaluator(const Lts& l, const LassoRun& run, int k)
      : lts_(l), run_(run), k_(k), n_(run.quotient_size()),
        wrap_(static_cast<int>(run.prefix.size())) {
    validate_lasso(l, run);
    if (k < 0) throw std::invalid_argument("bound must be non-negative");
  }

  bool eval(const FormulaPtr& f, int pos = 0) { return vec(f)[pos] != 0; }

 private:
  using Vec = std::vector<char>;

  const Vec& vec(const FormulaPtr& f) {
    auto it = cache_.find(f.get());
    if (it != cache_.end()) return it->second;
    Vec v = compute(f);
    return cache_.emplace(f.get(), std::move(v)).first->second;
  }

  // positions reachable from pos: [pos, n) for prefix positions, the whole
  // cycle otherwise
  int reach_begin(int pos) const { return pos < wrap_ ? pos : wrap_; }

  // exists j <= k with child true at step^j(pos); stops once the unrolling
  // re-enters an already visited quotient class
  bool window_exists(const Vec& child, int pos) const {
    std::vector<char> seen(n_, 0);
    int cur = pos;
    for (int j = 0; j <= k_; ++j) {
      if (seen[cur]) break;
      seen[cur] = 1;
      if (child[cur]) return true;
      cur = run_.step(cur);
    }
    return false;
  }

  Vec compute(const FormulaPtr& f) {
    Vec v(n_, 0);
    switch (f->kind) {
      case NodeKind::Atom:
        for (int p = 0; p < n_; ++p)
          v[p] = lts_.labels[run_.state_at(p)].count(f->name) > 0;
        break;
      case NodeKind::NegAtom:
        for (int p = 0; p < n_; ++p)
          v[p] = lts_.labels[run_.state_at(p)].count(f->name) == 0;
        break;
      case NodeKind::True:
        std::fill(v.begin(), v.end(), 1);
        break;
      case NodeKind::False:
        break;
      case NodeKind::Or:
        for (const auto& c : f->children) {
          const Vec& cv = vec(c);
          for (int p = 0; p < n_; ++p) v[p] |= cv[p];
        }
        break;
      case NodeKind::And: {
        std::fill(v.begin(), v.end(), 1);
        for (const auto& c : f->children) {
          const Vec& cv = vec(c);
          for (int p = 0; p < n_; ++p) v[p] &= cv[p];
        }
        break;
      }
      case NodeKind::Next: {
        const Vec& cv = vec(f->children[0]);
        for (int p = 0; p < n_; ++p) v[p] = cv[run_.step(p)];
        break;
      }
      case NodeKind::Until: {
        // least fixed point: U = R \/ (L /\ X U)
        const Vec& lv = vec(f->children[0]);
        const Vec& rv = vec(f->children[1]);
        v = rv;
        for (int round = 0; round <= n_; ++round) {
          bool changed = false;
          for (int p = n_ - 1; p >= 0; --p) {
            char nv = rv[p] | (lv[p] & v[run_.step(p)]);
            if (nv != v[p]) { v[p] = nv; changed = true; }
          }
          if (!changed) break;
        }
        break;
      }
      case NodeKind::Release: {
        // greatest fixed point: Rel = R /\ (L \/ X Rel)
        const Vec& lv = vec(f->children[0]);
        const Vec& rv = vec(f->children[1]);
        std::fill(v.begin(), v.end(), 1);
        for (int round = 0; round <= n_; ++round) {
          bool changed = false;
          for (int p = n_ - 1; p >= 0; --p) {
            char nv = rv[p] & (lv[p] | v[run_.step(p)]);
            if (nv != v[p]) { v[p] = nv; changed = true; }
          }
          if (!changed) break;
        }
        break;
      }
      case NodeKind::Finally: {
        // positions reachable from p are [p, n) for p < wrap, [wrap, n) else
        const Vec& cv = vec(f->children[0]);
        for (int p = 0; p < n_; ++p) {
          char any = 0;
          for (int q = reach_begin(p); q < n_ && !any; ++q) any |= cv[q];
          v[p] = any;
        }
        break;
      }
      case NodeKind::PromptF: {
        const Vec& cv = vec(f->children[0]);
        for (int p = 0; p < n_; ++p) v[p] = window_exists(cv, p);
        break;
      }
      case NodeKind::PromptMullerF: {
        const Vec& cv = vec(f->children[0]);
        Vec win(n_, 0);
        for (int p = 0; p < n_; ++p) win[p] = window_exists(cv, p);
        // forall reachable positions q: window holds at q
        char cyc = 1;
        for (int q = wrap_; q < n_; ++q) cyc &= win[q];
        for (int p = n_ - 1; p >= 0; --p) {
          if (p >= wrap_) {
            v[p] = cyc;
          } else {
            char all = cyc;
            for (int q = p; q < wrap_ && all; ++q) all &= win[q];
            v[p] = all;
          }
        }
        break;
      }
    }
    return v;
  }

  const Lts& lts_;
  const LassoRun& run_;
  int k_;
  int n_;
  int wrap_;
  std::unordered_map<const Formula*, Vec> cache_;
};

inline bool eval_bounded(const Lts& l, const LassoRun& run, int k,
                         const FormulaPtr& f) {
  return BoundedEvaluator(l, run, k).eval(f);
}

// ---------------------------------------------------------------------------
// Avoiding-sequence witnesses (input of k-pumping, output of the searches
// in the universal module).

struct AvoidingSequenceWitness {
  FormulaPtr filtration;                 // the filtered formula this falsifies
  FormulaTree tree;
  std::vector<int> order;                // node indices, realisation order
  std::vector<std::vector<int>> loops;   // loops[i]: closed path, first == last
  std::vector<std::vector<int>> connectors;  // bridge before loop i (may be empty)
  std::optional<int> scc;                // component index; nullopt = whole LTS
};

// v_0 u_0^k v_1 u_1^k ... v_l with cycle u_l, where u_i is loop i without
// its repeated last state.  The final avoiding loop is always continuable,
// so the infinite tail is fixed to (u_l)^w.
inline LassoRun k_pump(const Lts& l, const AvoidingSequenceWitness& w, int k) {
  if (w.loops.empty()) throw std::invalid_argument("k_pump: witness has no loops");
  if (w.connectors.size() != w.loops.size())
    throw std::invalid_argument("k_pump: one connector per loop expected");
  if (k < 1) throw std::invalid_argument("k_pump: k must be >= 1");
  LassoRun run;
  std::size_t last = w.loops.size() - 1;
  for (std::size_t i = 0; i < w.loops.size(); ++i) {
    const auto& bridge = w.connectors[i];
    run.prefix.insert(run.prefix.end(), bridge.begin(), bridge.end());
    if (i == last) break;
    const auto& loop = w.loops[i];
    for (int rep = 0; rep < k; ++rep)
      run.prefix.insert(run.prefix.end(), loop.begin(), loop.end() - 1);
  }
  const auto& loop = w.loops[last];
  run.cycle.assign(loop.begin(), loop.end() - 1);
  try {
    validate_lasso(l, run);
  } catch (const ValidationError&) {
    throw ValidationError("k_pump: broken connector");
  }
  return run;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of initialized lassos, cycle-length major, each
// exactly once, deterministic order (DFS by state index).

inline std::vector<LassoRun> enumerate_lassos(const Lts& l, int max_prefix,
                                              int max_cycle) {
  if (max_prefix < 0 || max_cycle < 1)
    throw std::invalid_argument("enumerate_lassos: need max_prefix >= 0, max_cycle >= 1");
  std::vector<LassoRun> out;
  std::vector<int> prefix, cycle;

  // enumerate cycles of exactly `len` starting at `start`
  auto emit_cycles = [&](auto&& self, int start, int cur, int len) -> void {
    if (static_cast<int>(cycle.size()) == len) {
      if (l.has_edge(cur, start)) out.push_back({prefix, cycle});
      return;
    }
    for (int t : l.succ[cur]) {
      cycle.push_back(t);
      self(self, start, t, len);
      cycle.pop_back();
    }
  };
  auto emit_from = [&](int anchor, int len) {
    cycle.clear();
    cycle.push_back(anchor);
    emit_cycles(emit_cycles, anchor, anchor, len);
  };
  auto emit_prefixes = [&](auto&& self, int cur, int plen, int clen) -> void {
    if (static_cast<int>(prefix.size()) == plen) {
      // cycle anchor must be a successor of the last prefix state (or init)
      if (plen == 0) {
        emit_from(l.init, clen);
      } else {
        for (int t : l.succ[cur]) emit_from(t, clen);
      }
      return;
    }
    if (prefix.empty()) {
      prefix.push_back(l.init);
      self(self, l.init, plen, clen);
      prefix.pop_back();
      return;
    }
    for (int t : l.succ[cur]) {
      prefix.push_back(t);
      self(self, t, plen, clen);
      prefix.pop_back();
    }
  };

  for (int clen = 1; clen <= max_cycle; ++clen)
    for (int plen = 0; plen <= max_prefix; ++plen) {
      prefix.clear();
      emit_prefixes(emit_prefixes, -1, plen, clen);
    }
  return out;
}

}  // namespace pmuller
