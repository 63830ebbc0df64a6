// formula.hpp — prompt-LTL abstract syntax, parsing, fragment
// classification, filtrations, canonical form, syntax trees, rank.
//
// Node kinds follow the pLTL grammar with negation restricted to atoms:
//   Atom | NegAtom | True | False | Or | And | Next | Until | Release |
//   PromptF (F_P) | PromptMullerF (F_P^inf) | Finally (F)
//
// Concrete syntax (UTF-8):  precedence  ! > & > |  with U/R right
// associative and weaker than |; unary prefixes FPinf, FP, F, X bind
// tightest; atoms are [A-Za-z_][A-Za-z0-9_]* excluding keywords.

#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmuller {

enum class NodeKind {
  Atom,
  NegAtom,
  True,
  False,
  Or,
  And,
  Next,
  Until,
  Release,
  PromptF,        // F_P
  PromptMullerF,  // F_P^inf
  Finally,        // F
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  NodeKind kind;
  std::string name;                 // Atom / NegAtom only
  std::vector<FormulaPtr> children; // arity fixed by kind; Or/And have >= 2
};

inline FormulaPtr make_node(NodeKind k, std::string name,
                            std::vector<FormulaPtr> children) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->name = std::move(name);
  f->children = std::move(children);
  return f;
}

inline FormulaPtr atom(std::string n) { return make_node(NodeKind::Atom, std::move(n), {}); }
inline FormulaPtr neg_atom(std::string n) { return make_node(NodeKind::NegAtom, std::move(n), {}); }
inline FormulaPtr const_true() { return make_node(NodeKind::True, "", {}); }
inline FormulaPtr const_false() { return make_node(NodeKind::False, "", {}); }
inline FormulaPtr next(FormulaPtr c) { return make_node(NodeKind::Next, "", {std::move(c)}); }
inline FormulaPtr until(FormulaPtr l, FormulaPtr r) { return make_node(NodeKind::Until, "", {std::move(l), std::move(r)}); }
inline FormulaPtr release(FormulaPtr l, FormulaPtr r) { return make_node(NodeKind::Release, "", {std::move(l), std::move(r)}); }
inline FormulaPtr prompt_f(FormulaPtr c) { return make_node(NodeKind::PromptF, "", {std::move(c)}); }
inline FormulaPtr prompt_muller_f(FormulaPtr c) { return make_node(NodeKind::PromptMullerF, "", {std::move(c)}); }
inline FormulaPtr finally_(FormulaPtr c) { return make_node(NodeKind::Finally, "", {std::move(c)}); }

inline FormulaPtr disj(std::vector<FormulaPtr> cs) {
  if (cs.size() < 2) throw std::invalid_argument("Or needs >= 2 children");
  return make_node(NodeKind::Or, "", std::move(cs));
}
inline FormulaPtr conj(std::vector<FormulaPtr> cs) {
  if (cs.size() < 2) throw std::invalid_argument("And needs >= 2 children");
  return make_node(NodeKind::And, "", std::move(cs));
}

// ---------------------------------------------------------------------------
// Parsing

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
  std::size_t position;
};

namespace detail {

struct Token {
  enum Kind { Ident, KwTrue, KwFalse, KwFPinf, KwFP, KwF, KwX, KwU, KwR,
              Amp, Pipe, Bang, LParen, RParen, End } kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t start = i;
    switch (c) {
      case '&': out.push_back({Token::Amp, "&", start}); ++i; continue;
      case '|': out.push_back({Token::Pipe, "|", start}); ++i; continue;
      case '!': out.push_back({Token::Bang, "!", start}); ++i; continue;
      case '(': out.push_back({Token::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Token::RParen, ")", start}); ++i; continue;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word = text.substr(i, j - i);
      Token::Kind k = Token::Ident;
      if (word == "true") k = Token::KwTrue;
      else if (word == "false") k = Token::KwFalse;
      else if (word == "FPinf") k = Token::KwFPinf;
      else if (word == "FP") k = Token::KwFP;
      else if (word == "F") k = Token::KwF;
      else if (word == "X") k = Token::KwX;
      else if (word == "U") k = Token::KwU;
      else if (word == "R") k = Token::KwR;
      out.push_back({k, word, start});
      i = j;
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
  }
  out.push_back({Token::End, "", text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_until();
    if (cur().kind != Token::End)
      throw ParseError("trailing input '" + cur().text + "'", cur().pos);
    return f;
  }

 private:
  const Token& cur() const { return toks_[idx_]; }
  Token take() { return toks_[idx_++]; }

  // U/R: right associative, weakest.
  FormulaPtr parse_until() {
    FormulaPtr lhs = parse_or();
    if (cur().kind == Token::KwU) {
      take();
      return until(lhs, parse_until());
    }
    if (cur().kind == Token::KwR) {
      take();
      return release(lhs, parse_until());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    std::vector<FormulaPtr> cs{parse_and()};
    while (cur().kind == Token::Pipe) {
      take();
      cs.push_back(parse_and());
    }
    return cs.size() == 1 ? cs[0] : make_node(NodeKind::Or, "", std::move(cs));
  }

  FormulaPtr parse_and() {
    std::vector<FormulaPtr> cs{parse_unary()};
    while (cur().kind == Token::Amp) {
      take();
      cs.push_back(parse_unary());
    }
    return cs.size() == 1 ? cs[0] : make_node(NodeKind::And, "", std::move(cs));
  }

  FormulaPtr parse_unary() {
    switch (cur().kind) {
      case Token::Bang: {
        Token t = take();
        FormulaPtr body = parse_unary();
        if (body->kind != NodeKind::Atom)
          throw ParseError("negation is only allowed on atoms", t.pos);
        return neg_atom(body->name);
      }
      case Token::KwFPinf: take(); return prompt_muller_f(parse_unary());
      case Token::KwFP: take(); return prompt_f(parse_unary());
      case Token::KwF: take(); return finally_(parse_unary());
      case Token::KwX: take(); return next(parse_unary());
      default: return parse_primary();
    }
  }

  FormulaPtr parse_primary() {
    Token t = take();
    switch (t.kind) {
      case Token::Ident: return atom(t.text);
      case Token::KwTrue: return const_true();
      case Token::KwFalse: return const_false();
      case Token::LParen: {
        FormulaPtr f = parse_until();
        if (cur().kind != Token::RParen)
          throw ParseError("expected ')'", cur().pos);
        take();
        return f;
      }
      default:
        throw ParseError("expected formula, got '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

}  // namespace detail

inline FormulaPtr parse_formula(const std::string& text) {
  if (text.empty()) throw ParseError("empty formula", 0);
  return detail::Parser(text).parse();
}

inline std::string render_formula(const FormulaPtr& f) {
  // Precedence levels: 0 U/R, 1 Or, 2 And, 3 unary, 4 primary.
  struct R {
    static int level(NodeKind k) {
      switch (k) {
        case NodeKind::Until:
        case NodeKind::Release: return 0;
        case NodeKind::Or: return 1;
        case NodeKind::And: return 2;
        case NodeKind::NegAtom:
        case NodeKind::Next:
        case NodeKind::PromptF:
        case NodeKind::PromptMullerF:
        case NodeKind::Finally: return 3;
        default: return 4;
      }
    }
    static std::string go(const FormulaPtr& f, int min_level) {
      int lvl = level(f->kind);
      std::string s;
      switch (f->kind) {
        case NodeKind::Atom: s = f->name; break;
        case NodeKind::NegAtom: s = "!" + f->name; break;
        case NodeKind::True: s = "true"; break;
        case NodeKind::False: s = "false"; break;
        case NodeKind::Or:
        case NodeKind::And: {
          const char* op = f->kind == NodeKind::Or ? " | " : " & ";
          for (std::size_t i = 0; i < f->children.size(); ++i) {
            if (i) s += op;
            s += go(f->children[i], lvl + 1);
          }
          break;
        }
        case NodeKind::Next: s = "X " + go(f->children[0], lvl); break;
        case NodeKind::PromptF: s = "FP " + go(f->children[0], lvl); break;
        case NodeKind::PromptMullerF: s = "FPinf " + go(f->children[0], lvl); break;
        case NodeKind::Finally: s = "F " + go(f->children[0], lvl); break;
        case NodeKind::Until:
          s = go(f->children[0], lvl + 1) + " U " + go(f->children[1], lvl);
          break;
        case NodeKind::Release:
          s = go(f->children[0], lvl + 1) + " R " + go(f->children[1], lvl);
          break;
      }
      if (lvl < min_level) s = "(" + s + ")";
      return s;
    }
  };
  return R::go(f, 0);
}

// ---------------------------------------------------------------------------
// Fragment classification

enum class FragmentClass {
  PromptMuller,          // L(F_P^inf)
  PositivePromptMuller,  // L^+(F_P^inf)
  InitializedMuller,     // F psi, psi in L^+(F_P^inf)
  EvalOnly,              // anything else: usable only by the bounded evaluator
};

inline const char* fragment_name(FragmentClass c) {
  switch (c) {
    case FragmentClass::PromptMuller: return "muller";
    case FragmentClass::PositivePromptMuller: return "positive-muller";
    case FragmentClass::InitializedMuller: return "initialized-muller";
    default: return "eval-only";
  }
}

inline bool is_muller(const FormulaPtr& f) {
  switch (f->kind) {
    case NodeKind::Atom:
    case NodeKind::NegAtom:
    case NodeKind::True:
    case NodeKind::False:
      return true;
    case NodeKind::Or:
    case NodeKind::And:
    case NodeKind::PromptMullerF:
      return std::all_of(f->children.begin(), f->children.end(), is_muller);
    default:
      return false;
  }
}

namespace detail {
inline bool atoms_guarded(const FormulaPtr& f, bool under_fpinf) {
  switch (f->kind) {
    case NodeKind::Atom:
    case NodeKind::NegAtom:
      return under_fpinf;
    case NodeKind::PromptMullerF:
      return atoms_guarded(f->children[0], true);
    default:
      for (const auto& c : f->children)
        if (!atoms_guarded(c, under_fpinf)) return false;
      return true;
  }
}
}  // namespace detail

inline bool is_positive_muller(const FormulaPtr& f) {
  return is_muller(f) && detail::atoms_guarded(f, false);
}

inline FragmentClass classify_fragment(const FormulaPtr& f) {
  if (f->kind == NodeKind::Finally && is_positive_muller(f->children[0]))
    return FragmentClass::InitializedMuller;
  if (is_positive_muller(f)) return FragmentClass::PositivePromptMuller;
  if (is_muller(f)) return FragmentClass::PromptMuller;
  return FragmentClass::EvalOnly;
}

// ---------------------------------------------------------------------------
// Filtrations: every way of resolving each conjunction to one conjunct.

inline std::vector<FormulaPtr> filtrations(const FormulaPtr& f) {
  FragmentClass cls = classify_fragment(f);
  if (cls != FragmentClass::PromptMuller &&
      cls != FragmentClass::PositivePromptMuller)
    throw std::invalid_argument("filtrations: formula is not in the Muller fragment");

  // Collect And nodes in DFS preorder; a choice function picks one child per
  // And node, including nodes inside discarded branches (their choices are
  // simply unused), so the count is the product of the arities.
  std::vector<const Formula*> ands;
  struct Walk {
    static void go(const FormulaPtr& f, std::vector<const Formula*>& out) {
      if (f->kind == NodeKind::And) out.push_back(f.get());
      for (const auto& c : f->children) go(c, out);
    }
  };
  Walk::go(f, ands);

  std::vector<std::size_t> choice(ands.size(), 0);
  auto index_of = [&](const Formula* a) {
    return std::distance(ands.begin(), std::find(ands.begin(), ands.end(), a));
  };

  struct Apply {
    const std::vector<const Formula*>& ands;
    const std::vector<std::size_t>& choice;
    FormulaPtr go(const FormulaPtr& f) const {
      if (f->kind == NodeKind::And) {
        std::size_t idx = std::distance(
            ands.begin(), std::find(ands.begin(), ands.end(), f.get()));
        return go(f->children[choice[idx]]);
      }
      if (f->children.empty()) return f;
      std::vector<FormulaPtr> cs;
      cs.reserve(f->children.size());
      for (const auto& c : f->children) cs.push_back(go(c));
      return make_node(f->kind, f->name, std::move(cs));
    }
  };
  (void)index_of;

  std::vector<FormulaPtr> out;
  for (;;) {
    out.push_back(Apply{ands, choice}.go(f));
    // odometer: rightmost And varies fastest, so the first result takes the
    // leftmost child everywhere
    std::size_t i = ands.size();
    while (i > 0) {
      --i;
      if (++choice[i] < ands[i]->children.size()) break;
      choice[i] = 0;
      if (i == 0) return out;
    }
    if (ands.empty()) return out;
  }
}

// ---------------------------------------------------------------------------
// Canonical form: theta \/ \/_i F_P^inf psi_i, conjunction-free.

struct Literal {
  std::string name;
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

struct CanonicalFormula {
  std::vector<Literal> theta;  // state-formula disjunct; empty = false
  bool theta_true = false;     // set when the disjunct contains `true`
  std::vector<CanonicalFormula> children;  // each wrapped by one F_P^inf
};

// A labeling satisfies theta when at least one literal holds (or theta_true).
inline bool theta_holds(const std::set<std::string>& labels,
                        const std::vector<Literal>& theta, bool theta_true) {
  if (theta_true) return true;
  for (const auto& lit : theta) {
    bool present = labels.count(lit.name) > 0;
    if (lit.positive == present) return true;
  }
  return false;
}

inline CanonicalFormula canonicalize(const FormulaPtr& f) {
  CanonicalFormula out;
  struct Flatten {
    static void go(const FormulaPtr& f, CanonicalFormula& acc) {
      switch (f->kind) {
        case NodeKind::Atom: acc.theta.push_back({f->name, true}); break;
        case NodeKind::NegAtom: acc.theta.push_back({f->name, false}); break;
        case NodeKind::True: acc.theta_true = true; break;
        case NodeKind::False: break;  // the empty disjunct
        case NodeKind::Or:
          for (const auto& c : f->children) go(c, acc);
          break;
        case NodeKind::PromptMullerF:
          acc.children.push_back(canonicalize(f->children[0]));
          break;
        case NodeKind::And:
          throw std::invalid_argument("canonicalize: residual And node");
        default:
          throw std::invalid_argument("canonicalize: non-Muller node");
      }
    }
  };
  Flatten::go(f, out);
  // duplicate literals are redundant; duplicate F_P^inf disjuncts are kept
  std::sort(out.theta.begin(), out.theta.end());
  out.theta.erase(std::unique(out.theta.begin(), out.theta.end()),
                  out.theta.end());
  return out;
}

// ---------------------------------------------------------------------------
// Syntax tree of a canonical formula; node 0 is the root, indices assigned
// depth-first left-to-right.

struct TreeNode {
  std::vector<Literal> theta;
  bool theta_true = false;
  int parent = -1;
  std::vector<int> children;
};

struct FormulaTree {
  std::vector<TreeNode> nodes;

  // ancestor order over node indices
  bool ancestor_of(int a, int b) const {
    for (int p = nodes[b].parent; p != -1; p = nodes[p].parent)
      if (p == a) return true;
    return false;
  }
};

inline FormulaTree build_tree(const CanonicalFormula& c) {
  FormulaTree t;
  struct Build {
    static int go(const CanonicalFormula& c, int parent, FormulaTree& t) {
      int idx = static_cast<int>(t.nodes.size());
      t.nodes.push_back({c.theta, c.theta_true, parent, {}});
      for (const auto& child : c.children) {
        int ci = go(child, idx, t);
        t.nodes[idx].children.push_back(ci);
      }
      return idx;
    }
  };
  Build::go(c, -1, t);
  return t;
}

// Nesting depth of temporalities (state formulas have rank 0).
inline int rank(const FormulaPtr& f) {
  switch (f->kind) {
    case NodeKind::Atom:
    case NodeKind::NegAtom:
    case NodeKind::True:
    case NodeKind::False:
      return 0;
    case NodeKind::Or:
    case NodeKind::And: {
      int m = 0;
      for (const auto& c : f->children) m = std::max(m, rank(c));
      return m;
    }
    case NodeKind::PromptMullerF:
      return 1 + rank(f->children[0]);
    default:
      throw std::invalid_argument("rank: formula is not in the Muller fragment");
  }
}

// Number of F_P^inf occurrences, for cross-checking tree sizes.
inline int count_prompt_muller(const FormulaPtr& f) {
  int n = f->kind == NodeKind::PromptMullerF ? 1 : 0;
  for (const auto& c : f->children) n += count_prompt_muller(c);
  return n;
}

}  // namespace pmuller
