#pragma once

// Reference implementations the tests trust instead of the engine's fast
// paths: a fully structural renderer (never looks at handle identity), a
// naive map-based unifier, a variant check, random term generators, and a
// random definite-program generator. Deliberately slow and simple.

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "atoms.hpp"
#include "bench.hpp"
#include "engine.hpp"
#include "store.hpp"
#include "term.hpp"
#include "unify.hpp"

namespace oracle {

using ilog::AtomTable;
using ilog::Bindings;
using ilog::Engine;
using ilog::SplitMix64;
using ilog::TermRef;
using ilog::TermStore;

// Structural render; equal strings <=> structurally equal terms. List tails
// are walked iteratively so million-element lists do not recurse.
inline void render_into(TermRef t, const Bindings& s, const TermStore& store,
                        const AtomTable& atoms, std::string& out) {
  size_t open = 0;
  t = s.deref(t);
  while (t.is_list()) {
    out += "[";
    render_into(store.head(t), s, store, atoms, out);
    out += "|";
    open++;
    t = s.deref(store.tail(t));
  }
  if (t.is_var()) {
    out += "_" + std::to_string(t.var_id());
  } else if (t.is_int()) {
    out += std::to_string(t.int_value());
  } else if (t.is_nil()) {
    out += "[]";
  } else if (t.is_atom()) {
    out += "'" + atoms.name(t.atom_id()) + "'";
  } else {
    ilog::Functor f = store.functor_of(t);
    out += "'" + atoms.name(f.name) + "'/" + std::to_string(f.arity) + "(";
    for (uint32_t i = 0; i < f.arity; i++) {
      if (i) out += ",";
      render_into(store.arg(t, i), s, store, atoms, out);
    }
    out += ")";
  }
  out.append(open, ']');
}

inline std::string render(TermRef t, const Bindings& s, const TermStore& store,
                          const AtomTable& atoms) {
  std::string out;
  render_into(t, s, store, atoms, out);
  return out;
}

inline bool structurally_equal(TermRef a, TermRef b, const Bindings& s,
                               const TermStore& store, const AtomTable& atoms) {
  return render(a, s, store, atoms) == render(b, s, store, atoms);
}

// Number of distinct record subterms (structures and list cells) of t,
// counted by rendered shape. Intended for small terms.
inline void collect_records(TermRef t, const Bindings& s, const TermStore& store,
                            const AtomTable& atoms, std::set<std::string>& seen) {
  t = s.deref(t);
  if (t.is_list()) {
    seen.insert(render(t, s, store, atoms));
    collect_records(store.head(t), s, store, atoms, seen);
    collect_records(store.tail(t), s, store, atoms, seen);
  } else if (t.is_struct()) {
    seen.insert(render(t, s, store, atoms));
    ilog::Functor f = store.functor_of(t);
    for (uint32_t i = 0; i < f.arity; i++)
      collect_records(store.arg(t, i), s, store, atoms, seen);
  }
}

inline size_t distinct_records(TermRef t, const Bindings& s, const TermStore& store,
                               const AtomTable& atoms) {
  std::set<std::string> seen;
  collect_records(t, s, store, atoms, seen);
  return seen.size();
}

// Naive unifier over its own substitution map. Reads the engine bindings
// only through deref (callers pass terms whose engine variables are unbound).
class RefUnifier {
 public:
  RefUnifier(const Bindings& s, const TermStore& store) : s_(s), store_(store) {}

  bool unify(TermRef a, TermRef b) {
    a = walk(a);
    b = walk(b);
    // Identical references are equal outright. Beyond speed this keeps the
    // oracle terminating on the cyclic bindings an occurs-check-free unifier
    // can produce (X against f(X) and the like).
    if (a == b) return true;
    if (a.is_var()) {
      sub_[a.var_id()] = b;
      return true;
    }
    if (b.is_var()) {
      sub_[b.var_id()] = a;
      return true;
    }
    if (a.is_int() || a.is_atom() || a.is_nil()) return a.bits() == b.bits();
    if (b.is_int() || b.is_atom() || b.is_nil()) return false;
    if (a.is_list() != b.is_list()) return false;
    if (a.is_list()) return unify(store_.head(a), store_.head(b)) &&
                            unify(store_.tail(a), store_.tail(b));
    ilog::Functor fa = store_.functor_of(a);
    ilog::Functor fb = store_.functor_of(b);
    if (fa.name != fb.name || fa.arity != fb.arity) return false;
    for (uint32_t i = 0; i < fa.arity; i++)
      if (!unify(store_.arg(a, i), store_.arg(b, i))) return false;
    return true;
  }

 private:
  TermRef walk(TermRef t) {
    t = s_.deref(t);
    while (t.is_var()) {
      auto it = sub_.find(t.var_id());
      if (it == sub_.end()) return t;
      t = s_.deref(it->second);
    }
    return t;
  }

  const Bindings& s_;
  const TermStore& store_;
  std::map<uint32_t, TermRef> sub_;
};

// True when no record reachable from t sits on its own argument path, i.e.
// the term is a finite tree. Unification without an occurs check can create
// cyclic terms, which no renderer or structural walk may be pointed at.
inline bool acyclic_rec(TermRef t, const Bindings& s, const TermStore& store,
                        std::set<uint64_t>& path) {
  t = s.deref(t);
  if (!t.is_record()) return true;
  if (t.interned()) return true;  // interned records are ground and finite
  if (!path.insert(t.bits()).second) return false;
  bool ok;
  if (t.is_list()) {
    ok = acyclic_rec(store.head(t), s, store, path) &&
         acyclic_rec(store.tail(t), s, store, path);
  } else {
    ok = true;
    ilog::Functor f = store.functor_of(t);
    for (uint32_t i = 0; ok && i < f.arity; i++)
      ok = acyclic_rec(store.arg(t, i), s, store, path);
  }
  path.erase(t.bits());
  return ok;
}

inline bool is_acyclic(TermRef t, const Bindings& s, const TermStore& store) {
  std::set<uint64_t> path;
  return acyclic_rec(t, s, store, path);
}

// Variant check: equal up to a bijective renaming of unbound variables.
inline bool variant_rec(TermRef a, TermRef b, const Bindings& s, const TermStore& store,
                        std::map<uint32_t, uint32_t>& fwd,
                        std::map<uint32_t, uint32_t>& bwd) {
  a = s.deref(a);
  b = s.deref(b);
  if (a.is_var() || b.is_var()) {
    if (!a.is_var() || !b.is_var()) return false;
    auto f = fwd.find(a.var_id());
    auto g = bwd.find(b.var_id());
    if (f == fwd.end() && g == bwd.end()) {
      fwd[a.var_id()] = b.var_id();
      bwd[b.var_id()] = a.var_id();
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b.var_id() &&
           g->second == a.var_id();
  }
  if (a.is_int() || a.is_atom() || a.is_nil() || b.is_int() || b.is_atom() || b.is_nil())
    return a.bits() == b.bits();
  if (a.is_list() != b.is_list()) return false;
  if (a.is_list())
    return variant_rec(store.head(a), store.head(b), s, store, fwd, bwd) &&
           variant_rec(store.tail(a), store.tail(b), s, store, fwd, bwd);
  ilog::Functor fa = store.functor_of(a);
  ilog::Functor fb = store.functor_of(b);
  if (fa.name != fb.name || fa.arity != fb.arity) return false;
  for (uint32_t i = 0; i < fa.arity; i++)
    if (!variant_rec(store.arg(a, i), store.arg(b, i), s, store, fwd, bwd)) return false;
  return true;
}

inline bool is_variant(TermRef a, TermRef b, const Bindings& s, const TermStore& store) {
  std::map<uint32_t, uint32_t> fwd, bwd;
  return variant_rec(a, b, s, store, fwd, bwd);
}

// Random ground term, depth-bounded. Leaves: small ints, atoms, []; inner
// nodes: structures of arity 1..3 from a tiny functor alphabet, or lists.
inline TermRef random_ground(Engine& eng, SplitMix64& rng, int depth) {
  static const char* kAtoms[] = {"a", "b", "c", "d"};
  static const char* kFuns[] = {"f", "g", "h"};
  uint64_t pick = rng.below(depth <= 0 ? 3 : 6);
  switch (pick) {
    case 0:
      return eng.intn(static_cast<int64_t>(rng.below(12)));
    case 1:
      return eng.atom(kAtoms[rng.below(4)]);
    case 2:
      return eng.atom("[]");
    case 3:
    case 4: {
      uint32_t arity = 1 + static_cast<uint32_t>(rng.below(3));
      std::vector<TermRef> args;
      for (uint32_t i = 0; i < arity; i++)
        args.push_back(random_ground(eng, rng, depth - 1));
      return eng.compound(kFuns[rng.below(3)], args);
    }
    default: {
      size_t len = 1 + rng.below(3);
      std::vector<TermRef> elems;
      for (size_t i = 0; i < len; i++)
        elems.push_back(random_ground(eng, rng, depth - 1));
      return eng.list(elems, eng.atom("[]"));
    }
  }
}

// Like random_ground but may place fresh or repeated variables at leaves.
inline TermRef random_mixed(Engine& eng, SplitMix64& rng, int depth,
                            std::vector<TermRef>& var_pool) {
  if (rng.below(4) == 0) {
    if (!var_pool.empty() && rng.below(2) == 0)
      return var_pool[rng.below(var_pool.size())];
    var_pool.push_back(eng.var());
    return var_pool.back();
  }
  static const char* kFuns[] = {"f", "g", "h"};
  uint64_t pick = rng.below(depth <= 0 ? 3 : 6);
  switch (pick) {
    case 0:
      return eng.intn(static_cast<int64_t>(rng.below(12)));
    case 1:
      return eng.atom("a");
    case 2:
      return eng.atom("[]");
    case 3:
    case 4: {
      uint32_t arity = 1 + static_cast<uint32_t>(rng.below(3));
      std::vector<TermRef> args;
      for (uint32_t i = 0; i < arity; i++)
        args.push_back(random_mixed(eng, rng, depth - 1, var_pool));
      return eng.compound(kFuns[rng.below(3)], args);
    }
    default: {
      size_t len = 1 + rng.below(3);
      std::vector<TermRef> elems;
      for (size_t i = 0; i < len; i++)
        elems.push_back(random_mixed(eng, rng, depth - 1, var_pool));
      return eng.list(elems, eng.atom("[]"));
    }
  }
}

// Random definite programs over graph-shaped facts: transitive reachability
// or same-generation, with node labels that are atoms, ground structures, or
// short ground lists. Every program terminates under tabling.
struct RandomProgram {
  std::string text;    // without the table directive
  std::string table_decl_pred;  // e.g. "reach/2"
  std::string query;   // goal text with one variable X
};

inline std::string node_label(uint64_t i, int shape) {
  std::ostringstream out;
  switch (shape) {
    case 0:
      out << "n" << i;
      break;
    case 1:
      out << "node(" << i << ", t" << i % 3 << ")";
      break;
    default:
      out << "[" << i << ", " << i + 1 << ", m" << i % 2 << "]";
      break;
  }
  return out.str();
}

inline RandomProgram random_program(SplitMix64& rng) {
  RandomProgram p;
  int shape = static_cast<int>(rng.below(3));
  uint64_t nodes = 3 + rng.below(6);
  uint64_t edges = nodes + rng.below(2 * nodes);
  std::ostringstream text;
  bool same_gen = rng.below(2) == 0;
  if (same_gen) {
    for (uint64_t e = 0; e < edges; e++) {
      uint64_t a = rng.below(nodes), b = rng.below(nodes);
      text << "up(" << node_label(a, shape) << ", " << node_label(b, shape) << ").\n";
    }
    for (uint64_t e = 0; e < nodes; e++)
      text << "flat(" << node_label(rng.below(nodes), shape) << ", "
           << node_label(rng.below(nodes), shape) << ").\n";
    text << "sg(X, Y) :- flat(X, Y).\n";
    text << "sg(X, Y) :- up(X, X1), sg(X1, Y1), up(Y, Y1).\n";
    p.table_decl_pred = "sg/2";
    p.query = "sg(" + node_label(0, shape) + ", X)";
  } else {
    for (uint64_t e = 0; e < edges; e++) {
      uint64_t a = rng.below(nodes), b = rng.below(nodes);
      text << "edge(" << node_label(a, shape) << ", " << node_label(b, shape) << ").\n";
    }
    text << "reach(X, Y) :- edge(X, Y).\n";
    text << "reach(X, Z) :- reach(X, Y), edge(Y, Z).\n";
    p.table_decl_pred = "reach/2";
    p.query = "reach(" + node_label(0, shape) + ", X)";
  }
  p.text = text.str();
  return p;
}

}  // namespace oracle
