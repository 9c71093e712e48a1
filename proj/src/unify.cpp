#include "unify.hpp"

#include <utility>

namespace ilog {

namespace {

void bind_var_var(TermRef a, TermRef b, Bindings& s) {
  // Younger (higher id) points at older so long-lived variables stay
  // representative.
  if (a.var_id() < b.var_id()) std::swap(a, b);
  s.bind(a.var_id(), b);
}

}  // namespace

bool unify(TermRef a, TermRef b, Bindings& s, const TermStore& store, UnifyStats* stats) {
  Bindings::Mark entry = s.mark();
  std::vector<std::pair<TermRef, TermRef>> work;
  work.emplace_back(a, b);

  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    x = s.deref(x);
    y = s.deref(y);
    if (stats) stats->comparisons++;

    if (x == y) continue;  // same var, equal immediate, or same handle

    if (x.is_var()) {
      if (y.is_var()) {
        bind_var_var(x, y, s);
      } else {
        s.bind(x.var_id(), y);
      }
      if (stats) stats->bindings++;
      continue;
    }
    if (y.is_var()) {
      s.bind(y.var_id(), x);
      if (stats) stats->bindings++;
      continue;
    }

    if (x.tag() != y.tag()) { s.undo_to(entry); return false; }

    switch (x.tag()) {
      case Tag::Int:
      case Tag::Atom:
      case Tag::Nil:
        // equal immediates were caught by x == y
        s.undo_to(entry);
        return false;
      case Tag::Struct: {
        if (x.interned() && y.interned()) { s.undo_to(entry); return false; }
        Functor f = store.functor_of(x);
        if (f != store.functor_of(y)) { s.undo_to(entry); return false; }
        for (uint32_t i = f.arity; i-- > 0;)
          work.emplace_back(store.arg(x, i), store.arg(y, i));
        break;
      }
      case Tag::List: {
        if (x.interned() && y.interned()) { s.undo_to(entry); return false; }
        work.emplace_back(store.tail(x), store.tail(y));
        work.emplace_back(store.head(x), store.head(y));
        break;
      }
      default:
        throw InternalError("unify saw an undereferenced variable");
    }
  }
  return true;
}

namespace {

int type_rank(TermRef t) {
  switch (t.tag()) {
    case Tag::Var: return 0;
    case Tag::Int: return 1;
    case Tag::Atom: return 2;
    case Tag::Nil: return 2;  // [] is an atom in the standard order
    default: return 3;
  }
}

int cmp64(int64_t a, int64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }
int cmpu64(uint64_t a, uint64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace

int compare_terms(TermRef a, TermRef b, const Bindings& s, const TermStore& store,
                  const AtomTable& atoms) {
  std::vector<std::pair<TermRef, TermRef>> work;
  work.emplace_back(a, b);

  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    x = s.deref(x);
    y = s.deref(y);

    if (x == y) continue;

    int rx = type_rank(x), ry = type_rank(y);
    if (rx != ry) return rx < ry ? -1 : 1;

    switch (rx) {
      case 0:
        return cmpu64(x.var_id(), y.var_id());
      case 1:
        return cmp64(x.int_value(), y.int_value());
      case 2: {
        const std::string nil_name = "[]";
        const std::string& nx = x.is_nil() ? nil_name : atoms.name(x.atom_id());
        const std::string& ny = y.is_nil() ? nil_name : atoms.name(y.atom_id());
        int c = nx.compare(ny);
        if (c != 0) return c < 0 ? -1 : 1;
        break;  // same name, same atom
      }
      default: {
        // list cells order as '.'/2
        Functor fx = x.is_list() ? Functor{0, 2} : store.functor_of(x);
        Functor fy = y.is_list() ? Functor{0, 2} : store.functor_of(y);
        if (fx.arity != fy.arity) return fx.arity < fy.arity ? -1 : 1;
        const std::string dot = ".";
        const std::string& nx = x.is_list() ? dot : atoms.name(fx.name);
        const std::string& ny = y.is_list() ? dot : atoms.name(fy.name);
        int c = nx.compare(ny);
        if (c != 0) return c < 0 ? -1 : 1;
        auto slot = [&store](TermRef t, uint32_t i) {
          return t.is_list() ? (i == 0 ? store.head(t) : store.tail(t)) : store.arg(t, i);
        };
        for (uint32_t i = fx.arity; i-- > 0;) work.emplace_back(slot(x, i), slot(y, i));
        break;
      }
    }
  }
  return 0;
}

}  // namespace ilog
