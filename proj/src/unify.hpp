#pragma once

#include <cstdint>
#include <vector>

#include "atoms.hpp"
#include "errors.hpp"
#include "store.hpp"
#include "term.hpp"

namespace ilog {

// Variable cells plus the trail. A cell holding a self-reference is unbound.
// bind() trails every binding, so undo_to() restores any earlier state; a
// variable is bound at most once per trail segment (callers deref first).
class Bindings {
public:
  using Mark = size_t;

  TermRef new_var() {
    uint32_t id = static_cast<uint32_t>(cells_.size());
    cells_.push_back(TermRef::variable(id));
    return cells_.back();
  }

  size_t var_count() const { return cells_.size(); }

  bool is_unbound(uint32_t id) const {
    TermRef v = cells_[id];
    return v.is_var() && v.var_id() == id;
  }

  TermRef deref(TermRef t) const {
    while (t.is_var()) {
      TermRef v = cells_[t.var_id()];
      if (v == t) return t;
      t = v;
    }
    return t;
  }

  void bind(uint32_t id, TermRef value) {
    cells_[id] = value;
    trail_.push_back(id);
  }

  Mark mark() const { return trail_.size(); }

  void undo_to(Mark m) {
    if (m > trail_.size()) throw InternalError("undo to a stale trail mark");
    while (trail_.size() > m) {
      uint32_t id = trail_.back();
      trail_.pop_back();
      cells_[id] = TermRef::variable(id);
    }
  }

  // Reclaims variable cells created above n. Only sound once the trail has
  // been unwound past every binding of those cells.
  void truncate(size_t n) {
    if (n > cells_.size()) throw InternalError("variable truncation above current top");
    cells_.resize(n);
  }

private:
  std::vector<TermRef> cells_;
  std::vector<uint32_t> trail_;
};

struct UnifyStats {
  uint64_t comparisons = 0;  // term pairs examined
  uint64_t bindings = 0;
};

// Unifies a and b, trailing bindings in s. On failure s is restored to its
// state at entry. No occurs check. Fast paths: identical references succeed
// without descending; two distinct interned references of the same tag fail
// without descending (canonicity makes handle inequality structural
// inequality). Variable-variable bindings point the younger at the older.
bool unify(TermRef a, TermRef b, Bindings& s, const TermStore& store, UnifyStats* stats = nullptr);

// Standard order over dereferenced terms: Var < Int < Atom < Compound, vars by
// id, ints by value, atoms alphabetically, compounds by arity then name then
// arguments left to right. [] orders as the atom "[]", list cells as '.'/2.
// Interned records are compared structurally, never by handle order; identical
// references shortcut to equality.
int compare_terms(TermRef a, TermRef b, const Bindings& s, const TermStore& store,
                  const AtomTable& atoms);

}  // namespace ilog
