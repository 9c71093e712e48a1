#pragma once

#include <span>
#include <vector>

#include "errors.hpp"
#include "term.hpp"

namespace ilog {

// Owns the cell arenas of both regions.
//
// Heap records are built freely and reclaimed wholesale by truncation (the
// evaluator truncates to a watermark when a derivation task ends; nothing
// persistent may point above a watermark). Interned records are appended by
// the intern store, are immutable, and are never reclaimed.
//
// Record layout, identical in both regions:
//   structure f/n:  [functor word][arg 1]...[arg n]     ref -> functor word
//   list cell:      [head][tail]                        ref -> head word
// Interned records additionally carry a bucket link word immediately before
// the record (at ref-1), owned by the intern store's hash tables.
class TermStore {
public:
  TermStore() {
    heap_.push_back(0);    // cell 0 reserved in both regions so 0 means "none"
    icells_.push_back(0);
  }

  TermRef make_compound(Functor f, std::span<const TermRef> args) {
    if (f.arity == 0) throw TermError("compound with arity 0");
    if (f.arity != args.size()) throw TermError("compound arity does not match argument count");
    uint64_t at = heap_.size();
    heap_.push_back(f.word());
    for (TermRef a : args) heap_.push_back(a.bits());
    return TermRef::structure(at, Region::Heap);
  }

  TermRef make_list_cell(TermRef head, TermRef tail) {
    uint64_t at = heap_.size();
    heap_.push_back(head.bits());
    heap_.push_back(tail.bits());
    return TermRef::list(at, Region::Heap);
  }

  // Uniform readers over both regions.
  Functor functor_of(TermRef t) const {
    return Functor::from_word(cells(t.region())[t.cell()]);
  }
  TermRef arg(TermRef t, uint32_t i) const {
    return TermRef::from_bits(cells(t.region())[t.cell() + 1 + i]);
  }
  TermRef head(TermRef t) const { return TermRef::from_bits(cells(t.region())[t.cell()]); }
  TermRef tail(TermRef t) const { return TermRef::from_bits(cells(t.region())[t.cell() + 1]); }

  size_t heap_size() const { return heap_.size(); }
  void truncate_heap(size_t n) {
    if (n > heap_.size()) throw InternalError("heap truncation above current top");
    heap_.resize(n);
  }

  // Intern arena access, used by the intern store only.
  std::vector<uint64_t>& intern_arena() { return icells_; }
  const std::vector<uint64_t>& intern_arena() const { return icells_; }

private:
  const std::vector<uint64_t>& cells(Region r) const {
    return r == Region::Heap ? heap_ : icells_;
  }

  std::vector<uint64_t> heap_;
  std::vector<uint64_t> icells_;
};

}  // namespace ilog
