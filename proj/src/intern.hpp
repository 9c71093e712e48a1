#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "store.hpp"
#include "term.hpp"
#include "unify.hpp"

namespace ilog {

// Canonical (hash-consed) storage for ground terms.
//
// One chained hash table per structure arity plus a dedicated table for list
// cells. Record slots hold only canonical references (immediates or interned
// records), so slot comparison is word comparison and structurally equal
// ground terms always intern to the identical handle. The store is monotone:
// records are never moved, mutated or collected, which is what lets every
// other component treat a handle as a permanent identity.
class InternStore {
public:
  static constexpr size_t kInitialStructBuckets = 4096;
  static constexpr size_t kInitialListBuckets = 65536;

  explicit InternStore(TermStore& store) : store_(store) {}

  // True for references that are valid interned record slots: immediates and
  // interned records. Heap records and variables are not.
  static bool is_canonical(TermRef t) {
    return t.is_int() || t.is_atom() || t.is_nil() || t.interned();
  }

  // Hash over the functor word and the n slot words, order dependent, with a
  // final avalanche so bucket masking sees well-mixed bits.
  static uint64_t canonical_hash(uint64_t functor_word, std::span<const TermRef> slots);
  static uint64_t canonical_hash_words(uint64_t functor_word, const uint64_t* slot_words,
                                       size_t n);

  // Returns the canonical record for f(slots...), inserting it if absent.
  // Every slot must already be canonical.
  TermRef lookup_or_insert_struct(Functor f, std::span<const TermRef> slots);
  TermRef lookup_or_insert_list(TermRef head, TermRef tail);

  // Returns t with every maximal ground subterm replaced by its canonical
  // interned record. Bound variables are read through s; unbound variables are
  // preserved identically (the result shares them with the input), and any
  // nonground spine above an interned subterm is rebuilt on the heap.
  // Already-interned subterms are adopted without being traversed. Bottom-up
  // with an explicit stack; depth is bounded by memory, not the C++ stack.
  TermRef intern_term(TermRef t, Bindings& s);

  // True when no unbound variable is reachable. Interned records are ground by
  // construction and are not descended into, so a fully interned term answers
  // in one visit (see visit counters below).
  bool is_ground(TermRef t, const Bindings& s) const;

  // Fresh copy with fresh variables; sharing of variables is preserved within
  // the copy. Interned records are reused by reference, so copying a fully
  // interned term allocates nothing and visits one node.
  TermRef copy_term(TermRef t, Bindings& s);

  struct Stats {
    uint64_t records = 0;        // struct records + list records
    uint64_t list_records = 0;
    uint64_t cells_used = 0;     // arena words, including link words
    uint64_t bytes_estimate = 0; // records*(slots+link+functor) + bucket arrays
    uint64_t probes = 0;         // cumulative bucket chain records examined
    uint64_t resizes = 0;
  };
  Stats stats() const;

  uint64_t record_count() const { return record_count_; }
  uint64_t probe_count() const { return probes_; }

  // Instrumentation for the short-circuit contracts.
  uint64_t ground_visits() const { return ground_visits_; }
  uint64_t copy_visits() const { return copy_visits_; }

private:
  struct Table {
    std::vector<uint64_t> buckets;  // record ref cell index, 0 = empty
    size_t count = 0;
  };

  Table& struct_table(uint32_t arity);
  uint64_t find_struct(const Table& t, uint64_t h, uint64_t fword,
                       std::span<const TermRef> slots) const;
  uint64_t find_list(uint64_t h, TermRef head, TermRef tail) const;
  void maybe_grow_struct(Table& t, uint32_t arity);
  void maybe_grow_list();

  TermStore& store_;
  std::vector<Table> by_arity_;
  Table list_table_{std::vector<uint64_t>(kInitialListBuckets, 0), 0};

  uint64_t record_count_ = 0;
  uint64_t list_record_count_ = 0;
  mutable uint64_t probes_ = 0;
  uint64_t resizes_ = 0;
  mutable uint64_t ground_visits_ = 0;
  uint64_t copy_visits_ = 0;
};

}  // namespace ilog
