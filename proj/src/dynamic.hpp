#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "intern.hpp"
#include "program.hpp"

namespace ilog {

// Asserted clauses. Each clause is stored detached from the heap as one
// linearized symbol sequence (head arguments then body goals), so later
// bindings to the asserted term cannot leak in, and decoding a clause is the
// renaming step of a clause try.
//
// Retrieval is indexed on the head's first argument: the key is the principal
// functor (or the immediate's value), which is identical whether the stored
// argument is an interned record or a heap record. Clauses whose first
// argument is unbound match every key. For a predicate declared `as intern`,
// asserted terms pass through intern_term first, so ground structure shared
// across facts is stored once and each stored occurrence is a single symbol.
class DynamicStore {
 public:
  struct Pred {
    Functor pred{0, 0};
    bool intern_mode = false;
    std::vector<ClauseCode> clauses;  // assertion order; ids are indexes
    std::unordered_map<uint64_t, std::vector<uint32_t>> index;
    std::vector<uint32_t> open_key;  // no usable key: unbound or arity 0
    uint64_t stored_symbols = 0;
  };

  struct Stats {
    uint64_t clauses = 0;
    uint64_t symbols = 0;
    uint64_t bytes_estimate = 0;  // symbols * 8
  };

  void declare(Functor pred, bool intern_mode);
  bool is_dynamic(Functor pred) const { return find(pred) != nullptr; }
  const Pred* find(Functor pred) const;

  // head/body are live terms under s; the clause is compiled and detached.
  void assertz(TermRef head, std::span<const TermRef> body, Bindings& s, TermStore& store,
               InternStore& interns);

  // Candidate clause ids for a call whose first argument derefs to first_arg,
  // merged in assertion order. Pass any unbound variable when keyless.
  void candidates(const Pred& p, TermRef first_arg, const TermStore& store,
                  std::vector<uint32_t>& out) const;

  Stats stats() const;

 private:
  Pred* find_mut(Functor pred);
  static std::optional<uint64_t> first_arg_key(TermRef arg, const TermStore& store);

  std::unordered_map<uint64_t, Pred> preds_;
};

}  // namespace ilog
