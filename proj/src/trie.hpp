#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "intern.hpp"
#include "store.hpp"
#include "term.hpp"
#include "unify.hpp"

namespace ilog {

// One linearized trie symbol, packed into a word: kind in the top nibble,
// payload below. Variables are numbered densely by first occurrence, which is
// what makes trie paths variant-canonical. An interned record contributes a
// single Interned symbol keyed by handle identity; its hash mixes the handle's
// numeric identity, so symbol hashing is deterministic across runs.
class TrieSymbol {
public:
  enum class Kind : uint8_t { Functor = 0, Atom, Int, Var, List, Nil, Interned };

  TrieSymbol() : bits_(0) {}

  static TrieSymbol functor(Functor f);
  static TrieSymbol atom(AtomId id) { return make(Kind::Atom, id); }
  static TrieSymbol integer(int64_t v) {
    return make(Kind::Int, static_cast<uint64_t>(v) & kPayloadMask);
  }
  static TrieSymbol var(uint32_t index) { return make(Kind::Var, index); }
  static TrieSymbol list() { return make(Kind::List, 0); }
  static TrieSymbol nil() { return make(Kind::Nil, 0); }
  static TrieSymbol interned(TermRef t);

  Kind kind() const { return static_cast<Kind>(bits_ >> 60); }
  Functor functor_value() const {
    uint64_t p = payload();
    return Functor{static_cast<AtomId>(p >> 16), static_cast<uint32_t>(p & 0xffff)};
  }
  AtomId atom_value() const { return static_cast<AtomId>(payload()); }
  int64_t int_value() const { return static_cast<int64_t>(bits_ << 4) >> 4; }
  uint32_t var_index() const { return static_cast<uint32_t>(payload()); }
  TermRef interned_ref() const;

  uint64_t bits() const { return bits_; }
  uint64_t hash() const { return mix64(bits_); }
  bool operator==(const TrieSymbol& o) const { return bits_ == o.bits_; }
  bool operator!=(const TrieSymbol& o) const { return bits_ != o.bits_; }

private:
  static constexpr uint64_t kPayloadMask = (uint64_t{1} << 60) - 1;
  static TrieSymbol make(Kind k, uint64_t payload) {
    TrieSymbol s;
    s.bits_ = (static_cast<uint64_t>(k) << 60) | payload;
    return s;
  }
  uint64_t payload() const { return bits_ & kPayloadMask; }
  uint64_t bits_;
};

// Pre-order linearization of an argument tuple. Variable numbering is dense
// across the whole tuple. When intern_mode is set, an interned record becomes
// one Interned symbol; otherwise it is traversed structurally like any heap
// record. Atoms, integers and [] keep their own symbol kinds in both modes.
std::vector<TrieSymbol> linearize(std::span<const TermRef> args, bool intern_mode,
                                  const Bindings& s, const TermStore& store);

// Inverse of linearize: rebuilds heap terms, allocating a fresh variable per
// distinct Var symbol and adopting Interned symbols by reference.
std::vector<TermRef> decode_sequence(std::span<const TrieSymbol> syms, TermStore& store,
                                     Bindings& s);

// A symbol trie. Child lists start as sibling chains scanned linearly and
// switch to a hash index past 8 children. The last symbol node of an inserted
// sequence carries the leaf payload; valid term sequences are prefix-free, so
// payload slots never collide. Node ids are stable; id 0 is the root.
class Trie {
public:
  explicit Trie(bool intern_mode) : intern_mode_(intern_mode) {
    nodes_.push_back(Node{});  // root
  }

  struct InsertResult {
    uint32_t leaf;
    bool is_new;
  };

  InsertResult insert(std::span<const TrieSymbol> syms);
  std::optional<uint32_t> lookup(std::span<const TrieSymbol> syms) const;

  // Symbols along the path from the root to this leaf.
  std::vector<TrieSymbol> sequence_at(uint32_t leaf) const;

  int32_t payload(uint32_t leaf) const { return nodes_[leaf].payload; }
  void set_payload(uint32_t leaf, int32_t v) { nodes_[leaf].payload = v; }

  bool intern_mode() const { return intern_mode_; }

  // Refuses unification-based (non-variant) retrieval for intern-mode tries:
  // an interned subterm sits on one opaque link, so matching under
  // unification would have to test every outgoing edge. Callers must treat
  // this as an error, never as a fallback.
  void require_unification_retrieval() const;

  size_t node_count() const { return nodes_.size() - 1; }  // root not counted
  size_t leaf_count() const { return leaves_; }
  uint64_t symbols_inserted() const { return symbols_inserted_; }

  // Visible for tests: number of children of the node reached by a prefix.
  std::optional<uint32_t> child_count_at(std::span<const TrieSymbol> prefix) const;

private:
  static constexpr uint32_t kIndexThreshold = 8;

  struct Node {
    TrieSymbol sym;
    uint32_t parent = 0;
    uint32_t first_child = 0;
    uint32_t next_sibling = 0;
    uint32_t child_count = 0;
    uint32_t index_slot = 0;  // 1-based into indexes_, 0 = none
    int32_t payload = -1;
  };

  uint32_t find_child(uint32_t at, TrieSymbol sym) const;
  uint32_t add_child(uint32_t at, TrieSymbol sym);

  struct SymbolHash {
    size_t operator()(const TrieSymbol& s) const { return static_cast<size_t>(s.hash()); }
  };

  bool intern_mode_;
  std::vector<Node> nodes_;
  std::vector<std::unordered_map<TrieSymbol, uint32_t, SymbolHash>> indexes_;
  size_t leaves_ = 0;
  uint64_t symbols_inserted_ = 0;
};

enum class TableStatus : uint8_t { New, Evaluating, Complete };

struct Consumer;  // scheduler-owned; entries only hold registrations

class TableSpace;

// One call variant of a tabled predicate: its answer trie plus scheduling
// state. Answers are immutable once status reaches Complete.
struct TableEntry {
  Functor pred;
  bool intern_mode;
  uint32_t id;         // index within its predicate's entry list
  uint32_t call_leaf;  // leaf in the predicate's call trie
  Trie answers;
  std::vector<uint32_t> answer_leaves;  // insertion order
  TableStatus status = TableStatus::New;

  // Completion bookkeeping (see solver): depth-first number, the least dfn
  // this entry was observed to depend on, and outstanding scheduled work.
  uint32_t dfn = 0;
  uint32_t dirlink = 0;
  int open_items = 0;
  std::vector<Consumer*> consumers;

  TableEntry(Functor p, bool intern, uint32_t id_, uint32_t leaf)
      : pred(p), intern_mode(intern), id(id_), call_leaf(leaf), answers(intern) {}

  size_t answer_count() const { return answer_leaves.size(); }
};

// All tables of one engine: a call trie and entry list per tabled predicate,
// plus the global node budget that turns runaway evaluations into a
// BudgetExceededError instead of an exhausted machine.
class TableSpace {
public:
  static constexpr uint64_t kDefaultNodeBudget = 50'000'000;

  explicit TableSpace(TermStore& store) : store_(store) {}

  void declare(Functor pred, bool intern_mode);
  bool is_tabled(Functor pred) const;
  bool declared_intern(Functor pred) const;

  // Variant lookup for a call. Args must already be dereferenced and, for
  // intern-mode predicates, already passed through intern_term.
  std::pair<TableEntry*, bool> lookup_or_create(Functor pred, std::span<const TermRef> args,
                                                const Bindings& s);

  // Inserts an answer tuple unless a variant of it is already present.
  // Intern-mode entries intern each argument first. Returns true when new.
  // Adding to a complete table is an internal error.
  bool add_answer(TableEntry& entry, std::span<const TermRef> args, Bindings& s,
                  InternStore& interns);

  std::vector<TermRef> call_args(const TableEntry& entry, TermStore& store, Bindings& s) const;
  std::vector<TermRef> answer_args(const TableEntry& entry, size_t index, TermStore& store,
                                   Bindings& s) const;

  // Enumerates answers whose tuple unifies with pattern, a diagnostic scan.
  // Intern-mode entries refuse (UnsupportedRetrievalError) via the trie guard.
  template <typename Fn>
  void answers_unifying(const TableEntry& entry, std::span<const TermRef> pattern,
                        TermStore& store, Bindings& s, Fn&& fn) const {
    entry.answers.require_unification_retrieval();
    for (size_t i = 0; i < entry.answer_leaves.size(); ++i) {
      std::vector<TermRef> args = answer_args(entry, i, store, s);
      Bindings::Mark m = s.mark();
      bool ok = args.size() == pattern.size();
      for (size_t k = 0; ok && k < args.size(); ++k)
        ok = unify(pattern[k], args[k], s, store);
      if (ok) fn(std::span<const TermRef>(args));
      s.undo_to(m);
    }
  }

  TableEntry* entry_at(Functor pred, uint32_t id);
  size_t entry_count(Functor pred) const;
  size_t entry_count() const;

  struct Stats {
    uint64_t nodes = 0;            // symbol nodes over all call + answer tries
    uint64_t leaves = 0;
    uint64_t call_symbols = 0;     // symbols of sequences that created a call leaf
    uint64_t answer_symbols = 0;
    uint64_t bytes_estimate = 0;   // nodes * 4 slots * 8 bytes
    uint64_t entries = 0;
  };
  Stats stats() const;

  uint64_t node_budget() const { return node_budget_; }
  void set_node_budget(uint64_t n) { node_budget_ = n; }

private:
  struct PredTable {
    Functor pred;
    bool intern_mode;
    Trie calls;
    std::vector<std::unique_ptr<TableEntry>> entries;
    PredTable(Functor p, bool intern) : pred(p), intern_mode(intern), calls(intern) {}
  };

  PredTable* find(Functor pred) const;
  void charge_nodes(size_t before, const Trie& trie);

  TermStore& store_;
  std::unordered_map<uint64_t, std::unique_ptr<PredTable>> preds_;
  uint64_t nodes_total_ = 0;
  uint64_t node_budget_ = kDefaultNodeBudget;
};

}  // namespace ilog
