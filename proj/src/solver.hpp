#pragma once

#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "dynamic.hpp"
#include "intern.hpp"
#include "program.hpp"
#include "symbols.hpp"
#include "trie.hpp"

namespace ilog {

// A parked branch of an evaluation: the tabled call it suspended on, the
// answer template of the derivation it belongs to, and the rest of its goal
// list, captured together as one detached symbol sequence (shared variable
// numbering). Decoding per delivered answer replays the branch against that
// answer; cursor makes each (consumer, answer) pair resume exactly once.
struct Consumer {
  TableEntry* source = nullptr;
  TableEntry* owner = nullptr;  // nullptr: the branch belongs to the query
  std::vector<TrieSymbol> saved;
  uint32_t n_call = 0;
  uint32_t n_template = 0;
  uint32_t n_goals = 0;
  size_t cursor = 0;  // answers already delivered
  bool scheduled = false;
};

struct SolveStats {
  uint64_t tasks = 0;                 // scheduler items run (query, producers, deliveries)
  uint64_t producer_invocations = 0;  // clause tries inside producers
  uint64_t deliveries = 0;            // (consumer, answer) resumptions
};

// Goal evaluation with suspension-based tabling, local scheduling (producers
// feed tables, never callers directly), and completion detection over a
// dependency stack. The machine is fully iterative: derivation depth costs
// heap words, never C stack. Answers persist in the table space across
// solve() calls; heap, bindings and suspensions are per-call scratch.
//
// Any exception thrown mid-evaluation (budget, type errors, ...) leaves
// partly evaluated tables behind; the solver then refuses further queries
// (poisoned) so truncated tables can never masquerade as complete.
class Solver {
 public:
  using AnswerFn = std::function<void(std::span<const TermRef>)>;

  Solver(AtomTable& atoms, TermStore& store, Bindings& binds, InternStore& interns,
         TableSpace& tables, DynamicStore& dynamics, Program& program, const Symbols& syms);

  // Proves goal. qvars are the terms of interest (typically the query's named
  // variables); on_answer receives their instantiation under each answer,
  // valid only during the callback. Returns the number of answers delivered.
  size_t solve(TermRef goal, std::span<const TermRef> qvars, const AnswerFn& on_answer);

  const SolveStats& stats() const { return stats_; }
  bool poisoned() const { return poisoned_; }

 private:
  friend class Machine;

  struct Task {
    enum class Kind : uint8_t { Producer, Delivery } kind;
    TableEntry* entry = nullptr;
    Consumer* consumer = nullptr;
  };

  void schedule_producer(TableEntry* entry);
  void schedule_delivery(Consumer* c);
  void drain();
  void attempt_completion();
  void clear_registrations();

  AtomTable& atoms_;
  TermStore& store_;
  Bindings& binds_;
  InternStore& interns_;
  TableSpace& tables_;
  DynamicStore& dynamics_;
  Program& program_;
  const Symbols& syms_;
  std::unordered_map<uint64_t, int> builtins_;  // functor word -> Builtin

  std::vector<Task> work_;  // LIFO
  std::vector<TableEntry*> comp_stack_;  // dfn order
  std::vector<std::unique_ptr<Consumer>> consumers_;
  uint32_t next_dfn_ = 1;
  size_t answer_count_ = 0;
  const AnswerFn* on_answer_ = nullptr;
  SolveStats stats_;
  bool poisoned_ = false;
};

}  // namespace ilog
