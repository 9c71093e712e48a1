#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "atoms.hpp"
#include "dynamic.hpp"
#include "intern.hpp"
#include "program.hpp"
#include "reader.hpp"
#include "solver.hpp"
#include "store.hpp"
#include "symbols.hpp"
#include "trie.hpp"
#include "unify.hpp"
#include "writer.hpp"

namespace ilog {

// One evaluation engine: atom table, heap and intern arenas, table space,
// dynamic and static clause stores, reader and solver, wired together.
// Tables and interned records persist across solve() calls; heap terms built
// for a query are reclaimed when the call returns. Not reentrant: solve()
// must not be called from an answer callback.
class Engine {
 public:
  Engine();

  // --- term construction (heap) ---
  TermRef atom(std::string_view name);  // "[]" yields nil
  TermRef intn(int64_t v);
  TermRef var() { return binds_.new_var(); }
  // '.'/2 builds a list cell; anything else a structure.
  TermRef compound(std::string_view name, std::span<const TermRef> args);
  TermRef list(std::span<const TermRef> elems, TermRef tail);

  // --- program loading ---
  void consult_text(std::string_view text);
  void consult_file(const std::string& path);
  // Adds a clause to a predicate previously declared dynamic.
  void assert_clause(TermRef head, std::span<const TermRef> body);

  // --- queries ---
  TermRef read_goal(std::string_view text,
                    std::vector<std::pair<std::string, TermRef>>* vars = nullptr);
  size_t solve(TermRef goal, std::span<const TermRef> qvars, const Solver::AnswerFn& on_answer);
  // Parses and proves goal_text; per answer renders "X = t, Y = u" over the
  // goal's named variables ("yes" when it has none) and passes it on.
  size_t solve_text(std::string_view goal_text,
                    const std::function<void(const std::string&)>& on_line);

  std::string render(TermRef t) const { return write_term(t, binds_, store_, atoms_); }

  // --- components ---
  AtomTable& atoms() { return atoms_; }
  TermStore& store() { return store_; }
  Bindings& binds() { return binds_; }
  InternStore& interns() { return interns_; }
  TableSpace& tables() { return tables_; }
  DynamicStore& dynamics() { return dynamics_; }
  Program& program() { return program_; }
  const Symbols& symbols() const { return syms_; }
  Reader& reader() { return reader_; }
  const SolveStats& solve_stats() const { return solver_.stats(); }
  bool poisoned() const { return solver_.poisoned(); }

 private:
  void load(const ParsedProgram& prog);
  ClauseCode compile_clause(const ParsedClause& c, Functor pred);

  AtomTable atoms_;
  TermStore store_;
  Bindings binds_;
  Symbols syms_;
  InternStore interns_;
  TableSpace tables_;
  DynamicStore dynamics_;
  Program program_;
  Reader reader_;
  Solver solver_;
};

}  // namespace ilog
