#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "atoms.hpp"
#include "store.hpp"
#include "symbols.hpp"
#include "unify.hpp"

namespace ilog {

struct ParsedClause {
  TermRef head;
  std::vector<TermRef> body;  // conjunction split at top-level ','
};

struct Directive {
  enum class Kind { Table, Dynamic, Import };
  Kind kind;
  Functor pred{0, 0};  // meaningless for Import
  bool intern = false;
};

// Clauses and directives in source order; order matters because declarations
// apply only to what follows them.
struct ProgramItem {
  enum class Kind { Clause, Directive } kind;
  ParsedClause clause;   // when kind == Clause
  Directive directive;   // when kind == Directive
};

struct ParsedProgram {
  std::vector<ProgramItem> items;
};

// Text -> terms.  Operator syntax is fixed: a small table of the operators
// the engine evaluates, with standard priorities.  '.'(H,T) structures and
// the atom [] normalize to list cells and nil.  Each clause or query gets
// its own variable scope; '_' is fresh at every occurrence.
class Reader {
 public:
  Reader(AtomTable& atoms, TermStore& store, Bindings& binds, const Symbols& syms)
      : atoms_(atoms), store_(store), binds_(binds), syms_(syms) {}

  // Whole program text: clauses and directives in order of appearance.
  // DCG rules arrive already translated into plain clauses.
  ParsedProgram read_program(std::string_view text);

  // One term terminated by '.' (a query goal).  `vars` receives the named
  // variables of the term in first-occurrence order.
  TermRef read_term(std::string_view text, std::vector<std::pair<std::string, TermRef>>* vars = nullptr);

 private:
  AtomTable& atoms_;
  TermStore& store_;
  Bindings& binds_;
  const Symbols& syms_;
};

// Splits a body term at top-level ','/2 into goal order.
void flatten_conjunction(TermRef body, const Bindings& s, const TermStore& store,
                         const Symbols& syms, std::vector<TermRef>& out);

}  // namespace ilog
