#pragma once

#include <stdexcept>
#include <string>

namespace ilog {

// Root of everything thrown by the engine on purpose.
struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed source text. Carries a 1-based source position.
struct SyntaxError : EngineError {
  int line;
  int column;
  SyntaxError(const std::string& msg, int l, int c)
      : EngineError(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
        line(l), column(c) {}
};

// A directive the reader does not know (anything but table/dynamic/import).
struct UnknownDirectiveError : EngineError {
  using EngineError::EngineError;
};

// Inconsistent declarations, e.g. a predicate both tabled and dynamic.
struct ProgramError : EngineError {
  using EngineError::EngineError;
};

// Term construction misuse (arity mismatch, integer out of range, ...).
struct TermError : EngineError {
  using EngineError::EngineError;
};

// Calling a predicate with no clauses, no declaration and no builtin meaning.
struct UndefinedPredicateError : EngineError {
  using EngineError::EngineError;
};

// Arithmetic over an unbound variable.
struct InstantiationError : EngineError {
  using EngineError::EngineError;
};

// Arithmetic or call over a value of the wrong kind.
struct TypeError : EngineError {
  using EngineError::EngineError;
};

// Unification-based retrieval requested against an intern-mode trie. Interned
// subterms sit on a single link keyed by handle identity, so the trie cannot
// enumerate bindings for them; the request is refused, never approximated.
struct UnsupportedRetrievalError : EngineError {
  using EngineError::EngineError;
};

// Evaluation aborted because the global trie node budget was exceeded.
struct BudgetExceededError : EngineError {
  using EngineError::EngineError;
};

// File system trouble while consulting.
struct IoError : EngineError {
  using EngineError::EngineError;
};

// Broken internal invariant (stale undo mark, corrupt record, ...).
struct InternalError : EngineError {
  using EngineError::EngineError;
};

// Any other runtime refusal (tabled call inside an if-then-else condition,
// non-callable goal, answer added to a completed table, ...).
struct EvalError : EngineError {
  using EngineError::EngineError;
};

}  // namespace ilog
