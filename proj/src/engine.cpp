#include "engine.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace ilog {

Engine::Engine()
    : syms_(atoms_), interns_(store_), tables_(store_),
      reader_(atoms_, store_, binds_, syms_),
      solver_(atoms_, store_, binds_, interns_, tables_, dynamics_, program_, syms_) {}

TermRef Engine::atom(std::string_view name) {
  if (name == "[]") return TermRef::nil();
  return TermRef::atom(atoms_.intern(name));
}

TermRef Engine::intn(int64_t v) {
  if (v > TermRef::kIntMax || v < TermRef::kIntMin) throw TermError("integer out of range");
  return TermRef::integer(v);
}

TermRef Engine::compound(std::string_view name, std::span<const TermRef> args) {
  if (name == "." && args.size() == 2) return store_.make_list_cell(args[0], args[1]);
  return store_.make_compound(Functor{atoms_.intern(name), static_cast<uint32_t>(args.size())},
                              args);
}

TermRef Engine::list(std::span<const TermRef> elems, TermRef tail) {
  TermRef t = tail;
  for (size_t i = elems.size(); i-- > 0;) t = store_.make_list_cell(elems[i], t);
  return t;
}

ClauseCode Engine::compile_clause(const ParsedClause& c, Functor pred) {
  std::vector<TermRef> parts;
  for (uint32_t i = 0; i < pred.arity; i++) parts.push_back(store_.arg(c.head, i));
  for (TermRef g : c.body) parts.push_back(g);
  ClauseCode code;
  code.nargs = pred.arity;
  code.ngoals = static_cast<uint32_t>(c.body.size());
  code.syms = linearize(parts, /*intern_mode=*/true, binds_, store_);
  return code;
}

void Engine::load(const ParsedProgram& prog) {
  for (const ProgramItem& item : prog.items) {
    if (item.kind == ProgramItem::Kind::Directive) {
      const Directive& d = item.directive;
      switch (d.kind) {
        case Directive::Kind::Table:
          if (dynamics_.is_dynamic(d.pred))
            throw ProgramError("a predicate cannot be both tabled and dynamic: " +
                               atoms_.name(d.pred.name) + "/" + std::to_string(d.pred.arity));
          tables_.declare(d.pred, d.intern);
          break;
        case Directive::Kind::Dynamic:
          if (tables_.is_tabled(d.pred))
            throw ProgramError("a predicate cannot be both tabled and dynamic: " +
                               atoms_.name(d.pred.name) + "/" + std::to_string(d.pred.arity));
          if (program_.defined(d.pred))
            throw ProgramError("dynamic declaration after static clauses: " +
                               atoms_.name(d.pred.name) + "/" + std::to_string(d.pred.arity));
          dynamics_.declare(d.pred, d.intern);
          break;
        case Directive::Kind::Import:
          break;  // accepted and ignored
      }
      continue;
    }
    const ParsedClause& c = item.clause;
    TermRef head = binds_.deref(c.head);
    Functor pred = head.is_atom() ? Functor{head.atom_id(), 0} : store_.functor_of(head);
    if (dynamics_.is_dynamic(pred)) {
      dynamics_.assertz(head, c.body, binds_, store_, interns_);
    } else {
      program_.add_clause(pred, compile_clause(c, pred));
    }
  }
}

void Engine::consult_text(std::string_view text) {
  size_t heap = store_.heap_size();
  size_t vars = binds_.var_count();
  ParsedProgram prog = reader_.read_program(text);
  load(prog);
  // Clauses now live as detached symbol sequences; the parse terms can go.
  store_.truncate_heap(heap);
  binds_.truncate(vars);
}

void Engine::consult_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read file: " + path);
  consult_text(buf.str());
}

void Engine::assert_clause(TermRef head, std::span<const TermRef> body) {
  dynamics_.assertz(head, body, binds_, store_, interns_);
}

TermRef Engine::read_goal(std::string_view text,
                          std::vector<std::pair<std::string, TermRef>>* vars) {
  return reader_.read_term(text, vars);
}

size_t Engine::solve(TermRef goal, std::span<const TermRef> qvars,
                     const Solver::AnswerFn& on_answer) {
  size_t heap = store_.heap_size();
  size_t vars = binds_.var_count();
  size_t n = solver_.solve(goal, qvars, on_answer);
  // The solver unwound every binding it made; drop the query's scratch terms.
  store_.truncate_heap(heap);
  binds_.truncate(vars);
  return n;
}

size_t Engine::solve_text(std::string_view goal_text,
                          const std::function<void(const std::string&)>& on_line) {
  size_t heap = store_.heap_size();
  size_t vars = binds_.var_count();
  std::vector<std::pair<std::string, TermRef>> named;
  TermRef goal = reader_.read_term(goal_text, &named);
  std::vector<TermRef> qvars;
  for (auto& [name, v] : named) qvars.push_back(v);

  size_t n = solver_.solve(goal, qvars, [&](std::span<const TermRef> inst) {
    if (!on_line) return;
    std::string line;
    for (size_t i = 0; i < named.size(); i++) {
      if (binds_.deref(inst[i]).is_var()) continue;  // nothing to show
      if (!line.empty()) line += ", ";
      line += named[i].first + " = " + render(inst[i]);
    }
    on_line(line.empty() ? "yes" : line);
  });
  store_.truncate_heap(heap);
  binds_.truncate(vars);
  return n;
}

}  // namespace ilog
