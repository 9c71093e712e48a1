#include "solver.hpp"

#include <algorithm>

#include "errors.hpp"
#include "unify.hpp"
#include "writer.hpp"

namespace ilog {

namespace {

constexpr uint32_t kNone = 0xffffffffu;

enum class ContKind : uint8_t { Goal, Emit, Commit };

enum Builtin : int {
  kTrue, kFail, kComma, kSemicolon, kArrow, kUnify, kEq, kNeq, kAtLess,
  kLt, kGt, kLe, kGe, kArithEq, kIs, kBetween, kGround, kCopyTerm, kInternTerm,
};

// Immutable continuation cells, allocated in a per-task arena. A chain is
// Goal nodes ending in one Emit; Commit nodes appear only between an
// if-then-else condition and its commit, a window in which suspension is
// rejected, so no saved continuation ever contains one.
struct ContNode {
  ContKind kind;
  TermRef payload;  // Goal: the goal term; Commit: the then-branch
  uint32_t aux;     // Commit: choice point index to cut back to
  uint32_t next;
};

struct ChoicePoint {
  enum class Kind : uint8_t { Static, Dyn, Answers, Between, Disj, Ite };
  Kind kind;
  uint32_t cont = kNone;
  size_t trail = 0, heap = 0, vars = 0;
  uint32_t cond_depth = 0;
  bool count_tries = false;  // set on the clause iterator a producer runs
  uint32_t idx = 0;
  const std::vector<ClauseCode>* sclauses = nullptr;  // Static
  const DynamicStore::Pred* dpred = nullptr;          // Dyn
  std::vector<uint32_t> cand;                         // Dyn
  TableEntry* entry = nullptr;                        // Answers
  std::vector<TermRef> call_args;                     // Static/Dyn/Answers
  int64_t cur = 0, hi = 0;                            // Between
  TermRef var{};                                      // Between
  TermRef alt{};                                      // Disj/Ite: the right/else branch
};

}  // namespace

// One scheduler item: the query, a producer run, or an answer delivery.
// Owns its continuation arena and choice point stack; restores heap,
// bindings and variable counts to the task entry state when it finishes.
class Machine {
 public:
  explicit Machine(Solver& so)
      : so_(so), s_(so.binds_), st_(so.store_),
        base_trail_(so.binds_.mark()),
        base_heap_(so.store_.heap_size()),
        base_vars_(so.binds_.var_count()) {}

  void run_query(TermRef goal, std::span<const TermRef> qvars) {
    owner_ = nullptr;
    template_args_.assign(qvars.begin(), qvars.end());
    uint32_t emit = cons(ContKind::Emit, TermRef{}, 0, kNone);
    cont_ = cons(ContKind::Goal, goal, 0, emit);
    failed_ = false;
    drive();
    finish();
  }

  void run_producer(TableEntry* e) {
    owner_ = e;
    template_args_ = so_.tables_.call_args(*e, st_, s_);
    const std::vector<ClauseCode>* clauses = so_.program_.find(e->pred);
    if (clauses && !clauses->empty()) {
      uint32_t emit = cons(ContKind::Emit, TermRef{}, 0, kNone);
      cont_ = emit;
      ChoicePoint cp = make_cp(ChoicePoint::Kind::Static);
      cp.sclauses = clauses;
      cp.call_args = template_args_;
      cp.count_tries = true;
      cps_.push_back(std::move(cp));
      failed_ = true;
      drive();
    }
    finish();
  }

  void run_delivery(Consumer* c) {
    TableEntry* src = c->source;
    while (c->cursor < src->answer_count()) {
      size_t idx = c->cursor++;
      so_.stats_.deliveries++;
      Bindings::Mark tm = s_.mark();
      size_t hm = st_.heap_size();
      size_t vm = s_.var_count();

      std::vector<TermRef> parts = decode_sequence(c->saved, st_, s_);
      std::vector<TermRef> aargs = so_.tables_.answer_args(*src, idx, st_, s_);
      bool ok = aargs.size() == c->n_call;
      for (uint32_t i = 0; ok && i < c->n_call; i++) ok = unify(parts[i], aargs[i], s_, st_);
      if (ok) {
        owner_ = c->owner;
        template_args_.assign(parts.begin() + c->n_call,
                              parts.begin() + c->n_call + c->n_template);
        uint32_t k = cons(ContKind::Emit, TermRef{}, 0, kNone);
        for (size_t g = parts.size(); g-- > c->n_call + c->n_template;)
          k = cons(ContKind::Goal, parts[g], 0, k);
        cont_ = k;
        failed_ = false;
        drive();
      }
      s_.undo_to(tm);
      st_.truncate_heap(hm);
      s_.truncate(vm);
      arena_.clear();
      cps_.clear();
      cond_depth_ = 0;
    }
    c->scheduled = false;
    finish();
  }

 private:
  uint32_t cons(ContKind k, TermRef payload, uint32_t aux, uint32_t next) {
    arena_.push_back(ContNode{k, payload, aux, next});
    return static_cast<uint32_t>(arena_.size() - 1);
  }

  ChoicePoint make_cp(ChoicePoint::Kind k) {
    ChoicePoint cp;
    cp.kind = k;
    cp.cont = cont_;
    cp.trail = s_.mark();
    cp.heap = st_.heap_size();
    cp.vars = s_.var_count();
    cp.cond_depth = cond_depth_;
    return cp;
  }

  void finish() {
    s_.undo_to(base_trail_);
    st_.truncate_heap(base_heap_);
    s_.truncate(base_vars_);
  }

  void drive() {
    for (;;) {
      if (failed_) {
        if (cps_.empty()) return;
        retry();
        continue;
      }
      if (cont_ == kNone) throw InternalError("continuation underflow");
      ContNode n = arena_[cont_];
      switch (n.kind) {
        case ContKind::Goal:
          cont_ = n.next;
          call(n.payload);
          break;
        case ContKind::Emit:
          emit();
          failed_ = true;
          break;
        case ContKind::Commit: {
          // The condition proved: drop its alternatives and the else branch.
          cond_depth_ = cps_[n.aux].cond_depth;
          cps_.resize(n.aux);
          cont_ = cons(ContKind::Goal, n.payload, 0, n.next);
          break;
        }
      }
    }
  }

  void emit() {
    if (owner_) {
      bool fresh = so_.tables_.add_answer(*owner_, template_args_, s_, so_.interns_);
      if (fresh)
        for (Consumer* c : owner_->consumers) so_.schedule_delivery(c);
    } else {
      so_.answer_count_++;
      if (so_.on_answer_ && *so_.on_answer_)
        (*so_.on_answer_)(std::span<const TermRef>(template_args_));
    }
  }

  void restore_to(const ChoicePoint& cp) {
    s_.undo_to(cp.trail);
    st_.truncate_heap(cp.heap);
    s_.truncate(cp.vars);
  }

  void retry() {
    ChoicePoint& cp = cps_.back();
    restore_to(cp);
    cond_depth_ = cp.cond_depth;
    cont_ = cp.cont;
    switch (cp.kind) {
      case ChoicePoint::Kind::Static:
        while (cp.idx < cp.sclauses->size()) {
          const ClauseCode& cc = (*cp.sclauses)[cp.idx++];
          if (try_clause(cp, cc)) return;
        }
        break;
      case ChoicePoint::Kind::Dyn:
        while (cp.idx < cp.cand.size()) {
          const ClauseCode& cc = cp.dpred->clauses[cp.cand[cp.idx++]];
          if (try_clause(cp, cc)) return;
        }
        break;
      case ChoicePoint::Kind::Answers:
        while (cp.idx < cp.entry->answer_count()) {
          size_t i = cp.idx++;
          restore_to(cp);
          std::vector<TermRef> aargs = so_.tables_.answer_args(*cp.entry, i, st_, s_);
          bool ok = aargs.size() == cp.call_args.size();
          for (size_t k = 0; ok && k < aargs.size(); k++)
            ok = unify(cp.call_args[k], aargs[k], s_, st_);
          if (ok) {
            failed_ = false;
            return;
          }
        }
        break;
      case ChoicePoint::Kind::Between:
        if (cp.cur <= cp.hi) {
          s_.bind(cp.var.var_id(), TermRef::integer(cp.cur));
          cp.cur++;
          failed_ = false;
          return;
        }
        break;
      case ChoicePoint::Kind::Disj:
      case ChoicePoint::Kind::Ite: {
        TermRef alt = cp.alt;
        uint32_t at = cp.cont;
        cps_.pop_back();
        cont_ = cons(ContKind::Goal, alt, 0, at);
        failed_ = false;
        return;
      }
    }
    cps_.pop_back();  // iterator exhausted; stay failed
  }

  bool try_clause(ChoicePoint& cp, const ClauseCode& cc) {
    restore_to(cp);
    if (cp.count_tries) so_.stats_.producer_invocations++;
    std::vector<TermRef> terms = decode_sequence(cc.syms, st_, s_);
    bool ok = true;
    for (uint32_t i = 0; ok && i < cc.nargs; i++)
      ok = unify(terms[i], cp.call_args[i], s_, st_);
    if (!ok) return false;
    uint32_t k = cp.cont;
    for (uint32_t g = cc.nargs + cc.ngoals; g-- > cc.nargs;)
      k = cons(ContKind::Goal, terms[g], 0, k);
    cont_ = k;
    failed_ = false;
    return true;
  }

  void call(TermRef goal) {
    TermRef g = s_.deref(goal);
    Functor f{0, 0};
    switch (g.tag()) {
      case Tag::Var:
        throw InstantiationError("unbound variable called as a goal");
      case Tag::Int:
      case Tag::Nil:
      case Tag::List:
        throw TypeError("goal is not callable: " + write_term(g, s_, st_, so_.atoms_));
      case Tag::Atom:
        f = Functor{g.atom_id(), 0};
        break;
      case Tag::Struct:
        f = st_.functor_of(g);
        break;
    }
    auto bit = so_.builtins_.find(f.word());
    if (bit != so_.builtins_.end()) {
      builtin(static_cast<Builtin>(bit->second), g);
      return;
    }
    if (so_.tables_.is_tabled(f)) {
      call_tabled(f, g);
      return;
    }
    if (const DynamicStore::Pred* dp = so_.dynamics_.find(f)) {
      call_dynamic(dp, g);
      return;
    }
    if (const std::vector<ClauseCode>* cs = so_.program_.find(f)) {
      ChoicePoint cp = make_cp(ChoicePoint::Kind::Static);
      cp.sclauses = cs;
      gather_args(g, cp.call_args);
      cps_.push_back(std::move(cp));
      failed_ = true;
      return;
    }
    throw UndefinedPredicateError("undefined predicate: " + so_.atoms_.name(f.name) + "/" +
                                  std::to_string(f.arity));
  }

  void gather_args(TermRef g, std::vector<TermRef>& out) {
    if (!g.is_struct()) return;
    Functor f = st_.functor_of(g);
    for (uint32_t i = 0; i < f.arity; i++) out.push_back(st_.arg(g, i));
  }

  void call_dynamic(const DynamicStore::Pred* dp, TermRef g) {
    ChoicePoint cp = make_cp(ChoicePoint::Kind::Dyn);
    cp.dpred = dp;
    gather_args(g, cp.call_args);
    TermRef key = dp->pred.arity > 0 ? s_.deref(cp.call_args[0]) : g;
    so_.dynamics_.candidates(*dp, key, st_, cp.cand);
    cps_.push_back(std::move(cp));
    failed_ = true;
  }

  void call_tabled(Functor f, TermRef g) {
    if (cond_depth_ > 0)
      throw EvalError("tabled call inside an if-then-else condition");
    bool imode = so_.tables_.declared_intern(f);
    std::vector<TermRef> cargs;
    gather_args(g, cargs);
    for (auto& a : cargs) {
      a = s_.deref(a);
      if (imode) a = so_.interns_.intern_term(a, s_);
    }
    auto [entry, fresh] = so_.tables_.lookup_or_create(f, cargs, s_);
    if (fresh) {
      entry->status = TableStatus::Evaluating;
      entry->dfn = entry->dirlink = so_.next_dfn_++;
      so_.comp_stack_.push_back(entry);
      so_.schedule_producer(entry);
    }
    if (entry->status == TableStatus::Complete) {
      ChoicePoint cp = make_cp(ChoicePoint::Kind::Answers);
      cp.entry = entry;
      cp.call_args = std::move(cargs);
      cps_.push_back(std::move(cp));
      failed_ = true;
      return;
    }
    // Incomplete: park this branch as a consumer of the entry.
    if (owner_) owner_->dirlink = std::min(owner_->dirlink, entry->dfn);
    auto c = std::make_unique<Consumer>();
    c->source = entry;
    c->owner = owner_;
    std::vector<TermRef> all(cargs);
    all.insert(all.end(), template_args_.begin(), template_args_.end());
    uint32_t goals = 0;
    for (uint32_t p = cont_; p != kNone; p = arena_[p].next) {
      const ContNode& n = arena_[p];
      if (n.kind == ContKind::Emit) break;
      if (n.kind != ContKind::Goal) throw InternalError("commit captured in a suspension");
      all.push_back(n.payload);
      goals++;
    }
    c->n_call = static_cast<uint32_t>(cargs.size());
    c->n_template = static_cast<uint32_t>(template_args_.size());
    c->n_goals = goals;
    c->saved = linearize(all, /*intern_mode=*/true, s_, st_);
    entry->consumers.push_back(c.get());
    Consumer* raw = c.get();
    so_.consumers_.push_back(std::move(c));
    if (entry->answer_count() > 0) so_.schedule_delivery(raw);
    failed_ = true;
  }

  void push_ite(TermRef cond, TermRef then, TermRef els) {
    ChoicePoint cp = make_cp(ChoicePoint::Kind::Ite);
    cp.alt = els;
    uint32_t cpi = static_cast<uint32_t>(cps_.size());
    cps_.push_back(std::move(cp));
    cond_depth_++;
    uint32_t commit = cons(ContKind::Commit, then, cpi, cont_);
    cont_ = cons(ContKind::Goal, cond, 0, commit);
  }

  int compare(TermRef g) {
    return compare_terms(st_.arg(g, 0), st_.arg(g, 1), s_, st_, so_.atoms_);
  }

  int64_t checked(int64_t v) {
    if (v > TermRef::kIntMax || v < TermRef::kIntMin)
      throw EvalError("arithmetic result out of range");
    return v;
  }

  int64_t eval_arith(TermRef t) {
    t = s_.deref(t);
    switch (t.tag()) {
      case Tag::Int:
        return t.int_value();
      case Tag::Var:
        throw InstantiationError("arithmetic on an unbound variable");
      case Tag::Struct:
        break;
      default:
        throw TypeError("not an arithmetic expression: " + write_term(t, s_, st_, so_.atoms_));
    }
    Functor f = st_.functor_of(t);
    if (f.arity == 1 && f.name == so_.syms_.minus) return checked(-eval_arith(st_.arg(t, 0)));
    if (f.arity == 2) {
      if (f.name == so_.syms_.plus || f.name == so_.syms_.minus || f.name == so_.syms_.star ||
          f.name == so_.syms_.int_div) {
        int64_t a = eval_arith(st_.arg(t, 0));
        int64_t b = eval_arith(st_.arg(t, 1));
        int64_t r = 0;
        if (f.name == so_.syms_.plus) {
          if (__builtin_add_overflow(a, b, &r)) throw EvalError("arithmetic result out of range");
        } else if (f.name == so_.syms_.minus) {
          if (__builtin_sub_overflow(a, b, &r)) throw EvalError("arithmetic result out of range");
        } else if (f.name == so_.syms_.star) {
          if (__builtin_mul_overflow(a, b, &r)) throw EvalError("arithmetic result out of range");
        } else {
          if (b == 0) throw EvalError("division by zero");
          r = a / b;
          if ((a % b != 0) && ((a < 0) != (b < 0))) r--;  // // floors
        }
        return checked(r);
      }
    }
    throw TypeError("unknown arithmetic operator: " + write_term(t, s_, st_, so_.atoms_));
  }

  template <typename F>
  void arith_rel(TermRef g, F rel) {
    int64_t a = eval_arith(st_.arg(g, 0));
    int64_t b = eval_arith(st_.arg(g, 1));
    if (!rel(a, b)) failed_ = true;
  }

  void builtin(Builtin b, TermRef g) {
    switch (b) {
      case kTrue:
        return;
      case kFail:
        failed_ = true;
        return;
      case kComma:
        cont_ = cons(ContKind::Goal, st_.arg(g, 1), 0, cont_);
        cont_ = cons(ContKind::Goal, st_.arg(g, 0), 0, cont_);
        return;
      case kSemicolon: {
        TermRef l = s_.deref(st_.arg(g, 0));
        TermRef r = st_.arg(g, 1);
        if (l.is_struct() && st_.functor_of(l) == Functor{so_.syms_.arrow, 2}) {
          push_ite(st_.arg(l, 0), st_.arg(l, 1), r);
        } else {
          ChoicePoint cp = make_cp(ChoicePoint::Kind::Disj);
          cp.alt = r;
          cps_.push_back(std::move(cp));
          cont_ = cons(ContKind::Goal, l, 0, cont_);
        }
        return;
      }
      case kArrow:
        push_ite(st_.arg(g, 0), st_.arg(g, 1), TermRef::atom(so_.syms_.fail_));
        return;
      case kUnify:
        if (!unify(st_.arg(g, 0), st_.arg(g, 1), s_, st_)) failed_ = true;
        return;
      case kEq:
        if (compare(g) != 0) failed_ = true;
        return;
      case kNeq:
        if (compare(g) == 0) failed_ = true;
        return;
      case kAtLess:
        if (compare(g) >= 0) failed_ = true;
        return;
      case kLt:
        arith_rel(g, [](int64_t a, int64_t b) { return a < b; });
        return;
      case kGt:
        arith_rel(g, [](int64_t a, int64_t b) { return a > b; });
        return;
      case kLe:
        arith_rel(g, [](int64_t a, int64_t b) { return a <= b; });
        return;
      case kGe:
        arith_rel(g, [](int64_t a, int64_t b) { return a >= b; });
        return;
      case kArithEq:
        arith_rel(g, [](int64_t a, int64_t b) { return a == b; });
        return;
      case kIs: {
        int64_t v = eval_arith(st_.arg(g, 1));
        if (!unify(st_.arg(g, 0), TermRef::integer(v), s_, st_)) failed_ = true;
        return;
      }
      case kBetween: {
        int64_t lo = eval_arith(st_.arg(g, 0));
        int64_t hi = eval_arith(st_.arg(g, 1));
        TermRef x = s_.deref(st_.arg(g, 2));
        if (x.is_int()) {
          if (x.int_value() < lo || x.int_value() > hi) failed_ = true;
          return;
        }
        if (!x.is_var())
          throw TypeError("between/3: the third argument must be an integer or unbound");
        ChoicePoint cp = make_cp(ChoicePoint::Kind::Between);
        cp.cur = lo;
        cp.hi = hi;
        cp.var = x;
        cps_.push_back(std::move(cp));
        failed_ = true;
        return;
      }
      case kGround:
        if (!so_.interns_.is_ground(st_.arg(g, 0), s_)) failed_ = true;
        return;
      case kCopyTerm: {
        TermRef c = so_.interns_.copy_term(st_.arg(g, 0), s_);
        if (!unify(st_.arg(g, 1), c, s_, st_)) failed_ = true;
        return;
      }
      case kInternTerm: {
        TermRef i = so_.interns_.intern_term(s_.deref(st_.arg(g, 0)), s_);
        if (!unify(st_.arg(g, 1), i, s_, st_)) failed_ = true;
        return;
      }
    }
  }

  Solver& so_;
  Bindings& s_;
  TermStore& st_;
  size_t base_trail_, base_heap_, base_vars_;

  std::vector<ContNode> arena_;
  std::vector<ChoicePoint> cps_;
  uint32_t cont_ = kNone;
  bool failed_ = false;
  TableEntry* owner_ = nullptr;
  std::vector<TermRef> template_args_;
  uint32_t cond_depth_ = 0;
};

// ---------------------------------------------------------------------------

Solver::Solver(AtomTable& atoms, TermStore& store, Bindings& binds, InternStore& interns,
               TableSpace& tables, DynamicStore& dynamics, Program& program, const Symbols& syms)
    : atoms_(atoms), store_(store), binds_(binds), interns_(interns), tables_(tables),
      dynamics_(dynamics), program_(program), syms_(syms) {
  auto put = [this](AtomId name, uint32_t arity, Builtin b) {
    builtins_[Functor{name, arity}.word()] = b;
  };
  put(syms.true_, 0, kTrue);
  put(syms.fail_, 0, kFail);
  put(syms.comma, 2, kComma);
  put(syms.semicolon, 2, kSemicolon);
  put(syms.arrow, 2, kArrow);
  put(syms.unify_op, 2, kUnify);
  put(syms.eq, 2, kEq);
  put(syms.neq, 2, kNeq);
  put(syms.at_less, 2, kAtLess);
  put(syms.lt, 2, kLt);
  put(syms.gt, 2, kGt);
  put(syms.le, 2, kLe);
  put(syms.ge, 2, kGe);
  put(syms.arith_eq, 2, kArithEq);
  put(syms.is_op, 2, kIs);
  put(syms.between_, 3, kBetween);
  put(syms.ground_, 1, kGround);
  put(syms.copy_term_, 2, kCopyTerm);
  put(syms.intern_term_, 2, kInternTerm);
}

void Solver::schedule_producer(TableEntry* entry) {
  entry->open_items++;
  work_.push_back(Task{Task::Kind::Producer, entry, nullptr});
}

void Solver::schedule_delivery(Consumer* c) {
  if (c->scheduled) return;
  if (c->cursor >= c->source->answer_count()) return;  // already caught up
  c->scheduled = true;
  if (c->owner) c->owner->open_items++;
  work_.push_back(Task{Task::Kind::Delivery, nullptr, c});
}

void Solver::drain() {
  while (!work_.empty()) {
    Task t = work_.back();
    work_.pop_back();
    stats_.tasks++;
    if (t.kind == Task::Kind::Producer) {
      Machine m(*this);
      m.run_producer(t.entry);
      t.entry->open_items--;
    } else {
      Machine m(*this);
      m.run_delivery(t.consumer);
      if (t.consumer->owner) t.consumer->owner->open_items--;
    }
    attempt_completion();
  }
}

// Scans the completion stack from the top, accumulating the least direct
// link. A position whose running minimum does not reach below its own dfn
// closes a candidate segment; the segment completes once none of its entries
// has scheduled work outstanding. Merging adjacent mutually-dependent groups
// into one segment delays completion but never completes a table early.
void Solver::attempt_completion() {
  for (;;) {
    if (comp_stack_.empty()) return;
    uint32_t m = UINT32_MAX;
    size_t leader = SIZE_MAX;
    for (size_t i = comp_stack_.size(); i-- > 0;) {
      m = std::min(m, comp_stack_[i]->dirlink);
      if (m >= comp_stack_[i]->dfn) {
        leader = i;
        break;
      }
    }
    if (leader == SIZE_MAX) return;
    for (size_t j = leader; j < comp_stack_.size(); j++)
      if (comp_stack_[j]->open_items > 0) return;
    for (size_t j = leader; j < comp_stack_.size(); j++)
      comp_stack_[j]->status = TableStatus::Complete;
    comp_stack_.resize(leader);
  }
}

void Solver::clear_registrations() {
  for (auto& c : consumers_) c->source->consumers.clear();
  consumers_.clear();
}

size_t Solver::solve(TermRef goal, std::span<const TermRef> qvars, const AnswerFn& on_answer) {
  if (poisoned_)
    throw EvalError("engine disabled by an earlier evaluation error");
  on_answer_ = &on_answer;
  answer_count_ = 0;
  next_dfn_ = 1;
  comp_stack_.clear();
  work_.clear();
  consumers_.clear();
  try {
    stats_.tasks++;
    {
      Machine m(*this);
      m.run_query(goal, qvars);
    }
    attempt_completion();
    drain();
    if (!comp_stack_.empty())
      throw InternalError("incomplete tables after the scheduler drained");
  } catch (...) {
    poisoned_ = true;
    clear_registrations();
    on_answer_ = nullptr;
    throw;
  }
  clear_registrations();
  on_answer_ = nullptr;
  return answer_count_;
}

}  // namespace ilog
