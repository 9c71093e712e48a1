#include "dynamic.hpp"

#include "errors.hpp"

namespace ilog {

void DynamicStore::declare(Functor pred, bool intern_mode) {
  auto it = preds_.find(pred.word());
  if (it != preds_.end()) {
    if (it->second.intern_mode != intern_mode)
      throw ProgramError("conflicting dynamic declarations for the same predicate");
    return;
  }
  Pred p;
  p.pred = pred;
  p.intern_mode = intern_mode;
  preds_.emplace(pred.word(), std::move(p));
}

const DynamicStore::Pred* DynamicStore::find(Functor pred) const {
  auto it = preds_.find(pred.word());
  return it == preds_.end() ? nullptr : &it->second;
}

DynamicStore::Pred* DynamicStore::find_mut(Functor pred) {
  auto it = preds_.find(pred.word());
  return it == preds_.end() ? nullptr : &it->second;
}

std::optional<uint64_t> DynamicStore::first_arg_key(TermRef arg, const TermStore& store) {
  switch (arg.tag()) {
    case Tag::Var:
      return std::nullopt;
    case Tag::Int:
    case Tag::Atom:
    case Tag::Nil:
      // Immediates key on their value bits; the low nibble is the tag with
      // the region bit clear, so these never collide with the keys below.
      return arg.bits() & ~(uint64_t{1} << 3);
    case Tag::Struct: {
      Functor f = store.functor_of(arg);
      return (((uint64_t{f.name} << 20) | f.arity) << 4) | 0x8;
    }
    case Tag::List:
      return 0x9;
  }
  return std::nullopt;
}

void DynamicStore::assertz(TermRef head, std::span<const TermRef> body, Bindings& s,
                           TermStore& store, InternStore& interns) {
  TermRef h = s.deref(head);
  Functor pred = h.is_atom() ? Functor{h.atom_id(), 0} : store.functor_of(h);
  Pred* p = find_mut(pred);
  if (!p) throw ProgramError("assert into a predicate not declared dynamic");

  // Interning is per head argument and per body goal, so the intern table
  // only ever holds terms the program itself passed around, never clause heads.
  std::vector<TermRef> args;
  for (uint32_t i = 0; i < pred.arity; i++) {
    TermRef a = store.arg(h, i);
    args.push_back(p->intern_mode ? interns.intern_term(a, s) : a);
  }
  for (TermRef g : body) args.push_back(p->intern_mode ? interns.intern_term(g, s) : g);

  ClauseCode code;
  code.nargs = pred.arity;
  code.ngoals = static_cast<uint32_t>(body.size());
  code.syms = linearize(args, /*intern_mode=*/true, s, store);

  uint32_t id = static_cast<uint32_t>(p->clauses.size());
  p->stored_symbols += code.syms.size();
  if (pred.arity == 0) {
    p->open_key.push_back(id);
  } else {
    auto key = first_arg_key(s.deref(args[0]), store);
    if (key)
      p->index[*key].push_back(id);
    else
      p->open_key.push_back(id);
  }
  p->clauses.push_back(std::move(code));
}

void DynamicStore::candidates(const Pred& p, TermRef first_arg, const TermStore& store,
                              std::vector<uint32_t>& out) const {
  out.clear();
  std::optional<uint64_t> key;
  if (p.pred.arity != 0) {
    key = first_arg_key(first_arg, store);
    if (!key.has_value()) {  // unbound call argument: every clause applies
      for (uint32_t i = 0; i < p.clauses.size(); i++) out.push_back(i);
      return;
    }
  }
  const std::vector<uint32_t>* keyed = nullptr;
  if (key) {
    auto it = p.index.find(*key);
    if (it != p.index.end()) keyed = &it->second;
  }
  size_t a = 0, b = 0;
  size_t an = keyed ? keyed->size() : 0;
  while (a < an || b < p.open_key.size()) {
    if (b >= p.open_key.size() || (a < an && (*keyed)[a] < p.open_key[b]))
      out.push_back((*keyed)[a++]);
    else
      out.push_back(p.open_key[b++]);
  }
}

DynamicStore::Stats DynamicStore::stats() const {
  Stats st;
  for (auto& [w, p] : preds_) {
    st.clauses += p.clauses.size();
    st.symbols += p.stored_symbols;
  }
  st.bytes_estimate = st.symbols * 8;
  return st;
}

}  // namespace ilog
