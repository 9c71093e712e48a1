#include "trie.hpp"

#include <algorithm>

#include "errors.hpp"

namespace ilog {

TrieSymbol TrieSymbol::functor(Functor f) {
  if (f.arity == 0 || f.arity > 0xffff) throw TermError("functor arity out of trie symbol range");
  return make(Kind::Functor, (static_cast<uint64_t>(f.name) << 16) | f.arity);
}

TrieSymbol TrieSymbol::interned(TermRef t) {
  if (!t.interned()) throw InternalError("interned trie symbol from non-interned reference");
  uint64_t is_list = t.is_list() ? 1u : 0u;
  return make(Kind::Interned, (is_list << 59) | t.cell());
}

TermRef TrieSymbol::interned_ref() const {
  uint64_t p = payload();
  uint64_t cell = p & ((uint64_t{1} << 59) - 1);
  return (p >> 59) ? TermRef::list(cell, Region::Interned)
                   : TermRef::structure(cell, Region::Interned);
}

std::vector<TrieSymbol> linearize(std::span<const TermRef> args, bool intern_mode,
                                  const Bindings& s, const TermStore& store) {
  std::vector<TrieSymbol> out;
  std::vector<std::pair<uint32_t, uint32_t>> var_numbers;  // (var id, dense index)
  auto var_number = [&](uint32_t id) {
    for (auto& [vid, k] : var_numbers)
      if (vid == id) return k;
    uint32_t k = static_cast<uint32_t>(var_numbers.size());
    var_numbers.emplace_back(id, k);
    return k;
  };

  std::vector<TermRef> work;
  for (size_t i = args.size(); i-- > 0;) work.push_back(args[i]);

  while (!work.empty()) {
    TermRef t = s.deref(work.back());
    work.pop_back();
    switch (t.tag()) {
      case Tag::Var:
        out.push_back(TrieSymbol::var(var_number(t.var_id())));
        break;
      case Tag::Int:
        out.push_back(TrieSymbol::integer(t.int_value()));
        break;
      case Tag::Atom:
        out.push_back(TrieSymbol::atom(t.atom_id()));
        break;
      case Tag::Nil:
        out.push_back(TrieSymbol::nil());
        break;
      case Tag::Struct: {
        if (intern_mode && t.interned()) {
          out.push_back(TrieSymbol::interned(t));
          break;
        }
        Functor f = store.functor_of(t);
        out.push_back(TrieSymbol::functor(f));
        for (uint32_t i = f.arity; i-- > 0;) work.push_back(store.arg(t, i));
        break;
      }
      case Tag::List:
        if (intern_mode && t.interned()) {
          out.push_back(TrieSymbol::interned(t));
          break;
        }
        out.push_back(TrieSymbol::list());
        work.push_back(store.tail(t));
        work.push_back(store.head(t));
        break;
    }
  }
  return out;
}

std::vector<TermRef> decode_sequence(std::span<const TrieSymbol> syms, TermStore& store,
                                     Bindings& s) {
  // Scanning the pre-order sequence backwards turns decoding into a stack
  // machine: by the time a functor symbol is seen, its argument subterms are
  // the top of the stack in argument order.
  std::vector<TermRef> stack;
  std::vector<std::pair<uint32_t, TermRef>> vars;
  std::vector<TermRef> slots;
  auto var_for = [&](uint32_t k) {
    for (auto& [idx, v] : vars)
      if (idx == k) return v;
    TermRef v = s.new_var();
    vars.emplace_back(k, v);
    return v;
  };

  for (size_t i = syms.size(); i-- > 0;) {
    TrieSymbol sym = syms[i];
    switch (sym.kind()) {
      case TrieSymbol::Kind::Var:
        stack.push_back(var_for(sym.var_index()));
        break;
      case TrieSymbol::Kind::Int:
        stack.push_back(TermRef::integer(sym.int_value()));
        break;
      case TrieSymbol::Kind::Atom:
        stack.push_back(TermRef::atom(sym.atom_value()));
        break;
      case TrieSymbol::Kind::Nil:
        stack.push_back(TermRef::nil());
        break;
      case TrieSymbol::Kind::Interned:
        stack.push_back(sym.interned_ref());
        break;
      case TrieSymbol::Kind::Functor: {
        Functor f = sym.functor_value();
        if (stack.size() < f.arity) throw InternalError("short symbol sequence");
        slots.assign(stack.end() - f.arity, stack.end());
        std::reverse(slots.begin(), slots.end());
        stack.resize(stack.size() - f.arity);
        stack.push_back(store.make_compound(f, slots));
        break;
      }
      case TrieSymbol::Kind::List: {
        if (stack.size() < 2) throw InternalError("short symbol sequence");
        TermRef head = stack.back();
        stack.pop_back();
        TermRef tail = stack.back();
        stack.pop_back();
        stack.push_back(store.make_list_cell(head, tail));
        break;
      }
    }
  }
  std::reverse(stack.begin(), stack.end());
  return stack;
}

uint32_t Trie::find_child(uint32_t at, TrieSymbol sym) const {
  const Node& n = nodes_[at];
  if (n.index_slot != 0) {
    const auto& index = indexes_[n.index_slot - 1];
    auto it = index.find(sym);
    return it == index.end() ? 0 : it->second;
  }
  for (uint32_t c = n.first_child; c != 0; c = nodes_[c].next_sibling)
    if (nodes_[c].sym == sym) return c;
  return 0;
}

uint32_t Trie::add_child(uint32_t at, TrieSymbol sym) {
  uint32_t id = static_cast<uint32_t>(nodes_.size());
  Node child;
  child.sym = sym;
  child.parent = at;
  child.next_sibling = nodes_[at].first_child;
  nodes_.push_back(child);

  Node& n = nodes_[at];
  n.first_child = id;
  n.child_count++;
  if (n.index_slot == 0 && n.child_count > kIndexThreshold) {
    indexes_.emplace_back();
    n.index_slot = static_cast<uint32_t>(indexes_.size());
    auto& index = indexes_.back();
    for (uint32_t c = n.first_child; c != 0; c = nodes_[c].next_sibling)
      index.emplace(nodes_[c].sym, c);
  } else if (n.index_slot != 0) {
    indexes_[n.index_slot - 1].emplace(sym, id);
  }
  return id;
}

Trie::InsertResult Trie::insert(std::span<const TrieSymbol> syms) {
  uint32_t at = 0;
  for (TrieSymbol sym : syms) {
    uint32_t child = find_child(at, sym);
    at = child != 0 ? child : add_child(at, sym);
  }
  // An empty sequence (arity-0 predicate) parks its payload on the root.
  if (nodes_[at].payload >= 0) return {at, false};
  nodes_[at].payload = static_cast<int32_t>(leaves_);
  leaves_++;
  symbols_inserted_ += syms.size();
  return {at, true};
}

std::optional<uint32_t> Trie::lookup(std::span<const TrieSymbol> syms) const {
  uint32_t at = 0;
  for (TrieSymbol sym : syms) {
    at = find_child(at, sym);
    if (at == 0) return std::nullopt;
  }
  if (nodes_[at].payload < 0) return std::nullopt;
  return at;
}

std::vector<TrieSymbol> Trie::sequence_at(uint32_t leaf) const {
  std::vector<TrieSymbol> out;
  for (uint32_t at = leaf; at != 0; at = nodes_[at].parent) out.push_back(nodes_[at].sym);
  std::reverse(out.begin(), out.end());
  return out;
}

void Trie::require_unification_retrieval() const {
  if (intern_mode_)
    throw UnsupportedRetrievalError(
        "unification-based retrieval is not supported on intern-mode tries");
}

std::optional<uint32_t> Trie::child_count_at(std::span<const TrieSymbol> prefix) const {
  uint32_t at = 0;
  for (TrieSymbol sym : prefix) {
    at = find_child(at, sym);
    if (at == 0) return std::nullopt;
  }
  return nodes_[at].child_count;
}

void TableSpace::declare(Functor pred, bool intern_mode) {
  auto it = preds_.find(pred.word());
  if (it != preds_.end()) {
    if (it->second->intern_mode != intern_mode)
      throw ProgramError("conflicting table declarations for the same predicate");
    return;
  }
  preds_.emplace(pred.word(), std::make_unique<PredTable>(pred, intern_mode));
}

bool TableSpace::is_tabled(Functor pred) const { return find(pred) != nullptr; }

bool TableSpace::declared_intern(Functor pred) const {
  PredTable* p = find(pred);
  return p != nullptr && p->intern_mode;
}

TableSpace::PredTable* TableSpace::find(Functor pred) const {
  auto it = preds_.find(pred.word());
  return it == preds_.end() ? nullptr : it->second.get();
}

void TableSpace::charge_nodes(size_t before, const Trie& trie) {
  nodes_total_ += trie.node_count() - before;
  if (nodes_total_ > node_budget_)
    throw BudgetExceededError("table node budget exceeded");
}

std::pair<TableEntry*, bool> TableSpace::lookup_or_create(Functor pred,
                                                          std::span<const TermRef> args,
                                                          const Bindings& s) {
  PredTable* p = find(pred);
  if (p == nullptr) throw InternalError("table lookup on an undeclared predicate");
  std::vector<TrieSymbol> syms = linearize(args, p->intern_mode, s, store_);
  size_t before = p->calls.node_count();
  Trie::InsertResult r = p->calls.insert(syms);
  charge_nodes(before, p->calls);
  if (!r.is_new) {
    TableEntry* e = p->entries[static_cast<uint32_t>(p->calls.payload(r.leaf))].get();
    return {e, false};
  }
  uint32_t id = static_cast<uint32_t>(p->entries.size());
  p->calls.set_payload(r.leaf, static_cast<int32_t>(id));
  p->entries.push_back(std::make_unique<TableEntry>(pred, p->intern_mode, id, r.leaf));
  return {p->entries.back().get(), true};
}

bool TableSpace::add_answer(TableEntry& entry, std::span<const TermRef> args, Bindings& s,
                            InternStore& interns) {
  if (entry.status == TableStatus::Complete)
    throw InternalError("answer added to a completed table");
  std::vector<TermRef> prepared(args.begin(), args.end());
  if (entry.intern_mode)
    for (TermRef& a : prepared) a = interns.intern_term(a, s);
  std::vector<TrieSymbol> syms = linearize(prepared, entry.intern_mode, s, store_);
  size_t before = entry.answers.node_count();
  Trie::InsertResult r = entry.answers.insert(syms);
  charge_nodes(before, entry.answers);
  if (r.is_new) entry.answer_leaves.push_back(r.leaf);
  return r.is_new;
}

std::vector<TermRef> TableSpace::call_args(const TableEntry& entry, TermStore& store,
                                           Bindings& s) const {
  PredTable* p = find(entry.pred);
  std::vector<TrieSymbol> syms = p->calls.sequence_at(entry.call_leaf);
  return decode_sequence(syms, store, s);
}

std::vector<TermRef> TableSpace::answer_args(const TableEntry& entry, size_t index,
                                             TermStore& store, Bindings& s) const {
  std::vector<TrieSymbol> syms = entry.answers.sequence_at(entry.answer_leaves[index]);
  return decode_sequence(syms, store, s);
}

TableEntry* TableSpace::entry_at(Functor pred, uint32_t id) {
  PredTable* p = find(pred);
  if (p == nullptr || id >= p->entries.size()) return nullptr;
  return p->entries[id].get();
}

size_t TableSpace::entry_count(Functor pred) const {
  PredTable* p = find(pred);
  return p == nullptr ? 0 : p->entries.size();
}

size_t TableSpace::entry_count() const {
  size_t n = 0;
  for (auto& [w, p] : preds_) n += p->entries.size();
  return n;
}

TableSpace::Stats TableSpace::stats() const {
  Stats st;
  for (auto& [w, p] : preds_) {
    st.nodes += p->calls.node_count();
    st.leaves += p->calls.leaf_count();
    st.call_symbols += p->calls.symbols_inserted();
    st.entries += p->entries.size();
    for (auto& e : p->entries) {
      st.nodes += e->answers.node_count();
      st.leaves += e->answers.leaf_count();
      st.answer_symbols += e->answers.symbols_inserted();
    }
  }
  st.bytes_estimate = st.nodes * 4 * 8;
  return st;
}

}  // namespace ilog
