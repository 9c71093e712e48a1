#include "intern.hpp"

#include "errors.hpp"

namespace ilog {

namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr uint64_t kFnvPrime = 0x100000001b3ull;
// Stands in for the functor word when hashing a list cell.
constexpr uint64_t kListMarker = 0x6c69737463656c6cull;

uint64_t fold(uint64_t h, uint64_t w) {
  return (h ^ w) * kFnvPrime;
}

}  // namespace

uint64_t InternStore::canonical_hash(uint64_t functor_word, std::span<const TermRef> slots) {
  uint64_t h = fold(kFnvOffset, functor_word);
  for (TermRef s : slots) h = fold(h, s.bits());
  return mix64(h);
}

uint64_t InternStore::canonical_hash_words(uint64_t functor_word, const uint64_t* slot_words,
                                           size_t n) {
  uint64_t h = fold(kFnvOffset, functor_word);
  for (size_t i = 0; i < n; ++i) h = fold(h, slot_words[i]);
  return mix64(h);
}

InternStore::Table& InternStore::struct_table(uint32_t arity) {
  if (by_arity_.size() <= arity) by_arity_.resize(arity + 1);
  Table& t = by_arity_[arity];
  if (t.buckets.empty()) t.buckets.assign(kInitialStructBuckets, 0);
  return t;
}

uint64_t InternStore::find_struct(const Table& t, uint64_t h, uint64_t fword,
                                  std::span<const TermRef> slots) const {
  const auto& arena = store_.intern_arena();
  uint64_t cur = t.buckets[h & (t.buckets.size() - 1)];
  while (cur != 0) {
    probes_++;
    if (arena[cur] == fword) {
      bool same = true;
      for (size_t i = 0; i < slots.size(); ++i) {
        if (arena[cur + 1 + i] != slots[i].bits()) { same = false; break; }
      }
      if (same) return cur;
    }
    cur = arena[cur - 1];
  }
  return 0;
}

uint64_t InternStore::find_list(uint64_t h, TermRef head, TermRef tail) const {
  const auto& arena = store_.intern_arena();
  uint64_t cur = list_table_.buckets[h & (list_table_.buckets.size() - 1)];
  while (cur != 0) {
    probes_++;
    if (arena[cur] == head.bits() && arena[cur + 1] == tail.bits()) return cur;
    cur = arena[cur - 1];
  }
  return 0;
}

namespace {

// Rechains every record of a doubled bucket array. rehash(cur) must recompute
// the record's original hash from the arena.
template <typename Rehash>
void grow(std::vector<uint64_t>& buckets, std::vector<uint64_t>& arena, Rehash rehash) {
  std::vector<uint64_t> old = std::move(buckets);
  buckets.assign(old.size() * 2, 0);
  uint64_t mask = buckets.size() - 1;
  for (uint64_t headref : old) {
    uint64_t cur = headref;
    while (cur != 0) {
      uint64_t next = arena[cur - 1];
      uint64_t slot = rehash(cur) & mask;
      arena[cur - 1] = buckets[slot];
      buckets[slot] = cur;
      cur = next;
    }
  }
}

}  // namespace

void InternStore::maybe_grow_struct(Table& t, uint32_t arity) {
  if (t.count <= t.buckets.size()) return;  // resize when load factor passes 1
  auto& arena = store_.intern_arena();
  grow(t.buckets, arena, [&](uint64_t cur) {
    return canonical_hash_words(arena[cur], &arena[cur + 1], arity);
  });
  resizes_++;
}

void InternStore::maybe_grow_list() {
  if (list_table_.count <= list_table_.buckets.size()) return;
  auto& arena = store_.intern_arena();
  grow(list_table_.buckets, arena, [&](uint64_t cur) {
    return canonical_hash_words(kListMarker, &arena[cur], 2);
  });
  resizes_++;
}

TermRef InternStore::lookup_or_insert_struct(Functor f, std::span<const TermRef> slots) {
  if (f.arity == 0 || f.arity != slots.size())
    throw TermError("interned structure arity mismatch");
  for (TermRef s : slots)
    if (!is_canonical(s)) throw InternalError("non-canonical slot in intern insertion");

  Table& t = struct_table(f.arity);
  uint64_t fword = f.word();
  uint64_t h = canonical_hash(fword, slots);
  if (uint64_t found = find_struct(t, h, fword, slots))
    return TermRef::structure(found, Region::Interned);

  auto& arena = store_.intern_arena();
  uint64_t& bucket = t.buckets[h & (t.buckets.size() - 1)];
  arena.push_back(bucket);  // link word
  uint64_t at = arena.size();
  arena.push_back(fword);
  for (TermRef s : slots) arena.push_back(s.bits());
  bucket = at;
  t.count++;
  record_count_++;
  maybe_grow_struct(t, f.arity);
  return TermRef::structure(at, Region::Interned);
}

TermRef InternStore::lookup_or_insert_list(TermRef head, TermRef tail) {
  if (!is_canonical(head) || !is_canonical(tail))
    throw InternalError("non-canonical slot in intern insertion");

  TermRef slots[2] = {head, tail};
  uint64_t h = canonical_hash(kListMarker, slots);
  if (uint64_t found = find_list(h, head, tail)) return TermRef::list(found, Region::Interned);

  auto& arena = store_.intern_arena();
  uint64_t& bucket = list_table_.buckets[h & (list_table_.buckets.size() - 1)];
  arena.push_back(bucket);
  uint64_t at = arena.size();
  arena.push_back(head.bits());
  arena.push_back(tail.bits());
  bucket = at;
  list_table_.count++;
  record_count_++;
  list_record_count_++;
  maybe_grow_list();
  return TermRef::list(at, Region::Interned);
}

namespace {

// Post-order transformer state: visit children left to right, then combine.
struct Combine {
  uint64_t fword;   // functor word, or 0 for a list cell
  uint32_t arity;
};
struct WorkItem {
  TermRef visit;
  Combine combine;
  bool is_combine;
};

}  // namespace

TermRef InternStore::intern_term(TermRef t, Bindings& s) {
  std::vector<WorkItem> work;
  std::vector<TermRef> results;
  std::vector<TermRef> slots;  // scratch for one combine
  work.push_back({t, {}, false});

  while (!work.empty()) {
    WorkItem item = work.back();
    work.pop_back();

    if (item.is_combine) {
      uint32_t n = item.combine.arity;
      slots.assign(n, TermRef());
      bool ground = true;
      for (uint32_t i = n; i-- > 0;) {
        TermRef r = results.back();
        results.pop_back();
        slots[i] = r;
        if (!is_canonical(r)) ground = false;
      }
      if (ground) {
        results.push_back(item.combine.fword == 0
                              ? lookup_or_insert_list(slots[0], slots[1])
                              : lookup_or_insert_struct(Functor::from_word(item.combine.fword),
                                                        slots));
      } else if (item.combine.fword == 0) {
        results.push_back(store_.make_list_cell(slots[0], slots[1]));
      } else {
        results.push_back(store_.make_compound(Functor::from_word(item.combine.fword), slots));
      }
      continue;
    }

    TermRef cur = s.deref(item.visit);
    switch (cur.tag()) {
      case Tag::Var:  // stays the same variable in the result
      case Tag::Int:
      case Tag::Atom:
      case Tag::Nil:
        results.push_back(cur);
        break;
      case Tag::Struct: {
        if (cur.interned()) { results.push_back(cur); break; }
        Functor f = store_.functor_of(cur);
        work.push_back({TermRef(), {f.word(), f.arity}, true});
        for (uint32_t i = f.arity; i-- > 0;) work.push_back({store_.arg(cur, i), {}, false});
        break;
      }
      case Tag::List: {
        if (cur.interned()) { results.push_back(cur); break; }
        work.push_back({TermRef(), {0, 2}, true});
        work.push_back({store_.tail(cur), {}, false});
        work.push_back({store_.head(cur), {}, false});
        break;
      }
    }
  }

  if (results.size() != 1) throw InternalError("intern_term result stack imbalance");
  return results.back();
}

bool InternStore::is_ground(TermRef t, const Bindings& s) const {
  std::vector<TermRef> work{t};
  while (!work.empty()) {
    TermRef cur = s.deref(work.back());
    work.pop_back();
    ground_visits_++;
    switch (cur.tag()) {
      case Tag::Var:
        return false;
      case Tag::Int:
      case Tag::Atom:
      case Tag::Nil:
        break;
      case Tag::Struct: {
        if (cur.interned()) break;  // ground by construction
        Functor f = store_.functor_of(cur);
        for (uint32_t i = f.arity; i-- > 0;) work.push_back(store_.arg(cur, i));
        break;
      }
      case Tag::List:
        if (cur.interned()) break;
        work.push_back(store_.tail(cur));
        work.push_back(store_.head(cur));
        break;
    }
  }
  return true;
}

TermRef InternStore::copy_term(TermRef t, Bindings& s) {
  // (old var id, fresh var) pairs; linear scan is fine at the sharing degrees
  // terms here actually have.
  std::vector<std::pair<uint32_t, TermRef>> fresh;
  auto rename = [&](TermRef v) {
    for (auto& [id, nv] : fresh)
      if (id == v.var_id()) return nv;
    TermRef nv = s.new_var();
    fresh.emplace_back(v.var_id(), nv);
    return nv;
  };

  std::vector<WorkItem> work;
  std::vector<TermRef> results;
  std::vector<TermRef> slots;
  work.push_back({t, {}, false});

  while (!work.empty()) {
    WorkItem item = work.back();
    work.pop_back();

    if (item.is_combine) {
      uint32_t n = item.combine.arity;
      slots.assign(n, TermRef());
      for (uint32_t i = n; i-- > 0;) {
        slots[i] = results.back();
        results.pop_back();
      }
      results.push_back(item.combine.fword == 0
                            ? store_.make_list_cell(slots[0], slots[1])
                            : store_.make_compound(Functor::from_word(item.combine.fword), slots));
      continue;
    }

    TermRef cur = s.deref(item.visit);
    copy_visits_++;
    switch (cur.tag()) {
      case Tag::Var:
        results.push_back(rename(cur));
        break;
      case Tag::Int:
      case Tag::Atom:
      case Tag::Nil:
        results.push_back(cur);
        break;
      case Tag::Struct: {
        if (cur.interned()) { results.push_back(cur); break; }  // reused, not copied
        Functor f = store_.functor_of(cur);
        work.push_back({TermRef(), {f.word(), f.arity}, true});
        for (uint32_t i = f.arity; i-- > 0;) work.push_back({store_.arg(cur, i), {}, false});
        break;
      }
      case Tag::List:
        if (cur.interned()) { results.push_back(cur); break; }
        work.push_back({TermRef(), {0, 2}, true});
        work.push_back({store_.tail(cur), {}, false});
        work.push_back({store_.head(cur), {}, false});
        break;
    }
  }

  if (results.size() != 1) throw InternalError("copy_term result stack imbalance");
  return results.back();
}

InternStore::Stats InternStore::stats() const {
  Stats st;
  st.records = record_count_;
  st.list_records = list_record_count_;
  st.cells_used = store_.intern_arena().size() - 1;  // minus the reserved cell
  st.probes = probes_;
  st.resizes = resizes_;

  uint64_t bytes = list_record_count_ * 3 * 8;  // link + head + tail
  bytes += list_table_.buckets.size() * 8;
  for (uint32_t a = 0; a < by_arity_.size(); ++a) {
    const Table& t = by_arity_[a];
    bytes += t.count * (a + 2) * 8;  // link + functor + a slots
    bytes += t.buckets.size() * 8;
  }
  st.bytes_estimate = bytes;
  return st;
}

}  // namespace ilog
