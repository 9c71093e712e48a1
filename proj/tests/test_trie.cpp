#include <vector>

#include "doctest.h"
#include "engine.hpp"
#include "oracles.hpp"
#include "trie.hpp"

using namespace ilog;

namespace {

std::vector<TrieSymbol> atoms_seq(Engine& eng, std::initializer_list<const char*> names) {
  std::vector<TrieSymbol> out;
  for (const char* n : names) out.push_back(TrieSymbol::atom(eng.atoms().intern(n)));
  return out;
}

}  // namespace

TEST_CASE("trie symbols pack and unpack") {
  CHECK(TrieSymbol::integer(-17).int_value() == -17);
  CHECK(TrieSymbol::integer(17).int_value() == 17);
  CHECK(TrieSymbol::atom(12).atom_value() == 12);
  CHECK(TrieSymbol::var(3).var_index() == 3);
  Functor f{77, 4};
  CHECK(TrieSymbol::functor(f).functor_value().name == 77);
  CHECK(TrieSymbol::functor(f).functor_value().arity == 4);
  CHECK(TrieSymbol::list().kind() == TrieSymbol::Kind::List);
  CHECK(TrieSymbol::nil().kind() == TrieSymbol::Kind::Nil);
  CHECK(TrieSymbol::integer(-1) != TrieSymbol::var(0xfffffff));
}

TEST_CASE("interned symbols survive the round trip") {
  Engine eng;
  std::vector<TermRef> elems = {eng.intn(3)};
  TermRef h = eng.interns().intern_term(eng.list(elems, eng.atom("[]")), eng.binds());
  TrieSymbol s = TrieSymbol::interned(h);
  CHECK(s.kind() == TrieSymbol::Kind::Interned);
  CHECK(s.interned_ref() == h);

  std::vector<TermRef> args = {eng.intn(5), eng.intn(6)};
  TermRef hs = eng.interns().intern_term(eng.compound("f", args), eng.binds());
  CHECK(TrieSymbol::interned(hs).interned_ref() == hs);
}

TEST_CASE("insert assigns dense leaf ordinals and shares prefixes") {
  Engine eng;
  Trie t(false);
  auto ab = atoms_seq(eng, {"a", "b"});
  auto ac = atoms_seq(eng, {"a", "c"});
  auto bc = atoms_seq(eng, {"b", "c"});

  auto r1 = t.insert(ab);
  auto r2 = t.insert(ac);
  auto r3 = t.insert(bc);
  CHECK(r1.is_new);
  CHECK(r2.is_new);
  CHECK(r3.is_new);
  CHECK(t.payload(r1.leaf) == 0);
  CHECK(t.payload(r2.leaf) == 1);
  CHECK(t.payload(r3.leaf) == 2);

  // a, a.b, a.c, b, b.c — the "a" prefix is stored once.
  CHECK(t.node_count() == 5);
  CHECK(t.leaf_count() == 3);
  CHECK(t.symbols_inserted() == 6);

  auto again = t.insert(ab);
  CHECK_FALSE(again.is_new);
  CHECK(again.leaf == r1.leaf);
  CHECK(t.node_count() == 5);
  CHECK(t.symbols_inserted() == 6);

  CHECK(t.lookup(ab).value() == r1.leaf);
  CHECK_FALSE(t.lookup(atoms_seq(eng, {"a", "z"})).has_value());
  // A proper prefix of an inserted sequence is not a stored sequence.
  CHECK_FALSE(t.lookup(atoms_seq(eng, {"a"})).has_value());
}

TEST_CASE("sequence_at returns the root-to-leaf symbols") {
  Engine eng;
  Trie t(false);
  auto seq = atoms_seq(eng, {"x", "y", "z"});
  auto r = t.insert(seq);
  auto back = t.sequence_at(r.leaf);
  REQUIRE(back.size() == seq.size());
  for (size_t i = 0; i < seq.size(); i++) CHECK(back[i] == seq[i]);
}

TEST_CASE("the empty sequence parks its payload on the root") {
  Trie t(false);
  auto r = t.insert({});
  CHECK(r.is_new);
  CHECK(r.leaf == 0);
  CHECK(t.lookup({}).value() == 0u);
  auto again = t.insert({});
  CHECK_FALSE(again.is_new);
  CHECK(t.leaf_count() == 1);
}

TEST_CASE("wide nodes switch from sibling chains to a hash index") {
  Trie t(false);
  std::vector<std::vector<TrieSymbol>> seqs;
  for (int64_t k = 0; k < 40; k++)
    seqs.push_back({TrieSymbol::integer(k), TrieSymbol::integer(k + 100)});
  for (auto& s : seqs) CHECK(t.insert(s).is_new);
  CHECK(t.child_count_at({}).value() == 40);
  for (auto& s : seqs) {
    auto leaf = t.lookup(s);
    REQUIRE(leaf.has_value());
    auto back = t.sequence_at(*leaf);
    CHECK(back[0] == s[0]);
    CHECK(back[1] == s[1]);
  }
  CHECK(t.node_count() == 80);
  CHECK(t.leaf_count() == 40);
}

TEST_CASE("unification retrieval is refused exactly for intern-mode tries") {
  Trie plain(false);
  CHECK_NOTHROW(plain.require_unification_retrieval());
  Trie interned(true);
  CHECK_THROWS_AS(interned.require_unification_retrieval(), UnsupportedRetrievalError);
}

TEST_CASE("linearize numbers variables densely by first occurrence") {
  Engine eng;
  TermRef x = eng.var();
  TermRef y = eng.var();
  std::vector<TermRef> args = {x, y, x};
  auto syms = linearize(args, false, eng.binds(), eng.store());
  REQUIRE(syms.size() == 3);
  CHECK(syms[0] == TrieSymbol::var(0));
  CHECK(syms[1] == TrieSymbol::var(1));
  CHECK(syms[2] == TrieSymbol::var(0));
}

TEST_CASE("linearize walks structures pre-order") {
  Engine eng;
  TermRef x = eng.var();
  std::vector<TermRef> inner_elems = {eng.atom("a")};
  TermRef lst = eng.list(inner_elems, x);  // [a|X]
  std::vector<TermRef> fargs = {eng.intn(1), lst, x};
  TermRef t = eng.compound("f", fargs);
  std::vector<TermRef> args = {t};
  auto syms = linearize(args, false, eng.binds(), eng.store());

  REQUIRE(syms.size() == 6);
  CHECK(syms[0] == TrieSymbol::functor(Functor{eng.atoms().intern("f"), 3}));
  CHECK(syms[1] == TrieSymbol::integer(1));
  CHECK(syms[2] == TrieSymbol::list());
  CHECK(syms[3] == TrieSymbol::atom(eng.atoms().intern("a")));
  CHECK(syms[4] == TrieSymbol::var(0));
  CHECK(syms[5] == TrieSymbol::var(0));
}

TEST_CASE("linearize reads through bindings") {
  Engine eng;
  TermRef x = eng.var();
  REQUIRE(unify(x, eng.intn(9), eng.binds(), eng.store()));
  std::vector<TermRef> args = {x};
  auto syms = linearize(args, false, eng.binds(), eng.store());
  REQUIRE(syms.size() == 1);
  CHECK(syms[0] == TrieSymbol::integer(9));
}

TEST_CASE("intern mode collapses an interned record to one symbol") {
  Engine eng;
  std::vector<TermRef> elems = {eng.intn(1), eng.intn(2), eng.intn(3)};
  TermRef lst = eng.list(elems, eng.atom("[]"));
  TermRef h = eng.interns().intern_term(lst, eng.binds());

  std::vector<TermRef> args = {h};
  auto one = linearize(args, true, eng.binds(), eng.store());
  REQUIRE(one.size() == 1);
  CHECK(one[0] == TrieSymbol::interned(h));

  // The same handle linearized structurally matches the heap layout.
  auto full = linearize(args, false, eng.binds(), eng.store());
  std::vector<TermRef> heap_args = {lst};
  auto heap_syms = linearize(heap_args, false, eng.binds(), eng.store());
  REQUIRE(full.size() == heap_syms.size());
  for (size_t i = 0; i < full.size(); i++) CHECK(full[i] == heap_syms[i]);
}

TEST_CASE("decode_sequence inverts linearize up to variable renaming") {
  Engine eng;
  oracle::SplitMix64 rng(31337);
  for (int i = 0; i < 300; i++) {
    std::vector<TermRef> pool;
    std::vector<TermRef> args;
    size_t n = 1 + rng.below(3);
    for (size_t k = 0; k < n; k++)
      args.push_back(oracle::random_mixed(eng, rng, 3, pool));
    bool intern_mode = rng.below(2) == 0;
    if (intern_mode)
      for (auto& a : args) a = eng.interns().intern_term(a, eng.binds());

    auto syms = linearize(args, intern_mode, eng.binds(), eng.store());
    auto back = decode_sequence(syms, eng.store(), eng.binds());
    REQUIRE(back.size() == args.size());
    std::vector<TermRef> whole_a = {eng.list(args, eng.atom("[]"))};
    std::vector<TermRef> whole_b = {eng.list(back, eng.atom("[]"))};
    CHECK(oracle::is_variant(whole_a[0], whole_b[0], eng.binds(), eng.store()));
  }
}

TEST_CASE("variant calls map to the same trie path, non-variants to different ones") {
  Engine eng;
  Trie t(false);
  TermRef x = eng.var();
  TermRef y = eng.var();
  std::vector<TermRef> c1 = {x, eng.intn(1), x};
  std::vector<TermRef> c2 = {y, eng.intn(1), y};   // variant of c1
  std::vector<TermRef> c3 = {x, eng.intn(1), y};   // not a variant: x,y distinct
  auto r1 = t.insert(linearize(c1, false, eng.binds(), eng.store()));
  auto r2 = t.insert(linearize(c2, false, eng.binds(), eng.store()));
  auto r3 = t.insert(linearize(c3, false, eng.binds(), eng.store()));
  CHECK(r1.is_new);
  CHECK_FALSE(r2.is_new);
  CHECK(r2.leaf == r1.leaf);
  CHECK(r3.is_new);
  CHECK(r3.leaf != r1.leaf);
}
