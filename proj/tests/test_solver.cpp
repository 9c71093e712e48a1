#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "engine.hpp"
#include "oracles.hpp"

using namespace ilog;

namespace {

std::vector<std::string> answers(Engine& eng, const std::string& goal) {
  std::vector<std::string> out;
  eng.solve_text(goal, [&](const std::string& line) { out.push_back(line); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("plain resolution: facts, rules, conjunction") {
  Engine eng;
  eng.consult_text(
      "p(1). p(2). p(3).\n"
      "q(X) :- p(X), X > 1.\n");
  CHECK(answers(eng, "q(X)") == std::vector<std::string>{"X = 2", "X = 3"});
  CHECK(answers(eng, "q(2)") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "q(1)").empty());
}

TEST_CASE("disjunction explores both branches in order") {
  Engine eng;
  eng.consult_text("r(X) :- (X = a ; X = b).\n");
  std::vector<std::string> got;
  eng.solve_text("r(X)", [&](const std::string& l) { got.push_back(l); });
  CHECK(got == std::vector<std::string>{"X = a", "X = b"});
}

TEST_CASE("if-then-else commits to the first condition solution") {
  Engine eng;
  eng.consult_text(
      "c(1). c(2).\n"
      "pick(Y) :- (c(X) -> Y = X ; Y = none).\n"
      "alt(Y) :- (c(9) -> Y = found ; Y = fallback).\n");
  CHECK(answers(eng, "pick(Y)") == std::vector<std::string>{"Y = 1"});
  CHECK(answers(eng, "alt(Y)") == std::vector<std::string>{"Y = fallback"});
}

TEST_CASE("nested if-then-else keeps commits separate") {
  Engine eng;
  eng.consult_text(
      "grade(N, G) :- (N >= 90 -> G = a ; (N >= 60 -> G = pass ; G = fail)).\n");
  CHECK(answers(eng, "grade(95, G)") == std::vector<std::string>{"G = a"});
  CHECK(answers(eng, "grade(70, G)") == std::vector<std::string>{"G = pass"});
  CHECK(answers(eng, "grade(10, G)") == std::vector<std::string>{"G = fail"});
}

TEST_CASE("arithmetic and comparison builtins") {
  Engine eng;
  CHECK(answers(eng, "X is 2 + 3 * 4") == std::vector<std::string>{"X = 14"});
  CHECK(answers(eng, "X is 7 // 2") == std::vector<std::string>{"X = 3"});
  CHECK(answers(eng, "X is -7 // 2") == std::vector<std::string>{"X = -4"});
  CHECK(answers(eng, "X is 2 - 5") == std::vector<std::string>{"X = -3"});
  CHECK(answers(eng, "1 + 1 =:= 2") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "3 > 2, 2 >= 2, 1 < 2, 2 =< 2") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "3 > 4").empty());
  CHECK_THROWS_AS(answers(eng, "X is Y + 1"), InstantiationError);
  Engine eng2;
  CHECK_THROWS_AS(answers(eng2, "X is a + 1"), TypeError);
}

TEST_CASE("structural equality and standard order builtins") {
  Engine eng;
  CHECK(answers(eng, "f(1, [2]) == f(1, [2])") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "f(1) == f(2)").empty());
  CHECK(answers(eng, "f(1) \\== f(2)") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "abc @< abd") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "2 @< abc") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "X == Y").empty());
  CHECK(answers(eng, "X == X") == std::vector<std::string>{"yes"});
}

TEST_CASE("between/3 enumerates and checks") {
  Engine eng;
  CHECK(answers(eng, "between(1, 3, X)") ==
        std::vector<std::string>{"X = 1", "X = 2", "X = 3"});
  CHECK(answers(eng, "between(1, 3, 2)") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "between(1, 3, 7)").empty());
  CHECK(answers(eng, "between(2, 1, X)").empty());
}

TEST_CASE("ground, copy_term and intern_term builtins") {
  Engine eng;
  CHECK(answers(eng, "ground(f(1, [a]))") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "ground(f(1, [X]))").empty());
  // The copy shares structure among its own variables but not the original's.
  CHECK(answers(eng, "copy_term(f(A, A), C), C = f(1, One), One == 1").size() == 1);
  CHECK(answers(eng, "copy_term(f(A), C), A = 1, C == f(1)").empty());
  CHECK(answers(eng, "intern_term([1,2,3], L), L == [1,2,3]").size() == 1);
  CHECK(eng.interns().record_count() >= 3);
}

TEST_CASE("tabled proper-list check: islist") {
  Engine eng;
  eng.consult_text(
      ":- table islist/1 as intern.\n"
      "islist([]).\n"
      "islist([_|L]) :- islist(L).\n");
  CHECK(answers(eng, "islist([1,2,3])") == std::vector<std::string>{"yes"});
  // The run tables the query list and every suffix: [1,2,3],[2,3],[3],[].
  CHECK(eng.tables().entry_count() == 4);
  CHECK(answers(eng, "islist([1|foo])").empty());
  CHECK(answers(eng, "islist(7)").empty());
}

TEST_CASE("repeating a completed call reuses the table") {
  Engine eng;
  eng.consult_text(
      ":- table islist/1.\n"
      "islist([]).\n"
      "islist([_|L]) :- islist(L).\n");
  CHECK(answers(eng, "islist([1,2,3])") == std::vector<std::string>{"yes"});
  uint64_t producers_before = eng.solve_stats().producer_invocations;
  size_t entries_before = eng.tables().entry_count();
  CHECK(answers(eng, "islist([1,2,3])") == std::vector<std::string>{"yes"});
  CHECK(eng.solve_stats().producer_invocations == producers_before);
  CHECK(eng.tables().entry_count() == entries_before);
}

TEST_CASE("left-recursive grammar terminates under tabling") {
  Engine eng;
  eng.consult_text(
      ":- table lr/2.\n"
      "lr --> [].\n"
      "lr --> lr, [1].\n"
      "lr --> lr, [2].\n"
      "lr --> lr, [3].\n");
  CHECK(answers(eng, "lr([1,2,3], [])") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "lr([2,2,1,3,1], [])") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "lr([4], [])").empty());
  CHECK(answers(eng, "lr([1,4,1], [])").empty());
  CHECK(answers(eng, "lr([], [])") == std::vector<std::string>{"yes"});
}

TEST_CASE("even palindrome grammar") {
  Engine eng;
  eng.consult_text(
      ":- table epal/2 as intern.\n"
      "epal --> [].\n"
      "epal --> [X], epal, [X].\n");
  CHECK(answers(eng, "epal([1,2,2,1], [])") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "epal([1,2], [])").empty());
  CHECK(answers(eng, "epal([1,1,1], [])").empty());  // odd length
  CHECK(answers(eng, "epal([], [])") == std::vector<std::string>{"yes"});
  // Open remainder: the empty parse and the full parse.
  CHECK(answers(eng, "epal([1,1], R)") ==
        std::vector<std::string>{"R = [1,1]", "R = []"});
}

TEST_CASE("binary search over an interned sorted list") {
  Engine eng;
  eng.consult_text(
      "find(Ent, Len, SortedList) :-\n"
      "    Len > 0,\n"
      "    split_sorted(Len, SortedList, LoList, HiList),\n"
      "    HiList = [Mid|_],\n"
      "    (Mid == Ent\n"
      "     -> true\n"
      "     ;  LoLen is Len // 2,\n"
      "        (Ent @< Mid\n"
      "         -> find(Ent, LoLen, LoList)\n"
      "         ;  HiLen is Len - LoLen, HiLen > 1,\n"
      "            find(Ent, HiLen, HiList))).\n"
      ":- table split_sorted/4 as intern.\n"
      "split_sorted(Len, List, LoList, HiList) :-\n"
      "    Len1 is Len // 2,\n"
      "    split_off(Len1, List, LoList, HiList).\n"
      "split_off(Len, List, LoList, HiList) :-\n"
      "    (Len =< 0\n"
      "     -> LoList = [], HiList = List\n"
      "     ;  List = [X|List1], LoList = [X|LoList1],\n"
      "        Len1 is Len - 1,\n"
      "        split_off(Len1, List1, LoList1, HiList)).\n");
  CHECK(answers(eng, "find(6, 5, [2,4,6,8,10])") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "find(2, 5, [2,4,6,8,10])") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "find(10, 5, [2,4,6,8,10])") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "find(5, 5, [2,4,6,8,10])").empty());
  CHECK(answers(eng, "find(11, 5, [2,4,6,8,10])").empty());
}

TEST_CASE("mutually recursive tabled predicates complete together") {
  Engine eng;
  eng.consult_text(
      ":- table p/0.\n"
      ":- table q/0.\n"
      "p :- q.\n"
      "q :- p.\n"
      "p.\n");
  CHECK(answers(eng, "p") == std::vector<std::string>{"yes"});
  CHECK(answers(eng, "q") == std::vector<std::string>{"yes"});
}

TEST_CASE("unproductive loops fail finitely") {
  Engine eng;
  eng.consult_text(
      ":- table a/0.\n"
      ":- table b/0.\n"
      "a :- b.\n"
      "b :- a.\n");
  CHECK(answers(eng, "a").empty());
  CHECK(answers(eng, "b").empty());
}

TEST_CASE("answers are deduplicated by variant") {
  Engine eng;
  eng.consult_text(
      ":- table r/1.\n"
      "r(1).\n"
      "r(1).\n"
      "r(X) :- r(X).\n");
  CHECK(answers(eng, "r(X)") == std::vector<std::string>{"X = 1"});
}

TEST_CASE("tabled reachability over cyclic graphs") {
  Engine eng;
  eng.consult_text(
      ":- table reach/2.\n"
      "edge(a, b). edge(b, c). edge(c, a). edge(c, d).\n"
      "reach(X, Y) :- edge(X, Y).\n"
      "reach(X, Z) :- reach(X, Y), edge(Y, Z).\n");
  CHECK(answers(eng, "reach(a, X)") ==
        std::vector<std::string>{"X = a", "X = b", "X = c", "X = d"});
  CHECK(answers(eng, "reach(d, X)").empty());
}

TEST_CASE("intern and plain table modes prove the same answers") {
  for (int shape = 0; shape < 2; shape++) {
    std::string prog =
        "edge(n(1,[a]), n(2,[b])). edge(n(2,[b]), n(3,[c])).\n"
        "edge(n(3,[c]), n(1,[a])). edge(n(1,[a]), n(4,[d])).\n"
        "reach(X, Y) :- edge(X, Y).\n"
        "reach(X, Z) :- reach(X, Y), edge(Y, Z).\n";
    Engine plain;
    plain.consult_text(":- table reach/2.\n" + prog);
    Engine interned;
    interned.consult_text(":- table reach/2 as intern.\n" + prog);
    auto a = answers(plain, "reach(n(1,[a]), X)");
    auto b = answers(interned, "reach(n(1,[a]), X)");
    CHECK(a == b);
    CHECK(a.size() == 4);
  }
}

TEST_CASE("an arity-0 tabled predicate uses the empty call path") {
  Engine eng;
  eng.consult_text(
      ":- table t/0.\n"
      "t :- t.\n"
      "t.\n");
  CHECK(answers(eng, "t") == std::vector<std::string>{"yes"});
}

TEST_CASE("a tabled call inside an if-then-else condition is refused") {
  Engine eng;
  eng.consult_text(
      ":- table p/1.\n"
      "p(1).\n"
      "q(Y) :- (p(X) -> Y = X ; Y = none).\n");
  CHECK_THROWS_AS(answers(eng, "q(Y)"), EvalError);
  CHECK(eng.poisoned());
  CHECK_THROWS_AS(answers(eng, "p(1)"), EvalError);
}

TEST_CASE("the node budget turns runaway tables into an error") {
  Engine eng;
  eng.tables().set_node_budget(50);
  eng.consult_text(
      ":- table islist/1.\n"
      "islist([]).\n"
      "islist([_|L]) :- islist(L).\n");
  CHECK_THROWS_AS(answers(eng, "islist([1,2,3,4,5,6,7,8,9,10,11,12,13,14,15])"),
                  BudgetExceededError);
  CHECK(eng.poisoned());
}

TEST_CASE("calling an undefined predicate is an error") {
  Engine eng;
  eng.consult_text("p(1).\n");
  CHECK_THROWS_AS(answers(eng, "missing(1)"), UndefinedPredicateError);
}

TEST_CASE("query variables render through delivered answers") {
  Engine eng;
  eng.consult_text(
      ":- table num/1.\n"
      "num(1). num(2).\n"
      "pair(X, Y) :- num(X), num(Y).\n");
  CHECK(answers(eng, "pair(X, Y)") ==
        std::vector<std::string>{"X = 1, Y = 1", "X = 1, Y = 2", "X = 2, Y = 1",
                                 "X = 2, Y = 2"});
}

TEST_CASE("heap and variable scratch space is reclaimed between queries") {
  Engine eng;
  eng.consult_text(
      ":- table islist/1 as intern.\n"
      "islist([]).\n"
      "islist([_|L]) :- islist(L).\n");
  REQUIRE(answers(eng, "islist([1,2,3,4,5,6,7,8])") == std::vector<std::string>{"yes"});
  size_t heap = eng.store().heap_size();
  size_t vars = eng.binds().var_count();
  REQUIRE(answers(eng, "islist([9,10,11,12])") == std::vector<std::string>{"yes"});
  CHECK(eng.store().heap_size() == heap);
  CHECK(eng.binds().var_count() == vars);
}
