#include "bench.hpp"

#include <array>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"

namespace ilog {

namespace {

double cpu_now_ms() {
  return 1000.0 * static_cast<double>(std::clock()) / CLOCKS_PER_SEC;
}

std::string table_decl(const char* indicator, bool interned) {
  std::string d = ":- table ";
  d += indicator;
  if (interned) d += " as intern";
  d += ".\n";
  return d;
}

std::string islist_program(bool interned) {
  return table_decl("islist/1", interned) +
         "islist([]).\n"
         "islist([_|L]) :- islist(L).\n";
}

std::string epal_program(bool interned) {
  return table_decl("epal/2", interned) +
         "epal --> [].\n"
         "epal --> [X], epal, [X].\n";
}

std::string lr_program(bool interned) {
  return table_decl("lr/2", interned) +
         "lr --> [].\n"
         "lr --> lr, [1].\n"
         "lr --> lr, [2].\n"
         "lr --> lr, [3].\n";
}

std::string find_program(bool interned) {
  return "find(Ent, Len, SortedList) :-\n"
         "    Len > 0,\n"
         "    split_sorted(Len, SortedList, LoList, HiList),\n"
         "    HiList = [Mid|_],\n"
         "    (Mid == Ent\n"
         "     -> true\n"
         "     ;  LoLen is Len // 2,\n"
         "        (Ent @< Mid\n"
         "         -> find(Ent, LoLen, LoList)\n"
         "         ;  HiLen is Len - LoLen, HiLen > 1,\n"
         "            find(Ent, HiLen, HiList))).\n" +
         table_decl("split_sorted/4", interned) +
         "split_sorted(Len, List, LoList, HiList) :-\n"
         "    Len1 is Len // 2,\n"
         "    split_off(Len1, List, LoList, HiList).\n"
         "split_off(Len, List, LoList, HiList) :-\n"
         "    (Len =< 0\n"
         "     -> LoList = [], HiList = List\n"
         "     ;  List = [X|List1], LoList = [X|LoList1],\n"
         "        Len1 is Len - 1,\n"
         "        split_off(Len1, List1, LoList1, HiList)).\n";
}

std::vector<int64_t> distinct_ints(SplitMix64& rng, uint64_t n) {
  std::unordered_set<int64_t> seen;
  std::vector<int64_t> out;
  out.reserve(n);
  while (out.size() < n) {
    auto v = static_cast<int64_t>(rng.below(uint64_t{1} << 40));
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

TermRef int_list(Engine& eng, const std::vector<int64_t>& vals) {
  std::vector<TermRef> elems;
  elems.reserve(vals.size());
  for (int64_t v : vals) elems.push_back(eng.intn(v));
  return eng.list(elems, eng.atom("[]"));
}

void ignore_answer(std::span<const TermRef>) {}

}  // namespace

BenchRow run_bench(const std::string& name, uint64_t n, const std::string& mode,
                   uint64_t seed, uint64_t max_table_nodes) {
  BenchRow row;
  row.bench = name;
  row.n = n;
  row.mode = mode;
  const bool interned = (mode == "intern");

  Engine eng;
  eng.tables().set_node_budget(max_table_nodes);
  SplitMix64 rng(seed);

  try {
    if (name == "intern_list") {
      TermRef list = int_list(eng, distinct_ints(rng, n));
      double t0 = cpu_now_ms();
      eng.interns().intern_term(list, eng.binds());
      row.cpu_ms = cpu_now_ms() - t0;
      row.result = std::to_string(eng.interns().record_count());
    } else if (name == "islist") {
      eng.consult_text(islist_program(interned));
      TermRef list = int_list(eng, distinct_ints(rng, n));
      std::array<TermRef, 1> args = {list};
      TermRef goal = eng.compound("islist", args);
      double t0 = cpu_now_ms();
      size_t k = eng.solve(goal, {}, ignore_answer);
      row.cpu_ms = cpu_now_ms() - t0;
      row.result = k > 0 ? "recognized" : "rejected";
    } else if (name == "epal") {
      eng.consult_text(epal_program(interned));
      std::vector<int64_t> half;
      half.reserve(n / 2);
      for (uint64_t i = 0; i < n / 2; i++)
        half.push_back(static_cast<int64_t>(1 + rng.below(10000000)));
      std::vector<int64_t> vals = half;
      vals.insert(vals.end(), half.rbegin(), half.rend());
      TermRef list = int_list(eng, vals);
      std::array<TermRef, 2> args = {list, eng.atom("[]")};
      TermRef goal = eng.compound("epal", args);
      double t0 = cpu_now_ms();
      size_t k = eng.solve(goal, {}, ignore_answer);
      row.cpu_ms = cpu_now_ms() - t0;
      row.result = k > 0 ? "recognized" : "rejected";
    } else if (name == "lr") {
      eng.consult_text(lr_program(interned));
      std::vector<int64_t> vals;
      vals.reserve(n);
      for (uint64_t i = 0; i < n; i++)
        vals.push_back(static_cast<int64_t>(1 + rng.below(3)));
      TermRef list = int_list(eng, vals);
      std::array<TermRef, 2> args = {list, eng.atom("[]")};
      TermRef goal = eng.compound("lr", args);
      double t0 = cpu_now_ms();
      size_t k = eng.solve(goal, {}, ignore_answer);
      row.cpu_ms = cpu_now_ms() - t0;
      row.result = k > 0 ? "recognized" : "rejected";
    } else if (name == "find") {
      eng.consult_text(find_program(interned));
      std::vector<int64_t> vals;
      vals.reserve(n);
      for (uint64_t i = 0; i < n; i++) vals.push_back(static_cast<int64_t>(2 * i));
      TermRef list = int_list(eng, vals);
      double t0 = cpu_now_ms();
      // Intern the input once, up front; every probe then shares the
      // canonical list instead of re-walking (or re-copying) n cells.
      TermRef canon = eng.interns().intern_term(list, eng.binds());
      size_t hits = 0;
      for (int i = 1; i <= 100; i++) {
        std::array<TermRef, 3> args = {eng.intn(100 * i + 1),
                                       eng.intn(static_cast<int64_t>(n)), canon};
        TermRef goal = eng.compound("find", args);
        hits += eng.solve(goal, {}, ignore_answer);
      }
      row.cpu_ms = cpu_now_ms() - t0;
      row.result = hits > 0 ? "recognized" : "rejected";
    } else {
      throw EvalError("unknown benchmark: " + name);
    }
  } catch (const BudgetExceededError&) {
    row.exceeded = true;
    row.result = "xx";
  }

  auto ts = eng.tables().stats();
  auto is = eng.interns().stats();
  row.trie_nodes = ts.nodes;
  row.table_bytes = ts.bytes_estimate;
  row.intern_records = is.records;
  row.intern_bytes = is.bytes_estimate;
  return row;
}

std::string bench_csv_header() {
  return "bench,n,mode,cpu_ms,trie_nodes,table_bytes,intern_records,intern_bytes,result";
}

std::string bench_row_csv(const BenchRow& row) {
  std::ostringstream out;
  out << row.bench << ',' << row.n << ',' << row.mode << ',';
  if (row.exceeded) {
    out << "xx,xx,xx,xx,xx,xx";
  } else {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", row.cpu_ms);
    out << ms << ',' << row.trie_nodes << ',' << row.table_bytes << ','
        << row.intern_records << ',' << row.intern_bytes << ',' << row.result;
  }
  return out.str();
}

}  // namespace ilog
