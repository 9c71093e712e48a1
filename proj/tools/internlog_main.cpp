// Command-line front end. Deliberately speaks only the public C API so it
// doubles as a smoke test of the shared library surface.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "internlog.h"

namespace {

constexpr uint64_t kDefaultNodeBudget = 50000000ULL;

void print_stats(const ilog_engine* eng) {
  ilog_intern_stats is{};
  ilog_table_stats ts{};
  ilog_get_intern_stats(eng, &is);
  ilog_get_table_stats(eng, &ts);
  std::cout << "intern: records=" << is.records
            << " list_records=" << is.list_records
            << " cells=" << is.cells_used
            << " bytes=" << is.bytes_estimate
            << " probes=" << is.probes
            << " resizes=" << is.resizes << "\n";
  std::cout << "tables: entries=" << ts.entries
            << " nodes=" << ts.nodes
            << " leaves=" << ts.leaves
            << " call_symbols=" << ts.call_symbols
            << " answer_symbols=" << ts.answer_symbols
            << " bytes=" << ts.bytes_estimate << "\n";
}

int run_command(const std::string& file, const std::string& goal, bool stats) {
  ilog_engine* eng = ilog_engine_new();
  if (!eng) {
    std::cerr << "error: engine allocation failed\n";
    return 2;
  }
  if (ilog_consult_file(eng, file.c_str()) != ILOG_OK) {
    std::cerr << "error: " << ilog_last_error(eng) << "\n";
    ilog_engine_free(eng);
    return 2;
  }
  ilog_query* q = nullptr;
  if (ilog_query_open(eng, goal.c_str(), &q) != ILOG_OK) {
    std::cerr << "error: " << ilog_last_error(eng) << "\n";
    ilog_engine_free(eng);
    return 2;
  }
  size_t count = ilog_query_count(q);
  for (size_t i = 0; i < count; i++)
    std::cout << ilog_query_answer(q, i) << "\n";
  if (count == 0) std::cout << "no\n";
  if (stats) print_stats(eng);
  ilog_query_close(q);
  ilog_engine_free(eng);
  return count > 0 ? 0 : 1;
}

int bench_command(const std::string& name, uint64_t n, const std::string& mode,
                  uint64_t seed, const std::string& csv_path, uint64_t max_nodes) {
  ilog_bench_row row;
  ilog_status st =
      ilog_bench_run(name.c_str(), n, mode.c_str(), seed, max_nodes, &row);
  if (st != ILOG_OK) {
    std::cerr << "error: " << ilog_bench_last_error() << "\n";
    return 2;
  }
  char line[512];
  ilog_bench_csv_row(&row, line, sizeof line);
  if (csv_path.empty()) {
    std::cout << ilog_bench_csv_header() << "\n" << line << "\n";
    return 0;
  }
  bool need_header = true;
  {
    std::ifstream probe(csv_path, std::ios::binary | std::ios::ate);
    if (probe.good() && probe.tellg() > 0) need_header = false;
  }
  std::ofstream out(csv_path, std::ios::app);
  if (!out) {
    std::cerr << "error: cannot open " << csv_path << "\n";
    return 2;
  }
  if (need_header) out << ilog_bench_csv_header() << "\n";
  out << line << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabled logic engine with hash-consed ground terms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ilog_version()));

  auto* run = app.add_subcommand("run", "Consult a program file and prove a goal");
  std::string file;
  std::string goal;
  bool stats = false;
  run->add_option("file", file, "Program file to consult")->required();
  run->add_option("--query", goal, "Goal text, e.g. 'islist([1,2,3])'")->required();
  run->add_flag("--stats", stats, "Print intern and table statistics after the answers");

  auto* bench = app.add_subcommand("bench", "Run a named benchmark and emit a CSV row");
  std::string name;
  std::string mode;
  std::string csv_path;
  uint64_t n = 0;
  uint64_t seed = 1;
  uint64_t max_nodes = kDefaultNodeBudget;
  bench->add_option("name", name, "One of intern_list, islist, epal, lr, find")
      ->required()
      ->check(CLI::IsMember({"intern_list", "islist", "epal", "lr", "find"}));
  bench->add_option("--n", n, "Input size (list length)")
      ->required()
      ->check(CLI::PositiveNumber);
  bench->add_option("--mode", mode, "intern or plain")
      ->required()
      ->check(CLI::IsMember({"intern", "plain"}));
  bench->add_option("--seed", seed, "PRNG seed (default 1)");
  bench->add_option("--csv", csv_path,
                    "Append the row to this file (header written when empty)");
  bench->add_option("--max-table-nodes", max_nodes,
                    "Table node budget; overruns produce an xx row")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) return run_command(file, goal, stats);
  return bench_command(name, n, mode, seed, csv_path, max_nodes);
}
