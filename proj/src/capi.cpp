#include "internlog.h"

#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "bench.hpp"
#include "engine.hpp"
#include "errors.hpp"

struct ilog_engine {
  ilog::Engine eng;
  std::string last_error;
};

struct ilog_query {
  std::vector<std::string> answers;
};

namespace {

std::string g_bench_error;

ilog_status status_of(const std::exception& ex) {
  if (dynamic_cast<const ilog::SyntaxError*>(&ex)) return ILOG_ERR_SYNTAX;
  if (dynamic_cast<const ilog::UnknownDirectiveError*>(&ex)) return ILOG_ERR_SYNTAX;
  if (dynamic_cast<const ilog::BudgetExceededError*>(&ex)) return ILOG_ERR_BUDGET;
  if (dynamic_cast<const ilog::IoError*>(&ex)) return ILOG_ERR_IO;
  return ILOG_ERR_EVAL;
}

ilog_status fail(ilog_engine* e, const std::exception& ex) {
  e->last_error = ex.what();
  return status_of(ex);
}

void copy_field(char* dst, size_t cap, const std::string& src) {
  std::snprintf(dst, cap, "%s", src.c_str());
}

}  // namespace

extern "C" {

const char* ilog_version(void) { return "internlog 1.0.0"; }

ilog_engine* ilog_engine_new(void) {
  try {
    return new ilog_engine();
  } catch (...) {
    return nullptr;
  }
}

void ilog_engine_free(ilog_engine* e) { delete e; }

const char* ilog_last_error(const ilog_engine* e) {
  return e ? e->last_error.c_str() : "null engine";
}

ilog_status ilog_consult_text(ilog_engine* e, const char* text) {
  if (!e || !text) return ILOG_ERR_INVALID;
  try {
    e->eng.consult_text(text);
    return ILOG_OK;
  } catch (const std::exception& ex) {
    return fail(e, ex);
  }
}

ilog_status ilog_consult_file(ilog_engine* e, const char* path) {
  if (!e || !path) return ILOG_ERR_INVALID;
  try {
    e->eng.consult_file(path);
    return ILOG_OK;
  } catch (const std::exception& ex) {
    return fail(e, ex);
  }
}

ilog_status ilog_set_table_node_budget(ilog_engine* e, uint64_t nodes) {
  if (!e || nodes == 0) return ILOG_ERR_INVALID;
  e->eng.tables().set_node_budget(nodes);
  return ILOG_OK;
}

ilog_status ilog_query_open(ilog_engine* e, const char* goal_text,
                            ilog_query** out) {
  if (!e || !goal_text || !out) return ILOG_ERR_INVALID;
  *out = nullptr;
  auto q = std::make_unique<ilog_query>();
  try {
    e->eng.solve_text(goal_text,
                      [&](const std::string& line) { q->answers.push_back(line); });
  } catch (const std::exception& ex) {
    return fail(e, ex);
  }
  *out = q.release();
  return ILOG_OK;
}

size_t ilog_query_count(const ilog_query* q) { return q ? q->answers.size() : 0; }

const char* ilog_query_answer(const ilog_query* q, size_t i) {
  if (!q || i >= q->answers.size()) return nullptr;
  return q->answers[i].c_str();
}

void ilog_query_close(ilog_query* q) { delete q; }

ilog_status ilog_get_intern_stats(const ilog_engine* e, ilog_intern_stats* out) {
  if (!e || !out) return ILOG_ERR_INVALID;
  auto s = const_cast<ilog_engine*>(e)->eng.interns().stats();
  out->records = s.records;
  out->list_records = s.list_records;
  out->cells_used = s.cells_used;
  out->bytes_estimate = s.bytes_estimate;
  out->probes = s.probes;
  out->resizes = s.resizes;
  return ILOG_OK;
}

ilog_status ilog_get_table_stats(const ilog_engine* e, ilog_table_stats* out) {
  if (!e || !out) return ILOG_ERR_INVALID;
  auto s = const_cast<ilog_engine*>(e)->eng.tables().stats();
  out->nodes = s.nodes;
  out->leaves = s.leaves;
  out->call_symbols = s.call_symbols;
  out->answer_symbols = s.answer_symbols;
  out->bytes_estimate = s.bytes_estimate;
  out->entries = s.entries;
  return ILOG_OK;
}

ilog_status ilog_bench_run(const char* name, uint64_t n, const char* mode,
                           uint64_t seed, uint64_t max_table_nodes,
                           ilog_bench_row* out) {
  if (!name || !mode || !out || n == 0 || max_table_nodes == 0)
    return ILOG_ERR_INVALID;
  std::string m(mode);
  if (m != "intern" && m != "plain") return ILOG_ERR_INVALID;
  try {
    ilog::BenchRow row = ilog::run_bench(name, n, m, seed, max_table_nodes);
    copy_field(out->bench, sizeof out->bench, row.bench);
    out->n = row.n;
    copy_field(out->mode, sizeof out->mode, row.mode);
    out->cpu_ms = row.cpu_ms;
    out->trie_nodes = row.trie_nodes;
    out->table_bytes = row.table_bytes;
    out->intern_records = row.intern_records;
    out->intern_bytes = row.intern_bytes;
    copy_field(out->result, sizeof out->result, row.result);
    out->exceeded = row.exceeded ? 1 : 0;
    return ILOG_OK;
  } catch (const std::exception& ex) {
    g_bench_error = ex.what();
    return status_of(ex);
  }
}

const char* ilog_bench_last_error(void) { return g_bench_error.c_str(); }

const char* ilog_bench_csv_header(void) {
  static const std::string header = ilog::bench_csv_header();
  return header.c_str();
}

int ilog_bench_csv_row(const ilog_bench_row* row, char* buf, size_t cap) {
  if (!row || (!buf && cap > 0)) return -1;
  ilog::BenchRow r;
  r.bench = row->bench;
  r.n = row->n;
  r.mode = row->mode;
  r.cpu_ms = row->cpu_ms;
  r.trie_nodes = row->trie_nodes;
  r.table_bytes = row->table_bytes;
  r.intern_records = row->intern_records;
  r.intern_bytes = row->intern_bytes;
  r.result = row->result;
  r.exceeded = row->exceeded != 0;
  std::string line = ilog::bench_row_csv(r);
  if (cap > 0) std::snprintf(buf, cap, "%s", line.c_str());
  return static_cast<int>(line.size());
}

}  // extern "C"
