#pragma once

#include <unordered_map>
#include <vector>

#include "trie.hpp"

namespace ilog {

// A clause stored as one linearized symbol sequence: the head argument
// tuple followed by the body goals, sharing variable numbering.  Decoding
// the sequence yields a fresh renaming, so every clause try is a copy.
struct ClauseCode {
  std::vector<TrieSymbol> syms;
  uint32_t nargs = 0;
  uint32_t ngoals = 0;
};

// Static (consulted, non-dynamic) predicate definitions.
class Program {
 public:
  void add_clause(Functor pred, ClauseCode code) {
    preds_[pred.word()].push_back(std::move(code));
  }

  const std::vector<ClauseCode>* find(Functor pred) const {
    auto it = preds_.find(pred.word());
    return it == preds_.end() ? nullptr : &it->second;
  }

  bool defined(Functor pred) const { return preds_.count(pred.word()) != 0; }

 private:
  std::unordered_map<uint64_t, std::vector<ClauseCode>> preds_;
};

}  // namespace ilog
