#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "term.hpp"

namespace ilog {

// Name <-> id map for atoms. Interning is idempotent; ids are dense and never
// reused. Chained hashing with load factor 2.
class AtomTable {
public:
  AtomTable() { ids_.max_load_factor(2.0f); }

  AtomId intern(std::string_view name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    AtomId id = static_cast<AtomId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  const std::string& name(AtomId id) const { return names_[id]; }
  size_t size() const { return names_.size(); }

private:
  // Keys are owned copies; heterogeneous lookup avoids allocating on probes.
  struct Hash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    size_t operator()(const std::string& s) const { return std::hash<std::string_view>{}(s); }
  };
  struct Eq {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const { return a == b; }
  };

  std::unordered_map<std::string, AtomId, Hash, Eq> ids_;
  std::vector<std::string> names_;
};

}  // namespace ilog
