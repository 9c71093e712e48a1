#pragma once

#include <cstdint>
#include <cstddef>

namespace ilog {

using AtomId = uint32_t;

// Term reference tags. Var/Int/Atom/Nil are immediate; Struct/List refer to a
// record in one of the two regions (evaluation heap or intern store).
enum class Tag : uint8_t { Var = 0, Int, Atom, Nil, Struct, List };

enum class Region : uint8_t { Heap = 0, Interned = 1 };

// A structure symbol: atom id plus arity. Packs into one record word.
struct Functor {
  AtomId name = 0;
  uint32_t arity = 0;

  uint64_t word() const {
    return (static_cast<uint64_t>(name) << 32) | arity;
  }
  static Functor from_word(uint64_t w) {
    return Functor{static_cast<AtomId>(w >> 32), static_cast<uint32_t>(w & 0xffffffffu)};
  }
  bool operator==(const Functor& o) const { return name == o.name && arity == o.arity; }
  bool operator!=(const Functor& o) const { return !(*this == o); }
};

// One tagged machine word:
//
//   bits 0..2   tag
//   bit  3      region (meaningful for Struct/List only)
//   bits 4..63  payload: var id, signed 60-bit integer, atom id, or the cell
//               index of the referred record in its region's arena
//
// Struct payloads point at the record's functor word (arguments follow);
// List payloads point at the head word (tail follows). The layout is the same
// in both regions, so readers never care where a record lives; the region bit
// exists because canonicity guarantees (handle equality, unify fast paths)
// hold only for interned records.
class TermRef {
public:
  static constexpr int64_t kIntMax = (int64_t{1} << 59) - 1;
  static constexpr int64_t kIntMin = -(int64_t{1} << 59);

  constexpr TermRef() : bits_(make_bits(Tag::Nil, 0, 0)) {}

  static TermRef variable(uint32_t id) { return TermRef(make_bits(Tag::Var, 0, id)); }
  static TermRef integer(int64_t v) {
    return TermRef((static_cast<uint64_t>(v) << 4) | static_cast<uint64_t>(Tag::Int));
  }
  static TermRef atom(AtomId id) { return TermRef(make_bits(Tag::Atom, 0, id)); }
  static TermRef nil() { return TermRef(); }
  static TermRef structure(uint64_t cell, Region r) {
    return TermRef(make_bits(Tag::Struct, static_cast<uint8_t>(r), cell));
  }
  static TermRef list(uint64_t cell, Region r) {
    return TermRef(make_bits(Tag::List, static_cast<uint8_t>(r), cell));
  }
  static TermRef from_bits(uint64_t bits) { return TermRef(bits); }

  Tag tag() const { return static_cast<Tag>(bits_ & 0x7); }
  Region region() const { return static_cast<Region>((bits_ >> 3) & 0x1); }
  uint64_t payload() const { return bits_ >> 4; }
  uint64_t bits() const { return bits_; }

  bool is_var() const { return tag() == Tag::Var; }
  bool is_int() const { return tag() == Tag::Int; }
  bool is_atom() const { return tag() == Tag::Atom; }
  bool is_nil() const { return tag() == Tag::Nil; }
  bool is_struct() const { return tag() == Tag::Struct; }
  bool is_list() const { return tag() == Tag::List; }
  bool is_record() const { return is_struct() || is_list(); }
  bool interned() const { return is_record() && region() == Region::Interned; }

  uint32_t var_id() const { return static_cast<uint32_t>(payload()); }
  int64_t int_value() const { return static_cast<int64_t>(bits_) >> 4; }
  AtomId atom_id() const { return static_cast<AtomId>(payload()); }
  uint64_t cell() const { return payload(); }

  bool operator==(const TermRef& o) const { return bits_ == o.bits_; }
  bool operator!=(const TermRef& o) const { return bits_ != o.bits_; }

private:
  explicit constexpr TermRef(uint64_t bits) : bits_(bits) {}
  static constexpr uint64_t make_bits(Tag t, uint8_t region, uint64_t payload) {
    return (payload << 4) | (static_cast<uint64_t>(region) << 3) | static_cast<uint64_t>(t);
  }

  uint64_t bits_;
};

// 64-bit finalizer used wherever a well-mixed hash of a word is needed.
inline uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

}  // namespace ilog
