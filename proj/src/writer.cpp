#include "writer.hpp"

namespace ilog {

namespace {

bool all_of_name(const std::string& n) {
  for (char c : n)
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'))
      return false;
  return true;
}

bool all_of_symbols(const std::string& n) {
  for (char c : n)
    if (std::string_view("+-*/\\^<>=~:.?@#&$").find(c) == std::string_view::npos) return false;
  return true;
}

}  // namespace

std::string write_atom(const std::string& name) {
  bool plain = false;
  if (!name.empty()) {
    if (name[0] >= 'a' && name[0] <= 'z')
      plain = all_of_name(name);
    else if (name == ";" || name == "!")
      plain = true;
    else if (name != "." && all_of_symbols(name))
      plain = true;  // a bare '.' would scan as a clause terminator
  }
  if (plain) return name;
  return "'" + name + "'";  // no escapes: embedded quotes are not representable
}

std::string write_term(TermRef t, const Bindings& s, const TermStore& store,
                       const AtomTable& atoms) {
  struct Item {
    enum Kind { Term, Lit, ListTail } kind;
    TermRef t{};
    const char* lit = nullptr;
  };
  std::string out;
  std::vector<Item> work{{Item::Term, t, nullptr}};
  while (!work.empty()) {
    Item it = work.back();
    work.pop_back();
    if (it.kind == Item::Lit) {
      out += it.lit;
      continue;
    }
    TermRef x = s.deref(it.t);
    if (it.kind == Item::ListTail) {
      if (x.is_nil()) {
        out += "]";
      } else if (x.is_list()) {
        out += ",";
        work.push_back({Item::ListTail, store.tail(x), nullptr});
        work.push_back({Item::Term, store.head(x), nullptr});
      } else {
        out += "|";
        work.push_back({Item::Lit, TermRef{}, "]"});
        work.push_back({Item::Term, x, nullptr});
      }
      continue;
    }
    switch (x.tag()) {
      case Tag::Var:
        out += "_G" + std::to_string(x.var_id());
        break;
      case Tag::Int:
        out += std::to_string(x.int_value());
        break;
      case Tag::Atom:
        out += write_atom(atoms.name(x.atom_id()));
        break;
      case Tag::Nil:
        out += "[]";
        break;
      case Tag::Struct: {
        Functor f = store.functor_of(x);
        out += write_atom(atoms.name(f.name));
        out += "(";
        work.push_back({Item::Lit, TermRef{}, ")"});
        for (uint32_t i = f.arity; i-- > 1;) {
          work.push_back({Item::Term, store.arg(x, i), nullptr});
          work.push_back({Item::Lit, TermRef{}, ","});
        }
        work.push_back({Item::Term, store.arg(x, 0), nullptr});
        break;
      }
      case Tag::List:
        out += "[";
        work.push_back({Item::ListTail, store.tail(x), nullptr});
        work.push_back({Item::Term, store.head(x), nullptr});
        break;
    }
  }
  return out;
}

}  // namespace ilog
