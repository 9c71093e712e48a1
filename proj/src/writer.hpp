#pragma once

#include <string>

#include "atoms.hpp"
#include "store.hpp"
#include "unify.hpp"

namespace ilog {

// Canonical rendering: integers in decimal, atoms quoted unless they scan as
// a single token, unbound variables as _G<id>, lists in bracket notation with
// a '|' tail when improper, and compounds as name(arg,...,arg) — operators
// included. Output parses back to a variant of the input.
std::string write_term(TermRef t, const Bindings& s, const TermStore& store,
                       const AtomTable& atoms);

// A quoted-if-needed atom name on its own.
std::string write_atom(const std::string& name);

}  // namespace ilog
