#pragma once

#include "atoms.hpp"
#include "term.hpp"

namespace ilog {

// Atom ids the reader and solver test against constantly.
struct Symbols {
  AtomId comma, semicolon, arrow, neck, dcg_neck;
  AtomId unify_op, eq, neq, at_less, lt, gt, le, ge, arith_eq, is_op;
  AtomId plus, minus, star, int_div;
  AtomId true_, fail_, between_, ground_, copy_term_, intern_term_;
  AtomId table_, dynamic_, import_, as_, intern_;

  explicit Symbols(AtomTable& atoms)
      : comma(atoms.intern(",")),
        semicolon(atoms.intern(";")),
        arrow(atoms.intern("->")),
        neck(atoms.intern(":-")),
        dcg_neck(atoms.intern("-->")),
        unify_op(atoms.intern("=")),
        eq(atoms.intern("==")),
        neq(atoms.intern("\\==")),
        at_less(atoms.intern("@<")),
        lt(atoms.intern("<")),
        gt(atoms.intern(">")),
        le(atoms.intern("=<")),
        ge(atoms.intern(">=")),
        arith_eq(atoms.intern("=:=")),
        is_op(atoms.intern("is")),
        plus(atoms.intern("+")),
        minus(atoms.intern("-")),
        star(atoms.intern("*")),
        int_div(atoms.intern("//")),
        true_(atoms.intern("true")),
        fail_(atoms.intern("fail")),
        between_(atoms.intern("between")),
        ground_(atoms.intern("ground")),
        copy_term_(atoms.intern("copy_term")),
        intern_term_(atoms.intern("intern_term")),
        table_(atoms.intern("table")),
        dynamic_(atoms.intern("dynamic")),
        import_(atoms.intern("import")),
        as_(atoms.intern("as")),
        intern_(atoms.intern("intern")) {}
};

}  // namespace ilog
