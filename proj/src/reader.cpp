#include "reader.hpp"

#include <charconv>
#include <cstdint>
#include <unordered_map>

#include "errors.hpp"

namespace ilog {

namespace {

enum class TokKind { Atom, Var, Int, Punct, End, Eof };

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  int64_t ival = 0;
  int line = 1;
  int col = 1;
};

bool is_symbol_char(char c) {
  return std::string_view("+-*/\\^<>=~:.?@#&$").find(c) != std::string_view::npos;
}

bool is_name_start(char c) { return c >= 'a' && c <= 'z'; }
bool is_var_start(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_name_char(char c) {
  return is_name_start(c) || is_var_start(c) || is_digit(c);
}
bool is_layout(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) { scan(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = std::move(tok_);
    scan();
    return t;
  }

 private:
  char at(size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

  void bump() {
    if (text_[pos_] == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    pos_++;
  }

  void skip_layout() {
    for (;;) {
      if (pos_ < text_.size() && is_layout(text_[pos_])) {
        bump();
      } else if (pos_ < text_.size() && text_[pos_] == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else {
        return;
      }
    }
  }

  void scan() {
    skip_layout();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = TokKind::Eof;
      return;
    }
    char c = text_[pos_];
    // '.' closes a clause when followed by layout, a comment, or the end of
    // the text; otherwise it scans as a symbolic atom (e.g. '.'(H,T)).
    if (c == '.' && (pos_ + 1 >= text_.size() || is_layout(at(pos_ + 1)) || at(pos_ + 1) == '%')) {
      bump();
      tok_.kind = TokKind::End;
      tok_.text = ".";
      return;
    }
    if (is_digit(c)) {
      size_t start = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) bump();
      std::string_view digits = text_.substr(start, pos_ - start);
      int64_t v = 0;
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
      if (ec != std::errc() || p != digits.data() + digits.size() || v > TermRef::kIntMax)
        throw SyntaxError("integer literal out of range", tok_.line, tok_.col);
      tok_.kind = TokKind::Int;
      tok_.ival = v;
      return;
    }
    if (is_name_start(c)) {
      size_t start = pos_;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) bump();
      tok_.kind = TokKind::Atom;
      tok_.text.assign(text_.substr(start, pos_ - start));
      return;
    }
    if (is_var_start(c)) {
      size_t start = pos_;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) bump();
      tok_.kind = TokKind::Var;
      tok_.text.assign(text_.substr(start, pos_ - start));
      return;
    }
    if (c == '\'') {
      bump();
      size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '\'') bump();
      if (pos_ >= text_.size())
        throw SyntaxError("unterminated quoted atom", tok_.line, tok_.col);
      tok_.kind = TokKind::Atom;
      tok_.text.assign(text_.substr(start, pos_ - start));
      bump();  // closing quote
      return;
    }
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == '|' || c == ',') {
      bump();
      tok_.kind = TokKind::Punct;
      tok_.text.assign(1, c);
      return;
    }
    if (c == ';' || c == '!') {
      bump();
      tok_.kind = TokKind::Atom;
      tok_.text.assign(1, c);
      return;
    }
    if (is_symbol_char(c)) {
      size_t start = pos_;
      while (pos_ < text_.size() && is_symbol_char(text_[pos_])) bump();
      tok_.kind = TokKind::Atom;
      tok_.text.assign(text_.substr(start, pos_ - start));
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", tok_.line, tok_.col);
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

struct OpInfo {
  int prec;
  enum Assoc { XFX, XFY, YFX } assoc;
};

const OpInfo* infix_op(const Token& t) {
  if (t.kind == TokKind::Punct && t.text == ",") {
    static const OpInfo comma{1000, OpInfo::XFY};
    return &comma;
  }
  if (t.kind != TokKind::Atom) return nullptr;
  static const std::unordered_map<std::string_view, OpInfo> ops = {
      {":-", {1200, OpInfo::XFX}}, {"-->", {1200, OpInfo::XFX}},
      {";", {1100, OpInfo::XFY}},  {"->", {1050, OpInfo::XFY}},
      {"=", {700, OpInfo::XFX}},   {"==", {700, OpInfo::XFX}},
      {"\\==", {700, OpInfo::XFX}}, {"@<", {700, OpInfo::XFX}},
      {"<", {700, OpInfo::XFX}},   {">", {700, OpInfo::XFX}},
      {"=<", {700, OpInfo::XFX}},  {">=", {700, OpInfo::XFX}},
      {"=:=", {700, OpInfo::XFX}}, {"is", {700, OpInfo::XFX}},
      {"+", {500, OpInfo::YFX}},   {"-", {500, OpInfo::YFX}},
      {"*", {400, OpInfo::YFX}},   {"//", {400, OpInfo::YFX}},
  };
  auto it = ops.find(t.text);
  return it == ops.end() ? nullptr : &it->second;
}

class Parser {
 public:
  Parser(Tokenizer& tz, AtomTable& atoms, TermStore& store, Bindings& binds)
      : tz_(tz), atoms_(atoms), store_(store), binds_(binds) {}

  TermRef parse(int max_prec) {
    TermRef left = parse_primary();
    int left_prec = 0;
    for (;;) {
      const Token& t = tz_.peek();
      const OpInfo* op = infix_op(t);
      if (!op || op->prec > max_prec) break;
      if (left_prec > (op->assoc == OpInfo::YFX ? op->prec : op->prec - 1)) break;
      Token taken = tz_.take();
      int right_max = op->assoc == OpInfo::XFY ? op->prec : op->prec - 1;
      TermRef right = parse(right_max);
      TermRef args[2] = {left, right};
      left = store_.make_compound(Functor{atoms_.intern(taken.text), 2}, args);
      left_prec = op->prec;
    }
    return left;
  }

  void expect_punct(std::string_view text) {
    const Token& t = tz_.peek();
    if (t.kind != TokKind::Punct || t.text != text)
      throw SyntaxError(std::string("expected '") + std::string(text) + "'", t.line, t.col);
    tz_.take();
  }

  void finish_clause() {
    const Token& t = tz_.peek();
    if (t.kind != TokKind::End)
      throw SyntaxError("expected '.' after clause", t.line, t.col);
    tz_.take();
  }

  void new_scope() { scope_.clear(); }

  const std::vector<std::pair<std::string, TermRef>>& scope() const { return scope_; }

 private:
  bool peek_is_punct(std::string_view text) const {
    const Token& t = tz_.peek();
    return t.kind == TokKind::Punct && t.text == text;
  }

  TermRef named_var(const std::string& name) {
    if (name == "_") return binds_.new_var();
    for (auto& [n, v] : scope_)
      if (n == name) return v;
    TermRef v = binds_.new_var();
    scope_.emplace_back(name, v);
    return v;
  }

  TermRef parse_list_tail() {
    // After '['; empty list already handled by the caller.
    std::vector<TermRef> elems;
    elems.push_back(parse(999));
    while (peek_is_punct(",")) {
      tz_.take();
      elems.push_back(parse(999));
    }
    TermRef tail = TermRef::nil();
    if (peek_is_punct("|")) {
      tz_.take();
      tail = parse(999);
    }
    expect_punct("]");
    for (size_t i = elems.size(); i-- > 0;) tail = store_.make_list_cell(elems[i], tail);
    return tail;
  }

  TermRef parse_compound_args(const std::string& name, int line, int col) {
    std::vector<TermRef> args;
    args.push_back(parse(999));
    while (peek_is_punct(",")) {
      tz_.take();
      args.push_back(parse(999));
    }
    expect_punct(")");
    if (name == "." && args.size() == 2) return store_.make_list_cell(args[0], args[1]);
    if (args.size() > 0xffff) throw SyntaxError("arity too large", line, col);
    return store_.make_compound(Functor{atoms_.intern(name), static_cast<uint32_t>(args.size())},
                                args);
  }

  TermRef parse_primary() {
    Token t = tz_.take();
    switch (t.kind) {
      case TokKind::Int:
        return TermRef::integer(t.ival);
      case TokKind::Var:
        return named_var(t.text);
      case TokKind::Punct:
        if (t.text == "(") {
          TermRef inner = parse(1200);
          expect_punct(")");
          return inner;
        }
        if (t.text == "[") {
          if (peek_is_punct("]")) {
            tz_.take();
            return TermRef::nil();
          }
          return parse_list_tail();
        }
        throw SyntaxError("unexpected '" + t.text + "'", t.line, t.col);
      case TokKind::Atom: {
        if (t.text == "-" && tz_.peek().kind == TokKind::Int) {
          Token num = tz_.take();
          int64_t v = -num.ival;
          if (v < TermRef::kIntMin) throw SyntaxError("integer literal out of range", num.line, num.col);
          return TermRef::integer(v);
        }
        if (peek_is_punct("(")) {
          tz_.take();
          return parse_compound_args(t.text, t.line, t.col);
        }
        if (t.text == "[]") return TermRef::nil();
        return TermRef::atom(atoms_.intern(t.text));
      }
      case TokKind::End:
        throw SyntaxError("unexpected '.'", t.line, t.col);
      case TokKind::Eof:
        throw SyntaxError("unexpected end of input", t.line, t.col);
    }
    throw InternalError("unhandled token kind");
  }

  Tokenizer& tz_;
  AtomTable& atoms_;
  TermStore& store_;
  Bindings& binds_;
  std::vector<std::pair<std::string, TermRef>> scope_;
};

}  // namespace

void flatten_conjunction(TermRef body, const Bindings& s, const TermStore& store,
                         const Symbols& syms, std::vector<TermRef>& out) {
  std::vector<TermRef> work{body};
  while (!work.empty()) {
    TermRef t = s.deref(work.back());
    work.pop_back();
    if (t.is_struct() && store.functor_of(t) == Functor{syms.comma, 2}) {
      work.push_back(store.arg(t, 1));
      work.push_back(store.arg(t, 0));
    } else {
      out.push_back(t);
    }
  }
}

namespace {

// body item list cell chain -> element vector; throws unless the chain is a
// proper list of the source text (tail nil).
std::vector<TermRef> terminal_elements(TermRef list, const TermStore& store) {
  std::vector<TermRef> elems;
  TermRef t = list;
  while (t.is_list()) {
    elems.push_back(store.head(t));
    t = store.tail(t);
  }
  if (!t.is_nil()) throw ProgramError("grammar terminal must be a proper list");
  return elems;
}

// head --> item, ..., item   becomes a plain clause threading a token list
// through two extra arguments: terminals emit explicit =/2 goals, [] items
// reuse the current position, nonterminals gain the two arguments.
ParsedClause translate_grammar_rule(TermRef head, TermRef body, TermStore& store,
                                    Bindings& binds, const Symbols& syms) {
  std::vector<TermRef> items;
  flatten_conjunction(body, binds, store, syms, items);

  TermRef s0 = binds.new_var();
  TermRef cur = s0;
  std::vector<TermRef> goals;
  for (TermRef item : items) {
    switch (item.tag()) {
      case Tag::Nil:
        break;
      case Tag::List: {
        std::vector<TermRef> elems = terminal_elements(item, store);
        TermRef next = binds.new_var();
        TermRef rebuilt = next;
        for (size_t i = elems.size(); i-- > 0;) rebuilt = store.make_list_cell(elems[i], rebuilt);
        TermRef args[2] = {cur, rebuilt};
        goals.push_back(store.make_compound(Functor{syms.unify_op, 2}, args));
        cur = next;
        break;
      }
      case Tag::Atom: {
        TermRef next = binds.new_var();
        TermRef args[2] = {cur, next};
        goals.push_back(store.make_compound(Functor{item.atom_id(), 2}, args));
        cur = next;
        break;
      }
      case Tag::Struct: {
        Functor f = store.functor_of(item);
        std::vector<TermRef> args;
        for (uint32_t i = 0; i < f.arity; i++) args.push_back(store.arg(item, i));
        TermRef next = binds.new_var();
        args.push_back(cur);
        args.push_back(next);
        goals.push_back(store.make_compound(Functor{f.name, f.arity + 2}, args));
        cur = next;
        break;
      }
      default:
        throw ProgramError("unsupported grammar body item");
    }
  }

  TermRef new_head;
  if (head.is_atom()) {
    TermRef args[2] = {s0, cur};
    new_head = store.make_compound(Functor{head.atom_id(), 2}, args);
  } else if (head.is_struct()) {
    Functor f = store.functor_of(head);
    std::vector<TermRef> args;
    for (uint32_t i = 0; i < f.arity; i++) args.push_back(store.arg(head, i));
    args.push_back(s0);
    args.push_back(cur);
    new_head = store.make_compound(Functor{f.name, f.arity + 2}, args);
  } else {
    throw ProgramError("grammar rule head must be an atom or a structure");
  }
  return ParsedClause{new_head, std::move(goals)};
}

Directive read_directive(Tokenizer& tz, AtomTable& atoms) {
  Token what = tz.take();
  if (what.kind != TokKind::Atom)
    throw UnknownDirectiveError("directive must start with an atom");
  if (what.text == "import") {
    for (;;) {
      Token t = tz.take();
      if (t.kind == TokKind::End) return Directive{Directive::Kind::Import, Functor{0, 0}, false};
      if (t.kind == TokKind::Eof)
        throw SyntaxError("unterminated import directive", t.line, t.col);
    }
  }
  if (what.text != "table" && what.text != "dynamic")
    throw UnknownDirectiveError("unknown directive: " + what.text);

  Token name = tz.take();
  if (name.kind != TokKind::Atom)
    throw SyntaxError("expected a predicate name", name.line, name.col);
  Token slash = tz.take();
  if (slash.kind != TokKind::Atom || slash.text != "/")
    throw SyntaxError("expected name/arity", slash.line, slash.col);
  Token count = tz.take();
  if (count.kind != TokKind::Int || count.ival < 0 || count.ival > 0xffff)
    throw SyntaxError("expected a predicate arity", count.line, count.col);

  bool intern = false;
  Token t = tz.take();
  if (t.kind == TokKind::Atom && t.text == "as") {
    Token mode = tz.take();
    if (mode.kind != TokKind::Atom || mode.text != "intern")
      throw UnknownDirectiveError("unknown storage mode: " + mode.text);
    intern = true;
    t = tz.take();
  }
  if (t.kind != TokKind::End)
    throw SyntaxError("expected '.' after directive", t.line, t.col);

  Functor pred{atoms.intern(name.text), static_cast<uint32_t>(count.ival)};
  auto kind = what.text == "table" ? Directive::Kind::Table : Directive::Kind::Dynamic;
  return Directive{kind, pred, intern};
}

}  // namespace

ParsedProgram Reader::read_program(std::string_view text) {
  Tokenizer tz(text);
  Parser parser(tz, atoms_, store_, binds_);
  ParsedProgram out;

  auto push_clause = [&out](ParsedClause c) {
    ProgramItem item;
    item.kind = ProgramItem::Kind::Clause;
    item.clause = std::move(c);
    out.items.push_back(std::move(item));
  };

  while (tz.peek().kind != TokKind::Eof) {
    const Token& t = tz.peek();
    if (t.kind == TokKind::Atom && t.text == ":-") {
      tz.take();
      ProgramItem item;
      item.kind = ProgramItem::Kind::Directive;
      item.directive = read_directive(tz, atoms_);
      out.items.push_back(std::move(item));
      continue;
    }
    parser.new_scope();
    TermRef term = parser.parse(1200);
    parser.finish_clause();

    TermRef head = term;
    std::vector<TermRef> body;
    if (term.is_struct() && store_.functor_of(term) == Functor{syms_.neck, 2}) {
      head = store_.arg(term, 0);
      flatten_conjunction(store_.arg(term, 1), binds_, store_, syms_, body);
    } else if (term.is_struct() && store_.functor_of(term) == Functor{syms_.dcg_neck, 2}) {
      push_clause(translate_grammar_rule(store_.arg(term, 0), store_.arg(term, 1), store_,
                                         binds_, syms_));
      continue;
    }
    if (!head.is_atom() && !head.is_struct())
      throw ProgramError("clause head must be an atom or a structure");
    push_clause(ParsedClause{head, std::move(body)});
  }
  return out;
}

TermRef Reader::read_term(std::string_view text,
                          std::vector<std::pair<std::string, TermRef>>* vars) {
  Tokenizer tz(text);
  Parser parser(tz, atoms_, store_, binds_);
  parser.new_scope();
  TermRef term = parser.parse(1200);
  if (tz.peek().kind == TokKind::End) tz.take();
  const Token& t = tz.peek();
  if (t.kind != TokKind::Eof)
    throw SyntaxError("unexpected text after term", t.line, t.col);
  if (vars) *vars = parser.scope();
  return term;
}

}  // namespace ilog
