#ifndef PHORMA_BOOLEXPR_HPP
#define PHORMA_BOOLEXPR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phorma/error.hpp"
#include "phorma/seq.hpp"

namespace phorma {

// Three-valued logic for partial assignments: False=0 < Unknown=1 < True=2,
// so conjunction is min, disjunction is max, negation is 2-v.
enum class Tri : std::uint8_t { False = 0, Unknown = 1, True = 2 };

enum class Cmp : std::uint8_t { le, ge, lt, gt, eq, ne };

inline const char* to_string(Cmp op) {
  switch (op) {
    case Cmp::le: return "<=";
    case Cmp::ge: return ">=";
    case Cmp::lt: return "<";
    case Cmp::gt: return ">";
    case Cmp::eq: return "=";
    case Cmp::ne: return "!=";
  }
  return "?";
}

inline bool cmp_apply(Cmp op, Val x, Val y) {
  switch (op) {
    case Cmp::le: return x <= y;
    case Cmp::ge: return x >= y;
    case Cmp::lt: return x < y;
    case Cmp::gt: return x > y;
    case Cmp::eq: return x == y;
    case Cmp::ne: return x != y;
  }
  return false;
}

// A literal compares two 1-based entries of a sequence.
struct Literal {
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
  Cmp op = Cmp::le;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs && a.op == b.op;
  }
};

// Boolean function over entry comparisons.  Grammar:
//   expr := term {"|" term}; term := factor {"&" factor};
//   factor := "!" factor | "(" expr ")" | literal; literal := ident op ident;
//   ident := <prefix> digits; op := "<="|">="|"<"|">"|"="|"!=".
// Whitespace is insignificant; the empty expression is vacuously true.
class BoolExpr {
 public:
  BoolExpr() = default;

  static BoolExpr always_true(char prefix = 'a') {
    BoolExpr e;
    e.prefix_ = prefix;
    return e;
  }

  // dim bounds the allowed literal indices (1..dim).
  static BoolExpr parse(const std::string& text, std::uint32_t dim, char prefix = 'a') {
    BoolExpr e;
    e.prefix_ = prefix;
    Parser p{text, 0, dim, prefix, &e};
    p.skip_ws();
    if (p.pos == text.size()) return e;  // empty -> true
    e.root_ = static_cast<std::int32_t>(p.parse_expr());
    p.skip_ws();
    if (p.pos != text.size()) throw parse_error("trailing input after expression", p.pos);
    return e;
  }

  bool empty() const { return root_ < 0; }
  char prefix() const { return prefix_; }

  // Largest entry index referenced; 0 for the empty expression.
  std::uint32_t max_index() const {
    std::uint32_t mx = 0;
    for (const Node& n : nodes_)
      if (n.kind == Kind::leaf) {
        if (n.lit.lhs > mx) mx = n.lit.lhs;
        if (n.lit.rhs > mx) mx = n.lit.rhs;
      }
    return mx;
  }

  // Full evaluation; every literal index must be <= s.size().
  bool eval(const Seq& s) const {
    return eval_tri([&](const Literal& l) {
             if (l.lhs > s.size() || l.rhs > s.size())
               throw domain_error("literal index exceeds sequence length");
             return cmp_apply(l.op, s[l.lhs - 1], s[l.rhs - 1]) ? Tri::True : Tri::False;
           }) == Tri::True;
  }

  // Evaluation where a literal touching a missing entry is false
  // (composition constraints: the part does not exist).
  bool eval_clipped(const Seq& s) const {
    return eval_tri([&](const Literal& l) {
             if (l.lhs > s.size() || l.rhs > s.size()) return Tri::False;
             return cmp_apply(l.op, s[l.lhs - 1], s[l.rhs - 1]) ? Tri::True : Tri::False;
           }) == Tri::True;
  }

  // Kleene evaluation over a partial assignment with arbitrary holes.
  Tri eval_partial(const std::vector<std::optional<Val>>& s) const {
    return eval_tri([&](const Literal& l) {
      if (l.lhs > s.size() || l.rhs > s.size() || !s[l.lhs - 1] || !s[l.rhs - 1])
        return Tri::Unknown;
      return cmp_apply(l.op, *s[l.lhs - 1], *s[l.rhs - 1]) ? Tri::True : Tri::False;
    });
  }

  // Kleene evaluation when exactly the first s.size() entries are assigned.
  Tri eval_prefix(const Seq& s) const {
    return eval_tri([&](const Literal& l) {
      if (l.lhs > s.size() || l.rhs > s.size()) return Tri::Unknown;
      return cmp_apply(l.op, s[l.lhs - 1], s[l.rhs - 1]) ? Tri::True : Tri::False;
    });
  }

  // Canonical text; parse(to_string()) reproduces the same tree.
  std::string to_string() const {
    if (root_ < 0) return "";
    return print(static_cast<std::uint32_t>(root_));
  }

  friend bool operator==(const BoolExpr& a, const BoolExpr& b) {
    if (a.prefix_ != b.prefix_) return false;
    if ((a.root_ < 0) != (b.root_ < 0)) return false;
    if (a.root_ < 0) return true;
    return a.same(static_cast<std::uint32_t>(a.root_), b,
                  static_cast<std::uint32_t>(b.root_));
  }
  friend bool operator!=(const BoolExpr& a, const BoolExpr& b) { return !(a == b); }

 private:
  enum class Kind : std::uint8_t { leaf, band, bor, bnot };

  struct Node {
    Kind kind = Kind::leaf;
    Literal lit;
    std::vector<std::uint32_t> kids;
  };

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  char prefix_ = 'a';

  template <class LitEval>
  Tri eval_tri(LitEval&& le) const {
    if (root_ < 0) return Tri::True;
    return eval_node(static_cast<std::uint32_t>(root_), le);
  }

  template <class LitEval>
  Tri eval_node(std::uint32_t id, LitEval& le) const {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Kind::leaf:
        return le(n.lit);
      case Kind::bnot:
        return static_cast<Tri>(2 - static_cast<int>(eval_node(n.kids[0], le)));
      case Kind::band: {
        Tri v = Tri::True;
        for (std::uint32_t k : n.kids) {
          Tri c = eval_node(k, le);
          if (c < v) v = c;
          if (v == Tri::False) break;
        }
        return v;
      }
      case Kind::bor: {
        Tri v = Tri::False;
        for (std::uint32_t k : n.kids) {
          Tri c = eval_node(k, le);
          if (c > v) v = c;
          if (v == Tri::True) break;
        }
        return v;
      }
    }
    return Tri::Unknown;
  }

  std::string print(std::uint32_t id) const {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Kind::leaf:
        return std::string(1, prefix_) + std::to_string(n.lit.lhs) + " " +
               phorma::to_string(n.lit.op) + " " + std::string(1, prefix_) +
               std::to_string(n.lit.rhs);
      case Kind::bnot:
        return "!(" + print(n.kids[0]) + ")";
      case Kind::band:
      case Kind::bor: {
        const char* sep = n.kind == Kind::band ? " & " : " | ";
        std::string out;
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
          if (i) out += sep;
          const Node& c = nodes_[n.kids[i]];
          if (c.kind == Kind::leaf)
            out += print(n.kids[i]);
          else
            out += "(" + print(n.kids[i]) + ")";
        }
        return out;
      }
    }
    return "";
  }

  bool same(std::uint32_t a, const BoolExpr& ob, std::uint32_t b) const {
    const Node& x = nodes_[a];
    const Node& y = ob.nodes_[b];
    if (x.kind != y.kind) return false;
    if (x.kind == Kind::leaf) return x.lit == y.lit;
    if (x.kids.size() != y.kids.size()) return false;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
      if (!same(x.kids[i], ob, y.kids[i])) return false;
    return true;
  }

  struct Parser {
    const std::string& text;
    std::size_t pos;
    std::uint32_t dim;
    char prefix;
    BoolExpr* out;

    void skip_ws() {
      while (pos < text.size() &&
             (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r'))
        ++pos;
    }

    bool eat(char c) {
      skip_ws();
      if (pos < text.size() && text[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }

    std::uint32_t add(Node n) {
      out->nodes_.push_back(std::move(n));
      return static_cast<std::uint32_t>(out->nodes_.size() - 1);
    }

    std::uint32_t parse_expr() {
      std::uint32_t first = parse_term();
      std::vector<std::uint32_t> kids{first};
      while (eat('|')) kids.push_back(parse_term());
      if (kids.size() == 1) return first;
      Node n;
      n.kind = Kind::bor;
      n.kids = std::move(kids);
      return add(std::move(n));
    }

    std::uint32_t parse_term() {
      std::uint32_t first = parse_factor();
      std::vector<std::uint32_t> kids{first};
      for (;;) {
        skip_ws();
        // '&' binds tighter than '|'; "!=" starts with '!' only inside literals.
        if (pos < text.size() && text[pos] == '&') {
          ++pos;
          kids.push_back(parse_factor());
        } else {
          break;
        }
      }
      if (kids.size() == 1) return first;
      Node n;
      n.kind = Kind::band;
      n.kids = std::move(kids);
      return add(std::move(n));
    }

    std::uint32_t parse_factor() {
      skip_ws();
      if (pos >= text.size()) throw parse_error("unexpected end of expression", pos);
      if (text[pos] == '!') {
        ++pos;
        Node n;
        n.kind = Kind::bnot;
        n.kids.push_back(parse_factor());
        return add(std::move(n));
      }
      if (text[pos] == '(') {
        ++pos;
        std::uint32_t inner = parse_expr();
        if (!eat(')')) throw parse_error("expected ')'", pos);
        return inner;
      }
      return parse_literal();
    }

    std::uint32_t parse_ident() {
      skip_ws();
      if (pos >= text.size() || text[pos] != prefix)
        throw parse_error(std::string("expected identifier '") + prefix + "<k>'", pos);
      const std::size_t start = pos;
      ++pos;
      if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
        throw parse_error("expected digits after identifier prefix", pos);
      std::uint64_t v = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (v > 0xffffffffull) throw parse_error("index too large", pos);
        ++pos;
      }
      if (v == 0) throw parse_error("indices are 1-based", start);
      if (dim != 0 && v > dim)
        throw parse_error("literal index out of range: " +
                              text.substr(start, pos - start) + " with dim " +
                              std::to_string(dim),
                          start);
      return static_cast<std::uint32_t>(v);
    }

    std::uint32_t parse_literal() {
      Literal lit;
      lit.lhs = parse_ident();
      skip_ws();
      if (pos >= text.size()) throw parse_error("expected comparison operator", pos);
      const char c = text[pos];
      if (c == '<') {
        ++pos;
        lit.op = (pos < text.size() && text[pos] == '=') ? (++pos, Cmp::le) : Cmp::lt;
      } else if (c == '>') {
        ++pos;
        lit.op = (pos < text.size() && text[pos] == '=') ? (++pos, Cmp::ge) : Cmp::gt;
      } else if (c == '=') {
        ++pos;
        lit.op = Cmp::eq;
      } else if (c == '!' && pos + 1 < text.size() && text[pos + 1] == '=') {
        pos += 2;
        lit.op = Cmp::ne;
      } else {
        throw parse_error("expected comparison operator", pos);
      }
      lit.rhs = parse_ident();
      Node n;
      n.kind = Kind::leaf;
      n.lit = lit;
      return add(std::move(n));
    }
  };
};

}  // namespace phorma

#endif  // PHORMA_BOOLEXPR_HPP
