#pragma once

#include <cctype>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/graphs/bipartite_graph.hpp"
#include "forcecert/graphs/families.hpp"
#include "forcecert/graphs/operations.hpp"

namespace forcecert {

// Line-oriented graph file:
//   c <comment>
//   p bipartite <|X|> <|Y|>
//   v <label> <X|Y>
//   e <label> <label> [+|-]
// Vertex lines are emitted in id order and edge lines in (x, y) order, so the
// output is a deterministic function of the graph.

inline std::string write_graph(const BipartiteGraph& g) {
  std::ostringstream out;
  out << "p bipartite " << g.side_size(Side::X) << ' ' << g.side_size(Side::Y) << '\n';
  for (Vertex v = 0; v < g.order(); ++v) out << "v " << g.label(v) << ' ' << side_char(g.side(v)) << '\n';
  for (const Edge& e : g.edges()) {
    out << "e " << g.label(e.x) << ' ' << g.label(e.y);
    if (g.is_signed()) out << ' ' << (g.sign(e.x, e.y) < 0 ? '-' : '+');
    out << '\n';
  }
  return out.str();
}

/// Parses the graph file format. ParseError::position() is the 1-based line.
inline BipartiteGraph read_graph(std::string_view text) {
  BipartiteGraph g;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool signed_graph = false;
  std::size_t want_x = 0;
  std::size_t want_y = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag == "c") continue;
    auto fail = [&](const std::string& why) -> ParseError { return ParseError("graph file line " + std::to_string(line_no) + ": " + why, line_no); };
    try {
      if (tag == "p") {
        std::string kind;
        if (have_header) throw fail("duplicate header");
        if (!(fields >> kind >> want_x >> want_y) || kind != "bipartite") throw fail("expected 'p bipartite <|X|> <|Y|>'");
        have_header = true;
      } else if (!have_header) {
        throw fail("missing 'p bipartite' header");
      } else if (tag == "v") {
        std::string label;
        std::string side;
        if (!(fields >> label >> side) || (side != "X" && side != "Y")) throw fail("expected 'v <label> <X|Y>'");
        g.add_vertex(label, side == "X" ? Side::X : Side::Y);
      } else if (tag == "e") {
        std::string u;
        std::string v;
        std::string sign = "+";
        if (!(fields >> u >> v)) throw fail("expected 'e <label> <label> [sign]'");
        if (fields >> sign) {
          if (sign != "+" && sign != "-") throw fail("edge sign must be + or -");
          signed_graph = true;
        }
        g.add_edge(u, v, sign == "-" ? -1 : 1);
      } else {
        throw fail("unknown line tag '" + tag + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("graph file line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  if (!have_header) throw ParseError("graph file has no 'p bipartite' header", line_no);
  if (g.side_size(Side::X) != want_x || g.side_size(Side::Y) != want_y) {
    throw ParseError("vertex counts do not match the header", line_no);
  }
  g.set_signed(signed_graph);
  return g;
}

namespace detail {

/// Recursive-descent parser for family expressions such as "Kmn:2,3",
/// "prod(Kmn:2,2;C:4)" or "bd(Kn:3)".
class FamilyParser {
 public:
  explicit FamilyParser(std::string_view text) : text_(text) {}

  BipartiteGraph parse() {
    BipartiteGraph g = bipartite_expr();
    if (pos_ != text_.size()) throw ParseError("trailing characters in graph expression", pos_);
    return g;
  }

 private:
  BipartiteGraph bipartite_expr() {
    const std::size_t start = pos_;
    const std::string name = identifier();
    try {
      if (name == "prod") {
        expect('(');
        BipartiteGraph a = bipartite_expr();
        expect(';');
        const std::size_t right = pos_;
        BipartiteGraph b;
        if (peek_simple()) {
          SimpleGraph h = simple_expr();
          try {
            b = two_color(h);
          } catch (const NotBipartite& e) {
            throw NotBipartite(std::string("right factor at position ") + std::to_string(right) + ": " + e.what());
          }
        } else {
          b = bipartite_expr();
        }
        expect(')');
        return cartesian_product(a, b);
      }
      if (name == "bd") {
        expect('(');
        SimpleGraph h = peek_simple() ? simple_expr() : SimpleGraph::from(bipartite_expr());
        expect(')');
        return bipartite_double(h);
      }
      if (name == "del") {
        expect('(');
        BipartiteGraph a = bipartite_expr();
        std::vector<std::string> labels;
        while (accept(';') || (!labels.empty() && accept(','))) labels.push_back(label());
        expect(')');
        return delete_x_vertices(a, labels);
      }
      if (name == "K2") return k2();
      if (name == "s14") return s14();
      if (name == "gprime") return g_prime();
      if (name == "Kmn") {
        auto args = arguments(2);
        return complete_bipartite(args[0], args[1]);
      }
      if (name == "star") return star(arguments(1)[0]);
      if (name == "C") return cycle(arguments(1)[0]);
      if (name == "P") return path(arguments(1)[0]);
      if (name == "Q") return hypercube(arguments(1)[0]);
      if (name == "FQ") return folded_hypercube(arguments(1)[0]);
      if (name == "blowup") return blowup_cycle(arguments(1)[0]);
      if (name == "bcp") return bcp(arguments(1)[0]);
    } catch (const ParseError&) {
      throw;
    } catch (const NotBipartite&) {
      throw;
    } catch (const PreconditionError& e) {
      throw ParseError(std::string(e.what()), start);
    }
    throw ParseError("unknown graph family '" + name + "'", start);
  }

  bool peek_simple() const {
    return text_.substr(pos_).starts_with("Kn:") || text_.substr(pos_).starts_with("Cn:");
  }

  SimpleGraph simple_expr() {
    const std::size_t start = pos_;
    const std::string name = identifier();
    const std::size_t n = arguments(1)[0];
    try {
      if (name == "Kn") return complete_graph(n);
      return simple_cycle(n);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), start);
    }
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a graph family name", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string label() {
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')' && depth-- == 0) break;
      if ((c == ',' || c == ';') && depth == 0) break;
      ++pos_;
    }
    if (start == pos_) throw ParseError("expected a vertex label", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<std::size_t> arguments(std::size_t count) {
    expect(':');
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) expect(',');
      const std::size_t start = pos_;
      std::size_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        if (v > 1'000'000) throw ParseError("parameter too large", start);
        ++pos_;
      }
      if (start == pos_) throw ParseError("expected a nonnegative integer", pos_);
      out.push_back(v);
    }
    return out;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Builds a graph from a family expression:
///   K2 | Kmn:m,n | star:n | C:len | P:n | Q:d | FQ:d | blowup:n | bcp:n |
///   s14 | gprime | prod(A;B) | bd(S) | del(A;label[,label...])
/// where B may also be "Cn:n" or "Kn:n" (2-colored, rejected if odd) and S
/// may be any bipartite expression or "Cn:n" / "Kn:n".
inline BipartiteGraph parse_family(std::string_view expression) { return detail::FamilyParser(expression).parse(); }

}  // namespace forcecert
