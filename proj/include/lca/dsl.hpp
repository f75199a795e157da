#pragma once

#include "lca/conformal.hpp"
#include "lca/extsolver.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lca::dsl {

/// Parse failure with a 1-based source position.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, int line, int col);
  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int col() const { return col_; }

private:
  std::string message_;
  int line_, col_;
};

struct Span {
  int line = 0, col = 0;
};

struct BracketLine {
  std::string left, right;
  std::vector<std::pair<std::string, Poly>> value;  // generator -> coefficient
  Span span;
  bool operator==(const BracketLine& o) const {
    return left == o.left && right == o.right && value == o.value;
  }
};

struct AlgebraDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> gens;
  std::vector<BracketLine> brackets;
  Span span;
  bool operator==(const AlgebraDecl& o) const {
    return name == o.name && params == o.params && gens == o.gens && brackets == o.brackets;
  }
};

struct ModuleDecl {
  std::string name;
  std::vector<std::string> params;
  std::string over;
  bool trivial = false;
  Poly eta;                                          // trivial modules
  std::vector<std::pair<std::string, Poly>> action;  // free modules
  Span span;
  bool operator==(const ModuleDecl& o) const {
    return name == o.name && params == o.params && over == o.over && trivial == o.trivial &&
           eta == o.eta && action == o.action;
  }
};

struct ProblemDecl {
  std::string name;
  std::string algebra;
  ExtShape shape = ExtShape::ModuleByModule;
  std::string top, bottom;
  std::optional<Bounds> bounds;
  std::vector<std::pair<std::string, Scalar>> bind;
  Span span;
  bool operator==(const ProblemDecl& o) const {
    auto bs = [](const std::optional<Bounds>& b) {
      return b ? std::pair<int, int>(static_cast<int>(b->f), static_cast<int>(b->p))
               : std::pair<int, int>(-1, -1);
    };
    return name == o.name && algebra == o.algebra && shape == o.shape && top == o.top &&
           bottom == o.bottom && bs(bounds) == bs(o.bounds) && bind == o.bind;
  }
};

/// `require (p1, ...) != (q1, ...);` or `require p != q;`
struct Requirement {
  std::vector<Poly> lhs, rhs;
  bool operator==(const Requirement&) const = default;
};

struct GenBlock {
  std::string name;  // the free coefficient this generator carries
  Poly denom{1};
  std::vector<std::pair<std::string, Poly>> comps;
  bool operator==(const GenBlock&) const = default;
};

/// One classification record: guards plus spanning cocycle generators.
struct EntryDecl {
  std::string id;
  std::string family;
  ExtShape shape = ExtShape::ModuleByModule;
  std::string source;
  std::vector<std::pair<std::string, Poly>> sets;  // applied in order
  std::vector<Requirement> requires_;
  std::optional<std::pair<std::string, Poly>> minpoly;
  std::optional<std::string> shift;  // d -> d + <param> at load
  std::optional<std::string> suspicious;
  std::vector<std::string> notes;
  std::vector<GenBlock> gens;
  Span span;
  bool operator==(const EntryDecl& o) const {
    return id == o.id && family == o.family && shape == o.shape && source == o.source &&
           sets == o.sets && requires_ == o.requires_ && minpoly == o.minpoly && shift == o.shift &&
           suspicious == o.suspicious && notes == o.notes && gens == o.gens;
  }
};

struct SourceDoc {
  std::optional<int> version;
  std::vector<std::string> params;
  std::vector<AlgebraDecl> algebras;
  std::vector<ModuleDecl> modules;
  std::vector<ProblemDecl> problems;
  std::vector<EntryDecl> entries;

  bool operator==(const SourceDoc&) const = default;

  const AlgebraDecl* find_algebra(const std::string& name) const;
  const ModuleDecl* find_module(const std::string& name) const;
};

SourceDoc parse(const std::string& text);
/// Single polynomial in d, l, m and any parameter names.
Poly parse_poly(const std::string& text);
std::string render(const SourceDoc& doc);
std::string render_poly(const Poly& p);

ConformalAlgebra to_algebra(const AlgebraDecl& decl);
ConformalModule to_module(const ModuleDecl& decl, const ConformalAlgebra& alg);
/// Problem with its algebra and modules resolved; bindings are returned in bind.
ExtProblem to_problem(const SourceDoc& doc, const ProblemDecl& decl, Binding* bind = nullptr);

}  // namespace lca::dsl
