#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace rulemon::ltl {

enum class Kind : std::uint8_t {
  False,
  True,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Next,
  WeakNext,
  Until,
  Release,
  Globally,
  Finally,
};

std::string_view kind_name(Kind kind);

bool is_unary(Kind kind);
bool is_binary(Kind kind);

/// Immutable LTL formula over finite traces.
///
/// A Formula is a cheap handle onto a shared, acyclic node; copies share
/// structure. Equality and ordering are structural. The ordering is a total
/// order used to canonicalize operands (smaller formulas sort first).
class Formula {
 public:
  /// Constructs the constant `false`.
  Formula();

  static Formula constant(bool value);
  static Formula make_true() { return constant(true); }
  static Formula make_false() { return constant(false); }

  /// Throws std::invalid_argument if `name` is not a proposition identifier.
  static Formula atom(std::string name);

  static Formula negation(Formula child);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);
  static Formula implication(Formula left, Formula right);
  static Formula next(Formula child);
  static Formula weak_next(Formula child);
  static Formula until(Formula left, Formula right);
  static Formula release(Formula left, Formula right);
  static Formula globally(Formula child);
  static Formula finally(Formula child);

  static Formula unary(Kind kind, Formula child);
  static Formula binary(Kind kind, Formula left, Formula right);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::True || kind() == Kind::False; }
  bool is_atom() const { return kind() == Kind::Atom; }
  /// An atom or a negated atom.
  bool is_literal() const;

  /// Proposition name; empty unless this is an atom.
  const std::string& name() const;

  /// Operand of a unary node, or the left operand of a binary node.
  const Formula& child() const;
  const Formula& left() const { return child(); }
  const Formula& right() const;

  /// Number of nodes in the tree (shared subtrees counted per occurrence).
  std::size_t size() const;
  std::size_t depth() const;
  std::uint64_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, std::string name, Formula left, Formula right, int arity);

  std::shared_ptr<const Node> node_;
};

/// True iff `name` is a valid proposition identifier that is not reserved
/// (operator letters and the constants).
bool is_proposition_identifier(std::string_view name);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return static_cast<std::size_t>(f.hash()); }
};

}  // namespace rulemon::ltl
