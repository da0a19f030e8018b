#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chromatic/complex.hpp"

namespace chromatic {

enum class FormulaKind {
  Atom,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Knows,                    // K_a
  Common,                   // C_A
  Distributed,              // D_A
  CommonDistributed,        // CD_alpha
};

enum class AtomKey { Input, Decision };

/// Immutable epistemic formula. Groups are stored sorted and deduplicated, so
/// structurally equal formulas print identically.
class Formula {
 public:
  static Formula atom(AtomKey key, std::string agent, int value);
  static Formula truth();
  static Formula falsity();
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> parts);
  static Formula disjunction(std::vector<Formula> parts);
  static Formula implication(Formula premise, Formula conclusion);
  static Formula knows(std::string agent, Formula f);
  static Formula common(Group group, Formula f);
  static Formula distributed(Group group, Formula f);
  static Formula common_distributed(GroupFamily family, Formula f);

  FormulaKind kind() const noexcept;
  AtomKey atom_key() const;
  /// Atom subject or K agent.
  const std::string& agent() const;
  int value() const;
  /// C and D groups.
  const Group& group() const;
  const GroupFamily& family() const;
  std::span<const Formula> children() const noexcept;
  const Formula& child() const;

  bool is_modal() const noexcept;

  /// Canonical s-expression; parse_formula(f.to_string()) == f.
  std::string to_string() const;

  /// Agents mentioned anywhere in the formula, sorted.
  std::vector<std::string> agents() const;

  friend bool operator==(const Formula& lhs, const Formula& rhs) {
    return lhs.to_string() == rhs.to_string();
  }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Parses the s-expression grammar:
///   (= input A V) | (= decision A V) | true | false | (not F) | (and F+)
///   | (or F+) | (implies F F) | (K A F) | (C (A+) F) | (D (A+) F)
///   | (CD ((A+)+) F)
/// When `agents` is given, every agent must belong to it (UnknownAgent).
Formula parse_formula(std::string_view text,
                      std::optional<std::span<const std::string>> agents = std::nullopt);

/// Negation normal form: implications expanded, negations pushed onto atoms
/// and modal operators.
Formula to_nnf(const Formula& f);

/// True iff no modal operator sits under a negation in negation normal form.
bool is_positive(const Formula& f);

}  // namespace chromatic
