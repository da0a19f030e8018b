#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chromatic {

/// True for names usable as agents: nonempty, and free of whitespace and of
/// the separators used by state strings and formulas.
bool is_valid_agent_name(std::string_view name) noexcept;

/// Full-information view of one agent.
///
/// Round 0 holds the agent's input value. A later state records, for every
/// sender heard from in the last round, that sender's previous state; senders
/// that were not heard from are simply absent. States are immutable and share
/// their subtrees, so copying is cheap.
///
/// The canonical string is computed once at construction:
///   round 0:  "AGENT:VALUE"
///   round r:  "AGENT[S1|S2|...]" with entries sorted by sender name
class LocalState {
 public:
  struct Entry;

  static LocalState initial(std::string agent, int value);

  /// Entries may come in any order; they are sorted by sender. Each entry's
  /// state must belong to its sender, and senders must be distinct.
  static LocalState after_round(std::string agent, std::vector<Entry> received);

  const std::string& agent() const noexcept;
  bool is_initial() const noexcept;
  /// 0 for input states, otherwise 1 + the largest round among received states.
  int round() const noexcept;
  /// Input value; only meaningful when is_initial().
  int value() const;
  std::span<const Entry> received() const noexcept;
  const LocalState* received_from(std::string_view sender) const noexcept;

  const std::string& canonical() const noexcept;

  /// Input value of `agent` as recorded anywhere in this view, if present.
  std::optional<int> input_of(std::string_view agent) const;
  /// Every input value visible in this view, keyed by agent.
  std::map<std::string, int> known_inputs() const;

  friend bool operator==(const LocalState& lhs, const LocalState& rhs) noexcept {
    return lhs.canonical() == rhs.canonical();
  }
  friend bool operator<(const LocalState& lhs, const LocalState& rhs) noexcept {
    return lhs.canonical() < rhs.canonical();
  }

 private:
  struct Node;
  explicit LocalState(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// One received message: the sender's state from the previous round.
struct LocalState::Entry {
  std::string sender;
  LocalState state;
};

/// Returns the state whose canonical form is `text`; throws SyntaxError.
LocalState parse_state(std::string_view text);

}  // namespace chromatic
