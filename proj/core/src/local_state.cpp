#include "chromatic/local_state.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "chromatic/error.hpp"

namespace chromatic {

struct LocalState::Node {
  std::string agent;
  int round = 0;
  int value = 0;
  std::vector<Entry> received;
  std::string canonical;
};

bool is_valid_agent_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](char ch) {
    return std::isspace(static_cast<unsigned char>(ch)) || ch == ':' || ch == '[' ||
           ch == ']' || ch == '|' || ch == '(' || ch == ')' || ch == ',' || ch == '"';
  });
}

LocalState LocalState::initial(std::string agent, int value) {
  if (!is_valid_agent_name(agent)) {
    throw Error(ErrorCode::UnknownAgent, "invalid agent name '" + agent + "'");
  }
  auto node = std::make_shared<Node>();
  node->agent = std::move(agent);
  node->value = value;
  node->canonical = node->agent + ":" + std::to_string(value);
  return LocalState(std::move(node));
}

LocalState LocalState::after_round(std::string agent, std::vector<Entry> received) {
  if (!is_valid_agent_name(agent)) {
    throw Error(ErrorCode::UnknownAgent, "invalid agent name '" + agent + "'");
  }
  std::sort(received.begin(), received.end(),
            [](const Entry& a, const Entry& b) { return a.sender < b.sender; });
  auto node = std::make_shared<Node>();
  node->agent = std::move(agent);
  node->canonical = node->agent + "[";
  for (std::size_t i = 0; i < received.size(); ++i) {
    const Entry& entry = received[i];
    if (entry.sender != entry.state.agent()) {
      throw Error(ErrorCode::MalformedInput,
                  "entry for sender '" + entry.sender + "' holds a state of '" +
                      entry.state.agent() + "'");
    }
    if (i > 0 && received[i - 1].sender == entry.sender) {
      throw Error(ErrorCode::MalformedInput, "duplicate sender '" + entry.sender + "'");
    }
    node->round = std::max(node->round, entry.state.round() + 1);
    if (i > 0) node->canonical += '|';
    node->canonical += entry.state.canonical();
  }
  node->canonical += ']';
  if (received.empty()) node->round = 1;
  node->received = std::move(received);
  return LocalState(std::move(node));
}

const std::string& LocalState::agent() const noexcept { return node_->agent; }
bool LocalState::is_initial() const noexcept { return node_->round == 0; }
int LocalState::round() const noexcept { return node_->round; }

int LocalState::value() const {
  if (!is_initial()) {
    throw Error(ErrorCode::ShapeMismatch, "state '" + canonical() + "' has no input value");
  }
  return node_->value;
}

std::span<const LocalState::Entry> LocalState::received() const noexcept {
  return node_->received;
}

const LocalState* LocalState::received_from(std::string_view sender) const noexcept {
  auto it = std::lower_bound(node_->received.begin(), node_->received.end(), sender,
                             [](const Entry& e, std::string_view s) { return e.sender < s; });
  if (it == node_->received.end() || it->sender != sender) return nullptr;
  return &it->state;
}

const std::string& LocalState::canonical() const noexcept { return node_->canonical; }

std::optional<int> LocalState::input_of(std::string_view agent) const {
  if (is_initial()) {
    if (node_->agent == agent) return node_->value;
    return std::nullopt;
  }
  // The sender's own entry is the shortest route to its input.
  if (const LocalState* direct = received_from(agent)) {
    if (auto v = direct->input_of(agent)) return v;
  }
  for (const Entry& entry : node_->received) {
    if (entry.sender == agent) continue;
    if (auto v = entry.state.input_of(agent)) return v;
  }
  return std::nullopt;
}

namespace {

void collect_inputs(const LocalState& state, std::map<std::string, int>& out) {
  if (state.is_initial()) {
    out.emplace(state.agent(), state.value());
    return;
  }
  for (const auto& entry : state.received()) collect_inputs(entry.state, out);
}

class StateParser {
 public:
  explicit StateParser(std::string_view text) : text_(text) {}

  LocalState parse_all() {
    LocalState state = parse_state();
    if (pos_ != text_.size()) fail("trailing characters");
    return state;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  std::string parse_agent() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ':' && text_[pos_] != '[' &&
           text_[pos_] != ']' && text_[pos_] != '|') {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    if (!is_valid_agent_name(name)) {
      pos_ = start;
      fail("expected agent name");
    }
    return name;
  }

  LocalState parse_state() {
    std::string agent = parse_agent();
    if (pos_ >= text_.size()) fail("unexpected end of state");
    if (text_[pos_] == ':') {
      ++pos_;
      int value = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
      if (ec != std::errc{}) fail("expected integer value");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return LocalState::initial(std::move(agent), value);
    }
    if (text_[pos_] != '[') fail("expected ':' or '['");
    ++pos_;
    std::vector<LocalState::Entry> entries;
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return LocalState::after_round(std::move(agent), std::move(entries));
    }
    while (true) {
      std::size_t entry_start = pos_;
      LocalState inner = parse_state();
      if (!entries.empty() && entries.back().sender >= inner.agent()) {
        pos_ = entry_start;
        fail("entries must be sorted by distinct sender");
      }
      entries.push_back({inner.agent(), std::move(inner)});
      if (pos_ >= text_.size()) fail("unterminated '['");
      if (text_[pos_] == '|') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ']') {
        ++pos_;
        break;
      }
      fail("expected '|' or ']'");
    }
    return LocalState::after_round(std::move(agent), std::move(entries));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::map<std::string, int> LocalState::known_inputs() const {
  std::map<std::string, int> out;
  collect_inputs(*this, out);
  return out;
}

LocalState parse_state(std::string_view text) { return StateParser(text).parse_all(); }

}  // namespace chromatic
