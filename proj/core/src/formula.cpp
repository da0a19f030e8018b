#include "chromatic/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "chromatic/error.hpp"

namespace chromatic {

struct Formula::Node {
  FormulaKind kind = FormulaKind::True;
  AtomKey key = AtomKey::Input;
  std::string agent;
  int value = 0;
  Group group;
  GroupFamily family;
  std::vector<Formula> children;
  std::string text;
};

namespace {

Group normalize_group(Group group) {
  if (group.empty()) throw Error(ErrorCode::EmptyGroup, "empty agent group");
  for (const auto& a : group) {
    if (!is_valid_agent_name(a)) throw Error(ErrorCode::UnknownAgent, "invalid agent name '" + a + "'");
  }
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  return group;
}

std::string group_text(const Group& group) {
  std::string out = "(";
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (i > 0) out += ' ';
    out += group[i];
  }
  return out + ")";
}

}  // namespace

Formula Formula::atom(AtomKey key, std::string agent, int value) {
  if (!is_valid_agent_name(agent)) throw Error(ErrorCode::UnknownAgent, "invalid agent name '" + agent + "'");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->key = key;
  n->agent = std::move(agent);
  n->value = value;
  n->text = std::string("(= ") + (key == AtomKey::Input ? "input " : "decision ") + n->agent +
            " " + std::to_string(value) + ")";
  return Formula(std::move(n));
}

Formula Formula::truth() {
  static const Formula t = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::True;
    n->text = "true";
    return Formula(std::move(n));
  }();
  return t;
}

Formula Formula::falsity() {
  static const Formula f = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::False;
    n->text = "false";
    return Formula(std::move(n));
  }();
  return f;
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Not;
  n->text = "(not " + f.to_string() + ")";
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conjunction(std::vector<Formula> parts) {
  if (parts.empty()) throw Error(ErrorCode::MalformedInput, "'and' needs at least one operand");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::And;
  n->text = "(and";
  for (const auto& p : parts) n->text += " " + p.to_string();
  n->text += ")";
  n->children = std::move(parts);
  return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> parts) {
  if (parts.empty()) throw Error(ErrorCode::MalformedInput, "'or' needs at least one operand");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Or;
  n->text = "(or";
  for (const auto& p : parts) n->text += " " + p.to_string();
  n->text += ")";
  n->children = std::move(parts);
  return Formula(std::move(n));
}

Formula Formula::implication(Formula premise, Formula conclusion) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Implies;
  n->text = "(implies " + premise.to_string() + " " + conclusion.to_string() + ")";
  n->children = {std::move(premise), std::move(conclusion)};
  return Formula(std::move(n));
}

Formula Formula::knows(std::string agent, Formula f) {
  if (!is_valid_agent_name(agent)) throw Error(ErrorCode::UnknownAgent, "invalid agent name '" + agent + "'");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Knows;
  n->agent = std::move(agent);
  n->text = "(K " + n->agent + " " + f.to_string() + ")";
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::common(Group group, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Common;
  n->group = normalize_group(std::move(group));
  n->text = "(C " + group_text(n->group) + " " + f.to_string() + ")";
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::distributed(Group group, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Distributed;
  n->group = normalize_group(std::move(group));
  n->text = "(D " + group_text(n->group) + " " + f.to_string() + ")";
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::common_distributed(GroupFamily family, Formula f) {
  if (family.empty()) throw Error(ErrorCode::EmptyGroup, "empty group family");
  for (auto& g : family) g = normalize_group(std::move(g));
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::CommonDistributed;
  n->family = std::move(family);
  n->text = "(CD (";
  for (std::size_t i = 0; i < n->family.size(); ++i) {
    if (i > 0) n->text += ' ';
    n->text += group_text(n->family[i]);
  }
  n->text += ") " + f.to_string() + ")";
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }

AtomKey Formula::atom_key() const {
  if (node_->kind != FormulaKind::Atom) throw Error(ErrorCode::MalformedInput, "not an atom");
  return node_->key;
}

const std::string& Formula::agent() const { return node_->agent; }
int Formula::value() const { return node_->value; }
const Group& Formula::group() const { return node_->group; }
const GroupFamily& Formula::family() const { return node_->family; }
std::span<const Formula> Formula::children() const noexcept { return node_->children; }

const Formula& Formula::child() const {
  if (node_->children.empty()) throw Error(ErrorCode::MalformedInput, "formula has no operand");
  return node_->children.front();
}

bool Formula::is_modal() const noexcept {
  switch (node_->kind) {
    case FormulaKind::Knows:
    case FormulaKind::Common:
    case FormulaKind::Distributed:
    case FormulaKind::CommonDistributed:
      return true;
    default:
      return false;
  }
}

std::string Formula::to_string() const { return node_->text; }

namespace {

void collect_agents(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Knows:
      out.insert(f.agent());
      break;
    case FormulaKind::Common:
    case FormulaKind::Distributed:
      out.insert(f.group().begin(), f.group().end());
      break;
    case FormulaKind::CommonDistributed:
      for (const auto& g : f.family()) out.insert(g.begin(), g.end());
      break;
    default:
      break;
  }
  for (const auto& c : f.children()) collect_agents(c, out);
}

}  // namespace

std::vector<std::string> Formula::agents() const {
  std::set<std::string> out;
  collect_agents(*this, out);
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, std::optional<std::span<const std::string>> agents)
      : text_(text), agents_(agents) {}

  Formula parse_all() {
    Formula f = parse();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char ch) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == ch;
  }

  void expect(char ch) {
    if (!peek(ch)) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  std::string token() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) fail(pos_ >= text_.size() ? "unexpected end of input" : "expected a token");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string agent() {
    std::size_t start = (skip_space(), pos_);
    std::string name = token();
    if (!is_valid_agent_name(name)) {
      pos_ = start;
      fail("invalid agent name '" + name + "'");
    }
    if (agents_ && std::find(agents_->begin(), agents_->end(), name) == agents_->end()) {
      throw Error(ErrorCode::UnknownAgent, "agent '" + name + "' at offset " + std::to_string(start));
    }
    return name;
  }

  Group group() {
    expect('(');
    Group g;
    while (!peek(')')) {
      if (pos_ >= text_.size()) fail("unterminated group");
      g.push_back(agent());
    }
    ++pos_;
    if (g.empty()) throw Error(ErrorCode::EmptyGroup, "empty group at offset " + std::to_string(pos_));
    return g;
  }

  Formula parse() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] != '(') {
      std::size_t start = pos_;
      std::string word = token();
      if (word == "true") return Formula::truth();
      if (word == "false") return Formula::falsity();
      pos_ = start;
      fail("unexpected token '" + word + "'");
    }
    ++pos_;
    std::size_t op_start = (skip_space(), pos_);
    std::string op = token();
    Formula result = Formula::truth();
    if (op == "=") {
      std::size_t key_start = (skip_space(), pos_);
      std::string key = token();
      AtomKey k;
      if (key == "input") {
        k = AtomKey::Input;
      } else if (key == "decision") {
        k = AtomKey::Decision;
      } else {
        pos_ = key_start;
        fail("atom key must be 'input' or 'decision'");
      }
      std::string a = agent();
      std::size_t value_start = (skip_space(), pos_);
      std::string v = token();
      int value = 0;
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
      if (ec != std::errc{} || ptr != v.data() + v.size()) {
        pos_ = value_start;
        fail("expected integer value");
      }
      result = Formula::atom(k, std::move(a), value);
    } else if (op == "not") {
      result = Formula::negation(parse());
    } else if (op == "and" || op == "or") {
      std::vector<Formula> parts;
      while (!peek(')')) {
        if (pos_ >= text_.size()) fail("unexpected end of input");
        parts.push_back(parse());
      }
      if (parts.empty()) fail("'" + op + "' needs at least one operand");
      result = op == "and" ? Formula::conjunction(std::move(parts))
                           : Formula::disjunction(std::move(parts));
    } else if (op == "implies") {
      Formula premise = parse();
      Formula conclusion = parse();
      result = Formula::implication(std::move(premise), std::move(conclusion));
    } else if (op == "K") {
      std::string a = agent();
      result = Formula::knows(std::move(a), parse());
    } else if (op == "C" || op == "D") {
      Group g = group();
      Formula body = parse();
      result = op == "C" ? Formula::common(std::move(g), std::move(body))
                         : Formula::distributed(std::move(g), std::move(body));
    } else if (op == "CD") {
      expect('(');
      GroupFamily family;
      while (!peek(')')) {
        if (pos_ >= text_.size()) fail("unterminated group family");
        family.push_back(group());
      }
      ++pos_;
      if (family.empty()) {
        throw Error(ErrorCode::EmptyGroup, "empty group family at offset " + std::to_string(pos_));
      }
      result = Formula::common_distributed(std::move(family), parse());
    } else {
      pos_ = op_start;
      fail("unknown operator '" + op + "'");
    }
    expect(')');
    return result;
  }

  std::string_view text_;
  std::optional<std::span<const std::string>> agents_;
  std::size_t pos_ = 0;
};

Formula rebuild_modal(const Formula& f, Formula body) {
  switch (f.kind()) {
    case FormulaKind::Knows: return Formula::knows(f.agent(), std::move(body));
    case FormulaKind::Common: return Formula::common(f.group(), std::move(body));
    case FormulaKind::Distributed: return Formula::distributed(f.group(), std::move(body));
    case FormulaKind::CommonDistributed:
      return Formula::common_distributed(f.family(), std::move(body));
    default: throw Error(ErrorCode::MalformedInput, "not a modal formula");
  }
}

Formula nnf(const Formula& f, bool negate) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return negate ? Formula::negation(f) : f;
    case FormulaKind::True:
      return negate ? Formula::falsity() : f;
    case FormulaKind::False:
      return negate ? Formula::truth() : f;
    case FormulaKind::Not:
      return nnf(f.child(), !negate);
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(nnf(c, negate));
      bool conj = (f.kind() == FormulaKind::And) != negate;
      return conj ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
    }
    case FormulaKind::Implies: {
      // a -> b  ==  !a | b ;  !(a -> b)  ==  a & !b
      Formula premise = nnf(f.children()[0], !negate);
      Formula conclusion = nnf(f.children()[1], negate);
      return negate ? Formula::conjunction({std::move(premise), std::move(conclusion)})
                    : Formula::disjunction({std::move(premise), std::move(conclusion)});
    }
    default: {
      Formula modal = rebuild_modal(f, nnf(f.child(), false));
      return negate ? Formula::negation(std::move(modal)) : modal;
    }
  }
}

bool positive_nnf(const Formula& f) {
  if (f.kind() == FormulaKind::Not && f.child().is_modal()) return false;
  for (const auto& c : f.children()) {
    if (!positive_nnf(c)) return false;
  }
  return true;
}

}  // namespace

Formula parse_formula(std::string_view text, std::optional<std::span<const std::string>> agents) {
  return FormulaParser(text, agents).parse_all();
}

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_positive(const Formula& f) { return positive_nnf(to_nnf(f)); }

}  // namespace chromatic
