#include "procmine/process_tree.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <span>
#include <stdexcept>

#include "procmine/errors.hpp"

namespace procmine {

namespace {

constexpr std::string_view keyword(ProcessTree::Operator op) {
  switch (op) {
    case ProcessTree::Operator::sequence: return "seq";
    case ProcessTree::Operator::exclusive_choice: return "xor";
    case ProcessTree::Operator::parallel: return "and";
    case ProcessTree::Operator::loop: return "loop";
    case ProcessTree::Operator::tau: return "tau";
    case ProcessTree::Operator::activity: break;
  }
  return "";
}

bool is_bare_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != ',' && c != '(' && c != ')' && c != '"' && c != '\\';
}

bool is_reserved(std::string_view word) {
  return word == "tau" || word == "seq" || word == "xor" || word == "and" || word == "loop";
}

class NotationParser {
 public:
  explicit NotationParser(std::string_view text) : text_(text) {}

  ProcessTree parse_all() {
    ProcessTree tree = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return tree;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("process tree: " + message, 1, static_cast<long>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  ProcessTree parse_node() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '"') return ProcessTree::activity(parse_quoted());

    std::size_t start = pos_;
    while (pos_ < text_.size() && is_bare_char(text_[pos_])) ++pos_;
    std::string word(text_.substr(start, pos_ - start));
    if (word.empty()) fail("expected a node");
    skip_space();
    bool call = pos_ < text_.size() && text_[pos_] == '(';
    if (!call) return word == "tau" ? ProcessTree::tau() : ProcessTree::activity(std::move(word));

    ++pos_;
    std::vector<ProcessTree> children;
    while (true) {
      children.push_back(parse_node());
      skip_space();
      if (pos_ >= text_.size()) fail("unterminated operator");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      fail("expected ',' or ')'");
    }
    try {
      if (word == "seq") return ProcessTree::sequence(std::move(children));
      if (word == "xor") return ProcessTree::exclusive_choice(std::move(children));
      if (word == "and") return ProcessTree::parallel(std::move(children));
      if (word == "loop") return ProcessTree::loop(std::move(children));
    } catch (const std::invalid_argument& err) {
      fail(err.what());
    }
    fail("unknown operator '" + word + "'");
  }

  std::string parse_quoted() {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) fail("unterminated quoted label");
    ++pos_;
    if (out.empty()) fail("empty label");
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const ProcessTree& node, std::string& out) {
  using Op = ProcessTree::Operator;
  if (node.op() == Op::tau) {
    out += "tau";
    return;
  }
  if (node.op() == Op::activity) {
    const std::string& label = node.label();
    bool bare = !is_reserved(label) && std::all_of(label.begin(), label.end(), is_bare_char);
    if (bare) {
      out += label;
    } else {
      out += '"';
      for (char c : label) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
    }
    return;
  }
  out += keyword(node.op());
  out += '(';
  for (std::size_t i = 0; i < node.children().size(); ++i) {
    if (i > 0) out += ", ";
    print(node.children()[i], out);
  }
  out += ')';
}

class NetBuilder {
 public:
  AcceptingPetriNet build(const ProcessTree& tree) {
    PlaceIndex source = apn_.net.add_place("source", "source");
    PlaceIndex sink = apn_.net.add_place("sink", "sink");
    translate(tree, source, sink);
    apn_.initial = single_token(apn_.net, source);
    apn_.finals = {single_token(apn_.net, sink)};
    return std::move(apn_);
  }

 private:
  PlaceIndex place() { return apn_.net.add_place("p" + std::to_string(++places_)); }

  TransitionIndex transition(std::optional<std::string> label) {
    return apn_.net.add_transition("t" + std::to_string(++transitions_), std::move(label));
  }

  void translate(const ProcessTree& node, PlaceIndex in, PlaceIndex out) {
    PetriNet& net = apn_.net;
    using Op = ProcessTree::Operator;
    const auto& children = node.children();
    switch (node.op()) {
      case Op::activity:
      case Op::tau: {
        auto t = transition(node.op() == Op::activity ? std::optional(node.label()) : std::nullopt);
        net.add_input_arc(in, t);
        net.add_output_arc(t, out);
        return;
      }
      case Op::sequence: {
        PlaceIndex from = in;
        for (std::size_t i = 0; i + 1 < children.size(); ++i) {
          PlaceIndex mid = place();
          translate(children[i], from, mid);
          from = mid;
        }
        translate(children.back(), from, out);
        return;
      }
      case Op::exclusive_choice:
        for (const auto& child : children) translate(child, in, out);
        return;
      case Op::parallel: {
        auto split = transition(std::nullopt);
        auto join = transition(std::nullopt);
        net.add_input_arc(in, split);
        for (const auto& child : children) {
          PlaceIndex begin = place();
          PlaceIndex end = place();
          net.add_output_arc(split, begin);
          translate(child, begin, end);
          net.add_input_arc(end, join);
        }
        net.add_output_arc(join, out);
        return;
      }
      case Op::loop: {
        // Fresh entry/exit places keep the back edge away from `in`.
        auto enter = transition(std::nullopt);
        PlaceIndex before_do = place();
        PlaceIndex after_do = place();
        net.add_input_arc(in, enter);
        net.add_output_arc(enter, before_do);
        translate(children.front(), before_do, after_do);
        for (std::size_t i = 1; i < children.size(); ++i) translate(children[i], after_do, before_do);
        auto leave = transition(std::nullopt);
        net.add_input_arc(after_do, leave);
        net.add_output_arc(leave, out);
        return;
      }
    }
  }

  AcceptingPetriNet apn_;
  std::size_t places_ = 0;
  std::size_t transitions_ = 0;
};

class Simulator {
 public:
  Simulator(std::size_t max_loop, std::uint64_t seed) : max_loop_(max_loop), rng_(seed) {}

  void run(const ProcessTree& node, Word& out) {
    using Op = ProcessTree::Operator;
    const auto& children = node.children();
    switch (node.op()) {
      case Op::activity: out.push_back(node.label()); return;
      case Op::tau: return;
      case Op::sequence:
        for (const auto& child : children) run(child, out);
        return;
      case Op::exclusive_choice: run(children[pick(children.size())], out); return;
      case Op::parallel: {
        std::vector<Word> parts(children.size());
        for (std::size_t i = 0; i < children.size(); ++i) run(children[i], parts[i]);
        std::vector<std::size_t> next(children.size(), 0);
        std::vector<std::size_t> live;
        while (true) {
          live.clear();
          for (std::size_t i = 0; i < parts.size(); ++i) {
            if (next[i] < parts[i].size()) live.push_back(i);
          }
          if (live.empty()) break;
          std::size_t i = live[pick(live.size())];
          out.push_back(parts[i][next[i]++]);
        }
        return;
      }
      case Op::loop: {
        run(children.front(), out);
        std::size_t repeats = std::uniform_int_distribution<std::size_t>(0, max_loop_)(rng_);
        for (std::size_t r = 0; r < repeats; ++r) {
          run(children[1 + pick(children.size() - 1)], out);
          run(children.front(), out);
        }
        return;
      }
    }
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::size_t max_loop_;
  std::mt19937_64 rng_;
};

std::string label_name(std::size_t index) {
  std::string name;
  ++index;
  while (index > 0) {
    --index;
    name.insert(name.begin(), static_cast<char>('a' + index % 26));
    index /= 26;
  }
  return name;
}

class TreeGenerator {
 public:
  TreeGenerator(std::size_t max_depth, std::uint64_t seed) : max_depth_(max_depth), rng_(seed) {}

  ProcessTree build(std::span<const std::string> labels, std::size_t depth) {
    if (labels.size() == 1 || depth >= max_depth_) return ProcessTree::activity(labels.front());

    auto op = static_cast<int>(uniform(0, 3));
    std::size_t blocks = uniform(2, std::min<std::size_t>(labels.size(), op == 3 ? 3 : 4));
    // Random composition of labels.size() into `blocks` positive parts.
    std::vector<std::size_t> cuts;
    std::vector<std::size_t> candidates(labels.size() - 1);
    for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = i + 1;
    std::shuffle(candidates.begin(), candidates.end(), rng_);
    cuts.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(blocks - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(labels.size());

    std::vector<ProcessTree> children;
    std::size_t from = 0;
    for (std::size_t cut : cuts) {
      children.push_back(build(labels.subspan(from, cut - from), depth + 1));
      from = cut;
    }
    switch (op) {
      case 0: return ProcessTree::sequence(std::move(children));
      case 1:
        if (uniform(0, 4) == 0) children.push_back(ProcessTree::tau());
        return ProcessTree::exclusive_choice(std::move(children));
      case 2: return ProcessTree::parallel(std::move(children));
      default:
        if (uniform(0, 5) == 0) children.push_back(ProcessTree::tau());
        return ProcessTree::loop(std::move(children));
    }
  }

 private:
  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  std::size_t max_depth_;
  std::mt19937_64 rng_;
};

}  // namespace

ProcessTree::ProcessTree(Operator op, std::string label, std::vector<ProcessTree> children)
    : op_(op), label_(std::move(label)), children_(std::move(children)) {
  if (op_ == Operator::activity && label_.empty()) throw std::invalid_argument("activity label must be non-empty");
  if (!is_leaf() && children_.size() < 2) {
    throw std::invalid_argument(std::string(keyword(op_)) + " needs at least two children");
  }
}

ProcessTree ProcessTree::activity(std::string label) { return {Operator::activity, std::move(label), {}}; }
ProcessTree ProcessTree::tau() { return {Operator::tau, {}, {}}; }
ProcessTree ProcessTree::sequence(std::vector<ProcessTree> c) { return {Operator::sequence, {}, std::move(c)}; }
ProcessTree ProcessTree::exclusive_choice(std::vector<ProcessTree> c) {
  return {Operator::exclusive_choice, {}, std::move(c)};
}
ProcessTree ProcessTree::parallel(std::vector<ProcessTree> c) { return {Operator::parallel, {}, std::move(c)}; }
ProcessTree ProcessTree::loop(std::vector<ProcessTree> c) { return {Operator::loop, {}, std::move(c)}; }

ProcessTree ProcessTree::parse(std::string_view text) { return NotationParser(text).parse_all(); }

std::size_t ProcessTree::depth() const {
  std::size_t deepest = 0;
  for (const auto& child : children_) deepest = std::max(deepest, child.depth());
  return deepest + 1;
}

std::set<std::string> ProcessTree::activities() const {
  std::set<std::string> result;
  if (op_ == Operator::activity) result.insert(label_);
  for (const auto& child : children_) result.merge(child.activities());
  return result;
}

std::string ProcessTree::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

AcceptingPetriNet to_petri_net(const ProcessTree& tree) { return NetBuilder().build(tree); }

EventLog simulate(const ProcessTree& tree, std::size_t count, std::size_t max_loop, std::uint64_t seed) {
  Simulator simulator(max_loop, seed);
  std::vector<Word> words(count);
  for (auto& word : words) simulator.run(tree, word);
  return EventLog::from_words(words);
}

ProcessTree random_tree(std::size_t alphabet_size, std::size_t max_depth, std::uint64_t seed) {
  if (alphabet_size == 0 || max_depth == 0) throw std::invalid_argument("alphabet size and depth must be positive");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < alphabet_size; ++i) labels.push_back(label_name(i));
  return TreeGenerator(max_depth, seed).build(labels, 1);
}

}  // namespace procmine
