#include "procmine/inductive_miner.hpp"

#include <algorithm>
#include <numeric>

namespace procmine {

namespace {

// Multiset of activity sequences; discovery recurses on these.
using MultiLog = std::map<Word, std::size_t>;

DirectlyFollowsGraph dfg_of(const MultiLog& log) {
  DirectlyFollowsGraph dfg;
  for (const auto& [word, count] : log) {
    if (word.empty()) continue;
    dfg.start_activities[word.front()] += count;
    dfg.end_activities[word.back()] += count;
    for (std::size_t i = 0; i < word.size(); ++i) {
      dfg.activities.insert(word[i]);
      if (i + 1 < word.size()) dfg.edges[{word[i], word[i + 1]}] += count;
    }
  }
  return dfg;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  // Groups ordered by smallest member; members ascending.
  std::vector<std::vector<std::size_t>> groups() {
    std::vector<std::vector<std::size_t>> by_root(parent_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i) by_root[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> result;
    for (auto& g : by_root) {
      if (!g.empty()) result.push_back(std::move(g));
    }
    return result;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Dense view of a DFG over activity indices (activities in sorted order).
struct Graph {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> edge;
  std::vector<bool> start, end;

  explicit Graph(const DirectlyFollowsGraph& dfg) : names(dfg.activities.begin(), dfg.activities.end()) {
    const std::size_t n = names.size();
    edge.assign(n, std::vector<bool>(n, false));
    start.assign(n, false);
    end.assign(n, false);
    auto index = [&](const std::string& a) {
      return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), a) - names.begin());
    };
    for (const auto& [e, count] : dfg.edges) edge[index(e.first)][index(e.second)] = true;
    for (const auto& [a, count] : dfg.start_activities) start[index(a)] = true;
    for (const auto& [a, count] : dfg.end_activities) end[index(a)] = true;
  }

  std::size_t size() const { return names.size(); }

  Cut to_cut(Cut::Kind kind, const std::vector<std::vector<std::size_t>>& groups) const {
    Cut cut{kind, {}};
    for (const auto& g : groups) {
      std::set<std::string> block;
      for (auto i : g) block.insert(names[i]);
      cut.blocks.push_back(std::move(block));
    }
    return cut;
  }
};

std::optional<Cut> exclusive_choice_cut(const Graph& g) {
  DisjointSets sets(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (g.edge[a][b]) sets.unite(a, b);
    }
  }
  auto groups = sets.groups();
  if (groups.size() < 2) return std::nullopt;
  return g.to_cut(Cut::Kind::exclusive_choice, groups);
}

std::optional<Cut> sequence_cut(const Graph& g) {
  const std::size_t n = g.size();
  auto reach = g.edge;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  // Mutually reachable or mutually unreachable activities share a block.
  DisjointSets sets(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (reach[a][b] == reach[b][a]) sets.unite(a, b);
    }
  }
  auto groups = sets.groups();
  if (groups.size() < 2) return std::nullopt;

  auto precedes = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    for (auto a : x) {
      for (auto b : y) {
        if (!reach[a][b] || reach[b][a]) return false;
      }
    }
    return true;
  };
  std::vector<std::size_t> rank(groups.size(), 0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = 0; j < groups.size(); ++j) {
      if (i != j && precedes(groups[j], groups[i])) ++rank[i];
    }
  }
  std::vector<std::vector<std::size_t>> ordered(groups.size());
  std::vector<bool> used(groups.size(), false);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (rank[i] >= groups.size() || used[rank[i]]) return std::nullopt;
    used[rank[i]] = true;
    ordered[rank[i]] = groups[i];
  }
  for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
    for (std::size_t j = i + 1; j < ordered.size(); ++j) {
      if (!precedes(ordered[i], ordered[j])) return std::nullopt;
    }
  }
  return g.to_cut(Cut::Kind::sequence, ordered);
}

std::optional<Cut> parallel_cut(const Graph& g) {
  const std::size_t n = g.size();
  // Components of the graph linking activities that lack an edge in either direction.
  DisjointSets sets(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!(g.edge[a][b] && g.edge[b][a])) sets.unite(a, b);
    }
  }
  auto groups = sets.groups();
  if (groups.size() < 2) return std::nullopt;

  std::vector<std::vector<std::size_t>> complete, deficient;
  for (auto& group : groups) {
    bool has_start = std::any_of(group.begin(), group.end(), [&](auto a) { return g.start[a]; });
    bool has_end = std::any_of(group.begin(), group.end(), [&](auto a) { return g.end[a]; });
    (has_start && has_end ? complete : deficient).push_back(std::move(group));
  }
  if (complete.size() < 2) return std::nullopt;
  for (const auto& group : deficient) complete.front().insert(complete.front().end(), group.begin(), group.end());
  for (auto& group : complete) std::sort(group.begin(), group.end());
  std::sort(complete.begin(), complete.end());
  return g.to_cut(Cut::Kind::parallel, complete);
}

std::optional<Cut> loop_cut(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<bool> body(n, false);
  for (std::size_t a = 0; a < n; ++a) body[a] = g.start[a] || g.end[a];

  DisjointSets sets(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!body[a] && !body[b] && g.edge[a][b]) sets.unite(a, b);
    }
  }
  std::vector<std::vector<std::size_t>> redo;
  std::vector<std::size_t> merged;
  for (auto& group : sets.groups()) {
    if (body[group.front()]) continue;
    std::vector<bool> in_group(n, false);
    for (auto a : group) in_group[a] = true;
    bool valid = true;
    for (auto y : group) {
      bool from_some_end = false, from_every_end = true;
      bool to_some_start = false, to_every_start = true;
      for (std::size_t x = 0; x < n; ++x) {
        if (in_group[x] || !body[x]) continue;
        // Entry only from end activities, exit only into start activities.
        if (g.edge[x][y] && !g.end[x]) valid = false;
        if (g.edge[y][x] && !g.start[x]) valid = false;
        if (g.end[x]) {
          from_some_end = from_some_end || g.edge[x][y];
          from_every_end = from_every_end && g.edge[x][y];
        }
        if (g.start[x]) {
          to_some_start = to_some_start || g.edge[y][x];
          to_every_start = to_every_start && g.edge[y][x];
        }
      }
      if ((from_some_end && !from_every_end) || (to_some_start && !to_every_start)) valid = false;
    }
    if (valid) {
      redo.push_back(std::move(group));
    } else {
      merged.insert(merged.end(), group.begin(), group.end());
    }
  }
  if (redo.empty()) return std::nullopt;
  std::vector<std::size_t> do_block = merged;
  for (std::size_t a = 0; a < n; ++a) {
    if (body[a]) do_block.push_back(a);
  }
  std::sort(do_block.begin(), do_block.end());
  std::vector<std::vector<std::size_t>> blocks{do_block};
  blocks.insert(blocks.end(), redo.begin(), redo.end());
  return g.to_cut(Cut::Kind::loop, blocks);
}

std::size_t block_of(const Cut& cut, const std::string& activity) {
  for (std::size_t i = 0; i < cut.blocks.size(); ++i) {
    if (cut.blocks[i].contains(activity)) return i;
  }
  return cut.blocks.size();
}

// Pieces of one trace as (block, sub-trace) pairs.
template <typename Item, typename LabelOf>
std::vector<std::pair<std::size_t, std::vector<Item>>> split_sequence(const std::vector<Item>& items, const Cut& cut,
                                                                     LabelOf label_of) {
  const std::size_t k = cut.blocks.size();
  std::vector<std::pair<std::size_t, std::vector<Item>>> pieces;
  switch (cut.kind) {
    case Cut::Kind::exclusive_choice: {
      std::vector<std::size_t> counts(k, 0);
      for (const auto& item : items) {
        auto b = block_of(cut, label_of(item));
        if (b < k) ++counts[b];
      }
      // Majority block; ties to the lowest index.
      auto chosen = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
      std::vector<Item> kept;
      for (const auto& item : items) {
        if (block_of(cut, label_of(item)) == chosen) kept.push_back(item);
      }
      pieces.emplace_back(chosen, std::move(kept));
      break;
    }
    case Cut::Kind::sequence:
    case Cut::Kind::parallel: {
      for (std::size_t b = 0; b < k; ++b) pieces.emplace_back(b, std::vector<Item>{});
      for (const auto& item : items) {
        auto b = block_of(cut, label_of(item));
        if (b < k) pieces[b].second.push_back(item);
      }
      break;
    }
    case Cut::Kind::loop: {
      for (const auto& item : items) {
        auto b = block_of(cut, label_of(item));
        if (b >= k) continue;
        if (pieces.empty() || pieces.back().first != b) pieces.emplace_back(b, std::vector<Item>{});
        pieces.back().second.push_back(item);
      }
      break;
    }
  }
  return pieces;
}

std::vector<MultiLog> split_multilog(const MultiLog& log, const Cut& cut) {
  std::vector<MultiLog> sublogs(cut.blocks.size());
  for (const auto& [word, count] : log) {
    for (auto& [block, piece] : split_sequence(word, cut, [](const std::string& s) -> const std::string& { return s; })) {
      sublogs[block][std::move(piece)] += count;
    }
  }
  return sublogs;
}

ProcessTree discover(const MultiLog& log) {
  MultiLog non_empty;
  bool has_empty = false;
  for (const auto& [word, count] : log) {
    if (word.empty()) has_empty = true;
    else non_empty.emplace(word, count);
  }
  if (non_empty.empty()) return ProcessTree::tau();
  if (has_empty) return ProcessTree::exclusive_choice({discover(non_empty), ProcessTree::tau()});

  DirectlyFollowsGraph dfg = dfg_of(non_empty);
  if (dfg.activities.size() == 1) {
    const std::string& a = *dfg.activities.begin();
    bool single = std::all_of(non_empty.begin(), non_empty.end(), [](const auto& entry) { return entry.first.size() == 1; });
    if (single) return ProcessTree::activity(a);
    return ProcessTree::loop({ProcessTree::activity(a), ProcessTree::tau()});
  }

  if (auto cut = find_cut(dfg)) {
    std::vector<ProcessTree> children;
    for (const auto& sublog : split_multilog(non_empty, *cut)) children.push_back(discover(sublog));
    switch (cut->kind) {
      case Cut::Kind::exclusive_choice: return ProcessTree::exclusive_choice(std::move(children));
      case Cut::Kind::sequence: return ProcessTree::sequence(std::move(children));
      case Cut::Kind::parallel: return ProcessTree::parallel(std::move(children));
      case Cut::Kind::loop: return ProcessTree::loop(std::move(children));
    }
  }

  // Flower model: any sequence over the alphabet.
  std::vector<ProcessTree> children{ProcessTree::tau()};
  for (const auto& a : dfg.activities) children.push_back(ProcessTree::activity(a));
  return ProcessTree::loop(std::move(children));
}

}  // namespace

DirectlyFollowsGraph build_dfg(const EventLog& log) { return dfg_of(variants(log)); }

std::optional<Cut> find_cut(const DirectlyFollowsGraph& dfg) {
  if (dfg.activities.size() < 2) return std::nullopt;
  Graph g(dfg);
  if (auto cut = exclusive_choice_cut(g)) return cut;
  if (auto cut = sequence_cut(g)) return cut;
  if (auto cut = parallel_cut(g)) return cut;
  return loop_cut(g);
}

std::vector<EventLog> split_log(const EventLog& log, const Cut& cut) {
  std::vector<std::vector<Trace>> traces(cut.blocks.size());
  for (const auto& trace : log.traces()) {
    auto pieces = split_sequence(trace.events, cut, [](const Event& e) -> const std::string& { return e.activity; });
    for (auto& [block, events] : pieces) traces[block].push_back(Trace{trace.case_id, std::move(events)});
  }
  std::vector<EventLog> sublogs;
  sublogs.reserve(traces.size());
  for (auto& t : traces) sublogs.emplace_back(std::move(t));
  return sublogs;
}

ProcessTree discover_tree(const EventLog& log) { return discover(variants(log)); }

AcceptingPetriNet discover_net(const EventLog& log) { return to_petri_net(discover_tree(log)); }

}  // namespace procmine
