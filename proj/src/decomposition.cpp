#include "procmine/decomposition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "procmine/inductive_miner.hpp"

namespace procmine {

namespace {

bool overlaps(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

std::size_t union_size(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t shared = 0;
  for (const auto& x : a) shared += b.count(x);
  return a.size() + b.size() - shared;
}

// Mutable structure used by the reduction rules.
struct Editable {
  struct Node {
    std::string id;
    std::string name;
    std::optional<std::string> label;
    bool alive = true;
  };
  std::vector<Node> places, transitions;
  std::vector<std::set<PlaceIndex>> inputs, outputs;  // per transition
  std::vector<Marking::Count> initial;
  std::vector<std::vector<Marking::Count>> finals;

  explicit Editable(const AcceptingPetriNet& apn) {
    const PetriNet& net = apn.net;
    for (const auto& p : net.places()) places.push_back({p.id, p.name, std::nullopt});
    for (TransitionIndex t = 0; t < net.transition_count(); ++t) {
      const auto& tr = net.transition(t);
      transitions.push_back({tr.id, {}, tr.label});
      inputs.emplace_back(net.inputs(t).begin(), net.inputs(t).end());
      outputs.emplace_back(net.outputs(t).begin(), net.outputs(t).end());
    }
    initial.assign(apn.initial.tokens().begin(), apn.initial.tokens().end());
    for (const auto& f : apn.finals) finals.emplace_back(f.tokens().begin(), f.tokens().end());
  }

  std::set<TransitionIndex> producers(PlaceIndex p) const {
    std::set<TransitionIndex> result;
    for (TransitionIndex t = 0; t < transitions.size(); ++t) {
      if (transitions[t].alive && outputs[t].contains(p)) result.insert(t);
    }
    return result;
  }

  std::set<TransitionIndex> consumers(PlaceIndex p) const {
    std::set<TransitionIndex> result;
    for (TransitionIndex t = 0; t < transitions.size(); ++t) {
      if (transitions[t].alive && inputs[t].contains(p)) result.insert(t);
    }
    return result;
  }

  void remove_place(PlaceIndex p) {
    places[p].alive = false;
    for (auto& s : inputs) s.erase(p);
    for (auto& s : outputs) s.erase(p);
  }

  // Keeps `keep`, moving arcs and tokens of `gone` onto it.
  void fuse_places(PlaceIndex keep, PlaceIndex gone) {
    for (TransitionIndex t = 0; t < transitions.size(); ++t) {
      if (inputs[t].erase(gone)) inputs[t].insert(keep);
      if (outputs[t].erase(gone)) outputs[t].insert(keep);
    }
    initial[keep] += initial[gone];
    for (auto& f : finals) f[keep] += f[gone];
    places[gone].alive = false;
  }

  bool remove_duplicate_places() {
    bool changed = false;
    for (PlaceIndex p = 0; p < places.size(); ++p) {
      if (!places[p].alive) continue;
      auto p_in = producers(p);
      auto p_out = consumers(p);
      for (PlaceIndex q = p + 1; q < places.size(); ++q) {
        if (!places[q].alive || initial[p] != initial[q]) continue;
        bool same_finals = std::all_of(finals.begin(), finals.end(), [&](const auto& f) { return f[p] == f[q]; });
        if (!same_finals || producers(q) != p_in || consumers(q) != p_out) continue;
        remove_place(q);
        changed = true;
      }
    }
    return changed;
  }

  bool fuse_series() {
    for (TransitionIndex t = 0; t < transitions.size(); ++t) {
      if (!transitions[t].alive || transitions[t].label) continue;
      if (inputs[t].size() != 1 || outputs[t].size() != 1) continue;
      PlaceIndex p = *inputs[t].begin();
      PlaceIndex q = *outputs[t].begin();
      if (p == q) continue;
      // If t is p's only consumer, a token in p can only ever move on to q;
      // if t is q's only producer, every token in q came through p. Either
      // way the silent step can be skipped, provided a final marking never
      // waits on p (first case) or q starts empty (second case).
      const bool only_exit = consumers(p) == std::set<TransitionIndex>{t} &&
                             std::all_of(finals.begin(), finals.end(), [&](const auto& f) { return f[p] == 0; });
      const bool only_entry = producers(q) == std::set<TransitionIndex>{t} && initial[q] == 0;
      if (!only_exit && !only_entry) continue;
      transitions[t].alive = false;
      inputs[t].clear();
      outputs[t].clear();
      fuse_places(p, q);
      return true;
    }
    return false;
  }

  bool unmarked(PlaceIndex p) const {
    return initial[p] == 0 && std::all_of(finals.begin(), finals.end(), [&](const auto& f) { return f[p] == 0; });
  }

  static bool disjoint(const std::set<PlaceIndex>& a, const std::set<PlaceIndex>& b) {
    return std::none_of(a.begin(), a.end(), [&](PlaceIndex x) { return b.contains(x); });
  }

  // u -> p -> tau, p private to the pair: tau can always fire right after u,
  // so u takes over tau's outputs.
  // tau -> q -> v, q private to the pair: tau can always be postponed until
  // just before v, so v takes over tau's inputs.
  bool fuse_series_transitions() {
    for (TransitionIndex t = 0; t < transitions.size(); ++t) {
      if (!transitions[t].alive || transitions[t].label) continue;
      if (inputs[t].size() == 1) {
        PlaceIndex p = *inputs[t].begin();
        auto from = producers(p);
        if (!outputs[t].contains(p) && unmarked(p) && from.size() == 1 && consumers(p) == std::set<TransitionIndex>{t}) {
          TransitionIndex u = *from.begin();
          if (u != t && disjoint(outputs[u], outputs[t])) {
            outputs[u].erase(p);
            outputs[u].insert(outputs[t].begin(), outputs[t].end());
            transitions[t].alive = false;
            inputs[t].clear();
            outputs[t].clear();
            places[p].alive = false;
            return true;
          }
        }
      }
      if (outputs[t].size() == 1) {
        PlaceIndex q = *outputs[t].begin();
        auto to = consumers(q);
        if (!inputs[t].contains(q) && unmarked(q) && to.size() == 1 && producers(q) == std::set<TransitionIndex>{t}) {
          TransitionIndex v = *to.begin();
          if (v != t && disjoint(inputs[v], inputs[t])) {
            inputs[v].erase(q);
            inputs[v].insert(inputs[t].begin(), inputs[t].end());
            transitions[t].alive = false;
            inputs[t].clear();
            outputs[t].clear();
            places[q].alive = false;
            return true;
          }
        }
      }
    }
    return false;
  }

  bool drop_isolated_silent() {
    bool changed = false;
    for (TransitionIndex t = 0; t < transitions.size(); ++t) {
      if (transitions[t].alive && !transitions[t].label && inputs[t].empty() && outputs[t].empty()) {
        transitions[t].alive = false;
        changed = true;
      }
    }
    return changed;
  }

  AcceptingPetriNet rebuild() const {
    AcceptingPetriNet apn;
    std::vector<PlaceIndex> new_place(places.size());
    std::vector<Marking::Count> init;
    std::vector<std::vector<Marking::Count>> fin(finals.size());
    for (PlaceIndex p = 0; p < places.size(); ++p) {
      if (!places[p].alive) continue;
      new_place[p] = apn.net.add_place(places[p].id, places[p].name);
      init.push_back(initial[p]);
      for (std::size_t f = 0; f < finals.size(); ++f) fin[f].push_back(finals[f][p]);
    }
    for (TransitionIndex t = 0; t < transitions.size(); ++t) {
      if (!transitions[t].alive) continue;
      auto nt = apn.net.add_transition(transitions[t].id, transitions[t].label);
      for (auto p : inputs[t]) apn.net.add_input_arc(new_place[p], nt);
      for (auto p : outputs[t]) apn.net.add_output_arc(nt, new_place[p]);
    }
    apn.initial = Marking(std::move(init));
    for (auto& f : fin) {
      Marking m(std::move(f));
      if (std::find(apn.finals.begin(), apn.finals.end(), m) == apn.finals.end()) apn.finals.push_back(std::move(m));
    }
    return apn;
  }
};

}  // namespace

ActivityClustering cluster_activities(const EventLog& log, std::size_t max_cluster_size) {
  if (max_cluster_size < 2) throw std::invalid_argument("max cluster size must be at least 2");
  DirectlyFollowsGraph dfg = build_dfg(log);
  ActivityClustering groups;
  for (const auto& [edge, count] : dfg.edges) {
    std::set<std::string> group{edge.first, edge.second};
    if (std::find(groups.begin(), groups.end(), group) == groups.end()) groups.push_back(std::move(group));
  }
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < groups.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        if (overlaps(groups[i], groups[j]) && union_size(groups[i], groups[j]) <= max_cluster_size) {
          groups[i].insert(groups[j].begin(), groups[j].end());
          groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
          break;
        }
      }
    }
  }
  // Drop groups contained in another one.
  ActivityClustering clusters;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    bool contained = false;
    for (std::size_t j = 0; j < groups.size() && !contained; ++j) {
      if (i == j) continue;
      bool subset = std::includes(groups[j].begin(), groups[j].end(), groups[i].begin(), groups[i].end());
      contained = subset && (groups[j].size() > groups[i].size() || j < i);
    }
    if (!contained) clusters.push_back(groups[i]);
  }
  for (const auto& a : log.alphabet()) {
    bool covered = std::any_of(clusters.begin(), clusters.end(), [&](const auto& c) { return c.contains(a); });
    if (!covered) clusters.push_back({a});
  }
  return clusters;
}

AcceptingPetriNet merge(std::span<const AcceptingPetriNet> subnets) {
  if (subnets.empty()) throw std::invalid_argument("merge needs at least one subnet");
  if (subnets.size() == 1) return subnets.front();

  AcceptingPetriNet merged;
  PetriNet& net = merged.net;
  std::vector<std::vector<PlaceIndex>> place_map(subnets.size());
  for (std::size_t i = 0; i < subnets.size(); ++i) {
    subnets[i].validate();
    const std::string prefix = "n" + std::to_string(i + 1) + ".";
    for (const auto& p : subnets[i].net.places()) place_map[i].push_back(net.add_place(prefix + p.id, p.name));
  }

  // label -> per subnet, the transitions carrying it
  std::map<std::string, std::vector<std::vector<TransitionIndex>>> by_label;
  for (std::size_t i = 0; i < subnets.size(); ++i) {
    const PetriNet& sub = subnets[i].net;
    for (TransitionIndex t = 0; t < sub.transition_count(); ++t) {
      if (const auto& label = sub.transition(t).label) {
        auto& slots = by_label[*label];
        slots.resize(subnets.size());
        slots[i].push_back(t);
      }
    }
  }

  std::size_t next_id = 0;
  auto add = [&](std::optional<std::string> label, const std::vector<std::pair<std::size_t, TransitionIndex>>& parts) {
    auto t = net.add_transition("t" + std::to_string(++next_id), std::move(label));
    for (auto [i, sub_t] : parts) {
      for (auto p : subnets[i].net.inputs(sub_t)) net.add_input_arc(place_map[i][p], t);
      for (auto p : subnets[i].net.outputs(sub_t)) net.add_output_arc(t, place_map[i][p]);
    }
  };

  std::set<std::string> emitted;
  for (std::size_t i = 0; i < subnets.size(); ++i) {
    const PetriNet& sub = subnets[i].net;
    for (TransitionIndex t = 0; t < sub.transition_count(); ++t) {
      const auto& label = sub.transition(t).label;
      if (!label) {
        add(std::nullopt, {{i, t}});
        continue;
      }
      if (!emitted.insert(*label).second) continue;
      // Cross product over the subnets that know the label.
      const auto& slots = by_label[*label];
      std::vector<std::vector<std::pair<std::size_t, TransitionIndex>>> combos{{}};
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].empty()) continue;
        std::vector<std::vector<std::pair<std::size_t, TransitionIndex>>> next;
        for (const auto& combo : combos) {
          for (auto candidate : slots[s]) {
            auto extended = combo;
            extended.emplace_back(s, candidate);
            next.push_back(std::move(extended));
          }
        }
        combos = std::move(next);
      }
      for (const auto& combo : combos) add(*label, combo);
    }
  }

  merged.initial = Marking(net.place_count());
  for (std::size_t i = 0; i < subnets.size(); ++i) {
    for (PlaceIndex p = 0; p < subnets[i].net.place_count(); ++p) merged.initial[place_map[i][p]] += subnets[i].initial[p];
  }
  std::vector<Marking> finals{Marking(net.place_count())};
  for (std::size_t i = 0; i < subnets.size(); ++i) {
    std::vector<Marking> next;
    for (const auto& partial : finals) {
      for (const auto& f : subnets[i].finals) {
        Marking combined = partial;
        for (PlaceIndex p = 0; p < subnets[i].net.place_count(); ++p) combined[place_map[i][p]] += f[p];
        next.push_back(std::move(combined));
      }
    }
    finals = std::move(next);
  }
  merged.finals = std::move(finals);
  return merged;
}

AcceptingPetriNet reduce(const AcceptingPetriNet& apn) {
  apn.validate();
  Editable e(apn);
  bool changed = true;
  while (changed) {
    changed = e.remove_duplicate_places();
    changed = e.fuse_series() || changed;
    changed = e.fuse_series_transitions() || changed;
    changed = e.drop_isolated_silent() || changed;
  }
  return e.rebuild();
}

AcceptingPetriNet add_start_end_routing(const AcceptingPetriNet& apn) {
  apn.validate();
  auto safe = [](const Marking& m) {
    return std::all_of(m.tokens().begin(), m.tokens().end(), [](auto c) { return c <= 1; });
  };
  auto marked = [](const Marking& m) { return m.total() > 0; };
  if (!safe(apn.initial) || !marked(apn.initial) || !std::all_of(apn.finals.begin(), apn.finals.end(), safe) ||
      !std::all_of(apn.finals.begin(), apn.finals.end(), marked)) {
    return apn;
  }

  AcceptingPetriNet routed{apn.net, {}, {}};
  PetriNet& net = routed.net;
  std::string source_id = "source";
  std::string sink_id = "sink";
  while (net.has_id(source_id)) source_id += "_";
  while (net.has_id(sink_id)) sink_id += "_";
  PlaceIndex source = net.add_place(source_id, "source");
  PlaceIndex sink = net.add_place(sink_id, "sink");

  auto fresh_transition = [&](const std::string& stem) {
    std::string id = stem;
    for (std::size_t n = 1; net.has_id(id); ++n) id = stem + "_" + std::to_string(n);
    return net.add_transition(id, std::nullopt);
  };
  auto start = fresh_transition("tau_start");
  net.add_input_arc(source, start);
  for (PlaceIndex p = 0; p < apn.net.place_count(); ++p) {
    if (apn.initial[p] > 0) net.add_output_arc(start, p);
  }
  for (std::size_t f = 0; f < apn.finals.size(); ++f) {
    auto end = fresh_transition("tau_end");
    for (PlaceIndex p = 0; p < apn.net.place_count(); ++p) {
      if (apn.finals[f][p] > 0) net.add_input_arc(p, end);
    }
    net.add_output_arc(end, sink);
  }
  routed.initial = single_token(net, source);
  routed.finals = {single_token(net, sink)};
  return routed;
}

AcceptingPetriNet discover_decomposed(const EventLog& log, const DiscoveryFunction& base, std::size_t max_cluster_size) {
  ActivityClustering clusters = cluster_activities(log, max_cluster_size);
  if (clusters.size() <= 1) return reduce(base(log));
  std::vector<AcceptingPetriNet> subnets;
  subnets.reserve(clusters.size());
  for (const auto& cluster : clusters) subnets.push_back(base(project(log, cluster)));
  return reduce(add_start_end_routing(merge(subnets)));
}

AcceptingPetriNet discover_decomposed(const EventLog& log, std::size_t max_cluster_size) {
  return discover_decomposed(log, discover_net, max_cluster_size);
}

}  // namespace procmine
