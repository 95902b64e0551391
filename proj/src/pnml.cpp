#include "procmine/pnml.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "procmine/errors.hpp"
#include "procmine/xml.hpp"

namespace procmine {

namespace {

std::string text_of(const xml::Element* e) {
  if (!e) return {};
  if (const auto* t = e->child("text")) return t->text;
  return {};
}

std::uint32_t parse_count(const std::string& raw, const xml::Element& where) {
  std::size_t pos = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(raw, &pos);
  } catch (const std::exception&) {
    throw ParseError("invalid token count '" + raw + "'", where.line, where.column);
  }
  while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
  if (pos != raw.size() || value > 0xffffffffUL) {
    throw ParseError("invalid token count '" + raw + "'", where.line, where.column);
  }
  return static_cast<std::uint32_t>(value);
}

bool is_invisible(const xml::Element& transition) {
  for (const auto& c : transition.children) {
    if (c.name != "toolspecific") continue;
    if (const auto* activity = c.attribute("activity"); activity && *activity == "$invisible$") return true;
  }
  return false;
}

struct Collected {
  std::vector<const xml::Element*> places, transitions, arcs;
};

// Pages may nest.
void collect(const xml::Element& e, Collected& out) {
  for (const auto& c : e.children) {
    if (c.name == "place") out.places.push_back(&c);
    else if (c.name == "transition") out.transitions.push_back(&c);
    else if (c.name == "arc") out.arcs.push_back(&c);
    else if (c.name == "page") collect(c, out);
  }
}

const std::string& required_attribute(const xml::Element& e, std::string_view key) {
  const std::string* v = e.attribute(key);
  if (!v) throw ParseError("<" + e.name + "> lacks attribute '" + std::string(key) + "'", e.line, e.column);
  return *v;
}

void write_net_body(const PetriNet& net, const Marking& initial, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<pnml>\n";
  out << "  <net id=\"net1\" type=\"http://www.pnml.org/version-2009/grammar/pnmlcoremodel\">\n";
  out << "    <page id=\"page1\">\n";
  for (PlaceIndex p = 0; p < net.place_count(); ++p) {
    const Place& place = net.place(p);
    out << "      <place id=\"" << xml::escape(place.id) << "\">\n";
    if (!place.name.empty()) out << "        <name><text>" << xml::escape(place.name) << "</text></name>\n";
    if (initial[p] > 0) out << "        <initialMarking><text>" << initial[p] << "</text></initialMarking>\n";
    out << "      </place>\n";
  }
  for (const Transition& t : net.transitions()) {
    out << "      <transition id=\"" << xml::escape(t.id) << "\">\n";
    if (t.label) {
      out << "        <name><text>" << xml::escape(*t.label) << "</text></name>\n";
    } else {
      out << "        <name><text>tau</text></name>\n";
      out << "        <toolspecific tool=\"ProM\" version=\"6.4\" activity=\"$invisible$\"/>\n";
    }
    out << "      </transition>\n";
  }
  std::size_t arc_id = 0;
  for (const Arc& arc : net.arcs()) {
    const std::string& place = net.place(arc.place).id;
    const std::string& transition = net.transition(arc.transition).id;
    bool forward = arc.direction == Arc::Direction::place_to_transition;
    out << "      <arc id=\"arc" << ++arc_id << "\" source=\"" << xml::escape(forward ? place : transition)
        << "\" target=\"" << xml::escape(forward ? transition : place) << "\"/>\n";
  }
  out << "    </page>\n";
}

}  // namespace

AcceptingPetriNet parse_pnml(std::istream& in) {
  xml::Element root = xml::parse(in);
  const xml::Element* net_element = root.name == "net" ? &root : root.child("net");
  if (!net_element) throw ParseError("PNML document has no <net>", root.line, root.column);

  Collected nodes;
  collect(*net_element, nodes);

  AcceptingPetriNet apn;
  PetriNet& net = apn.net;
  std::vector<Marking::Count> initial;
  try {
    for (const auto* e : nodes.places) {
      net.add_place(required_attribute(*e, "id"), text_of(e->child("name")));
      initial.push_back(e->child("initialMarking") ? parse_count(text_of(e->child("initialMarking")), *e) : 0);
    }
    for (const auto* e : nodes.transitions) {
      std::string name = text_of(e->child("name"));
      std::optional<std::string> label;
      if (!is_invisible(*e) && !name.empty()) label = std::move(name);
      net.add_transition(required_attribute(*e, "id"), std::move(label));
    }
  } catch (const std::invalid_argument& err) {
    throw ParseError(err.what());
  }
  for (const auto* e : nodes.arcs) {
    const std::string& source = required_attribute(*e, "source");
    const std::string& target = required_attribute(*e, "target");
    if (const auto* inscription = e->child("inscription")) {
      if (parse_count(text_of(inscription), *e) != 1) {
        throw ParseError("arc weights other than 1 are not supported", e->line, e->column);
      }
    }
    auto sp = net.find_place(source);
    auto st = net.find_transition(source);
    auto tp = net.find_place(target);
    auto tt = net.find_transition(target);
    if (!sp && !st) throw ParseError("arc references unknown id '" + source + "'", e->line, e->column);
    if (!tp && !tt) throw ParseError("arc references unknown id '" + target + "'", e->line, e->column);
    try {
      if (sp && tt) net.add_input_arc(*sp, *tt);
      else if (st && tp) net.add_output_arc(*st, *tp);
      else throw ParseError("arc must connect a place and a transition", e->line, e->column);
    } catch (const std::invalid_argument& err) {
      throw ParseError(err.what(), e->line, e->column);
    }
  }
  apn.initial = Marking(std::move(initial));

  if (const auto* finals = net_element->child("finalmarkings")) {
    for (const auto& m : finals->children) {
      if (m.name != "marking") continue;
      Marking marking(net.place_count());
      for (const auto& entry : m.children) {
        if (entry.name != "place") continue;
        const std::string& ref = required_attribute(entry, "idref");
        auto p = net.find_place(ref);
        if (!p) throw ParseError("final marking references unknown place '" + ref + "'", entry.line, entry.column);
        marking[*p] = parse_count(text_of(&entry), entry);
      }
      apn.finals.push_back(std::move(marking));
    }
  }
  if (apn.finals.empty()) {
    Marking fallback(net.place_count());
    for (PlaceIndex p : sink_places(net)) fallback[p] = 1;
    apn.finals.push_back(std::move(fallback));
  }
  return apn;
}

void write_pnml(const PetriNet& net, const Marking& initial, std::ostream& out) {
  write_net_body(net, initial, out);
  out << "  </net>\n</pnml>\n";
}

void write_pnml(const AcceptingPetriNet& apn, std::ostream& out) {
  apn.validate();
  write_net_body(apn.net, apn.initial, out);
  out << "    <finalmarkings>\n";
  for (const auto& final_marking : apn.finals) {
    out << "      <marking>\n";
    for (PlaceIndex p = 0; p < apn.net.place_count(); ++p) {
      out << "        <place idref=\"" << xml::escape(apn.net.place(p).id) << "\"><text>" << final_marking[p]
          << "</text></place>\n";
    }
    out << "      </marking>\n";
  }
  out << "    </finalmarkings>\n";
  out << "  </net>\n</pnml>\n";
}

UnpackedNet unpack(const AcceptingPetriNet& apn) { return UnpackedNet{apn.net, apn.initial, apn.finals}; }

AcceptingPetriNet repack(UnpackedNet unpacked) {
  AcceptingPetriNet apn{std::move(unpacked.net), std::move(unpacked.initial), std::move(unpacked.finals)};
  apn.validate();
  return apn;
}

void write_finals_json(const PetriNet& net, const std::vector<Marking>& finals, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["finals"] = nlohmann::ordered_json::array();
  for (const auto& marking : finals) {
    auto entries = nlohmann::ordered_json::array();
    for (PlaceIndex p = 0; p < net.place_count(); ++p) {
      if (marking[p] > 0) entries.push_back({net.place(p).id, marking[p]});
    }
    doc["finals"].push_back(std::move(entries));
  }
  out << doc.dump(2) << '\n';
}

std::vector<Marking> parse_finals_json(const PetriNet& net, std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("finals sidecar: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("finals") || !doc["finals"].is_array()) {
    throw ParseError("finals sidecar: expected an object with a \"finals\" array");
  }
  std::vector<Marking> finals;
  for (const auto& entries : doc["finals"]) {
    if (!entries.is_array()) throw ParseError("finals sidecar: each final marking must be an array");
    Marking marking(net.place_count());
    for (const auto& pair : entries) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_number_unsigned()) {
        throw ParseError("finals sidecar: entries must be [place id, tokens] pairs");
      }
      auto p = net.find_place(pair[0].get<std::string>());
      if (!p) throw ParseError("finals sidecar: unknown place '" + pair[0].get<std::string>() + "'");
      marking[*p] = pair[1].get<Marking::Count>();
    }
    finals.push_back(std::move(marking));
  }
  if (finals.empty()) throw ParseError("finals sidecar: no final markings");
  return finals;
}

std::filesystem::path finals_sidecar_path(const std::filesystem::path& pnml) {
  std::filesystem::path sidecar = pnml;
  sidecar += ".finals.json";
  return sidecar;
}

AcceptingPetriNet load_model(const std::filesystem::path& pnml) {
  std::ifstream in(pnml, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + pnml.string());
  AcceptingPetriNet apn = parse_pnml(in);
  auto sidecar = finals_sidecar_path(pnml);
  if (std::filesystem::exists(sidecar)) {
    std::ifstream side(sidecar, std::ios::binary);
    if (!side) throw std::runtime_error("cannot open " + sidecar.string());
    apn.finals = parse_finals_json(apn.net, side);
  }
  return apn;
}

}  // namespace procmine
