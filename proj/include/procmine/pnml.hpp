#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "procmine/petri_net.hpp"

namespace procmine {

// Reads the PNML place/transition subset. Silent transitions are those with an
// empty name or a ProM toolspecific `activity="$invisible$"` flag. Final markings
// come from a ProM-style <finalmarkings> block if present, otherwise one token on
// each sink place. Throws ParseError.
AcceptingPetriNet parse_pnml(std::istream& in);

// Writes the net, its initial marking and a <finalmarkings> block.
void write_pnml(const AcceptingPetriNet& apn, std::ostream& out);

// A "regular" net: the labeled net plus initial marking. Final markings travel
// separately in the JSON sidecar.
struct UnpackedNet {
  PetriNet net;
  Marking initial;
  std::vector<Marking> finals;  // sidecar content
};

UnpackedNet unpack(const AcceptingPetriNet& apn);
AcceptingPetriNet repack(UnpackedNet unpacked);

// Writes the net without a <finalmarkings> block.
void write_pnml(const PetriNet& net, const Marking& initial, std::ostream& out);

// Sidecar document: {"finals": [[["place id", tokens], ...], ...]}
void write_finals_json(const PetriNet& net, const std::vector<Marking>& finals, std::ostream& out);
std::vector<Marking> parse_finals_json(const PetriNet& net, std::istream& in);

// "<model>.finals.json" next to "<model>", e.g. model.pnml.finals.json.
std::filesystem::path finals_sidecar_path(const std::filesystem::path& pnml);

// Loads a PNML file; a sidecar next to it, if present, overrides the final markings.
AcceptingPetriNet load_model(const std::filesystem::path& pnml);

}  // namespace procmine
