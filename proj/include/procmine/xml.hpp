#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "procmine/errors.hpp"

// Minimal DOM used by the XES and PNML readers.
namespace procmine::xml {

struct Element {
  std::string name;  // local name, namespace prefix stripped
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // concatenated character data of this element only
  std::vector<Element> children;
  long line = 0;
  long column = 0;

  const std::string* attribute(std::string_view key) const;
  const Element* child(std::string_view child_name) const;
};

// Throws ParseError with the position reported by the underlying parser.
Element parse(std::istream& in);

std::string escape(std::string_view raw);

}  // namespace procmine::xml
