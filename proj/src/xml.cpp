#include "procmine/xml.hpp"

#include <expat.h>

#include <array>
#include <memory>

namespace procmine {

ParseError::ParseError(const std::string& what, long line, long column)
    : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ")"
                                  : what),
      line_(line),
      column_(column) {}

namespace xml {

namespace {

std::string_view local_name(std::string_view name) {
  auto colon = name.rfind(':');
  return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

struct Builder {
  XML_Parser parser = nullptr;
  std::vector<Element*> stack;
  Element root;
  bool seen_root = false;

  static void on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
    auto* self = static_cast<Builder*>(data);
    Element* target;
    if (self->stack.empty()) {
      target = &self->root;
      self->seen_root = true;
    } else {
      target = &self->stack.back()->children.emplace_back();
    }
    target->name = std::string(local_name(name));
    target->line = static_cast<long>(XML_GetCurrentLineNumber(self->parser));
    target->column = static_cast<long>(XML_GetCurrentColumnNumber(self->parser)) + 1;
    for (int i = 0; attrs[i] != nullptr; i += 2) {
      target->attributes.emplace_back(attrs[i], attrs[i + 1]);
    }
    self->stack.push_back(target);
  }

  static void on_end(void* data, const XML_Char*) {
    static_cast<Builder*>(data)->stack.pop_back();
  }

  static void on_text(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<Builder*>(data);
    if (!self->stack.empty()) self->stack.back()->text.append(s, static_cast<std::size_t>(len));
  }
};

}  // namespace

const std::string* Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

const Element* Element::child(std::string_view child_name) const {
  for (const auto& c : children) {
    if (c.name == child_name) return &c;
  }
  return nullptr;
}

Element parse(std::istream& in) {
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(XML_ParserCreate("UTF-8"),
                                                                      &XML_ParserFree);
  if (!parser) throw std::bad_alloc();
  Builder builder;
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &Builder::on_start, &Builder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &Builder::on_text);

  std::array<char, 1 << 16> buffer;
  bool done = false;
  while (!done) {
    in.read(buffer.data(), buffer.size());
    auto got = in.gcount();
    done = got < static_cast<std::streamsize>(buffer.size());
    if (XML_Parse(parser.get(), buffer.data(), static_cast<int>(got), done) == XML_STATUS_ERROR) {
      throw ParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                       static_cast<long>(XML_GetCurrentLineNumber(parser.get())),
                       static_cast<long>(XML_GetCurrentColumnNumber(parser.get())) + 1);
    }
  }
  if (!builder.seen_root) throw ParseError("malformed XML: no root element", 1, 1);
  return std::move(builder.root);
}

std::string escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace xml
}  // namespace procmine
