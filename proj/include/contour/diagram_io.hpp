#pragma once

#include <string>

#include "contour/diagram.hpp"
#include "json.hpp"

namespace contour {

inline constexpr const char* kDiagramFormat = "contour-diagram/1";

/// Sorts circle lists and split pairs, rotates crossing rings to start at the
/// smallest end. Printing a normalized diagram is byte-stable.
void normalize(SingularDiagram& d);

nlohmann::json diagram_to_json(const SingularDiagram& d);
SingularDiagram diagram_from_json(const nlohmann::json& j);

std::string print_diagram(const SingularDiagram& d);
SingularDiagram parse_diagram(const std::string& text);

SingularDiagram load_diagram(const std::string& path);
void save_diagram(const SingularDiagram& d, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

ArcEnd parse_arc_end(const std::string& s);
std::string format_arc_end(const ArcEnd& e);

}  // namespace contour
