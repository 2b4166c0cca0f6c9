#pragma once

#include <iosfwd>
#include <string>

#include "zigzag/simplicial.hpp"

namespace zigzag {

/* Map text format: first line "plmap", then one breakpoint per line as
   "<x_num>/<x_den> <y_num>/<y_den>" in increasing x; '#' starts a comment.
   Round-trips exactly. */
std::string serialize_plmap(const PLMap& m);
PLMap parse_plmap(std::istream& in);
PLMap parse_plmap_string(const std::string& s);

/* System format: "system N" then N map blocks. */
std::string serialize_system(const SystemPrefix& p);
SystemPrefix parse_system(std::istream& in);

/* Simplicial format: the system format followed by one vertex-set line
   "S <n>: x1 x2 ..." per level. */
std::string serialize_simplicial(const SimplicialSystem& sys);
SimplicialSystem parse_simplicial(std::istream& in);

/* Detects "plmap" / "system" / "simplicial" from the first line. */
enum class FileKind { plmap, system, simplicial };
FileKind detect_kind(std::istream& in);

PLMap load_plmap(const std::string& path);
SystemPrefix load_system(const std::string& path);
SimplicialSystem load_simplicial(const std::string& path);
void save_text(const std::string& path, const std::string& text);

/* Contour report: one line per contour point (side, point, value,
   orientation), origin sentinels skipped. */
std::string contour_report(const ContourData& cd);

/* Machine-readable certificates. */
std::string zigzag_certificate_json(const ZigzagFreeReport& rep);
std::string provenance_json(const BridgedFactor& bf);
std::string rewire_certificate_json(const RewireResult& r);

} // namespace zigzag
