#ifndef TORUSFLUX_MAPFILE_HPP
#define TORUSFLUX_MAPFILE_HPP

#include <map>
#include <string>
#include <string_view>

#include "torusflux/errors.hpp"
#include "torusflux/torus_map.hpp"

namespace torusflux {

// Line-oriented map description.
//
//   # comment
//   order=right-to-left
//   translate a=0.37 b=0.18
//   hshear eps=0.02 band=0.0,0.25 inner=0.5 outer=1.0
//   vshear eps=0.01 band=0.375,0.625 inner=0.5 outer=1.0
//   disktwist cx=0.5 cy=0.5 r=0.2 t=1.0 inner=0.333 outer=0.667
//   disk U0 cx=0.5 cy=0.5 r=0.05
//   band lane 0.0,0.25
//
// The header line is mandatory and fixes the composition convention:
// stanzas listed top to bottom compose right to left, so the last listed
// generator is applied first.  Unknown stanzas or keys are rejected with a
// line/column diagnostic.  parse(serialize(parse(text))) reproduces the
// generator chain exactly; numbers are written with 17 significant digits.

struct ParseError : Error {
    ParseError(int line, int col, const std::string& message);
    int line;
    int col;
};

struct MapDocument {
    TorusMap map;
    std::map<std::string, Disk> disks;
    std::map<std::string, Interval> bands;
};

MapDocument parse_map_text(std::string_view text);
MapDocument load_map_file(const std::string& path);  // Error if unreadable
std::string serialize(const MapDocument& doc);

}  // namespace torusflux

#endif
