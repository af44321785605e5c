#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "skeinhom/homalg.hpp"
#include "skeinhom/spin.hpp"
#include "skeinhom/surface.hpp"

namespace skeinhom::cli {

using nlohmann::json;

enum class Format { json, csv, pretty };

// Throws SpecError naming the file on I/O or syntax errors.
json load_json(const std::string& path);

// {"arcs": [{"id", "sign"}], "seams": [id], "regions": [[{"arc": id} | {"seam": id, "side": "+"|"-"}]]}
Surface parse_surface(const json& j, const std::string& origin);
// {"regions": [{"matching": "[...]", "partition": [...]}]}; one entry per region.
SurfaceTangle parse_tangle(const json& j, const std::string& origin);
// {"surface": {...}, "coloring": {id: color}}
SpinNetwork parse_spin_network(const json& j, const std::string& origin);

json homology_json(const BigradedHomology& h);

// What a command hands back: a JSON body, an optional Betti table for csv,
// and the lines printed in pretty mode.
struct Report {
  std::string command;
  json body = json::object();
  const BigradedHomology* table = nullptr;
  std::vector<std::string> lines;
};

void emit(std::ostream& out, const Report& r, Format f);
std::string pretty_table(const BigradedHomology& h);

}  // namespace skeinhom::cli
