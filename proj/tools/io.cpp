#include "io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "skeinhom/errors.hpp"

namespace skeinhom::cli {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
}

namespace {

template <class F>
auto guarded(const std::string& origin, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw SpecError(origin + ": " + e.what());
  }
}

Segment parse_segment(const json& s, const std::string& where) {
  if (s.contains("arc")) return Segment::arc(s.at("arc").get<std::string>());
  if (!s.contains("seam")) throw SpecError(where + ": segment needs an \"arc\" or \"seam\" key");
  const auto side = s.value("side", std::string("+"));
  if (side != "+" && side != "-") throw SpecError(where + ": seam side must be \"+\" or \"-\", got \"" + side + "\"");
  return Segment::seam(s.at("seam").get<std::string>(), side == "+" ? 1 : -1);
}

}  // namespace

Surface parse_surface(const json& j, const std::string& origin) {
  return guarded(origin, [&] {
    SurfaceSpec spec;
    for (const auto& a : j.at("arcs")) {
      const int sign = a.value("sign", 1);
      if (sign != 1 && sign != -1) throw SpecError(origin + ": arc sign must be 1 or -1");
      spec.arcs.push_back({a.at("id").get<std::string>(), sign});
    }
    for (const auto& s : j.value("seams", json::array())) spec.seams.push_back(s.get<std::string>());
    const auto& regions = j.at("regions");
    for (std::size_t r = 0; r < regions.size(); ++r) {
      std::vector<Segment> segs;
      for (std::size_t k = 0; k < regions[r].size(); ++k)
        segs.push_back(parse_segment(regions[r][k],
                                     origin + ": region " + std::to_string(r) + ", segment " + std::to_string(k)));
      spec.regions.push_back(std::move(segs));
    }
    try {
      return validate_surface(spec);
    } catch (const SpecError& e) {
      throw SpecError(origin + ": " + e.what());
    }
  });
}

SurfaceTangle parse_tangle(const json& j, const std::string& origin) {
  return guarded(origin, [&] {
    SurfaceTangle t;
    const auto& regions = j.at("regions");
    for (std::size_t r = 0; r < regions.size(); ++r) {
      const auto& e = regions[r];
      auto partition = e.at("partition").get<std::vector<int>>();
      const int points = std::accumulate(partition.begin(), partition.end(), 0);
      try {
        auto tangle = PlanarTangle::parse(e.value("matching", std::string("[]")), points, 0);
        t.regions.emplace_back(std::move(tangle), std::move(partition));
      } catch (const Error& err) {
        throw InvalidBoundary(origin + ": region " + std::to_string(r) + ": " + err.what());
      }
    }
    return t;
  });
}

SpinNetwork parse_spin_network(const json& j, const std::string& origin) {
  return guarded(origin, [&] {
    SpinNetwork net{parse_surface(j.at("surface"), origin), {}};
    for (const auto& [id, c] : j.at("coloring").items()) net.coloring[id] = c.get<int>();
    return net;
  });
}

json homology_json(const BigradedHomology& h) {
  json cells = json::array();
  for (const auto& [ij, c] : h.cells)
    cells.push_back({{"i", ij.first}, {"j", ij.second}, {"betti", c.betti}, {"torsion", c.torsion}});
  return {{"window", {{"hmin", h.window.hmin}, {"hmax", h.window.hmax}, {"qmin", h.window.qmin}, {"qmax", h.window.qmax}}},
          {"cells", cells},
          {"poincare", poincare_series(h).to_string()}};
}

std::string pretty_table(const BigradedHomology& h) {
  std::ostringstream out;
  out << "window i in [" << h.window.hmin << ", " << h.window.hmax << "], j in [" << h.window.qmin << ", "
      << h.window.qmax << "]\n";
  if (h.cells.empty()) out << "  (zero)\n";
  for (const auto& [ij, c] : h.cells) {
    out << "  H^{" << ij.first << "," << ij.second << "} =";
    std::string sep = " ";
    if (c.betti) {
      out << sep << "Z";
      if (c.betti > 1) out << "^" << c.betti;
      sep = " + ";
    }
    for (auto t : c.torsion) {
      out << sep << "Z/" << t;
      sep = " + ";
    }
    out << "\n";
  }
  return out.str();
}

void emit(std::ostream& out, const Report& r, Format f) {
  switch (f) {
    case Format::json: {
      json j = r.body;
      j["schema"] = 1;
      j["command"] = r.command;
      out << j.dump(2) << "\n";
      break;
    }
    case Format::csv:
      out << "command,i,j,betti,torsion\n";
      if (!r.table) break;
      for (const auto& [ij, c] : r.table->cells) {
        out << r.command << "," << ij.first << "," << ij.second << "," << c.betti << ",";
        for (std::size_t k = 0; k < c.torsion.size(); ++k) out << (k ? ";" : "") << c.torsion[k];
        out << "\n";
      }
      break;
    case Format::pretty:
      for (const auto& l : r.lines) out << l << "\n";
      if (r.table) out << pretty_table(*r.table);
      break;
  }
}

}  // namespace skeinhom::cli
