#include "flexcube/geom/mesh.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "flexcube/geom/facets.hpp"

namespace flexcube::geom {

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<std::vector<int>> triangulated_facets(const FacetHull& fh) {
  std::vector<std::vector<int>> tris;
  for (const auto& f : fh.facets) {
    const int m = static_cast<int>(f.cycle.size());
    if (m < 3) continue;
    for (int i = 1; i + 1 < m; ++i)
      tris.push_back({f.cycle[0], f.cycle[i], f.cycle[i + 1]});
  }
  return tris;
}

}  // namespace

std::string to_off(const Polytope& p) {
  std::ostringstream os;
  os << "OFF\n";
  if (p.is_empty()) {
    os << "0 0 0\n";
    return os.str();
  }
  if (p.dim() != 3)
    throw GeomError(GeomError::Code::DimensionMismatch,
                    "OFF export requires a 3-D polytope");

  const auto fh = facet_hull(p.vrep());
  const auto tris = triangulated_facets(fh);
  const auto& verts = fh.poly.vertices;

  os << verts.size() << ' ' << tris.size() << " 0\n";
  for (const auto& v : verts)
    os << fmt9(v(0)) << ' ' << fmt9(v(1)) << ' ' << fmt9(v(2)) << '\n';
  for (const auto& t : tris)
    os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return os.str();
}

std::string to_mesh_json(const Polytope& p,
                         const std::vector<std::string>& axis_labels,
                         const std::vector<std::string>& units) {
  nlohmann::json j;
  j["axis_labels"] = axis_labels;
  j["units"] = units;
  j["empty"] = p.is_empty();
  j["vertices"] = nlohmann::json::array();
  j["facets"] = nlohmann::json::array();
  if (!p.is_empty()) {
    for (const auto& v : p.vrep().vertices) {
      nlohmann::json row = nlohmann::json::array();
      for (int i = 0; i < v.size(); ++i) row.push_back(v(i));
      j["vertices"].push_back(std::move(row));
    }
    if (p.dim() <= 3) {
      for (const auto& f : facet_hull(p.vrep()).facets)
        j["facets"].push_back(f.cycle);
    }
  }
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << content;
}

}  // namespace flexcube::geom
