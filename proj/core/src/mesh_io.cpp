#include "gerbe/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gerbe/error.hpp"

namespace gerbe {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

template <typename T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

MeshData parse_mesh(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "mesh document must be an object");
  MeshData m;
  m.dimension = field<int>(doc, "dimension");
  m.vertices = field<std::vector<std::vector<double>>>(doc, "vertices");
  m.top_simplices = field<std::vector<Simplex>>(doc, "top_simplices");
  if (doc.contains("periods")) m.periods = field<std::vector<std::vector<double>>>(doc, "periods");
  if (doc.contains("cell_coordinates")) {
    m.cell_coordinates = field<std::vector<std::vector<std::vector<double>>>>(doc, "cell_coordinates");
  }
  return m;
}

std::string serialize_mesh(const MeshData& mesh) {
  json doc;
  doc["dimension"] = mesh.dimension;
  doc["vertices"] = mesh.vertices;
  doc["top_simplices"] = mesh.top_simplices;
  if (!mesh.periods.empty()) doc["periods"] = mesh.periods;
  if (!mesh.cell_coordinates.empty()) doc["cell_coordinates"] = mesh.cell_coordinates;
  return doc.dump() + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
  out << text;
}

}  // namespace

MeshData read_mesh(const std::filesystem::path& path) { return parse_mesh(read_text(path)); }

void write_mesh(const std::filesystem::path& path, const MeshData& mesh) { write_text(path, serialize_mesh(mesh)); }

Chain parse_chain(const SimplicialComplex& k, std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "chain document must be an object");
  const int degree = field<int>(doc, "degree");
  if (degree < 0 || degree > k.dimension()) {
    throw Error(ErrorCode::DegreeOutOfRange, "chain degree " + std::to_string(degree) + " outside the complex");
  }
  Chain c = Chain::zero(k, degree);
  for (const json& term : field<json>(doc, "terms")) {
    if (!term.is_array() || term.size() != 2) {
      throw Error(ErrorCode::ParseError, "chain term must be [[vertices...], coefficient]");
    }
    Simplex s;
    std::int64_t coeff = 0;
    try {
      s = term[0].get<Simplex>();
      coeff = term[1].get<std::int64_t>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("chain term: ") + e.what());
    }
    if (static_cast<int>(s.size()) != degree + 1) {
      throw Error(ErrorCode::ParseError, "chain term has the wrong number of vertices");
    }
    c += Chain::elementary(k, std::move(s), coeff);
  }
  return c;
}

std::string serialize_chain(const SimplicialComplex& k, const Chain& c) {
  json terms = json::array();
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    if (c.coeffs[i] != 0) terms.push_back(json::array({k.simplex(c.degree, i), c.coeffs[i]}));
  }
  json doc;
  doc["degree"] = c.degree;
  doc["terms"] = std::move(terms);
  return doc.dump() + "\n";
}

Chain read_chain(const SimplicialComplex& k, const std::filesystem::path& path) {
  return parse_chain(k, read_text(path));
}

void write_chain(const std::filesystem::path& path, const SimplicialComplex& k, const Chain& c) {
  write_text(path, serialize_chain(k, c));
}

}  // namespace gerbe
