#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gerbe/complex.hpp"

namespace gerbe {

// Mesh documents are JSON objects:
//   {"dimension": n, "vertices": [[x, ...], ...], "top_simplices": [[i, ...], ...],
//    "periods": [[...], ...]?, "cell_coordinates": [[[x, ...], ...], ...]?}
// Chain documents:
//   {"degree": k, "terms": [[[v0, ..., vk], coefficient], ...]}
// Vertex tuples in chain terms may be in any order; the permutation sign
// is applied to the coefficient.

MeshData parse_mesh(std::string_view text);
std::string serialize_mesh(const MeshData& mesh);
MeshData read_mesh(const std::filesystem::path& path);
void write_mesh(const std::filesystem::path& path, const MeshData& mesh);

Chain parse_chain(const SimplicialComplex& k, std::string_view text);
/// Nonzero terms only, each as a sorted vertex tuple.
std::string serialize_chain(const SimplicialComplex& k, const Chain& c);
Chain read_chain(const SimplicialComplex& k, const std::filesystem::path& path);
void write_chain(const std::filesystem::path& path, const SimplicialComplex& k, const Chain& c);

/// Whole file as a string; throws ParseError when unreadable.
std::string read_text(const std::filesystem::path& path);

}  // namespace gerbe
