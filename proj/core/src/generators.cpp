#include "gerbe/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "gerbe/error.hpp"
#include "gerbe/subdivision.hpp"

namespace gerbe {

namespace {

using Point = std::vector<double>;

int wrap(int i, int res) { return ((i % res) + res) % res; }

}  // namespace

SimplicialComplex generate_flat_torus(int n, int res) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "torus dimension must be positive");
  if (res < 3) {
    throw Error(ErrorCode::ResolutionTooSmall,
                "resolution " + std::to_string(res) + " would identify distinct simplices (need >= 3)");
  }
  MeshData mesh;
  mesh.dimension = n;
  std::size_t nv = 1;
  for (int i = 0; i < n; ++i) nv *= static_cast<std::size_t>(res);
  auto index = [&](const std::vector<int>& m) {
    int idx = 0;
    for (int i = n - 1; i >= 0; --i) idx = idx * res + wrap(m[static_cast<std::size_t>(i)], res);
    return idx;
  };
  mesh.vertices.resize(nv);
  std::vector<int> m(static_cast<std::size_t>(n), 0);
  for (std::size_t v = 0; v < nv; ++v) {
    std::size_t r = v;
    Point p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      p[static_cast<std::size_t>(i)] = static_cast<double>(r % static_cast<std::size_t>(res)) / res;
      r /= static_cast<std::size_t>(res);
    }
    mesh.vertices[v] = std::move(p);
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (std::size_t v = 0; v < nv; ++v) {
    std::size_t r = v;
    for (int i = 0; i < n; ++i) {
      m[static_cast<std::size_t>(i)] = static_cast<int>(r % static_cast<std::size_t>(res));
      r /= static_cast<std::size_t>(res);
    }
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Simplex s{index(m)};
      std::vector<int> walk = m;
      for (int axis : perm) {
        ++walk[static_cast<std::size_t>(axis)];
        s.push_back(index(walk));
      }
      mesh.top_simplices.push_back(std::move(s));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  for (int i = 0; i < n; ++i) {
    Point e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    mesh.periods.push_back(std::move(e));
  }
  return SimplicialComplex::build(mesh);
}

SimplicialComplex generate_genus_surface(int g, int res) {
  if (g < 1) throw Error(ErrorCode::InvalidInput, "genus must be at least 1");
  if (res < 0) throw Error(ErrorCode::InvalidInput, "refinement level must be non-negative");
  const int sides = 4 * g;
  const int ring = 3 * sides;

  // Planar positions: polygon corners, boundary ring, inner ring, center.
  std::vector<Point> corner(static_cast<std::size_t>(sides));
  for (int k = 0; k < sides; ++k) {
    const double a = 2.0 * M_PI * k / sides;
    corner[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
  }
  std::vector<Point> outer(static_cast<std::size_t>(ring));
  for (int k = 0; k < sides; ++k) {
    const Point& p = corner[static_cast<std::size_t>(k)];
    const Point& q = corner[static_cast<std::size_t>((k + 1) % sides)];
    for (int t = 0; t < 3; ++t) {
      outer[static_cast<std::size_t>(3 * k + t)] = {p[0] + (q[0] - p[0]) * t / 3.0, p[1] + (q[1] - p[1]) * t / 3.0};
    }
  }

  // Vertex ids: 0 = the identified corner; then two points per edge label;
  // then the inner ring; then the center.
  const int label_base = 1;
  const int inner_base = label_base + 2 * (2 * g);
  const int center = inner_base + ring;
  std::vector<int> outer_id(static_cast<std::size_t>(ring));
  MeshData mesh;
  mesh.dimension = 2;
  mesh.vertices.resize(static_cast<std::size_t>(center + 1));
  mesh.vertices[0] = corner[0];
  for (int k = 0; k < sides; ++k) {
    const int block = k / 4;
    const int pos = k % 4;
    const int label = 2 * block + (pos % 2);
    const bool forward = pos < 2;
    outer_id[static_cast<std::size_t>(3 * k)] = 0;
    const int first = label_base + 2 * label;
    outer_id[static_cast<std::size_t>(3 * k + 1)] = forward ? first : first + 1;
    outer_id[static_cast<std::size_t>(3 * k + 2)] = forward ? first + 1 : first;
    if (forward) {
      mesh.vertices[static_cast<std::size_t>(first)] = outer[static_cast<std::size_t>(3 * k + 1)];
      mesh.vertices[static_cast<std::size_t>(first + 1)] = outer[static_cast<std::size_t>(3 * k + 2)];
    }
  }
  std::vector<Point> inner(static_cast<std::size_t>(ring));
  for (int m = 0; m < ring; ++m) {
    inner[static_cast<std::size_t>(m)] = {0.5 * outer[static_cast<std::size_t>(m)][0], 0.5 * outer[static_cast<std::size_t>(m)][1]};
    mesh.vertices[static_cast<std::size_t>(inner_base + m)] = inner[static_cast<std::size_t>(m)];
  }
  mesh.vertices[static_cast<std::size_t>(center)] = {0.0, 0.0};

  auto add = [&](int a, const Point& pa, int b, const Point& pb, int c, const Point& pc) {
    mesh.top_simplices.push_back({a, b, c});
    mesh.cell_coordinates.push_back({pa, pb, pc});
  };
  const Point origin{0.0, 0.0};
  for (int m = 0; m < ring; ++m) {
    const int m1 = (m + 1) % ring;
    const auto um = static_cast<std::size_t>(m);
    const auto um1 = static_cast<std::size_t>(m1);
    add(inner_base + m, inner[um], outer_id[um], outer[um], outer_id[um1], outer[um1]);
    add(inner_base + m, inner[um], outer_id[um1], outer[um1], inner_base + m1, inner[um1]);
    add(center, origin, inner_base + m, inner[um], inner_base + m1, inner[um1]);
  }
  SimplicialComplex k = SimplicialComplex::build(mesh);
  for (int i = 0; i < res; ++i) k = barycentric_subdivide(k).complex;
  return k;
}

SimplicialComplex generate_sphere(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "sphere dimension must be positive");
  MeshData mesh;
  mesh.dimension = n;
  const int nv = n + 2;
  for (int v = 0; v < nv; ++v) {
    Point p(static_cast<std::size_t>(nv), 0.0);
    p[static_cast<std::size_t>(v)] = 1.0;
    mesh.vertices.push_back(std::move(p));
  }
  for (int omit = 0; omit < nv; ++omit) {
    Simplex s;
    for (int v = 0; v < nv; ++v) {
      if (v != omit) s.push_back(v);
    }
    // Outward orientation of the boundary of [0..n+1]: face omit carries (-1)^omit.
    if (omit % 2 == 1) std::swap(s[0], s[1]);
    mesh.top_simplices.push_back(std::move(s));
  }
  return SimplicialComplex::build(mesh);
}

SimplicialComplex generate_projective_space(int r) {
  if (r < 2) {
    throw Error(ErrorCode::ResolutionTooSmall, "projective space needs r >= 2 to stay simplicial");
  }
  using Grid = std::array<int, 4>;
  auto on_boundary = [&](const Grid& p) {
    return std::any_of(p.begin(), p.end(), [&](int x) { return x == r || x == -r; });
  };
  auto canonical = [](Grid p) {
    for (int x : p) {
      if (x > 0) return p;
      if (x < 0) break;
    }
    for (int& x : p) x = -x;
    return p;
  };

  std::map<Grid, int> ids;
  MeshData mesh;
  mesh.dimension = 3;
  auto id_of = [&](const Grid& p) {
    const Grid c = canonical(p);
    auto [it, inserted] = ids.emplace(c, static_cast<int>(ids.size()));
    if (inserted) mesh.vertices.push_back({double(c[0]), double(c[1]), double(c[2]), double(c[3])});
    return it->second;
  };

  std::set<Simplex> seen;
  std::array<int, 4> perm{};
  for (int a = -r; a < r; ++a) {
    for (int b = -r; b < r; ++b) {
      for (int c = -r; c < r; ++c) {
        for (int d = -r; d < r; ++d) {
          const Grid base{a, b, c, d};
          std::iota(perm.begin(), perm.end(), 0);
          do {
            std::array<Grid, 5> chain{};
            chain[0] = base;
            for (int s = 0; s < 4; ++s) {
              chain[static_cast<std::size_t>(s + 1)] = chain[static_cast<std::size_t>(s)];
              ++chain[static_cast<std::size_t>(s + 1)][static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])];
            }
            for (int drop = 0; drop < 5; ++drop) {
              std::vector<Grid> face;
              for (int s = 0; s < 5; ++s) {
                if (s != drop) face.push_back(chain[static_cast<std::size_t>(s)]);
              }
              bool in_facet = false;
              for (std::size_t axis = 0; axis < 4 && !in_facet; ++axis) {
                for (int side : {-r, r}) {
                  if (std::all_of(face.begin(), face.end(), [&](const Grid& p) { return p[axis] == side; })) {
                    in_facet = true;
                  }
                }
              }
              if (!in_facet || !std::all_of(face.begin(), face.end(), on_boundary)) continue;
              Simplex verts;
              std::vector<Point> cell;
              for (const Grid& p : face) {
                verts.push_back(id_of(p));
                cell.push_back({double(p[0]), double(p[1]), double(p[2]), double(p[3])});
              }
              Simplex key = verts;
              std::sort(key.begin(), key.end());
              // The antipodal copy maps to the same vertex set; keep the first.
              if (!seen.insert(key).second) continue;
              mesh.top_simplices.push_back(std::move(verts));
              mesh.cell_coordinates.push_back(std::move(cell));
            }
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
      }
    }
  }
  return SimplicialComplex::build(mesh);
}

}  // namespace gerbe
