#include "gerbe/subdivision.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "gerbe/error.hpp"

namespace gerbe {

namespace {

using SparseColumn = std::vector<std::pair<std::size_t, std::int64_t>>;

Chain apply(const SparseIntMatrix& m, const Chain& c, int degree) {
  Chain out{degree, std::vector<std::int64_t>(static_cast<std::size_t>(m.rows()), 0)};
  for (Eigen::Index j = 0; j < m.outerSize(); ++j) {
    const std::int64_t cj = c.coeffs[static_cast<std::size_t>(j)];
    if (cj == 0) continue;
    for (SparseIntMatrix::InnerIterator it(m, j); it; ++it) out.coeffs[static_cast<std::size_t>(it.row())] += it.value() * cj;
  }
  return out;
}

}  // namespace

Chain Subdivision::transfer(const Chain& c) const {
  if (c.degree < 0 || c.degree >= static_cast<int>(chain_maps.size())) {
    throw Error(ErrorCode::DegreeOutOfRange, "chain degree outside complex");
  }
  return apply(chain_maps[static_cast<std::size_t>(c.degree)], c, c.degree);
}

IntCochain Subdivision::pullback(const IntCochain& c) const {
  const SparseIntMatrix& m = chain_maps.at(static_cast<std::size_t>(c.degree));
  IntCochain out{c.degree, std::vector<std::int64_t>(static_cast<std::size_t>(m.cols()), 0)};
  for (Eigen::Index j = 0; j < m.outerSize(); ++j) {
    std::int64_t sum = 0;
    for (SparseIntMatrix::InnerIterator it(m, j); it; ++it) sum += it.value() * c.values[static_cast<std::size_t>(it.row())];
    out.values[static_cast<std::size_t>(j)] = sum;
  }
  return out;
}

RealCochain Subdivision::pullback(const RealCochain& c) const {
  const SparseIntMatrix& m = chain_maps.at(static_cast<std::size_t>(c.degree));
  RealCochain out{c.degree, Eigen::VectorXd::Zero(m.cols())};
  for (Eigen::Index j = 0; j < m.outerSize(); ++j) {
    for (SparseIntMatrix::InnerIterator it(m, j); it; ++it) {
      out.values(j) += static_cast<double>(it.value()) * c.values(it.row());
    }
  }
  return out;
}

Subdivision barycentric_subdivide(const SimplicialComplex& k) {
  const int n = k.dimension();
  std::vector<std::size_t> offset(static_cast<std::size_t>(n + 2), 0);
  for (int d = 0; d <= n; ++d) offset[static_cast<std::size_t>(d + 1)] = offset[static_cast<std::size_t>(d)] + k.count(d);
  auto bary_id = [&](int d, std::size_t i) { return static_cast<int>(offset[static_cast<std::size_t>(d)] + i); };

  const auto& top = k.simplices(n);
  MeshData mesh;
  mesh.dimension = n;
  mesh.vertices.assign(offset.back(), {});
  std::vector<bool> placed(offset.back(), false);
  for (const auto& p : k.periods()) mesh.periods.emplace_back(p.data(), p.data() + p.size());

  std::vector<int> perm(static_cast<std::size_t>(n + 1));
  for (std::size_t t = 0; t < top.size(); ++t) {
    const Eigen::MatrixXd& x = k.cell_coordinates(t);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Simplex verts;
      std::vector<std::vector<double>> cell;
      // Flag: {perm[n]} < {perm[n-1], perm[n]} < ... < whole simplex.
      for (int j = n; j >= 0; --j) {
        std::vector<int> pos(perm.begin() + j, perm.end());
        std::sort(pos.begin(), pos.end());
        Simplex face;
        Eigen::VectorXd c = Eigen::VectorXd::Zero(x.rows());
        for (int p : pos) {
          face.push_back(top[t][static_cast<std::size_t>(p)]);
          c += x.col(p);
        }
        c /= static_cast<double>(pos.size());
        const int d = static_cast<int>(face.size()) - 1;
        const int id = bary_id(d, k.index_of(face));
        verts.push_back(id);
        cell.emplace_back(c.data(), c.data() + c.size());
        if (!placed[static_cast<std::size_t>(id)]) {
          placed[static_cast<std::size_t>(id)] = true;
          mesh.vertices[static_cast<std::size_t>(id)] = cell.back();
        }
      }
      mesh.top_simplices.push_back(std::move(verts));
      mesh.cell_coordinates.push_back(std::move(cell));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  // Original vertices keep their own coordinates.
  for (std::size_t v = 0; v < k.count(0); ++v) {
    const auto row = k.vertex_coordinates().row(static_cast<Eigen::Index>(v));
    mesh.vertices[v].clear();
    for (Eigen::Index c = 0; c < row.size(); ++c) mesh.vertices[v].push_back(row(c));
  }

  SimplicialComplex fine = SimplicialComplex::build(mesh);

  // sd(v) = v;  sd(s) = b_s * sd(ds).
  std::vector<std::vector<SparseColumn>> sd(static_cast<std::size_t>(n + 1));
  sd[0].resize(k.count(0));
  for (std::size_t v = 0; v < k.count(0); ++v) sd[0][v] = {{v, 1}};
  for (int d = 1; d <= n; ++d) {
    const auto& cells = k.simplices(d);
    auto& out = sd[static_cast<std::size_t>(d)];
    out.resize(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const int b = bary_id(d, i);
      std::vector<std::pair<std::size_t, std::int64_t>> acc;
      for (std::size_t f = 0; f < cells[i].size(); ++f) {
        Simplex face;
        for (std::size_t j = 0; j < cells[i].size(); ++j) {
          if (j != f) face.push_back(cells[i][j]);
        }
        const std::int64_t face_sign = (f % 2 == 0) ? 1 : -1;
        for (const auto& [idx, coef] : sd[static_cast<std::size_t>(d - 1)][k.index_of(face)]) {
          Simplex cone{b};
          const Simplex& w = fine.simplex(d - 1, idx);
          cone.insert(cone.end(), w.begin(), w.end());
          const int s = sort_sign(cone);
          acc.emplace_back(fine.index_of(cone), face_sign * coef * s);
        }
      }
      std::sort(acc.begin(), acc.end());
      SparseColumn merged;
      for (const auto& [idx, coef] : acc) {
        if (!merged.empty() && merged.back().first == idx) {
          merged.back().second += coef;
        } else {
          merged.emplace_back(idx, coef);
        }
      }
      std::erase_if(merged, [](const auto& e) { return e.second == 0; });
      out[i] = std::move(merged);
    }
  }

  // Align the orientation of K' with sd([K]).
  const auto o = k.top_orientations();
  const auto fo = fine.top_orientations();
  int agree = 0;
  int disagree = 0;
  for (std::size_t t = 0; t < top.size(); ++t) {
    for (const auto& [idx, coef] : sd[static_cast<std::size_t>(n)][t]) {
      (o[t] * coef == fo[idx] ? agree : disagree) += 1;
    }
  }
  if (agree != 0 && disagree != 0) {
    throw Error(ErrorCode::NonOrientable, "subdivision orientation is inconsistent");
  }
  Subdivision result{disagree > 0 ? fine.reversed() : std::move(fine), {}};

  for (int d = 0; d <= n; ++d) {
    std::vector<Eigen::Triplet<std::int64_t>> trip;
    const auto& cols = sd[static_cast<std::size_t>(d)];
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (const auto& [idx, coef] : cols[j]) {
        trip.emplace_back(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(j), coef);
      }
    }
    SparseIntMatrix m(static_cast<Eigen::Index>(result.complex.count(d)), static_cast<Eigen::Index>(cols.size()));
    m.setFromTriplets(trip.begin(), trip.end());
    result.chain_maps.push_back(std::move(m));
  }
  return result;
}

}  // namespace gerbe
