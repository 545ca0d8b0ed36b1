#include "gerbe/complex.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <string>

#include "gerbe/error.hpp"

namespace gerbe {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// All (size)-element subsets of a sorted simplex, in lexicographic order.
void for_each_face(const Simplex& s, int size, const auto& fn) {
  const int n = static_cast<int>(s.size());
  std::vector<int> pick(static_cast<std::size_t>(size));
  std::iota(pick.begin(), pick.end(), 0);
  Simplex face(static_cast<std::size_t>(size));
  for (;;) {
    for (int i = 0; i < size; ++i) face[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    fn(face);
    int i = size - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) return;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
}

Simplex omit(const Simplex& s, std::size_t i) {
  Simplex face;
  face.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j != i) face.push_back(s[j]);
  }
  return face;
}

}  // namespace

int sort_sign(Simplex& tuple) {
  int sign = 1;
  // insertion sort, counting transpositions
  for (std::size_t i = 1; i < tuple.size(); ++i) {
    for (std::size_t j = i; j > 0 && tuple[j - 1] >= tuple[j]; --j) {
      if (tuple[j - 1] == tuple[j]) return 0;
      std::swap(tuple[j - 1], tuple[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < tuple.size(); ++i) {
    if (tuple[i - 1] == tuple[i]) return 0;
  }
  return sign;
}

SimplicialComplex SimplicialComplex::build(const MeshData& mesh) {
  if (mesh.top_simplices.empty() || mesh.vertices.empty()) {
    throw Error(ErrorCode::EmptyInput, "mesh has no simplices or no vertices");
  }
  const int n = mesh.dimension > 0 ? mesh.dimension
                                   : static_cast<int>(mesh.top_simplices.front().size()) - 1;
  if (n < 1) throw Error(ErrorCode::InvalidInput, "dimension must be at least 1");
  const auto nv = static_cast<int>(mesh.vertices.size());
  const std::size_t ambient = mesh.vertices.front().size();
  if (ambient < static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidInput, "vertex coordinates have fewer components than the dimension");
  }

  SimplicialComplex out;
  out.dim_ = n;
  out.vertex_coords_.resize(nv, static_cast<Eigen::Index>(ambient));
  for (int v = 0; v < nv; ++v) {
    const auto& p = mesh.vertices[static_cast<std::size_t>(v)];
    if (p.size() != ambient) throw Error(ErrorCode::InvalidInput, "inconsistent vertex coordinate length");
    for (std::size_t c = 0; c < ambient; ++c) out.vertex_coords_(v, static_cast<Eigen::Index>(c)) = p[c];
  }

  // Sort top simplices, remembering the parity of the given order.
  const std::size_t ntop = mesh.top_simplices.size();
  std::vector<Simplex> tops(ntop);
  std::vector<int> input_parity(ntop);
  std::vector<std::vector<std::size_t>> input_perm(ntop);
  for (std::size_t t = 0; t < ntop; ++t) {
    const Simplex& s = mesh.top_simplices[t];
    if (static_cast<int>(s.size()) != n + 1) {
      throw Error(ErrorCode::InvalidInput, "top simplices must all have dimension " + std::to_string(n));
    }
    for (int v : s) {
      if (v < 0 || v >= nv) throw Error(ErrorCode::InvalidInput, "vertex index out of range");
    }
    std::vector<std::size_t> perm(s.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });
    Simplex sorted = s;
    const int parity = sort_sign(sorted);
    if (parity == 0) throw Error(ErrorCode::InvalidInput, "simplex with repeated vertex");
    tops[t] = std::move(sorted);
    input_parity[t] = parity;
    input_perm[t] = std::move(perm);
  }

  // Canonical order: lexicographic on sorted tuples.
  std::vector<std::size_t> order(ntop);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tops[a] < tops[b]; });
  for (std::size_t i = 1; i < ntop; ++i) {
    if (tops[order[i]] == tops[order[i - 1]]) {
      throw Error(ErrorCode::DuplicateSimplex, "top simplex listed twice");
    }
  }

  out.simplices_.assign(static_cast<std::size_t>(n + 1), {});
  out.lookup_.assign(static_cast<std::size_t>(n + 1), {});
  for (std::size_t i = 0; i < ntop; ++i) out.simplices_[static_cast<std::size_t>(n)].push_back(tops[order[i]]);
  for (int k = 0; k < n; ++k) {
    std::set<Simplex> faces;
    for (const auto& s : out.simplices_[static_cast<std::size_t>(n)]) {
      for_each_face(s, k + 1, [&](const Simplex& f) { faces.insert(f); });
    }
    out.simplices_[static_cast<std::size_t>(k)].assign(faces.begin(), faces.end());
  }
  if (static_cast<int>(out.simplices_[0].size()) != nv) {
    throw Error(ErrorCode::InvalidInput, "every vertex must belong to a top simplex");
  }
  for (int k = 0; k <= n; ++k) {
    auto& lk = out.lookup_[static_cast<std::size_t>(k)];
    const auto& sk = out.simplices_[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < sk.size(); ++i) lk.emplace(sk[i], i);
  }

  // Ridge incidence: each (n-1)-simplex needs exactly two cofaces.
  const auto& top = out.simplices_[static_cast<std::size_t>(n)];
  const std::size_t nridge = out.simplices_[static_cast<std::size_t>(n - 1)].size();
  std::vector<std::vector<std::pair<std::size_t, int>>> ridge_cofaces(nridge);
  for (std::size_t t = 0; t < top.size(); ++t) {
    for (std::size_t i = 0; i < top[t].size(); ++i) {
      const std::size_t r = out.lookup_[static_cast<std::size_t>(n - 1)].at(omit(top[t], i));
      ridge_cofaces[r].emplace_back(t, (i % 2 == 0) ? 1 : -1);
    }
  }
  for (std::size_t r = 0; r < nridge; ++r) {
    if (ridge_cofaces[r].size() != 2) {
      throw Error(ErrorCode::NonManifold, "ridge " + std::to_string(r) + " has " +
                                              std::to_string(ridge_cofaces[r].size()) + " cofaces");
    }
  }

  // Orientation by propagation across ridges.
  out.orientation_.assign(top.size(), 0);
  std::vector<std::vector<std::pair<std::size_t, int>>> adjacency(top.size());
  for (const auto& rc : ridge_cofaces) {
    const auto [a, sa] = rc[0];
    const auto [b, sb] = rc[1];
    // s_a * sa + s_b * sb = 0  =>  s_b = -s_a * sa * sb
    adjacency[a].emplace_back(b, -sa * sb);
    adjacency[b].emplace_back(a, -sa * sb);
  }
  std::vector<std::size_t> canonical_to_input(ntop);
  for (std::size_t i = 0; i < ntop; ++i) canonical_to_input[i] = order[i];
  std::vector<std::size_t> input_to_canonical(ntop);
  for (std::size_t i = 0; i < ntop; ++i) input_to_canonical[order[i]] = i;
  for (std::size_t seed_input = 0; seed_input < ntop; ++seed_input) {
    const std::size_t seed = input_to_canonical[seed_input];
    if (out.orientation_[seed] != 0) continue;
    out.orientation_[seed] = input_parity[seed_input];
    std::deque<std::size_t> queue{seed};
    while (!queue.empty()) {
      const std::size_t t = queue.front();
      queue.pop_front();
      for (const auto& [u, rel] : adjacency[t]) {
        const int want = out.orientation_[t] * rel;
        if (out.orientation_[u] == 0) {
          out.orientation_[u] = want;
          queue.push_back(u);
        } else if (out.orientation_[u] != want) {
          throw Error(ErrorCode::NonOrientable, "no consistent orientation exists");
        }
      }
    }
  }

  // Geometry in a covering chart.
  for (const auto& p : mesh.periods) {
    if (p.size() != ambient) throw Error(ErrorCode::InvalidInput, "period vector has wrong length");
    out.periods_.push_back(Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size())));
  }
  out.explicit_cells_ = !mesh.cell_coordinates.empty();
  if (out.explicit_cells_ && mesh.cell_coordinates.size() != ntop) {
    throw Error(ErrorCode::InvalidInput, "cell_coordinates must list one entry per top simplex");
  }
  out.cell_coords_.resize(ntop);
  for (std::size_t t = 0; t < ntop; ++t) {
    const std::size_t in = canonical_to_input[t];
    Eigen::MatrixXd x(static_cast<Eigen::Index>(ambient), n + 1);
    if (out.explicit_cells_) {
      const auto& cell = mesh.cell_coordinates[in];
      if (cell.size() != static_cast<std::size_t>(n + 1)) {
        throw Error(ErrorCode::InvalidInput, "cell_coordinates entry has wrong vertex count");
      }
      for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j) {
        const auto& p = cell[input_perm[in][j]];
        if (p.size() != ambient) throw Error(ErrorCode::InvalidInput, "cell coordinate has wrong length");
        for (std::size_t c = 0; c < ambient; ++c) x(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j)) = p[c];
      }
    } else {
      for (int j = 0; j <= n; ++j) x.col(j) = out.vertex_coords_.row(top[t][static_cast<std::size_t>(j)]).transpose();
      for (int j = 1; j <= n; ++j) {
        Eigen::VectorXd diff = x.col(j) - x.col(0);
        for (const auto& p : out.periods_) diff -= std::round(diff.dot(p) / p.squaredNorm()) * p;
        x.col(j) = x.col(0) + diff;
      }
    }
    out.cell_coords_[t] = std::move(x);
    if (!(out.top_volume(t) > 0.0)) {
      throw Error(ErrorCode::InvalidInput, "degenerate top simplex " + std::to_string(t));
    }
  }

  out.top_star_.assign(static_cast<std::size_t>(n), {});
  for (int k = 0; k < n; ++k) {
    auto& star = out.top_star_[static_cast<std::size_t>(k)];
    star.assign(out.simplices_[static_cast<std::size_t>(k)].size(), {});
    for (std::size_t t = 0; t < top.size(); ++t) {
      for_each_face(top[t], k + 1, [&](const Simplex& f) {
        star[out.lookup_[static_cast<std::size_t>(k)].at(f)].push_back(t);
      });
    }
  }
  return out;
}

std::size_t SimplicialComplex::count(int k) const { return simplices(k).size(); }

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  if (k < 0 || k > dim_) throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(k));
  return simplices_[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> SimplicialComplex::find(const Simplex& sorted) const {
  const int k = static_cast<int>(sorted.size()) - 1;
  if (k < 0 || k > dim_) return std::nullopt;
  const auto& lk = lookup_[static_cast<std::size_t>(k)];
  auto it = lk.find(sorted);
  if (it == lk.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialComplex::index_of(const Simplex& sorted) const {
  auto idx = find(sorted);
  if (!idx) throw Error(ErrorCode::InvalidInput, "simplex not in complex");
  return *idx;
}

const std::vector<std::vector<std::size_t>>& SimplicialComplex::cofaces_of_top(int k) const {
  if (k < 0 || k >= dim_) throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(k));
  return top_star_[static_cast<std::size_t>(k)];
}

std::int64_t SimplicialComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (int k = 0; k <= dim_; ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(count(k));
  return chi;
}

double SimplicialComplex::top_volume(std::size_t t) const {
  const Eigen::MatrixXd& x = cell_coords_[t];
  const Eigen::MatrixXd e = x.rightCols(dim_).colwise() - x.col(0);
  const double det = (e.transpose() * e).determinant();
  return std::sqrt(std::max(det, 0.0)) / factorial(dim_);
}

double SimplicialComplex::total_volume() const {
  double v = 0.0;
  for (std::size_t t = 0; t < cell_coords_.size(); ++t) v += top_volume(t);
  return v;
}

SimplicialComplex SimplicialComplex::reversed() const {
  SimplicialComplex out = *this;
  for (int& s : out.orientation_) s = -s;
  return out;
}

MeshData SimplicialComplex::to_mesh_data() const {
  MeshData m;
  m.dimension = dim_;
  m.vertices.resize(static_cast<std::size_t>(vertex_coords_.rows()));
  for (Eigen::Index v = 0; v < vertex_coords_.rows(); ++v) {
    auto& p = m.vertices[static_cast<std::size_t>(v)];
    for (Eigen::Index c = 0; c < vertex_coords_.cols(); ++c) p.push_back(vertex_coords_(v, c));
  }
  const auto& top = simplices(dim_);
  for (std::size_t t = 0; t < top.size(); ++t) {
    Simplex s = top[t];
    std::vector<std::vector<double>> cell;
    for (Eigen::Index j = 0; j < cell_coords_[t].cols(); ++j) {
      const Eigen::VectorXd p = cell_coords_[t].col(j);
      cell.emplace_back(p.data(), p.data() + p.size());
    }
    if (orientation_[t] < 0) {
      std::swap(s[0], s[1]);
      std::swap(cell[0], cell[1]);
    }
    m.top_simplices.push_back(std::move(s));
    if (explicit_cells_) m.cell_coordinates.push_back(std::move(cell));
  }
  for (const auto& p : periods_) m.periods.emplace_back(p.data(), p.data() + p.size());
  return m;
}

SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int degree) {
  if (degree < 1 || degree > k.dimension()) {
    throw Error(ErrorCode::DegreeOutOfRange, "boundary degree " + std::to_string(degree));
  }
  const auto& cells = k.simplices(degree);
  std::vector<Eigen::Triplet<std::int64_t>> trip;
  trip.reserve(cells.size() * static_cast<std::size_t>(degree + 1));
  for (std::size_t j = 0; j < cells.size(); ++j) {
    for (std::size_t i = 0; i < cells[j].size(); ++i) {
      const std::size_t row = k.index_of(omit(cells[j], i));
      trip.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j), i % 2 == 0 ? 1 : -1);
    }
  }
  SparseIntMatrix m(static_cast<Eigen::Index>(k.count(degree - 1)), static_cast<Eigen::Index>(cells.size()));
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

Chain Chain::zero(const SimplicialComplex& k, int degree) {
  return Chain{degree, std::vector<std::int64_t>(k.count(degree), 0)};
}

Chain Chain::elementary(const SimplicialComplex& k, Simplex vertices, std::int64_t coefficient) {
  const int degree = static_cast<int>(vertices.size()) - 1;
  Chain c = zero(k, degree);
  const int sign = sort_sign(vertices);
  if (sign == 0) throw Error(ErrorCode::InvalidInput, "simplex with repeated vertex");
  c.coeffs[k.index_of(vertices)] = sign * coefficient;
  return c;
}

bool Chain::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t v) { return v == 0; });
}

Chain& Chain::operator+=(const Chain& rhs) {
  if (rhs.degree != degree || rhs.coeffs.size() != coeffs.size()) {
    throw Error(ErrorCode::InvalidInput, "adding chains of different degree");
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (__builtin_add_overflow(coeffs[i], rhs.coeffs[i], &coeffs[i])) {
      throw Error(ErrorCode::OverflowPolicy, "chain coefficient overflow");
    }
  }
  return *this;
}

Chain& Chain::operator-=(const Chain& rhs) {
  if (rhs.degree != degree || rhs.coeffs.size() != coeffs.size()) {
    throw Error(ErrorCode::InvalidInput, "subtracting chains of different degree");
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (__builtin_sub_overflow(coeffs[i], rhs.coeffs[i], &coeffs[i])) {
      throw Error(ErrorCode::OverflowPolicy, "chain coefficient overflow");
    }
  }
  return *this;
}

Chain& Chain::operator*=(std::int64_t s) {
  for (auto& v : coeffs) {
    if (__builtin_mul_overflow(v, s, &v)) throw Error(ErrorCode::OverflowPolicy, "chain coefficient overflow");
  }
  return *this;
}

std::int64_t IntCochain::operator()(const Chain& c) const {
  if (c.degree != degree || c.coeffs.size() != values.size()) {
    throw Error(ErrorCode::InvalidInput, "cochain and chain degrees differ");
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::int64_t prod = 0;
    if (__builtin_mul_overflow(values[i], c.coeffs[i], &prod) || __builtin_add_overflow(sum, prod, &sum)) {
      throw Error(ErrorCode::OverflowPolicy, "cochain evaluation overflow");
    }
  }
  return sum;
}

double RealCochain::operator()(const Chain& c) const {
  if (c.degree != degree || static_cast<Eigen::Index>(c.coeffs.size()) != values.size()) {
    throw Error(ErrorCode::InvalidInput, "cochain and chain degrees differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    if (c.coeffs[i] != 0) sum += static_cast<double>(c.coeffs[i]) * values(static_cast<Eigen::Index>(i));
  }
  return sum;
}

Chain boundary(const SimplicialComplex& k, const Chain& c) {
  if (c.degree == 0) return Chain{-1, {}};
  const SparseIntMatrix d = boundary_matrix(k, c.degree);
  Chain out = Chain::zero(k, c.degree - 1);
  for (Eigen::Index j = 0; j < d.outerSize(); ++j) {
    const std::int64_t cj = c.coeffs[static_cast<std::size_t>(j)];
    if (cj == 0) continue;
    for (SparseIntMatrix::InnerIterator it(d, j); it; ++it) out.coeffs[static_cast<std::size_t>(it.row())] += it.value() * cj;
  }
  return out;
}

IntCochain coboundary(const SimplicialComplex& k, const IntCochain& c) {
  if (c.degree == k.dimension()) return IntCochain{c.degree + 1, {}};
  const SparseIntMatrix d = boundary_matrix(k, c.degree + 1);
  IntCochain out{c.degree + 1, std::vector<std::int64_t>(k.count(c.degree + 1), 0)};
  for (Eigen::Index j = 0; j < d.outerSize(); ++j) {
    std::int64_t sum = 0;
    for (SparseIntMatrix::InnerIterator it(d, j); it; ++it) sum += it.value() * c.values[static_cast<std::size_t>(it.row())];
    out.values[static_cast<std::size_t>(j)] = sum;
  }
  return out;
}

RealCochain to_real(const IntCochain& c) {
  RealCochain out{c.degree, Eigen::VectorXd(static_cast<Eigen::Index>(c.values.size()))};
  for (std::size_t i = 0; i < c.values.size(); ++i) out.values(static_cast<Eigen::Index>(i)) = static_cast<double>(c.values[i]);
  return out;
}

Eigen::VectorXd to_vector(const Chain& c) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(c.coeffs.size()));
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) v(static_cast<Eigen::Index>(i)) = static_cast<double>(c.coeffs[i]);
  return v;
}

Chain fundamental_cycle(const SimplicialComplex& k) {
  Chain c = Chain::zero(k, k.dimension());
  const auto o = k.top_orientations();
  for (std::size_t t = 0; t < o.size(); ++t) c.coeffs[t] = o[t];
  return c;
}

}  // namespace gerbe
