#include "gerbe/homology.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace gerbe {

namespace {

SparseIntMatrix empty_matrix(std::size_t rows, std::size_t cols) {
  return SparseIntMatrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

std::vector<std::int64_t> to_int64(std::span<const Integer> v) {
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const Integer& x : v) out.push_back(x.to_int64());
  return out;
}

std::vector<std::int64_t> apply(const SparseIntMatrix& m, std::span<const std::int64_t> x) {
  std::vector<Integer> acc(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index j = 0; j < m.outerSize(); ++j) {
    const std::int64_t xj = x[static_cast<std::size_t>(j)];
    if (xj == 0) continue;
    for (SparseIntMatrix::InnerIterator it(m, j); it; ++it) {
      acc[static_cast<std::size_t>(it.row())] += Integer(it.value()) * Integer(xj);
    }
  }
  return to_int64(acc);
}

void check_degree(const SimplicialComplex& k, int degree) {
  if (degree < 0 || degree > k.dimension()) {
    throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(degree) + " outside 0.." +
                                                 std::to_string(k.dimension()));
  }
}

SparseIntMatrix transposed(const SparseIntMatrix& m) { return SparseIntMatrix(m.transpose()); }

}  // namespace

bool GroupCoordinates::is_zero() const {
  auto zero = [](const Integer& x) { return x.is_zero(); };
  return std::all_of(free.begin(), free.end(), zero) && std::all_of(torsion.begin(), torsion.end(), zero);
}

Subquotient::Subquotient(const SparseIntMatrix& out, const SparseIntMatrix& in, std::size_t size)
    : size_(size), out_(out) {
  // Kernel of `out`: the trailing columns of V in U out V = D.
  IntMatrix kernel_basis;
  if (out.rows() == 0) {
    kernel_basis = IntMatrix::identity(size);
    kernel_coords_ = IntMatrix::identity(size);
  } else {
    const SmithDecomposition s =
        smith_normal_form(IntMatrix::from_sparse(out), {.left = false, .right = true, .right_inverse = true});
    const std::size_t r = s.rank();
    kernel_basis = s.V.col_block(r, size - r);
    kernel_coords_ = s.V_inv.row_block(r, size - r);
  }
  const std::size_t dim = kernel_basis.cols();

  // Incoming map in kernel coordinates, then its Smith form.
  const IntMatrix reduced = multiply(kernel_coords_, in);
  const SmithDecomposition s = smith_normal_form(
      reduced, {.left = true, .left_inverse = true, .right = true, .right_inverse = false});
  u_ = s.U;
  v_ = s.V;
  divisors_ = s.divisors;
  const IntMatrix gens = kernel_basis * s.U_inv;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i < divisors_.size()) {
      if (divisors_[i].is_unit()) continue;
      torsion_slots_.push_back(i);
      torsion_orders_.push_back(divisors_[i]);
      torsion_gens_.push_back(to_int64(gens.col(i)));
    } else {
      free_.push_back(to_int64(gens.col(i)));
    }
  }
}

bool Subquotient::in_kernel(std::span<const std::int64_t> x) const {
  if (x.size() != size_) return false;
  const auto y = apply(out_, x);
  return std::all_of(y.begin(), y.end(), [](std::int64_t v) { return v == 0; });
}

std::vector<Integer> Subquotient::solve_coordinates(std::span<const std::int64_t> x) const {
  if (!in_kernel(x)) throw Error(ErrorCode::NotACycle, "element is not closed");
  return u_.multiply(kernel_coords_.multiply(x));
}

GroupCoordinates Subquotient::coordinates(std::span<const std::int64_t> x) const {
  const std::vector<Integer> w = solve_coordinates(x);
  GroupCoordinates c;
  for (std::size_t i = 0; i < torsion_slots_.size(); ++i) {
    c.torsion.push_back(mod_floor(w[torsion_slots_[i]], torsion_orders_[i]));
  }
  for (std::size_t i = divisors_.size(); i < w.size(); ++i) c.free.push_back(w[i]);
  return c;
}

std::optional<std::vector<std::int64_t>> Subquotient::preimage(std::span<const std::int64_t> x) const {
  const std::vector<Integer> w = solve_coordinates(x);
  for (std::size_t i = divisors_.size(); i < w.size(); ++i) {
    if (!w[i].is_zero()) return std::nullopt;
  }
  std::vector<Integer> e(v_.cols());
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    if (!mod_floor(w[i], divisors_[i]).is_zero()) return std::nullopt;
    e[i] = div_floor(w[i], divisors_[i]);
  }
  return to_int64(v_.multiply(std::span<const Integer>(e)));
}

std::vector<std::int64_t> Subquotient::element(const GroupCoordinates& c) const {
  if (c.free.size() != free_.size() || c.torsion.size() != torsion_gens_.size()) {
    throw Error(ErrorCode::InvalidInput, "coordinate vector has the wrong shape");
  }
  std::vector<Integer> acc(size_);
  auto add = [&](const std::vector<std::int64_t>& g, const Integer& m) {
    if (m.is_zero()) return;
    for (std::size_t i = 0; i < size_; ++i) {
      if (g[i] != 0) acc[i] += Integer(g[i]) * m;
    }
  };
  for (std::size_t i = 0; i < free_.size(); ++i) add(free_[i], c.free[i]);
  for (std::size_t i = 0; i < torsion_gens_.size(); ++i) add(torsion_gens_[i], c.torsion[i]);
  return to_int64(acc);
}

namespace {

SparseIntMatrix outgoing_boundary(const SimplicialComplex& k, int degree) {
  check_degree(k, degree);
  if (degree == 0) return empty_matrix(0, k.count(0));
  return boundary_matrix(k, degree);
}

SparseIntMatrix incoming_boundary(const SimplicialComplex& k, int degree) {
  if (degree == k.dimension()) return empty_matrix(k.count(degree), 0);
  return boundary_matrix(k, degree + 1);
}

SparseIntMatrix outgoing_coboundary(const SimplicialComplex& k, int degree) {
  check_degree(k, degree);
  if (degree == k.dimension()) return empty_matrix(0, k.count(degree));
  return transposed(boundary_matrix(k, degree + 1));
}

SparseIntMatrix incoming_coboundary(const SimplicialComplex& k, int degree) {
  if (degree == 0) return empty_matrix(k.count(0), 0);
  return transposed(boundary_matrix(k, degree));
}

}  // namespace

HomologyData::HomologyData(const SimplicialComplex& k, int degree)
    : degree_(degree), group_(outgoing_boundary(k, degree), incoming_boundary(k, degree), k.count(degree)) {}

std::vector<Chain> HomologyData::free_cycles() const {
  std::vector<Chain> out;
  for (const auto& g : group_.free_generators()) out.push_back(Chain{degree_, g});
  return out;
}

std::vector<Chain> HomologyData::torsion_cycles() const {
  std::vector<Chain> out;
  for (const auto& g : group_.torsion_generators()) out.push_back(Chain{degree_, g});
  return out;
}

bool HomologyData::is_cycle(const Chain& z) const { return z.degree == degree_ && group_.in_kernel(z.coeffs); }

GroupCoordinates HomologyData::coordinates(const Chain& z) const {
  if (z.degree != degree_) throw Error(ErrorCode::DegreeOutOfRange, "chain degree does not match");
  return group_.coordinates(z.coeffs);
}

std::optional<Chain> HomologyData::bounding_chain(const Chain& z) const {
  if (z.degree != degree_) throw Error(ErrorCode::DegreeOutOfRange, "chain degree does not match");
  auto y = group_.preimage(z.coeffs);
  if (!y) return std::nullopt;
  return Chain{degree_ + 1, std::move(*y)};
}

Chain HomologyData::cycle_with(const GroupCoordinates& c) const { return Chain{degree_, group_.element(c)}; }

CohomologyData::CohomologyData(const SimplicialComplex& k, int degree)
    : degree_(degree),
      group_(outgoing_coboundary(k, degree), incoming_coboundary(k, degree), k.count(degree)) {}

std::vector<IntCochain> CohomologyData::free_cocycles() const {
  std::vector<IntCochain> out;
  for (const auto& g : group_.free_generators()) out.push_back(IntCochain{degree_, g});
  return out;
}

std::vector<IntCochain> CohomologyData::torsion_cocycles() const {
  std::vector<IntCochain> out;
  for (const auto& g : group_.torsion_generators()) out.push_back(IntCochain{degree_, g});
  return out;
}

bool CohomologyData::is_cocycle(const IntCochain& c) const {
  return c.degree == degree_ && group_.in_kernel(c.values);
}

GroupCoordinates CohomologyData::coordinates(const IntCochain& c) const {
  if (c.degree != degree_) throw Error(ErrorCode::DegreeOutOfRange, "cochain degree does not match");
  return group_.coordinates(c.values);
}

std::optional<IntCochain> CohomologyData::primitive(const IntCochain& c) const {
  if (c.degree != degree_) throw Error(ErrorCode::DegreeOutOfRange, "cochain degree does not match");
  auto y = group_.preimage(c.values);
  if (!y) return std::nullopt;
  return IntCochain{degree_ - 1, std::move(*y)};
}

struct Topology::Slot {
  std::once_flag homology_once;
  std::once_flag cohomology_once;
  std::unique_ptr<HomologyData> homology;
  std::unique_ptr<CohomologyData> cohomology;
};

Topology::Topology(const SimplicialComplex& k) : k_(&k) {
  for (int d = 0; d <= k.dimension(); ++d) slots_.push_back(std::make_unique<Slot>());
}

Topology::~Topology() = default;
Topology::Topology(Topology&&) noexcept = default;
Topology& Topology::operator=(Topology&&) noexcept = default;

const HomologyData& Topology::homology(int degree) const {
  check_degree(*k_, degree);
  Slot& s = *slots_[static_cast<std::size_t>(degree)];
  std::call_once(s.homology_once, [&] { s.homology = std::make_unique<HomologyData>(*k_, degree); });
  return *s.homology;
}

const CohomologyData& Topology::cohomology(int degree) const {
  check_degree(*k_, degree);
  Slot& s = *slots_[static_cast<std::size_t>(degree)];
  std::call_once(s.cohomology_once, [&] { s.cohomology = std::make_unique<CohomologyData>(*k_, degree); });
  return *s.cohomology;
}

std::vector<std::size_t> Topology::betti_numbers() const {
  std::vector<std::size_t> b;
  for (int d = 0; d <= k_->dimension(); ++d) b.push_back(homology(d).betti());
  return b;
}

HomologyData homology(const SimplicialComplex& k, int degree) { return HomologyData(k, degree); }
CohomologyData cohomology(const SimplicialComplex& k, int degree) { return CohomologyData(k, degree); }

Chain find_bounding_chain(const Topology& t, const Chain& z) {
  const int d = z.degree;
  check_degree(t.complex(), d);
  if (d == t.complex().dimension()) {
    // No (n+1)-chains: only zero bounds.
    const HomologyData& h = t.homology(d);
    if (!h.is_cycle(z)) throw Error(ErrorCode::NotACycle, "chain has nonzero boundary");
    if (z.is_zero()) return Chain{d + 1, {}};
    throw NotABoundaryError("top-degree cycle is not a boundary", h.coordinates(z));
  }
  const HomologyData& h = t.homology(d);
  auto gamma = h.bounding_chain(z);
  if (!gamma) throw NotABoundaryError("cycle has nonzero homology class", h.coordinates(z));
  return *gamma;
}

namespace {

template <typename Cochain, typename Values>
Cochain cup(const SimplicialComplex& k, const Cochain& a, const Cochain& b, Values out) {
  const int p = a.degree;
  const int q = b.degree;
  if (p < 0 || q < 0 || p + q > k.dimension()) {
    throw Error(ErrorCode::DegreeOverflow, "cup product degree " + std::to_string(p + q) + " exceeds dimension");
  }
  const auto& cells = k.simplices(p + q);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Simplex& s = cells[i];
    const Simplex front(s.begin(), s.begin() + p + 1);
    const Simplex back(s.begin() + p, s.end());
    const auto fa = static_cast<Eigen::Index>(k.index_of(front));
    const auto fb = static_cast<Eigen::Index>(k.index_of(back));
    out[static_cast<Eigen::Index>(i)] = a.values[fa] * b.values[fb];
  }
  return Cochain{p + q, std::move(out)};
}

}  // namespace

IntCochain cup_product(const SimplicialComplex& k, const IntCochain& a, const IntCochain& b) {
  const int deg = a.degree + b.degree;
  std::vector<std::int64_t> out(deg >= 0 && deg <= k.dimension() ? k.count(deg) : 0);
  return cup(k, a, b, std::move(out));
}

RealCochain cup_product(const SimplicialComplex& k, const RealCochain& a, const RealCochain& b) {
  const int deg = a.degree + b.degree;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(
      deg >= 0 && deg <= k.dimension() ? static_cast<Eigen::Index>(k.count(deg)) : 0);
  return cup(k, a, b, std::move(out));
}

IntMatrix pairing_matrix(const Topology& t, int p) {
  const SimplicialComplex& k = t.complex();
  const int n = k.dimension();
  check_degree(k, p);
  const auto left = t.cohomology(p).free_cocycles();
  const auto right = t.cohomology(n - p).free_cocycles();
  if (left.size() != right.size()) {
    throw Error(ErrorCode::SingularPairing, "Betti numbers in complementary degrees differ");
  }
  const Chain x = fundamental_cycle(k);
  IntMatrix pm(left.size(), right.size());
  for (std::size_t a = 0; a < left.size(); ++a) {
    for (std::size_t b = 0; b < right.size(); ++b) pm(a, b) = cup_product(k, left[a], right[b])(x);
  }
  const Integer det = determinant(pm);
  if (!det.is_unit()) {
    throw Error(ErrorCode::SingularPairing, "intersection pairing has determinant " + det.str());
  }
  return pm;
}

std::vector<Chain> dual_homology_basis(const Topology& t, int degree, const std::vector<IntCochain>& theta) {
  const HomologyData& h = t.homology(degree);
  const auto z = h.free_cycles();
  if (theta.size() != z.size()) {
    throw Error(ErrorCode::NotUnimodular, "expected " + std::to_string(z.size()) + " cocycles, got " +
                                              std::to_string(theta.size()));
  }
  const std::size_t b = z.size();
  IntMatrix e(b, b);
  for (std::size_t a = 0; a < b; ++a) {
    for (std::size_t j = 0; j < b; ++j) e(a, j) = theta[j](z[a]);
  }
  const IntMatrix x = unimodular_inverse(e);
  std::vector<Chain> y;
  for (std::size_t i = 0; i < b; ++i) {
    std::vector<Integer> acc(t.complex().count(degree));
    for (std::size_t a = 0; a < b; ++a) {
      if (x(i, a).is_zero()) continue;
      for (std::size_t s = 0; s < acc.size(); ++s) {
        if (z[a].coeffs[s] != 0) acc[s] += x(i, a) * Integer(z[a].coeffs[s]);
      }
    }
    y.push_back(Chain{degree, to_int64(acc)});
  }
  return y;
}

}  // namespace gerbe
