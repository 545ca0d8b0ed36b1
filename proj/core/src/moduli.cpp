#include "gerbe/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "gerbe/error.hpp"
#include "gerbe/smith.hpp"

namespace gerbe {

namespace {

double wrap01(double x) {
  double v = x - std::floor(x);
  return v >= 1.0 ? 0.0 : v;
}

double circle_distance(double a, double b) {
  const double d = std::abs(wrap01(a - b));
  return std::min(d, 1.0 - d);
}

void require_same_torus(const TorusPoint& a, const TorusPoint& b) {
  if (a.kind != b.kind || a.degree != b.degree || a.coords.size() != b.coords.size()) {
    throw Error(ErrorCode::InvalidInput, "torus points live on different tori");
  }
}

Eigen::MatrixXd to_dense(const IntMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_double();
  }
  return out;
}

Eigen::VectorXd coords_vector(const TorusPoint& p) {
  return Eigen::Map<const Eigen::VectorXd>(p.coords.data(), static_cast<Eigen::Index>(p.coords.size()));
}

}  // namespace

TorusPoint TorusPoint::reduce(const Eigen::VectorXd& x, TorusKind kind, int degree) {
  TorusPoint p;
  p.kind = kind;
  p.degree = degree;
  for (Eigen::Index i = 0; i < x.size(); ++i) p.coords.push_back(wrap01(x(i)));
  return p;
}

TorusPoint TorusPoint::operator+(const TorusPoint& o) const {
  require_same_torus(*this, o);
  TorusPoint p = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) p.coords[i] = wrap01(coords[i] + o.coords[i]);
  return p;
}

TorusPoint TorusPoint::operator-() const {
  TorusPoint p = *this;
  for (double& c : p.coords) c = wrap01(-c);
  return p;
}

double TorusPoint::distance(const TorusPoint& o) const {
  require_same_torus(*this, o);
  double d = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) d = std::max(d, circle_distance(coords[i], o.coords[i]));
  return d;
}

TorusPoint jacobi_point(const HodgeStructure& h, const Chain& gamma) {
  return TorusPoint::reduce(jacobi_vector(h, gamma).components, TorusKind::Jacobi, gamma.degree);
}

IntMatrix picard_basis_image(const HodgeStructure& h, int jacobi_degree) {
  return pairing_matrix(h.topology(), h.dimension() - jacobi_degree).transpose();
}

Eigen::VectorXd picard_coordinates(const HodgeStructure& h, const PicardRep& rep) {
  const int k = rep.source.degree;
  const Eigen::MatrixXd inv = to_dense(unimodular_inverse(picard_basis_image(h, k)));
  return inv * rep.pairings;
}

TorusPoint picard_point(const HodgeStructure& h, const PicardRep& rep) {
  return TorusPoint::reduce(picard_coordinates(h, rep), TorusKind::Picard, h.dimension() - rep.source.degree);
}

TorusPoint picard_to_jacobi(const HodgeStructure& h, const TorusPoint& picard) {
  if (picard.kind != TorusKind::Picard) throw Error(ErrorCode::InvalidInput, "expected a Picard point");
  const int k = h.dimension() - picard.degree;
  const Eigen::MatrixXd image = to_dense(picard_basis_image(h, k));
  return TorusPoint::reduce(image * coords_vector(picard), TorusKind::Jacobi, k);
}

TorusPoint jacobi_to_picard(const HodgeStructure& h, const TorusPoint& jacobi) {
  if (jacobi.kind != TorusKind::Jacobi) throw Error(ErrorCode::InvalidInput, "expected a Jacobi point");
  const int k = jacobi.degree;
  const Eigen::MatrixXd inv = to_dense(unimodular_inverse(picard_basis_image(h, k)));
  return TorusPoint::reduce(inv * coords_vector(jacobi), TorusKind::Picard, h.dimension() - k);
}

ModuliGroup::ModuliGroup(const HodgeStructure& h, int degree) : h_(&h), degree_(degree) {
  if (degree < 0 || degree >= h.dimension()) {
    throw Error(ErrorCode::DegreeOutOfRange, fmt::format("moduli degree must lie in 0..{}", h.dimension() - 1));
  }
  // Fix the section now so later calls are pure reads.
  h.topology().homology(degree);
}

GroupCoordinates ModuliGroup::normalize(GroupCoordinates c) const {
  const auto& orders = h_->topology().homology(degree_).torsion();
  if (c.torsion.size() != orders.size()) throw Error(ErrorCode::InvalidInput, "torsion coordinates have the wrong shape");
  for (std::size_t i = 0; i < orders.size(); ++i) c.torsion[i] = mod_floor(c.torsion[i], orders[i]);
  return c;
}

Chain ModuliGroup::base_cycle(const GroupCoordinates& c) const {
  return h_->topology().homology(degree_).cycle_with(normalize(c));
}

ModuliClass ModuliGroup::identity() const {
  const auto& hom = h_->topology().homology(degree_);
  ModuliClass out;
  out.h.free.assign(hom.betti(), Integer(0));
  out.h.torsion.assign(hom.torsion().size(), Integer(0));
  const auto b = static_cast<Eigen::Index>(h_->topology().cohomology(degree_ + 1).betti());
  out.t = TorusPoint::reduce(Eigen::VectorXd::Zero(b), TorusKind::Jacobi, degree_ + 1);
  return out;
}

ModuliClass ModuliGroup::classify(const Chain& z) const {
  if (z.degree != degree_) throw Error(ErrorCode::DegreeOutOfRange, "cycle degree does not match the group");
  ModuliClass out;
  out.h = h_->topology().homology(degree_).coordinates(z);
  const Chain gamma = find_bounding_chain(h_->topology(), z - base_cycle(out.h));
  out.t = jacobi_point(*h_, gamma);
  return out;
}

TorusPoint ModuliGroup::correction(const GroupCoordinates& a, const GroupCoordinates& b) const {
  GroupCoordinates s = a;
  for (std::size_t i = 0; i < s.free.size(); ++i) s.free[i] += b.free[i];
  for (std::size_t i = 0; i < s.torsion.size(); ++i) s.torsion[i] += b.torsion[i];
  const Chain z = base_cycle(a) + base_cycle(b) - base_cycle(s);
  return jacobi_point(*h_, find_bounding_chain(h_->topology(), z));
}

ModuliClass ModuliGroup::add(const ModuliClass& a, const ModuliClass& b) const {
  ModuliClass out;
  out.h = a.h;
  for (std::size_t i = 0; i < out.h.free.size(); ++i) out.h.free[i] += b.h.free[i];
  for (std::size_t i = 0; i < out.h.torsion.size(); ++i) out.h.torsion[i] += b.h.torsion[i];
  out.h = normalize(std::move(out.h));
  out.t = a.t + b.t + correction(a.h, b.h);
  return out;
}

ModuliClass ModuliGroup::negate(const ModuliClass& a) const {
  ModuliClass out;
  out.h = a.h;
  for (auto& x : out.h.free) x.negate();
  for (auto& x : out.h.torsion) x.negate();
  out.h = normalize(std::move(out.h));
  out.t = -(a.t + correction(a.h, out.h));
  return out;
}

bool ModuliGroup::equal(const ModuliClass& a, const ModuliClass& b, double tol) const {
  return a.h == b.h && a.t.distance(b.t) <= tol;
}

ModuliClass moduli_class(const ModuliGroup& g, const Chain& z) { return g.classify(z); }
ModuliClass moduli_add(const ModuliGroup& g, const ModuliClass& a, const ModuliClass& b) { return g.add(a, b); }
ModuliClass moduli_neg(const ModuliGroup& g, const ModuliClass& a) { return g.negate(a); }
bool moduli_eq(const ModuliGroup& g, const ModuliClass& a, const ModuliClass& b, double tol) {
  return g.equal(a, b, tol);
}

namespace {

/// Smallest q <= cap with |x q - round(x q)| <= eps, or 0.
std::int64_t denominator(double x, std::int64_t cap, double eps) {
  for (std::int64_t q = 1; q <= cap; ++q) {
    const double v = x * static_cast<double>(q);
    if (std::abs(v - std::round(v)) <= eps * static_cast<double>(q)) return q;
  }
  return 0;
}

std::vector<std::vector<double>> probe_points(std::size_t b, const ScanOptions& o) {
  std::vector<std::vector<double>> probes;
  if (b <= 2) {
    const int r = o.probe_resolution;
    std::size_t total = 1;
    for (std::size_t i = 0; i < b; ++i) total *= static_cast<std::size_t>(r);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::vector<double> p(b);
      std::size_t rem = idx;
      for (std::size_t i = 0; i < b; ++i) {
        p[i] = (static_cast<double>(rem % static_cast<std::size_t>(r)) + 0.5) / r;
        rem /= static_cast<std::size_t>(r);
      }
      probes.push_back(std::move(p));
    }
  } else {
    std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < o.random_probes; ++i) {
      std::vector<double> p(b);
      for (double& x : p) x = u(rng);
      probes.push_back(std::move(p));
    }
  }
  return probes;
}

double covering_radius(const std::vector<std::vector<double>>& points, const std::vector<std::vector<double>>& probes) {
  if (points.empty()) return std::numeric_limits<double>::quiet_NaN();
  double worst = 0;
  for (const auto& p : probes) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : points) {
      double d = 0;
      for (std::size_t i = 0; i < p.size() && d < best; ++i) d = std::max(d, circle_distance(p[i], q[i]));
      best = std::min(best, d);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

ScanReport jacobi_scan(const HodgeStructure& h, int degree, const ScanOptions& options) {
  if (degree < 0 || degree >= h.dimension()) {
    throw Error(ErrorCode::DegreeOutOfRange, fmt::format("scan degree must lie in 0..{}", h.dimension() - 1));
  }
  ScanReport rep;
  rep.degree = degree;
  rep.seed = options.seed;
  const int k = degree + 1;
  const std::size_t b = h.topology().cohomology(k).betti();
  rep.torus_dimension = b;
  rep.closure_covering_radius = std::numeric_limits<double>::quiet_NaN();
  rep.covering_radius = std::numeric_limits<double>::quiet_NaN();
  if (b == 0 || options.budget == 0) return rep;

  const Eigen::MatrixXd& theta = h.integral_lattice(k);
  const auto cells = static_cast<std::uint64_t>(h.complex().count(k));
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, cells - 1);
  std::uniform_int_distribution<int> length(1, std::max(1, options.max_terms));
  std::bernoulli_distribution flip(0.5);

  rep.histograms.assign(b, std::vector<std::size_t>(static_cast<std::size_t>(options.histogram_bins), 0));
  std::vector<std::vector<double>> points;
  points.reserve(options.budget);
  for (std::size_t s = 0; s < options.budget; ++s) {
    Eigen::VectorXd j = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(b));
    const int terms = length(rng);
    for (int t = 0; t < terms; ++t) {
      const auto cell = static_cast<Eigen::Index>(pick(rng));
      const double sign = flip(rng) ? -1.0 : 1.0;
      j += sign * theta.row(cell).transpose();
    }
    std::vector<double> p(b);
    for (std::size_t i = 0; i < b; ++i) {
      p[i] = wrap01(j(static_cast<Eigen::Index>(i)));
      auto bin = static_cast<std::size_t>(p[i] * options.histogram_bins);
      rep.histograms[i][std::min(bin, rep.histograms[i].size() - 1)] += 1;
    }
    points.push_back(std::move(p));
  }
  rep.samples = points.size();

  // Distinct points up to 1e-9.
  std::vector<std::vector<double>> distinct;
  {
    std::vector<std::vector<long long>> keys;
    for (const auto& p : points) {
      std::vector<long long> key;
      for (double x : p) key.push_back(std::llround(x * 1e9) % 1000000000LL);
      keys.push_back(std::move(key));
    }
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return keys[a] < keys[c]; });
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || keys[order[i]] != keys[order[i - 1]]) distinct.push_back(points[order[i]]);
    }
  }
  const auto probes = probe_points(b, options);
  rep.covering_radius = covering_radius(distinct, probes);

  // Subgroup generated by the samples, when they are all rational.
  constexpr std::int64_t kCap = 1000;
  std::int64_t lcm = 1;
  bool rational = true;
  for (const auto& p : distinct) {
    for (double x : p) {
      const std::int64_t q = denominator(x, kCap, 1e-7);
      if (q == 0) {
        rational = false;
        break;
      }
      lcm = std::lcm(lcm, q);
      if (lcm > kCap) rational = false;
    }
    if (!rational) break;
  }
  rep.closure_rational = rational;
  if (!rational) return rep;
  rep.closure_denominator = lcm;
  IntMatrix gens(b, distinct.size() + b);
  for (std::size_t j = 0; j < distinct.size(); ++j) {
    for (std::size_t i = 0; i < b; ++i) gens(i, j) = static_cast<std::int64_t>(std::llround(distinct[j][i] * static_cast<double>(lcm)) % lcm);
  }
  for (std::size_t i = 0; i < b; ++i) gens(i, distinct.size() + i) = lcm;
  const SmithDecomposition snf = smith_normal_form(gens, {.left = true, .left_inverse = true, .right = false});
  Integer index(1);
  for (const Integer& d : snf.divisors) index *= d;
  Integer full(1);
  for (std::size_t i = 0; i < b; ++i) full *= Integer(lcm);
  rep.closure_order = div_floor(full, index);

  constexpr std::int64_t kMaxEnumerated = 200000;
  if (rep.closure_order > Integer(kMaxEnumerated)) return rep;
  // H / lcm Z^b = U^{-1} (+)_i d_i Z / lcm Z.
  std::vector<std::int64_t> steps;
  for (const Integer& d : snf.divisors) steps.push_back(lcm / d.to_int64());
  std::vector<std::vector<double>> elements;
  std::vector<std::int64_t> idx(b, 0);
  for (;;) {
    std::vector<double> e(b, 0.0);
    for (std::size_t r = 0; r < b; ++r) {
      std::int64_t acc = 0;
      for (std::size_t c = 0; c < b; ++c) acc += snf.U_inv(r, c).to_int64() * snf.divisors[c].to_int64() * idx[c];
      e[r] = wrap01(static_cast<double>(((acc % lcm) + lcm) % lcm) / static_cast<double>(lcm));
    }
    elements.push_back(std::move(e));
    std::size_t c = 0;
    while (c < b && ++idx[c] == steps[c]) idx[c++] = 0;
    if (c == b) break;
  }
  rep.closure_covering_radius = covering_radius(elements, probes);
  return rep;
}

PeriodCheck period_matrix_check(const HodgeStructure& h, int degree, double tol) {
  PeriodCheck out;
  out.degree = degree;
  const auto& hats = h.integer_cocycles(degree);
  const auto y = dual_homology_basis(h.topology(), degree, hats);
  const Eigen::MatrixXd& theta = h.integral_lattice(degree);
  const auto b = static_cast<Eigen::Index>(y.size());
  out.matrix.resize(b, b);
  for (Eigen::Index i = 0; i < b; ++i) {
    const Eigen::VectorXd yi = to_vector(y[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < b; ++j) out.matrix(i, j) = theta.col(j).dot(yi);
  }
  out.max_error = b ? (out.matrix - Eigen::MatrixXd::Identity(b, b)).cwiseAbs().maxCoeff() : 0.0;
  out.identity = out.max_error <= tol;
  return out;
}

TorsionDiagnostic torsion_diagnostic(const HodgeStructure& h, const Chain& z) {
  TorsionDiagnostic out;
  const auto& hom = h.topology().homology(z.degree);
  out.homology = hom.coordinates(z);
  const bool has_free = std::any_of(out.homology.free.begin(), out.homology.free.end(),
                                    [](const Integer& x) { return !x.is_zero(); });
  if (has_free) {
    out.order = Integer(0);
    return out;
  }
  Integer m(1);
  for (std::size_t i = 0; i < out.homology.torsion.size(); ++i) {
    const Integer& d = hom.torsion()[i];
    const Integer g = gcd(out.homology.torsion[i], d);
    const Integer part = div_floor(d, g.is_zero() ? d : g);
    m = div_floor(m * part, gcd(m, part));
  }
  out.order = m;
  const Chain mz = m.to_int64() * z;
  out.bounding_chain = find_bounding_chain(h.topology(), mz);
  out.point = jacobi_point(h, *out.bounding_chain);
  return out;
}

}  // namespace gerbe
