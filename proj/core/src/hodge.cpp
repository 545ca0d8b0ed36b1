#include "gerbe/hodge.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <string>

#include <fmt/format.h>

#include "gerbe/error.hpp"

namespace gerbe {

std::string_view to_string(MassKind kind) { return kind == MassKind::Whitney ? "whitney" : "lumped"; }

std::string_view to_string(SolverProfile profile) {
  return profile == SolverProfile::Deterministic ? "deterministic" : "fast";
}

namespace {

using Index = Eigen::Index;

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// All (size)-subsets of {0..n}, lexicographic.
std::vector<std::vector<int>> subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(size));
  std::iota(cur.begin(), cur.end(), 0);
  if (size == 0) return {{}};
  for (;;) {
    out.push_back(cur);
    int i = size - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n + 1 - size + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

/// m-volume of the simplex spanned by the columns of p (m + 1 points).
double simplex_volume(const Eigen::MatrixXd& p) {
  const Index m = p.cols() - 1;
  if (m <= 0) return 1.0;
  const Eigen::MatrixXd e = p.rightCols(m).colwise() - p.col(0);
  const double g = (e.transpose() * e).determinant();
  return std::sqrt(std::max(g, 0.0)) / factorial(static_cast<int>(m));
}

std::vector<std::size_t> global_faces(const SimplicialComplex& k, std::size_t t, const std::vector<std::vector<int>>& local) {
  const Simplex& top = k.simplex(k.dimension(), t);
  std::vector<std::size_t> out;
  out.reserve(local.size());
  for (const auto& f : local) {
    Simplex s;
    for (int i : f) s.push_back(top[static_cast<std::size_t>(i)]);
    out.push_back(k.index_of(s));
  }
  return out;
}

SparseMatrix coboundary_matrix(const SimplicialComplex& k, int degree) {
  return SparseMatrix(boundary_matrix(k, degree + 1).cast<double>().transpose());
}

double relative(double num, double den) { return den > 0 ? num / den : num; }

}  // namespace

SparseMatrix whitney_mass(const SimplicialComplex& k, int degree) {
  const int n = k.dimension();
  if (degree < 0 || degree > n) throw Error(ErrorCode::DegreeOutOfRange, "mass matrix degree out of range");
  const auto faces = subsets(n, degree + 1);
  const double scale = factorial(degree) * factorial(degree);
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n + 1, n);
  c.row(0).setConstant(-1.0);
  c.bottomRows(n).setIdentity();
  for (std::size_t t = 0; t < k.count(n); ++t) {
    const Eigen::MatrixXd& x = k.cell_coordinates(t);
    const Eigen::MatrixXd e = x.rightCols(n).colwise() - x.col(0);
    const Eigen::MatrixXd g = e.transpose() * e;
    // Inner products of barycentric gradients.
    const Eigen::MatrixXd q = c * g.inverse() * c.transpose();
    const double vol = k.top_volume(t);
    auto moment = [&](int i, int j) { return vol * (i == j ? 2.0 : 1.0) / ((n + 1) * (n + 2)); };
    const auto ids = global_faces(k, t, faces);
    for (std::size_t a = 0; a < faces.size(); ++a) {
      for (std::size_t b = 0; b < faces.size(); ++b) {
        const auto& f = faces[a];
        const auto& h = faces[b];
        double sum = 0;
        for (int i = 0; i <= degree; ++i) {
          for (int j = 0; j <= degree; ++j) {
            Eigen::MatrixXd sub(degree, degree);
            for (int r = 0, rr = 0; r <= degree; ++r) {
              if (r == i) continue;
              for (int s = 0, ss = 0; s <= degree; ++s) {
                if (s == j) continue;
                sub(rr, ss++) = q(f[static_cast<std::size_t>(r)], h[static_cast<std::size_t>(s)]);
              }
              ++rr;
            }
            const double det = degree == 0 ? 1.0 : sub.determinant();
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            sum += sign * moment(f[static_cast<std::size_t>(i)], h[static_cast<std::size_t>(j)]) * det;
          }
        }
        trip.emplace_back(static_cast<Index>(ids[a]), static_cast<Index>(ids[b]), scale * sum);
      }
    }
  }
  const auto size = static_cast<Index>(k.count(degree));
  SparseMatrix m(size, size);
  m.setFromTriplets(trip.begin(), trip.end());
  m.prune(0.0);
  return m;
}

SparseMatrix lumped_mass(const SimplicialComplex& k, int degree) {
  const int n = k.dimension();
  if (degree < 0 || degree > n) throw Error(ErrorCode::DegreeOutOfRange, "mass matrix degree out of range");
  const auto faces = subsets(n, degree + 1);
  Eigen::VectorXd dual = Eigen::VectorXd::Zero(static_cast<Index>(k.count(degree)));
  Eigen::VectorXd primal = Eigen::VectorXd::Zero(dual.size());
  for (std::size_t t = 0; t < k.count(n); ++t) {
    const Eigen::MatrixXd& x = k.cell_coordinates(t);
    const auto ids = global_faces(k, t, faces);
    for (std::size_t a = 0; a < faces.size(); ++a) {
      const auto& f = faces[a];
      Eigen::MatrixXd fp(x.rows(), static_cast<Index>(f.size()));
      for (std::size_t i = 0; i < f.size(); ++i) fp.col(static_cast<Index>(i)) = x.col(f[i]);
      primal(static_cast<Index>(ids[a])) = simplex_volume(fp);
      // Flags f = s_k < s_{k+1} < ... < s_n = t, one per ordering of the rest.
      std::vector<int> rest;
      for (int v = 0; v <= n; ++v) {
        if (std::find(f.begin(), f.end(), v) == f.end()) rest.push_back(v);
      }
      double vol = 0;
      do {
        Eigen::MatrixXd pts(x.rows(), static_cast<Index>(rest.size()) + 1);
        Eigen::VectorXd sum = fp.rowwise().sum();
        double count = static_cast<double>(f.size());
        pts.col(0) = sum / count;
        for (std::size_t i = 0; i < rest.size(); ++i) {
          sum += x.col(rest[i]);
          count += 1;
          pts.col(static_cast<Index>(i) + 1) = sum / count;
        }
        vol += simplex_volume(pts);
      } while (std::next_permutation(rest.begin(), rest.end()));
      dual(static_cast<Index>(ids[a])) += vol;
    }
  }
  SparseMatrix m(dual.size(), dual.size());
  m.reserve(Eigen::VectorXi::Constant(dual.size(), 1));
  for (Index i = 0; i < dual.size(); ++i) m.insert(i, i) = dual(i) / primal(i);
  return m;
}

struct HodgeStructure::Level {
  SparseMatrix mass;
  SparseMatrix d;
  SparseMatrix stiffness;
  Eigen::SimplicialLLT<SparseMatrix> llt;

  std::once_flag spectrum_once;
  std::once_flag harmonic_once;
  Eigen::MatrixXd harmonic;
  std::vector<IntCochain> cocycles;
  Eigen::MatrixXd lattice;
  Eigen::MatrixXd corrections;
  DegreeReport report;
};

HodgeStructure::HodgeStructure(const SimplicialComplex& k, const Topology& topology, const HodgeOptions& options)
    : k_(&k), topology_(&topology), options_(options) {
  const int n = k.dimension();
  for (int d = 0; d <= n; ++d) {
    auto lv = std::make_unique<Level>();
    lv->mass = options.mass == MassKind::Whitney ? whitney_mass(k, d) : lumped_mass(k, d);
    lv->llt.compute(lv->mass);
    if (lv->llt.info() != Eigen::Success) {
      throw Error(ErrorCode::SingularMass, fmt::format("mass matrix of degree {} is not positive definite", d));
    }
    lv->report.degree = d;
    lv->report.simplices = k.count(d);
    levels_.push_back(std::move(lv));
  }
  for (int d = 0; d < n; ++d) {
    Level& lv = *levels_[static_cast<std::size_t>(d)];
    lv.d = coboundary_matrix(k, d);
    lv.stiffness = SparseMatrix(lv.d.transpose() * levels_[static_cast<std::size_t>(d + 1)]->mass * lv.d);
  }
}

HodgeStructure::~HodgeStructure() = default;
HodgeStructure::HodgeStructure(HodgeStructure&&) noexcept = default;
HodgeStructure& HodgeStructure::operator=(HodgeStructure&&) noexcept = default;

HodgeStructure::Level& HodgeStructure::level(int k) const {
  if (k < 0 || k > dimension()) {
    throw Error(ErrorCode::DegreeOutOfRange, fmt::format("degree {} outside 0..{}", k, dimension()));
  }
  return *levels_[static_cast<std::size_t>(k)];
}

const SparseMatrix& HodgeStructure::mass(int k) const { return level(k).mass; }

const SparseMatrix& HodgeStructure::d(int k) const {
  if (k >= dimension()) throw Error(ErrorCode::DegreeOutOfRange, "no coboundary out of the top degree");
  return level(k).d;
}

const SparseMatrix& HodgeStructure::stiffness(int k) const {
  if (k >= dimension()) throw Error(ErrorCode::DegreeOutOfRange, "no coboundary out of the top degree");
  return level(k).stiffness;
}

Eigen::VectorXd HodgeStructure::apply_mass(int k, const Eigen::VectorXd& x) const { return level(k).mass * x; }

Eigen::VectorXd HodgeStructure::solve_mass(int k, const Eigen::VectorXd& b) const { return level(k).llt.solve(b); }

double HodgeStructure::inner(int k, const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  return a.dot(level(k).mass * b);
}

double HodgeStructure::norm(int k, const Eigen::VectorXd& a) const { return std::sqrt(std::max(inner(k, a, a), 0.0)); }

Eigen::VectorXd HodgeStructure::coboundary(int k, const Eigen::VectorXd& x) const {
  if (k == dimension()) return Eigen::VectorXd();
  return level(k).d * x;
}

Eigen::VectorXd HodgeStructure::codifferential(int k, const Eigen::VectorXd& x) const {
  if (k == 0) return Eigen::VectorXd();
  const Level& lo = level(k - 1);
  return lo.llt.solve(lo.d.transpose() * (level(k).mass * x));
}

Eigen::VectorXd HodgeStructure::laplacian(int k, const Eigen::VectorXd& x) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  if (k < dimension()) out += codifferential(k + 1, coboundary(k, x));
  if (k > 0) out += coboundary(k - 1, codifferential(k, x));
  return out;
}

Eigen::VectorXd HodgeStructure::solve_stiffness(int k, const Eigen::VectorXd& b, double* residual,
                                                double scale) const {
  const SparseMatrix& a = stiffness(k);
  const double bn = std::max(b.norm(), scale);
  if (b.norm() <= 1e-14 * scale || b.norm() == 0) {
    if (residual) *residual = 0;
    return Eigen::VectorXd::Zero(b.size());
  }
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(options_.solver_tolerance);
  cg.setMaxIterations(10 * a.rows() + 100);
  cg.compute(a);
  Eigen::VectorXd x = cg.solve(b);
  double res = (a * x - b).norm() / bn;
  if (!(res <= 10 * options_.solver_tolerance)) {
    const Eigen::MatrixXd dense(a);
    x = dense.completeOrthogonalDecomposition().solve(b);
    res = (a * x - b).norm() / bn;
  }
  if (!(res <= 1e-9)) {
    throw Error(ErrorCode::SolverDiverged, fmt::format("degree {} solve stalled at relative residual {:.3e}", k, res));
  }
  if (residual) *residual = res;
  return x;
}

Eigen::VectorXd HodgeStructure::exact_potential(int k, const Eigen::VectorXd& x) const {
  const SparseMatrix& d = level(k - 1).d;
  const Eigen::VectorXd mx = level(k).mass * x;
  const double scale = (d.cwiseAbs().transpose() * mx.cwiseAbs()).norm();
  return solve_stiffness(k - 1, d.transpose() * mx, nullptr, scale);
}

void HodgeStructure::build_harmonic(int k) const {
  Level& lv = level(k);
  std::call_once(lv.spectrum_once, [&] {
    const int n = dimension();
    const std::size_t b = topology_->cohomology(k).betti();
    DegreeReport& rep = lv.report;
    rep.betti = b;
    const Eigen::MatrixXd m(lv.mass);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m.rows(), m.cols());
    if (k < n) s += Eigen::MatrixXd(lv.stiffness);
    if (k > 0) {
      const Level& lo = level(k - 1);
      const Eigen::MatrixXd bt(SparseMatrix(lo.d.transpose() * lv.mass));
      Eigen::MatrixXd y(bt.rows(), bt.cols());
      for (Index j = 0; j < bt.cols(); ++j) y.col(j) = lo.llt.solve(bt.col(j));
      s += bt.transpose() * y;
    }
    s = 0.5 * (s + s.transpose()).eval();

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> me(m, Eigen::EigenvaluesOnly);
    rep.mass_min_eigenvalue = me.eigenvalues().minCoeff();
    rep.mass_max_eigenvalue = me.eigenvalues().maxCoeff();
    if (!(rep.mass_min_eigenvalue > 0)) {
      throw Error(ErrorCode::SingularMass, fmt::format("degree {} mass has eigenvalue {:.3e}", k, rep.mass_min_eigenvalue));
    }

    const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ge(s, m);
    if (ge.info() != Eigen::Success) {
      throw Error(ErrorCode::SolverDiverged, fmt::format("degree {} eigensolver failed", k));
    }
    const Eigen::VectorXd& lam = ge.eigenvalues();
    const auto size = static_cast<std::size_t>(lam.size());
    rep.max_eigenvalue = size ? lam(lam.size() - 1) : 0.0;
    rep.kernel_eigenvalue = b ? std::abs(lam(static_cast<Index>(b) - 1)) : 0.0;
    rep.first_nonzero_eigenvalue = b < size ? lam(static_cast<Index>(b)) : std::numeric_limits<double>::infinity();
    const double floor = std::max(rep.kernel_eigenvalue, std::numeric_limits<double>::epsilon() * rep.max_eigenvalue);
    rep.gap_ratio = floor > 0 ? rep.first_nonzero_eigenvalue / floor : std::numeric_limits<double>::infinity();
    if (!(rep.gap_ratio >= options_.rank_gap)) {
      throw Error(ErrorCode::RankAmbiguous,
                  fmt::format("degree {}: expected {} harmonic forms but spectral gap ratio is {:.3e} (< {:.3e}); "
                              "refine the mesh or lower --rank-gap",
                              k, b, rep.gap_ratio, options_.rank_gap));
    }
    if (b > 0) lv.harmonic = ge.eigenvectors().leftCols(static_cast<Index>(b));
    rep.harmonic_dimension = b;

    // <d x, y>_{M_{k+1}} against <x, delta y>_{M_k}.
    if (k < n) {
      std::mt19937_64 rng(0x5eed + static_cast<unsigned>(k));
      std::normal_distribution<double> normal;
      const Level& hi = level(k + 1);
      double worst = 0;
      for (int trial = 0; trial < 4; ++trial) {
        Eigen::VectorXd x(lv.mass.rows());
        Eigen::VectorXd y(hi.mass.rows());
        for (Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
        for (Index i = 0; i < y.size(); ++i) y(i) = normal(rng);
        const Eigen::VectorXd dx = lv.d * x;
        const double lhs = dx.dot(hi.mass * y);
        const double rhs = inner(k, x, codifferential(k + 1, y));
        worst = std::max(worst, relative(std::abs(lhs - rhs), norm(k + 1, dx) * norm(k + 1, y)));
      }
      rep.adjointness_error = worst;
      if (!(worst <= 1e-12)) {
        throw Error(ErrorCode::SolverDiverged,
                    fmt::format("degree {}: codifferential is not adjoint to d (error {:.3e})", k, worst));
      }
    }
  });
}

const Eigen::MatrixXd& HodgeStructure::harmonic_basis(int k) const {
  Level& lv = level(k);
  if (topology_->cohomology(k).betti() == 0) {
    if (lv.harmonic.size() == 0) {
      std::call_once(lv.harmonic_once, [&] {
        lv.cocycles.clear();
        lv.harmonic.resize(lv.mass.rows(), 0);
        lv.lattice.resize(lv.mass.rows(), 0);
        lv.corrections.resize(k > 0 ? level(k - 1).mass.rows() : 0, 0);
      });
    }
    return lv.harmonic;
  }
  build_harmonic(k);
  return lv.harmonic;
}

Eigen::VectorXd HodgeStructure::harmonic_projection(int k, const Eigen::VectorXd& x) const {
  const Eigen::MatrixXd& h = harmonic_basis(k);
  if (h.cols() == 0) return Eigen::VectorXd::Zero(x.size());
  return h * (h.transpose() * (level(k).mass * x));
}

HodgeParts HodgeStructure::decompose(int k, const Eigen::VectorXd& x) const {
  HodgeParts p;
  p.harmonic = harmonic_projection(k, x);
  if (k > 0) {
    const Level& lo = level(k - 1);
    p.potential = exact_potential(k, x);
    p.exact = lo.d * p.potential;
  } else {
    p.potential = Eigen::VectorXd();
    p.exact = Eigen::VectorXd::Zero(x.size());
  }
  p.coexact = x - p.harmonic - p.exact;
  return p;
}

const std::vector<IntCochain>& HodgeStructure::integer_cocycles(int k) const {
  integral_lattice(k);
  return level(k).cocycles;
}

const Eigen::MatrixXd& HodgeStructure::integral_lattice(int k) const {
  Level& lv = level(k);
  harmonic_basis(k);
  if (topology_->cohomology(k).betti() == 0) return lv.lattice;
  std::call_once(lv.harmonic_once, [&] {
    lv.cocycles = topology_->cohomology(k).free_cocycles();
    const auto rows = lv.mass.rows();
    const auto b = static_cast<Index>(lv.cocycles.size());
    lv.lattice.resize(rows, b);
    lv.corrections.resize(k > 0 ? level(k - 1).mass.rows() : 0, b);
    double lap = 0;
    double drift = 0;
    for (Index i = 0; i < b; ++i) {
      const Eigen::VectorXd hat = to_real(lv.cocycles[static_cast<std::size_t>(i)]).values;
      Eigen::VectorXd theta = hat;
      if (k > 0) {
        const Level& lo = level(k - 1);
        const Eigen::VectorXd a = exact_potential(k, hat);
        lv.corrections.col(i) = a;
        theta -= lo.d * a;
      }
      lv.lattice.col(i) = theta;
      const double tn = norm(k, theta);
      lap = std::max(lap, relative(norm(k, laplacian(k, theta)), lv.report.max_eigenvalue * tn));
      drift = std::max(drift, relative(norm(k, theta - harmonic_projection(k, hat)), tn));
    }
    lv.report.laplacian_residual = lap;
    lv.report.lattice_residual = drift;
    if (!(lap <= 1e-8) || !(drift <= 1e-8)) {
      throw Error(ErrorCode::SolverDiverged,
                  fmt::format("degree {}: integral lattice is not harmonic (Laplacian {:.3e}, projection {:.3e})", k,
                              lap, drift));
    }
  });
  return lv.lattice;
}

const Eigen::MatrixXd& HodgeStructure::lattice_corrections(int k) const {
  integral_lattice(k);
  return level(k).corrections;
}

const DegreeReport& HodgeStructure::report(int k) const {
  build_harmonic(k);
  integral_lattice(k);
  return level(k).report;
}

HodgeStructure build_hodge(const SimplicialComplex& k, const Topology& topology, const HodgeOptions& options) {
  HodgeStructure h(k, topology, options);
  std::vector<int> degrees = options.degrees;
  if (degrees.empty()) {
    for (int d = 0; d <= k.dimension(); ++d) degrees.push_back(d);
  }
  if (options.profile == SolverProfile::Fast) {
    std::vector<std::future<void>> jobs;
    for (int d : degrees) {
      jobs.push_back(std::async(std::launch::async, [&h, d] { h.report(d); }));
    }
    for (auto& j : jobs) j.get();
  } else {
    for (int d : degrees) h.report(d);
  }
  return h;
}

}  // namespace gerbe
