#include "commands.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gerbe/abel.hpp"
#include "gerbe/error.hpp"
#include "gerbe/generators.hpp"
#include "gerbe/homology.hpp"
#include "gerbe/mesh_io.hpp"
#include "gerbe/moduli.hpp"

namespace gerbe::cli {

using nlohmann::ordered_json;

namespace {

ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

ordered_json integer(const Integer& x) {
  try {
    return x.to_int64();
  } catch (const Error&) {
    return x.str();
  }
}

ordered_json integers(const std::vector<Integer>& xs) {
  ordered_json a = ordered_json::array();
  for (const auto& x : xs) a.push_back(integer(x));
  return a;
}

ordered_json vector(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

ordered_json matrix(const Eigen::MatrixXd& m) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vector(m.row(i).transpose()));
  return a;
}

ordered_json classes(const GroupCoordinates& c) { return {{"free", integers(c.free)}, {"torsion", integers(c.torsion)}}; }

ordered_json chain_terms(const SimplicialComplex& k, const Chain& c) {
  ordered_json terms = ordered_json::array();
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    if (c.coeffs[i] != 0) terms.push_back(ordered_json::array({k.simplex(c.degree, i), c.coeffs[i]}));
  }
  return {{"degree", c.degree}, {"terms", std::move(terms)}};
}

ordered_json torus(const TorusPoint& p) {
  ordered_json a = ordered_json::array();
  for (double x : p.coords) a.push_back(number(x));
  return a;
}

int require_degree(const SessionConfig& c, int lo, int hi, const char* what) {
  if (!c.degree) throw Error(ErrorCode::InvalidInput, fmt::format("{} needs --degree", what));
  if (*c.degree < lo || *c.degree > hi) {
    throw Error(ErrorCode::DegreeOutOfRange, fmt::format("--degree {} outside {}..{}", *c.degree, lo, hi));
  }
  return *c.degree;
}

std::vector<int> degree_range(const SessionConfig& c, int lo, int hi) {
  if (c.degree) return {require_degree(c, lo, hi, "")};
  std::vector<int> out;
  for (int k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

HodgeStructure make_hodge(const SessionConfig& c, const SimplicialComplex& k, const Topology& t,
                          std::vector<int> degrees) {
  HodgeOptions o = c.hodge_options();
  std::erase_if(degrees, [&](int d) { return d < 0 || d > k.dimension(); });
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  o.degrees = std::move(degrees);
  return build_hodge(k, t, o);
}

ordered_json complex_summary(const SimplicialComplex& k) {
  ordered_json counts = ordered_json::array();
  for (int d = 0; d <= k.dimension(); ++d) counts.push_back(k.count(d));
  return {{"dimension", k.dimension()},
          {"simplices", std::move(counts)},
          {"euler_characteristic", k.euler_characteristic()},
          {"volume", k.total_volume()}};
}

// --- generate ---------------------------------------------------------------

Outcome cmd_generate(const SessionConfig& c) {
  MeshSource src = c.mesh;
  if (!c.mode.empty()) src.generator = c.mode;
  src.path.clear();
  const SimplicialComplex k = load_complex(src);
  const MeshData mesh = k.to_mesh_data();
  Outcome out;
  if (c.output.empty()) {
    out.raw = serialize_mesh(mesh);
    return out;
  }
  write_mesh(c.output, mesh);
  out.body["generator"] = src.generator;
  out.body["path"] = c.output;
  out.body["vertices"] = mesh.vertices.size();
  out.body["top_simplices"] = mesh.top_simplices.size();
  out.body["complex"] = complex_summary(k);
  return out;
}

// --- report -----------------------------------------------------------------

Outcome report_homology(const SessionConfig& c, const SimplicialComplex& k) {
  const Topology t(k);
  Outcome out;
  out.body["complex"] = complex_summary(k);
  ordered_json degrees = ordered_json::array();
  ordered_json betti = ordered_json::array();
  for (int d : degree_range(c, 0, k.dimension())) {
    const HomologyData& h = t.homology(d);
    degrees.push_back({{"degree", d}, {"betti", h.betti()}, {"torsion", integers(h.torsion())}});
    betti.push_back(h.betti());
  }
  out.body["betti"] = std::move(betti);
  out.body["homology"] = std::move(degrees);
  return out;
}

Outcome report_hodge(const SessionConfig& c, const SimplicialComplex& k) {
  const Topology t(k);
  const std::vector<int> degrees = degree_range(c, 0, k.dimension());
  const HodgeStructure h = make_hodge(c, k, t, degrees);
  Outcome out;
  out.body["complex"] = complex_summary(k);
  out.body["mass"] = std::string(to_string(c.mass));
  out.body["profile"] = std::string(to_string(c.profile));
  out.body["rank_gap"] = c.rank_gap;
  ordered_json reports = ordered_json::array();
  for (int d : degrees) {
    const DegreeReport& r = h.report(d);
    reports.push_back({{"degree", r.degree},
                       {"simplices", r.simplices},
                       {"betti", r.betti},
                       {"harmonic_dimension", r.harmonic_dimension},
                       {"mass_min_eigenvalue", number(r.mass_min_eigenvalue)},
                       {"mass_max_eigenvalue", number(r.mass_max_eigenvalue)},
                       {"kernel_eigenvalue", number(r.kernel_eigenvalue)},
                       {"first_nonzero_eigenvalue", number(r.first_nonzero_eigenvalue)},
                       {"max_eigenvalue", number(r.max_eigenvalue)},
                       {"gap_ratio", number(r.gap_ratio)},
                       {"adjointness_error", number(r.adjointness_error)},
                       {"laplacian_residual", number(r.laplacian_residual)},
                       {"lattice_residual", number(r.lattice_residual)}});
  }
  out.body["degrees"] = std::move(reports);
  return out;
}

Outcome report_periods(const SessionConfig& c, const SimplicialComplex& k) {
  const Topology t(k);
  const int n = k.dimension();
  std::vector<int> degrees = degree_range(c, 0, n);
  if (!c.degree) std::erase_if(degrees, [&](int d) { return d == 0 || d == n || t.homology(d).betti() == 0; });
  std::vector<int> needed = degrees;
  for (int d : degrees) needed.push_back(n - d);
  const HodgeStructure h = make_hodge(c, k, t, needed);
  Outcome out;
  ordered_json checks = ordered_json::array();
  for (int d : degrees) {
    const PeriodCheck p = period_matrix_check(h, d);
    const IntMatrix pairing = pairing_matrix(t, d);
    checks.push_back({{"degree", d},
                      {"pairing_determinant", integer(pairing.rows() ? determinant(pairing) : Integer(1))},
                      {"max_error", number(p.max_error)},
                      {"identity", p.identity},
                      {"matrix", matrix(p.matrix)}});
    if (!p.identity) out.exit_code = kInvariant;
  }
  out.body["periods"] = std::move(checks);
  return out;
}

// --- abel -------------------------------------------------------------------

Chain read_required_chain(const SimplicialComplex& k, const std::string& path, const char* flag) {
  if (path.empty()) throw Error(ErrorCode::InvalidInput, fmt::format("missing {}", flag));
  return read_chain(k, path);
}

ordered_json jacobi_json(const HodgeStructure& h, const Chain& gamma) {
  const JacobiVector j = jacobi_vector(h, gamma);
  ordered_json fractional = ordered_json::array();
  for (Eigen::Index i = 0; i < j.components.size(); ++i) fractional.push_back(number(fractional_part(j.components(i))));
  return {{"components", vector(j.components)},
          {"fractional", std::move(fractional)},
          {"integer_part", integers(j.integer_part)},
          {"point", torus(jacobi_point(h, gamma))},
          {"identity_error", number(j.identity_error)}};
}

void certificate(Outcome& out, const HodgeStructure& h, const Chain& z, const LinearEquivalence& v) {
  const SimplicialComplex& k = h.complex();
  out.body["trivial"] = v.trivial;
  out.body["reason"] = v.reason;
  out.body["homology"] = classes(v.homology);
  if (v.bounding_chain) out.body["bounding_chain"] = chain_terms(k, *v.bounding_chain);
  if (v.jacobi) {
    out.body["jacobi"] = jacobi_json(h, *v.bounding_chain);
    ordered_json off = ordered_json::array();
    for (std::size_t i : v.offending) off.push_back(i);
    out.body["offending"] = std::move(off);
  }
  const bool torsion_only = std::all_of(v.homology.free.begin(), v.homology.free.end(),
                                        [](const Integer& x) { return x == 0; });
  if (torsion_only && !v.homology.is_zero()) {
    const TorsionDiagnostic t = torsion_diagnostic(h, z);
    ordered_json diag = {{"order", integer(t.order)}};
    if (t.point) diag["point"] = torus(*t.point);
    out.body["torsion"] = std::move(diag);
  }
  out.exit_code = v.trivial ? kOk : kNegative;
}

Outcome cmd_abel(const SessionConfig& c, const SimplicialComplex& k) {
  const Topology t(k);
  const int n = k.dimension();
  Outcome out;
  out.body["mode"] = c.mode;
  if (c.mode != "jacobi") out.body["tol"] = c.tol;
  if (c.mode == "check") {
    const Chain z = read_required_chain(k, c.cycle, "--cycle");
    const HodgeStructure h = make_hodge(c, k, t, {z.degree, z.degree + 1, n - z.degree - 1});
    std::optional<Chain> gamma;
    if (!c.chain.empty()) gamma = read_chain(k, c.chain);
    certificate(out, h, z, is_linearly_trivial(h, z, gamma, c.tol));
  } else if (c.mode == "equiv") {
    const Chain z1 = read_required_chain(k, c.cycle, "--cycle");
    const Chain z2 = read_required_chain(k, c.cycle2, "--cycle2");
    if (z1.degree != z2.degree) throw Error(ErrorCode::InvalidInput, "cycles have different degrees");
    const HodgeStructure h = make_hodge(c, k, t, {z1.degree, z1.degree + 1, n - z1.degree - 1});
    certificate(out, h, z1 - z2, lin_equiv(h, z1, z2, c.tol));
    out.body["equivalent"] = out.exit_code == kOk;
  } else if (c.mode == "jacobi") {
    Chain gamma;
    if (!c.chain.empty()) {
      gamma = read_chain(k, c.chain);
    } else {
      const Chain z = read_required_chain(k, c.cycle, "--chain or --cycle");
      gamma = find_bounding_chain(t, z);
    }
    const HodgeStructure h = make_hodge(c, k, t, {gamma.degree, n - gamma.degree});
    out.body["chain"] = chain_terms(k, gamma);
    out.body["jacobi"] = jacobi_json(h, gamma);
    const PicardRep rep = picard_rep(h, gamma);
    out.body["picard"] = {{"point", torus(picard_point(h, rep))}, {"pairing_error", number(rep.pairing_error)}};
  } else {
    throw Error(ErrorCode::InvalidInput, "abel mode must be check | jacobi | equiv");
  }
  return out;
}

// --- scan -------------------------------------------------------------------

Outcome cmd_scan(const SessionConfig& c, const SimplicialComplex& k) {
  const Topology t(k);
  const int d = c.degree.value_or(0);
  if (d < 0 || d >= k.dimension()) {
    throw Error(ErrorCode::DegreeOutOfRange, fmt::format("scan degree {} outside 0..{}", d, k.dimension() - 1));
  }
  const HodgeStructure h = make_hodge(c, k, t, {d + 1});
  ScanOptions o;
  o.budget = c.budget;
  o.seed = c.seed;
  const ScanReport r = jacobi_scan(h, d, o);
  Outcome out;
  out.body["degree"] = r.degree;
  out.body["torus_dimension"] = r.torus_dimension;
  out.body["samples"] = r.samples;
  out.body["seed"] = r.seed;
  out.body["covering_radius"] = number(r.covering_radius);
  out.body["closure_rational"] = r.closure_rational;
  out.body["closure_denominator"] = r.closure_denominator;
  out.body["closure_order"] = integer(r.closure_order);
  out.body["closure_covering_radius"] = number(r.closure_covering_radius);
  out.body["histograms"] = r.histograms;
  return out;
}

void render(std::string& s, const ordered_json& v, int indent);

std::string scalar(const ordered_json& v) {
  if (v.is_number_float()) return fmt::format("{}", v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
    return s + "]";
  }
  return v.dump();
}

// Scalars and arrays of scalars fit on one line.
bool flat(const ordered_json& v) {
  if (v.is_object()) return false;
  if (!v.is_array()) return true;
  return std::none_of(v.begin(), v.end(), [](const ordered_json& e) { return e.is_object() || e.is_array(); });
}

void render(std::string& s, const ordered_json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [key, val] : v.items()) {
      if (flat(val)) {
        s += fmt::format("{}{}: {}\n", pad, key, scalar(val));
      } else {
        s += fmt::format("{}{}:\n", pad, key);
        render(s, val, indent + 2);
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (e.is_object()) {
        s += pad + "-\n";
        render(s, e, indent + 2);
      } else {
        s += fmt::format("{}{}\n", pad, scalar(e));
      }
    }
  } else {
    s += pad + scalar(v) + "\n";
  }
}

}  // namespace

SimplicialComplex load_complex(const MeshSource& s) {
  if (!s.path.empty()) return build_complex(read_mesh(s.path));
  if (s.generator == "torus") return generate_flat_torus(s.dim, s.res.value_or(4));
  if (s.generator == "genus") return generate_genus_surface(s.genus, s.res.value_or(0));
  if (s.generator == "sphere") return generate_sphere(s.dim);
  if (s.generator == "rp3") return generate_projective_space(s.res.value_or(2));
  if (s.generator.empty()) throw Error(ErrorCode::InvalidInput, "no mesh: pass --mesh FILE or --generator NAME");
  throw Error(ErrorCode::InvalidInput, "unknown generator '" + s.generator + "' (torus | genus | sphere | rp3)");
}

Outcome run(const SessionConfig& c) {
  if (c.command == "generate") return cmd_generate(c);
  if (c.command != "report" && c.command != "abel" && c.command != "scan") {
    throw Error(ErrorCode::InvalidInput, "no command given (generate | report | abel | scan)");
  }
  const SimplicialComplex k = load_complex(c.mesh);
  if (c.command == "abel") return cmd_abel(c, k);
  if (c.command == "scan") return cmd_scan(c, k);
  if (c.mode == "homology") return report_homology(c, k);
  if (c.mode == "hodge") return report_hodge(c, k);
  if (c.mode == "periods") return report_periods(c, k);
  throw Error(ErrorCode::InvalidInput, "report kind must be homology | hodge | periods");
}

std::string render_text(const ordered_json& body) {
  std::string s;
  render(s, body, 0);
  return s;
}

}  // namespace gerbe::cli
