#include "cgolab/scenarios.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "cgolab/cauchy.hpp"
#include "cgolab/cgo.hpp"
#include "cgolab/errors.hpp"
#include "cgolab/fields.hpp"
#include "cgolab/forward.hpp"
#include "cgolab/gauge.hpp"
#include "cgolab/kernel_systems.hpp"
#include "cgolab/stationary_phase.hpp"

namespace cgolab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Per-check RNG stream: FNV-1a of the id mixed with the config seed.
std::mt19937_64 rng_for(const Config& cfg, const std::string& id) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : id) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return std::mt19937_64(cfg.seed() ^ h);
}

std::string res_key(const std::string& prefix, int nr, int nt) {
  return prefix + "_" + std::to_string(nr) + "x" + std::to_string(nt);
}

void decide(Record& r, double value, double threshold, const std::string& relation,
            bool extra = true) {
  r.value = value;
  r.threshold = threshold;
  r.relation = relation;
  const bool cmp = relation == "<=" ? value <= threshold : value >= threshold;
  r.pass = std::isfinite(value) && cmp && extra;
}

// Random quadratic matrix polynomial with sup norm `sup` on the unit disk.
Field<CMat> sup_scaled_matrix(int n, double sup, std::mt19937_64& rng) {
  static const Domain probe = Domain::build(DomainKind::Disk, 16, 64);
  auto terms = random_matrix_terms(n, 2, rng);
  const double s = sup_norm(matrix_zpoly(n, terms), probe.points());
  for (auto& t : terms) t.c *= sup / s;
  return matrix_zpoly(n, terms);
}

// Random quadratic coefficients with entries uniform in size * unit square.
Triple raw_triple(int n, double size, std::mt19937_64& rng) {
  auto make = [&] {
    auto terms = random_matrix_terms(n, 2, rng);
    for (auto& t : terms) t.c *= size;
    return matrix_zpoly(n, terms);
  };
  Triple t;
  t.n = n;
  t.a = make();
  t.b = make();
  t.q = make();
  return t;
}

CMat random_matrix(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = cd{u(rng), u(rng)};
  }
  return m;
}

CVec random_unit_vector(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = cd{u(rng), u(rng)};
  return v / v.norm();
}

std::vector<cd> phase_coeffs(const Config& cfg, const std::string& section) {
  std::vector<cd> c;
  for (double x : cfg.numbers(section, "phase")) c.emplace_back(x, 0.0);
  return c;
}

// ---------------------------------------------------------------------------

CheckResult cauchy_inversion(const Config& cfg) {
  const std::string s = "cauchy_inversion";
  CheckResult out;
  Table t{"cauchy_inversion", {"n_r", "n_theta", "error"}, {}};
  const auto t0 = Clock::now();
  std::vector<double> err;
  for (auto [nr, nt] : cfg.resolutions(s, "resolutions")) {
    const Domain d = Domain::build(DomainKind::Disk, nr, nt);
    const CauchyTransform ct(d);
    const Stencils st = build_stencils(d);
    const GridField g = d.sample(exp_cos_field());
    const GridField r = st.dzbar * ct.dzbar_inv(g) - g;
    err.push_back(max_abs_rows(r, d.nodes_at_distance(cfg.number(s, "interior_distance"))));
    t.rows.push_back({double(nr), double(nt), err.back()});
    out.record.metrics[res_key("error", nr, nt)] = err.back();
  }
  const double runtime = seconds_since(t0);
  bool monotone = true;
  for (std::size_t i = 1; i < err.size(); ++i) monotone = monotone && err[i] < err[i - 1];
  out.record.metrics["runtime_s"] = runtime;
  out.record.metrics["monotone"] = monotone;
  decide(out.record, err.back(), cfg.number(s, "final_max"), "<=",
         monotone && runtime <= cfg.number(s, "runtime_max_s"));
  out.record.note = "finest-grid error; also requires strict decrease and the runtime budget";
  out.tables.push_back(std::move(t));
  return out;
}

CheckResult closed_form(const Config& cfg) {
  const std::string s = "closed_form";
  CheckResult out;
  const int n = cfg.integer(s, "resolution");
  const Domain d = Domain::build(DomainKind::Disk, n, n);
  const CauchyTransform ct(d);
  const Stencils st = build_stencils(d);
  const GridField h = ct.dzbar_inv(GridField::Ones(d.num_nodes(), 1));
  const auto rows = d.nodes_at_distance(cfg.number(s, "interior_distance"));
  double err = 0.0, scale = 0.0;
  for (int node : rows) {
    const cd zb = std::conj(d.point(node).z());
    err = std::max(err, std::abs(h(node, 0) - zb));
    scale = std::max(scale, std::abs(zb));
  }
  // Independent oracles: ray quadrature of the weight integral and
  // differentiation of the result.
  double rays = 0.0;
  for (Point p : {Point{0.0, 0.0}, Point{0.3, -0.2}, Point{-0.55, 0.61}, Point{0.8, 0.1}}) {
    rays = std::max(rays, std::abs(cauchy_weight_integral_by_rays(d, p) - std::conj(p.z())));
  }
  const GridField dh = st.dzbar * h - GridField::Ones(d.num_nodes(), 1);
  out.record.metrics["ray_quadrature_error"] = rays;
  out.record.metrics["derivative_residual"] = max_abs_rows(dh, rows);
  decide(out.record, err / scale, cfg.number(s, "max_relative"), "<=");
  out.record.note = "relative max error of dzbar^{-1}(1) against conj(z)";
  return out;
}

CheckResult operator_identities(const Config& cfg) {
  const std::string s = "operator_identities";
  CheckResult out;
  auto rng = rng_for(cfg, "C3");
  const int n = cfg.integer(s, "n");
  const double sup = cfg.number(s, "coefficient_sup");
  const Field<CMat> a = sup_scaled_matrix(n, sup, rng);
  const Field<CMat> b = sup_scaled_matrix(n, sup, rng);
  const CVec e = random_unit_vector(n, rng);
  const Field<CVec> f_field = scaled_vector(exp_field(zpoly({{1, 0, 0.4}, {0, 1, cd{0.0, 0.3}}})), e);
  Table t{"operator_identities", {"n_r", "n_theta", "p", "t", "p_adjoint", "t_adjoint"}, {}};
  std::vector<std::array<double, 4>> res;
  for (auto [nr, nt] : cfg.resolutions(s, "resolutions")) {
    const Domain d = Domain::build(DomainKind::Disk, nr, nt);
    const CauchyTransform ct(d);
    const Stencils st = build_stencils(d);
    const auto p = solve_fundamental(ct, st, a, n, FundamentalKind::Dzbar);
    const auto c = solve_fundamental(ct, st, b, n, FundamentalKind::Dz);
    const GridField av = d.sample(a, n);
    const GridField bv = d.sample(b, n);
    const GridField f = d.sample(f_field, n);
    const auto rows = d.nodes_at_distance(cfg.number(s, "interior_distance"));
    auto rel = [&](const GridField& x) { return max_abs_rows(x - f, rows) / max_abs_rows(f, rows); };
    res.push_back({rel(first_order(st, Wirtinger::Dzbar, 1.0, av, n, p_operator(ct, p, f))),
                   rel(first_order(st, Wirtinger::Dz, 1.0, bv, n, t_operator(ct, c, f))),
                   rel(first_order(st, Wirtinger::Dz, -1.0, mat_adjoint(av, n), n, p_adjoint(ct, p, f))),
                   rel(first_order(st, Wirtinger::Dzbar, -1.0, mat_adjoint(bv, n), n, t_adjoint(ct, c, f)))});
    t.rows.push_back({double(nr), double(nt), res.back()[0], res.back()[1], res.back()[2], res.back()[3]});
  }
  bool improving = true;
  for (std::size_t i = 1; i < res.size(); ++i) {
    for (int k = 0; k < 4; ++k) improving = improving && res[i][k] < res[i - 1][k];
  }
  const char* names[4] = {"p", "t", "p_adjoint", "t_adjoint"};
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) {
    out.record.metrics[names[k]] = res.back()[k];
    worst = std::max(worst, res.back()[k]);
  }
  out.record.metrics["improving"] = improving;
  decide(out.record, worst, cfg.number(s, "max_relative"), "<=", improving);
  out.record.note = "worst of the four relative residuals on the finest grid; all must improve";
  out.tables.push_back(std::move(t));
  return out;
}

CheckResult decay(const Config& cfg) {
  const std::string s = "decay";
  CheckResult out;
  auto rng = rng_for(cfg, "C4");
  const Domain d = Domain::build(DomainKind::HalfDisk, cfg.integer(s, "n_r"), cfg.integer(s, "n_theta"));
  const Stencils st = build_stencils(d);
  const CauchyTransform ct(d);
  const auto phase = HolomorphicPhase::make(phase_coeffs(cfg, s), d);

  CMat b = random_matrix(2, rng);
  b *= cfg.number(s, "b_sup") / b.operatorNorm();
  const auto c = fundamental_from_field(d, st, constant_fundamental_field(b, FundamentalKind::Dz),
                                        constant_field(b), 2, FundamentalKind::Dz);

  const BoundaryCutoff cut = make_boundary_cutoff(d, phase, cfg.number(s, "cutoff_inner"),
                                                  cfg.number(s, "cutoff_width"));
  // q vanishes to the configured order at every critical point.
  Field<cd> q = zpoly({{0, 0, 1.0}, {0, 1, 0.5}});
  for (cd zc : phase.critical_points()) {
    for (int k = 0; k < cfg.integer(s, "q_order"); ++k) q = q * zpoly({{1, 0, 1.0}, {0, 0, -zc}});
  }
  const GridField g = d.sample(scaled_vector(cut.e1 * q, random_unit_vector(2, rng)), 2);

  const int rs = cfg.integer(s, "ring_stride");
  const int ss = cfg.integer(s, "slot_stride");
  std::vector<int> targets;
  for (int node : nodes_beyond(d, cut, cfg.number(s, "epsilon"))) {
    const int ring = d.ring_of(node);
    const bool ring_ok = node == d.origin() || ring % rs == 0 || ring == d.n_r() + 1;
    if (ring_ok && (node == d.origin() || d.slot_of(node) % ss == 0)) targets.push_back(node);
  }
  if (targets.empty()) throw DomainError("G_eps has no sampled nodes");

  Table t{"decay", {"tau", "sup", "tau2_sup"}, {}};
  std::vector<double> scaled;
  for (double tau : cfg.numbers(s, "taus")) {
    const GridField r = conjugated_solve(ct, c, phase, tau, g, targets);
    double sup = 0.0;
    for (Eigen::Index i = 0; i < r.rows(); ++i) sup = std::max(sup, r.row(i).norm());
    scaled.push_back(tau * tau * sup);
    t.rows.push_back({tau, sup, scaled.back()});
  }
  double worst = 0.0;
  for (std::size_t i = 1; i < scaled.size(); ++i) worst = std::max(worst, scaled[i] / scaled[i - 1]);
  out.record.metrics["targets"] = double(targets.size());
  out.record.metrics["fundamental_residual"] = c.residual_norm;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    out.record.metrics["tau2_sup_" + std::to_string(int(t.rows[i][0]))] = scaled[i];
  }
  decide(out.record, worst, 1.0 + cfg.number(s, "noise_band"), "<=");
  out.record.note = "largest ratio of consecutive tau^2 sup values";
  out.tables.push_back(std::move(t));
  return out;
}

CheckResult stationary_phase(const Config& cfg) {
  const std::string s = "stationary_phase";
  CheckResult out;
  const auto t0 = Clock::now();
  const Domain d = Domain::build(DomainKind::Disk, 16, 64);
  const auto phase = HolomorphicPhase::make({0.0, 0.0, 1.0}, d);
  const Field<cd> one = constant_field<cd>(1.0);
  const Calibration cal = calibrate(d, phase, one, cfg.number(s, "calibration_tau"),
                                    cfg.numbers(s, "kappa_candidates"));
  const auto taus = cfg.numbers(s, "taus");
  const AsymptoticReport rep = verify_expansion(d, phase, one, taus, cal.kappa);

  // Amplitude vanishing to second order at the critical point, compactly supported.
  const cd zc = phase.critical_points().at(0);
  const Field<cd> u = zpoly({{1, 1, 1.0}, {1, 0, -std::conj(zc)}, {0, 1, -zc}, {0, 0, std::norm(zc)}}) *
                      bump({zc.real(), zc.imag()}, cfg.number(s, "vanishing_radius"));
  bool decreasing = true;
  double prev = INFINITY;
  Table t{"stationary_phase", {"tau", "value", "model", "residual"}, {}};
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double v = taus[i] * std::abs(direct_integral(d, phase, taus[i], u));
    decreasing = decreasing && v < prev;
    prev = v;
    out.record.metrics["tau_direct_vanishing_" + std::to_string(int(taus[i]))] = v;
    t.rows.push_back({taus[i], std::abs(rep.direct[i]), std::abs(rep.model[i]), rep.residual[i]});
  }
  const double runtime = seconds_since(t0);
  out.record.metrics["kappa"] = cal.kappa;
  for (std::size_t k = 0; k < cal.candidates.size(); ++k) {
    out.record.metrics["calibration_residual_" + std::to_string(int(cal.candidates[k]))] =
        cal.residuals[k];
  }
  out.record.metrics["vanishing_decreasing"] = decreasing;
  out.record.metrics["runtime_s"] = runtime;
  decide(out.record, rep.fitted_slope, cfg.number(s, "max_slope"), "<=",
         decreasing && runtime <= cfg.number(s, "runtime_max_s"));
  out.record.note = "log-log slope of |direct - model| after calibration; also tau |direct| "
                    "decreasing for the vanishing amplitude";
  out.tables.push_back(std::move(t));
  return out;
}

struct GaugeCase {
  Triple t1;
  GaugeField g;
  Triple t2;
  Field<CVec> v;
};

std::vector<GaugeCase> gauge_cases(const Config& cfg, const Domain& d) {
  const std::string s = "gauge";
  auto rng = rng_for(cfg, "gauge");
  const int n = cfg.integer(s, "n");
  std::vector<GaugeCase> cases;
  for (int k = 0; k < cfg.integer(s, "cases"); ++k) {
    GaugeCase c;
    c.t1 = raw_triple(n, cfg.number(s, "coefficient_size"), rng);
    c.g = make_gauge(d, n, random_matrix(n, rng), cfg.number(s, "amplitude"));
    c.t2 = transform_coefficients(c.t1, c.g);
    c.v = vector_zpoly(n, random_vector_terms(n, 3, rng));
    cases.push_back(std::move(c));
  }
  return cases;
}

CheckResult conjugation(const Config& cfg) {
  const std::string s = "gauge";
  CheckResult out;
  const Domain d = Domain::build(DomainKind::HalfDisk, cfg.integer(s, "n_r"), cfg.integer(s, "n_theta"));
  double worst = 0.0;
  int k = 0;
  for (const auto& c : gauge_cases(cfg, d)) {
    const double r = conjugation_residual(d, c.t1, c.t2, c.g, c.v);
    out.record.metrics["case_" + std::to_string(k++)] = r;
    worst = std::max(worst, r);
  }
  decide(out.record, worst, cfg.number(s, "max_residual"), "<=");
  out.record.note = "max |L2 v - Q^{-1} L1 (Q v)| over interior nodes and seeded cases";
  return out;
}

CheckResult boundary_recovery(const Config& cfg) {
  const std::string s = "gauge";
  CheckResult out;
  double be_max = 0.0, pde_max = 0.0;
  for (DomainKind kind : {DomainKind::Disk, DomainKind::HalfDisk}) {
    const Domain d = Domain::build(kind, cfg.integer(s, "n_r"), cfg.integer(s, "n_theta"));
    for (const auto& c : gauge_cases(cfg, d)) {
      const BoundaryEquality be = boundary_equality(d, c.t1, c.t2);
      be_max = std::max({be_max, be.a, be.b});
      pde_max = std::max(pde_max, gauge_pde_residual(d, c.t1.a, c.t2.a, c.g));
    }
  }
  out.record.metrics["boundary_equality"] = be_max;
  out.record.metrics["gauge_pde_residual"] = pde_max;
  decide(out.record, std::max(be_max, pde_max), cfg.number(s, "max_residual"), "<=");
  out.record.note = "max of |A1 - A2|, |B1 - B2| on Gamma-tilde and the gauge equation residual";
  return out;
}

// Relative DtN differences of a gauge pair on both domains over the
// configured resolutions; `adjoint` compares the adjoint operators instead.
struct DtnSchedule {
  bool pass = true;
  double worst_factor = INFINITY;
};

DtnSchedule dtn_schedule(const Config& cfg, bool adjoint, Record& rec, Table& table) {
  const std::string s = "dtn";
  auto rng = rng_for(cfg, "dtn");
  const Triple t1 = raw_triple(2, cfg.number("gauge", "coefficient_size"), rng);
  const CMat gs = random_matrix(2, rng);
  DtnSchedule out;
  for (DomainKind kind : {DomainKind::Disk, DomainKind::HalfDisk}) {
    std::vector<double> diff;
    for (auto [nr, nt] : cfg.resolutions(s, "resolutions")) {
      const Domain d = Domain::build(kind, nr, nt);
      const auto st = std::make_shared<const Stencils>(build_stencils(d));
      const GaugeField g = make_gauge(d, 2, gs, cfg.number("gauge", "amplitude"));
      const Triple t2 = transform_coefficients(t1, g);
      const BoundaryBasis basis = default_basis(d, cfg.integer(s, "basis_kmax"));
      diff.push_back(adjoint ? dtn_invariance(d, st, adjoint_triple(t1), adjoint_triple(t2), basis)
                             : dtn_invariance(d, st, t1, t2, basis));
      const std::string key = std::string(adjoint ? "adjoint_" : "") + to_string(kind);
      rec.metrics[res_key(key, nr, nt)] = diff.back();
      table.rows.push_back({double(kind == DomainKind::HalfDisk), double(nr), double(nt), diff.back()});
    }
    out.pass = out.pass && diff.front() <= cfg.number(s, "max_first");
    for (std::size_t i = 1; i < diff.size(); ++i) {
      out.worst_factor = std::min(out.worst_factor, diff[i - 1] / diff[i]);
    }
  }
  out.pass = out.pass && out.worst_factor >= cfg.number(s, "min_factor");
  return out;
}

CheckResult dtn_invariance_check(const Config& cfg) {
  CheckResult out;
  Table t{"dtn_invariance", {"half_disk", "n_r", "n_theta", "relative_difference"}, {}};
  const auto t0 = Clock::now();
  const DtnSchedule sch = dtn_schedule(cfg, false, out.record, t);
  const double runtime = seconds_since(t0);
  out.record.metrics["runtime_s"] = runtime;
  decide(out.record, sch.worst_factor, cfg.number("dtn", "min_factor"), ">=",
         sch.pass && runtime <= cfg.number("dtn", "runtime_max_s"));
  out.record.note = "smallest refinement factor over both domains; the coarse difference must "
                    "also be within max_first";
  out.tables.push_back(std::move(t));
  return out;
}

CheckResult harmonic_dtn(const Config& cfg) {
  const std::string s = "harmonic_dtn";
  CheckResult out;
  const Domain d = Domain::build(DomainKind::Disk, cfg.integer(s, "n_r"), cfg.integer(s, "n_theta"));
  const auto op = assemble(d, std::make_shared<const Stencils>(build_stencils(d)), zero_triple(1));
  const int kmax = cfg.integer(s, "kmax");
  const BoundaryBasis basis = trig_basis(kmax);
  const Eigen::MatrixXcd g = galerkin_matrix(d, dtn_map(op, basis), basis);
  double worst = 0.0, off = 0.0;
  Table t{"harmonic_dtn", {"k", "eigenvalue", "relative_error"}, {}};
  for (int k = -kmax; k <= kmax; ++k) {
    const int j = k + kmax;
    const double rel = k == 0 ? std::abs(g(j, j)) : std::abs(g(j, j) - double(std::abs(k))) / std::abs(k);
    if (k != 0) worst = std::max(worst, rel);
    for (int l = 0; l < g.cols(); ++l) {
      if (l != j) off = std::max(off, std::abs(g(l, j)) / std::max(1, std::abs(k)));
    }
    t.rows.push_back({double(k), g(j, j).real(), rel});
  }
  out.record.metrics["k0_abs"] = std::abs(g(kmax, kmax));
  out.record.metrics["max_offdiagonal_relative"] = off;
  out.record.metrics["boundary_nodes"] = double(trace_nodes(d).size());
  decide(out.record, worst, cfg.number(s, "max_relative"), "<=");
  out.record.note = "max over 0 < |k| <= kmax of |lambda_k - |k|| / |k|";
  out.tables.push_back(std::move(t));
  return out;
}

CheckResult adjoint_consistency(const Config& cfg) {
  const std::string s = "adjoint";
  CheckResult out;
  auto rng = rng_for(cfg, "C10");
  const Triple t = raw_triple(2, cfg.number("gauge", "coefficient_size"), rng);
  const Field<CVec> u = scaled_vector(bump({0.1, 0.1}, 0.6) * zpoly({{1, 0, 1.0}, {0, 0, 1.0}}),
                                      random_unit_vector(2, rng));
  const Field<CVec> v = scaled_vector(bump({-0.1, 0.2}, 0.6) * exp_cos_field(),
                                      random_unit_vector(2, rng));
  std::vector<double> res, hs;
  Table t_green{"green_identity", {"n_r", "n_theta", "residual"}, {}};
  for (auto [nr, nt] : cfg.resolutions(s, "resolutions")) {
    const Domain d = Domain::build(DomainKind::Disk, nr, nt);
    const auto op = assemble(d, std::make_shared<const Stencils>(build_stencils(d)), t);
    res.push_back(green_identity_residual(op, u, v));
    hs.push_back(d.h());
    t_green.rows.push_back({double(nr), double(nt), res.back()});
    out.record.metrics[res_key("green", nr, nt)] = res.back();
  }
  double order = INFINITY;
  for (std::size_t i = 1; i < res.size(); ++i) {
    order = std::min(order, std::log(res[i - 1] / res[i]) / std::log(hs[i - 1] / hs[i]));
  }
  // The finest-pair order is the measured order; earlier pairs are reported.
  const std::size_t m = res.size();
  const double measured = m >= 2 ? std::log(res[m - 2] / res[m - 1]) / std::log(hs[m - 2] / hs[m - 1]) : NAN;
  out.record.metrics["min_pair_order"] = order;

  Table t_dtn{"adjoint_dtn_invariance", {"half_disk", "n_r", "n_theta", "relative_difference"}, {}};
  const DtnSchedule sch = dtn_schedule(cfg, true, out.record, t_dtn);
  out.record.metrics["adjoint_dtn_worst_factor"] = sch.worst_factor;
  decide(out.record, measured, cfg.number(s, "min_order"), ">=",
         res.back() <= cfg.number(s, "max_final") && sch.pass);
  out.record.note = "measured order of Green's identity residual on the finest pair; adjoint "
                    "DtN maps follow the DtN schedule";
  out.tables.push_back(std::move(t_green));
  out.tables.push_back(std::move(t_dtn));
  return out;
}

CheckResult orthogonality(const Config& cfg) {
  const std::string s = "orthogonality";
  CheckResult out;
  auto rng = rng_for(cfg, "C11");
  const Domain d = Domain::build(DomainKind::Disk, cfg.integer(s, "n_r"), cfg.integer(s, "n_theta"));
  const auto st = std::make_shared<const Stencils>(build_stencils(d));
  const Triple t1 = raw_triple(2, cfg.number("gauge", "coefficient_size"), rng);
  const GaugeField g = make_gauge(d, 2, random_matrix(2, rng), cfg.number("gauge", "amplitude"));
  const Triple t2 = transform_coefficients(t1, g);
  Triple control = t1;
  control.q = t1.q + scaled_matrix(bump({0.1, 0.2}, 0.6), identity(2));

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto data = [&] {
    // Random trigonometric boundary data with |k| <= 3.
    std::vector<std::pair<int, CVec>> modes;
    for (int k = -3; k <= 3; ++k) {
      CVec c(2);
      c << cd{u(rng), u(rng)}, cd{u(rng), u(rng)};
      modes.emplace_back(k, c);
    }
    GridField f = GridField::Zero(d.num_nodes(), 2);
    for (int node = 0; node < d.num_nodes(); ++node) {
      if (!d.on_gamma_tilde(node)) continue;
      for (const auto& [k, c] : modes) f.row(node) += std::exp(cd{0.0, k * d.angle(node)}) * c.transpose();
    }
    return f;
  };
  double worst_level = 0.0, worst_gap = INFINITY;
  Table t{"orthogonality", {"choice", "equivalent", "level", "control"}, {}};
  for (int k = 0; k < cfg.integer(s, "choices"); ++k) {
    const GridField f = data();
    const GridField h = data();
    const OrthogonalityResult eq = orthogonality_residual(d, st, t1, t2, f, h);
    const OrthogonalityResult ne = orthogonality_residual(d, st, t1, control, f, h);
    worst_level = std::max(worst_level, eq.value / eq.level);
    worst_gap = std::min(worst_gap, ne.value / eq.value);
    t.rows.push_back({double(k), eq.value, eq.level, ne.value});
  }
  out.record.metrics["min_control_ratio"] = worst_gap;
  decide(out.record, worst_level, cfg.number(s, "level_factor"), "<=",
         worst_gap >= cfg.number(s, "control_factor"));
  out.record.note = "max residual / discretisation level for the equivalent pair; the control "
                    "must be at least control_factor times larger";
  out.tables.push_back(std::move(t));
  return out;
}

CheckResult cgo_sweep(const Config& cfg) {
  const std::string s = "cgo";
  CheckResult out;
  auto rng = rng_for(cfg, "C12");
  const Domain d = Domain::build(DomainKind::Disk, cfg.integer(s, "n_r"), cfg.integer(s, "n_theta"));
  const auto st = std::make_shared<const Stencils>(build_stencils(d));
  const CauchyTransform ct(d);
  const double sup = cfg.number(s, "coefficient_sup");
  Triple t;
  t.n = 2;
  t.a = sup_scaled_matrix(2, sup, rng);
  t.b = sup_scaled_matrix(2, sup, rng);
  t.q = sup_scaled_matrix(2, sup, rng);
  const auto p1 = solve_fundamental(ct, *st, t.a, 2, FundamentalKind::Dzbar);
  const auto c1 = solve_fundamental(ct, *st, t.b, 2, FundamentalKind::Dz);
  const Field<CVec> a_vec = vector_zpoly(2, {{0, 0, random_unit_vector(2, rng)},
                                             {1, 0, 0.3 * random_unit_vector(2, rng)}});
  const double dist = cfg.number(s, "interior_distance");
  const CgoAmplitudes amp = build_amplitudes(d, *st, p1, c1, t.a, t.b, a_vec, dist);
  const auto phase = HolomorphicPhase::make(phase_coeffs(cfg, s), d);
  const auto taus = cfg.numbers(s, "taus");
  const auto valid = residual_sweep(d, st, t, amp, phase, taus, dist);
  Triple bad = t;
  bad.a = t.a + constant_field<CMat>(cd{cfg.number(s, "corruption")} * identity(2));
  const auto corrupted = residual_sweep(d, st, bad, amp, phase, taus, dist);

  Table table{"cgo_sweep", {"tau", "rho", "rho_corrupted"}, {}};
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    lo = std::min(lo, valid[i].rho);
    hi = std::max(hi, valid[i].rho);
    table.rows.push_back({taus[i], valid[i].rho, corrupted[i].rho});
  }
  const double growth = corrupted.back().rho / corrupted.front().rho;
  out.record.metrics["corrupted_growth"] = growth;
  out.record.metrics["transport_residual"] = amp.transport_residual;
  out.record.metrics["transport_residual_tilde"] = amp.transport_residual_tilde;
  decide(out.record, (hi - lo) / lo, cfg.number(s, "max_variation"), "<=",
         growth >= cfg.number(s, "min_growth"));
  out.record.note = "(max - min) / min of rho over the sweep; the corrupted operator must grow "
                    "by min_growth";
  out.tables.push_back(std::move(table));
  return out;
}

using CheckFn = CheckResult (*)(const Config&);

struct CheckEntry {
  CheckInfo info;
  CheckFn fn;
};

const std::vector<CheckEntry>& registry() {
  static const std::vector<CheckEntry> r = {
      {{"C1", "cauchy_inversion", "verify-cauchy"}, cauchy_inversion},
      {{"C2", "closed_form_transform", "verify-cauchy"}, closed_form},
      {{"C3", "operator_identities", "verify-kernels"}, operator_identities},
      {{"C4", "conjugated_decay", "verify-kernels"}, decay},
      {{"C5", "stationary_phase", "verify-stationary-phase"}, stationary_phase},
      {{"C6", "conjugation_identity", "verify-gauge"}, conjugation},
      {{"C7", "boundary_recovery", "verify-gauge"}, boundary_recovery},
      {{"C8", "dtn_gauge_invariance", "verify-dtn"}, dtn_invariance_check},
      {{"C9", "harmonic_dtn", "verify-dtn"}, harmonic_dtn},
      {{"C10", "adjoint_consistency", "verify-dtn"}, adjoint_consistency},
      {{"C11", "orthogonality_identity", "verify-gauge"}, orthogonality},
      {{"C12", "cgo_transport_cancellation", "cgo-sweep"}, cgo_sweep},
  };
  return r;
}

}  // namespace

const std::vector<CheckInfo>& all_checks() {
  static const std::vector<CheckInfo> v = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return v;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> v = {
      "verify-cauchy", "verify-kernels", "verify-stationary-phase", "verify-gauge",
      "verify-dtn",    "cgo-sweep",      "full-suite"};
  return v;
}

std::vector<std::string> checks_for(const std::string& scenario) {
  std::vector<std::string> ids;
  for (const auto& e : registry()) {
    if (scenario == "full-suite" || e.info.scenario == scenario) ids.push_back(e.info.id);
  }
  if (ids.empty()) throw ConfigError("unknown scenario '" + scenario + "'");
  return ids;
}

CheckResult run_check(const std::string& id, const Config& cfg) {
  for (const auto& e : registry()) {
    if (e.info.id != id) continue;
    CheckResult r;
    try {
      r = e.fn(cfg);
    } catch (const std::exception& ex) {
      r = CheckResult{};
      r.record.value = NAN;
      r.record.threshold = NAN;
      r.record.pass = false;
      r.record.error = ex.what();
    }
    r.record.id = e.info.id;
    r.record.name = e.info.name;
    return r;
  }
  throw ConfigError("unknown check '" + id + "'");
}

Report run_scenario(const std::string& scenario, const Config& cfg) {
  const auto ids = checks_for(scenario);
  std::vector<CheckResult> results(ids.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ids.size(); i = next++) results[i] = run_check(ids[i], cfg);
  };
  const int jobs = std::min<int>(cfg.jobs(), static_cast<int>(ids.size()));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Report rep;
  rep.scenario = scenario;
  rep.config = cfg.tree();
  rep.environment = current_environment(cfg.jobs());
  for (auto& r : results) {
    rep.records.push_back(std::move(r.record));
    for (auto& t : r.tables) rep.tables.push_back(std::move(t));
  }
  return rep;
}

}  // namespace cgolab
