// Acceptance gate: one line per criterion, exit 0 iff all pass.
//
// Every tolerance is pinned here as a named constant; nothing is read from
// the environment or the command line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "spraywork/analysis.hpp"
#include "spraywork/catalog.hpp"
#include "spraywork/metrizability.hpp"
#include "spraywork/spencer.hpp"

namespace sw = spraywork;

namespace {

// --- pinned tolerances and budgets -----------------------------------------
constexpr double kTolExample = 1e-8;   // residuals of the worked family
constexpr double kTolFd = 1e-6;        // jet vs central finite differences
constexpr double kTolStructural = 1e-7;  // Euler / trace identities
constexpr double kTolJacobi = 1e-6;    // frame-bracket Jacobi identity
constexpr double kBudgetSigma3 = 60.0;   // seconds, per dimension
constexpr double kBudgetSpencer = 600.0;  // seconds, criterion 3 total
constexpr double kBudgetExample = 10.0;   // seconds, criterion 5 total
constexpr std::uint64_t kSeed = 90210;

int g_failures = 0;

void report(int id, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("criterion %d [%s] %s%s%s\n", id, pass ? "PASS" : "FAIL",
              what.c_str(), detail.empty() ? "" : ": ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// --- criterion 1: order-3 symbol rank for n = 2, 3, 4 ----------------------
void criterion1() {
  bool pass = true;
  std::string detail;
  for (int n : {2, 3, 4}) {
    auto t0 = std::chrono::steady_clock::now();
    sw::EigenParams par = sw::EigenParams::random(n, kSeed + n);
    int r = sw::rank_sigma3(n, par);
    double dt = seconds_since(t0);
    bool ok = (r == sw::rank_sigma3_formula(n)) && dt <= kBudgetSigma3;
    pass &= ok;
    detail += "n=" + std::to_string(n) + " rank=" + std::to_string(r) +
              " (expected " + std::to_string(sw::rank_sigma3_formula(n)) +
              ", " + std::to_string(dt) + "s) ";
  }
  report(1, pass, "rank of the order-3 symbol matches the closed form",
         detail);
}

// --- criterion 2: obstruction map exactness at order 3 ---------------------
void criterion2() {
  sw::EigenParams par = sw::EigenParams::random(3, kSeed);
  int r = sw::rank_sigma3(3, par);
  sw::TauResult t = sw::tau_check(3, par);
  bool pass = t.compose_zero && t.nullity == r;
  report(2, pass,
         "kernel of the obstruction map equals the order-3 symbol image",
         "nul=" + std::to_string(t.nullity) + " rank sigma3=" +
             std::to_string(r) + " compose_zero=" +
             (t.compose_zero ? "yes" : "no"));
}

// --- criterion 3: kernel dimension and Spencer cohomology ------------------
void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  sw::EigenParams par = sw::EigenParams::random(3, kSeed);
  bool pass = true;
  std::string detail;

  int g3 = sw::dim_g(3, 3, par);
  pass &= (g3 == 18);
  detail += "dim g3=" + std::to_string(g3) + " ";

  sw::SpencerResult h2 = sw::spencer_H(3, 2, par);
  detail += "H(2,2)=" + std::to_string(h2.H) + " ";
  pass &= (h2.H == sw::H22_formula(3));  // brute force agrees with (n-1)(n-2)/2

  for (int m : {3, 4, 5}) {
    sw::SpencerResult h = sw::spencer_H(3, m, par);
    bool ok = (h.H == 0) && (h.rank_d1 == sw::rank_d1_formula(m));
    pass &= ok;
    detail += "H(" + std::to_string(m) + ",2)=" + std::to_string(h.H) +
              " rank d1=" + std::to_string(h.rank_d1) + " ";
  }
  double dt = seconds_since(t0);
  pass &= dt <= kBudgetSpencer;
  detail += "(" + std::to_string(dt) + "s)";
  report(3, pass, "Spencer cohomology vanishes from order 3 on", detail);
}

// --- criterion 4: involutivity of the completed tableau --------------------
void criterion4() {
  sw::EigenParams par = sw::EigenParams::random(3, kSeed);
  const mpq_class f1(3, 2), f2(-2, 5);
  std::vector<int> order = sw::adapted_order(3);
  sw::CartanResult good = sw::cartan_test(3, 3, par, true, f1, f2, order);
  sw::CartanResult base = sw::cartan_test(3, 3, par, false, 0, 0, order);
  bool pass = good.pass && !base.pass;
  report(4, pass,
         "completed tableau passes the Cartan test, the base one fails",
         "completed: dim=" + std::to_string(good.dim_g_k1) + " sum=" +
             std::to_string(good.sum) + "; base: dim=" +
             std::to_string(base.dim_g_k1) + " sum=" +
             std::to_string(base.sum));
}

// --- criterion 5: worked triangular family ---------------------------------
void criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  const sw::SprayModel& model = sw::catalog_get("triangular-family").model;
  sw::Tolerances tol;
  tol.tol = kTolExample;

  sw::SampleSpec spec;
  spec.count = 24;
  spec.seed = kSeed;
  std::vector<sw::PointTM> pts = sw::sample_points(3, spec);

  bool pass = true;
  std::string detail;
  double worst = 0.0;
  for (const auto& u : pts) {
    sw::SprayGeometry G(model, u, 6);
    double scale = std::max(1.0, G.Phi0().cwiseAbs().maxCoeff());
    auto note = [&](const char* what, double r, double cap) {
      worst = std::max(worst, r / scale);
      if (r > cap * scale && pass) {
        pass = false;
        detail = std::string(what) + " residual " + std::to_string(r);
      }
    };
    note("Phi*y", G.residual_phi_y(), kTolExample);

    // triangular shape in coordinates: zero below the diagonal, zero bottom
    // row
    Eigen::MatrixXd P = G.Phi0();
    double tri = std::max({std::abs(P(1, 0)), std::abs(P(2, 0)),
                           std::abs(P(2, 1)), std::abs(P(2, 2))});
    note("triangular shape", tri, kTolExample);

    G.build_eigenframe(tol.tol_imag, tol.tol_sep);  // throws on collision
    double sep = std::abs(G.lambda0(0) - G.lambda0(1));
    if (sep <= tol.tol_sep && pass) {
      pass = false;
      detail = "eigenvalues not distinct";
    }

    // [v1, h2], [v2, h1], [h1, h2] all vanish for this family
    for (auto [a, b] : {std::pair{3, 1}, {4, 0}, {0, 1}}) {
      sw::FrameVec br = sw::bracket(G.frame(a), G.frame(b));
      double r = 0.0;
      for (const auto& c : br.comp) r = std::max(r, c.max_abs());
      note("frame bracket", r, kTolExample);
    }

    sw::ThirdOrderAnalysis T(G, tol);
    note("kappa/theta", T.kappa_theta_residual(), kTolExample);
    note("beta/gamma", T.beta_gamma_residual(), kTolExample);

    sw::SpanFit fit = sw::cond_phi_prime_span(G, tol);
    note("span fit", fit.residual, kTolExample);  // already relative to |Phi'|
  }

  sw::AnalysisConfig cfg;
  cfg.model = model;
  cfg.explicit_points = pts;
  cfg.sample.count = 0;
  cfg.tol = tol;
  sw::AnalysisResult res = sw::run_analysis(cfg);
  if (res.verdict.verdict != sw::Verdict::MetrizableIntegrable) {
    pass = false;
    detail = "verdict " + sw::to_string(res.verdict.verdict);
  }
  double dt = seconds_since(t0);
  if (dt > kBudgetExample) {
    pass = false;
    detail = "runtime " + std::to_string(dt) + "s";
  }
  if (pass)
    detail = std::to_string(pts.size()) + " points, worst residual " +
             std::to_string(worst) + ", verdict " +
             sw::to_string(res.verdict.verdict) + ", " + std::to_string(dt) +
             "s";
  report(5, pass, "worked triangular family satisfies every printed identity",
         detail);
}

// --- criterion 6: property suite -------------------------------------------
double central_diff(const sw::ExprPtr& e, sw::PointTM u, int var, double h) {
  auto& coord = var < u.n() ? u.x[var] : u.y[var - u.n()];
  const double c0 = coord;
  coord = c0 + h;
  double fp = sw::eval(e, u);
  coord = c0 - h;
  double fm = sw::eval(e, u);
  coord = c0;
  return (fp - fm) / (2.0 * h);
}

void criterion6() {
  bool pass = true;
  std::string detail;
  auto fail = [&](const std::string& why) {
    if (pass) detail = why;
    pass = false;
  };

  // jet coefficients vs central finite differences, across the catalog
  sw::SampleSpec spec;
  spec.count = 3;
  spec.seed = kSeed + 6;
  std::vector<sw::PointTM> pts = sw::sample_points(3, spec);
  for (const auto& entry : sw::catalog_entries()) {
    if (entry.model.n != 3) continue;
    for (const auto& e : entry.model.coeffs)
      for (const auto& u : pts)
        for (int var = 0; var < 6; ++var) {
          sw::Jet j = sw::eval_jet(e, u, 2);
          std::vector<int> alpha(6, 0);
          alpha[var] = 1;
          double jd = j.derivative(alpha);
          double fd = central_diff(e, u, var, 1e-6);
          if (std::abs(jd - fd) > kTolFd * (1.0 + std::abs(fd)))
            fail("finite-difference mismatch in " + entry.name);
        }
  }

  // Euler homogeneity of the induced data and the trace identity
  const sw::SprayModel& model = sw::catalog_get("triangular-family").model;
  for (const auto& u : pts) {
    sw::SprayGeometry G(model, u, 5);
    sw::FrameVec C = G.liouville_field();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        sw::Jet en = sw::lie(C, G.N(i, j)) - G.N(i, j);
        sw::Jet ep = sw::lie(C, G.Phi(i, j)) - 2.0 * G.Phi(i, j);
        double scale = 1.0 + G.N(i, j).max_abs() + G.Phi(i, j).max_abs();
        if (en.max_abs() > kTolStructural * scale)
          fail("connection not 1-homogeneous");
        if (ep.max_abs() > kTolStructural * scale)
          fail("Jacobi endomorphism not 2-homogeneous");
      }
    if (G.residual_curvature_trace() > kTolStructural)
      fail("curvature trace does not reproduce the Jacobi endomorphism");

    // Jacobi identity of frame brackets
    sw::SprayGeometry G6(model, u, 6);
    G6.build_eigenframe(1e-8, 1e-6);
    const int triples[][3] = {{0, 1, 3}, {0, 4, 2}, {1, 3, 5}};
    for (const auto& t : triples) {
      const sw::FrameVec &A = G6.frame(t[0]), &B = G6.frame(t[1]),
                         &Cc = G6.frame(t[2]);
      sw::FrameVec sum = sw::bracket(sw::bracket(A, B), Cc) +
                         sw::bracket(sw::bracket(B, Cc), A) +
                         sw::bracket(sw::bracket(Cc, A), B);
      double r = 0.0, s = 1.0;
      for (const auto& c : sum.comp) r = std::max(r, c.max_abs());
      for (const auto& W : {A, B, Cc})
        for (const auto& c : W.comp) s = std::max(s, c.max_abs());
      if (r > kTolJacobi * s * s) fail("Jacobi identity violated");
    }
  }

  // boolean verdict invariance: velocity scaling rescales eigenvalues and
  // eigenvectors, coordinate relabeling permutes the frame; neither may
  // change any boolean outcome
  sw::Tolerances tol;
  for (const char* name : {"triangular-family", "triangular-perturbed"}) {
    const sw::SprayModel& m = sw::catalog_get(name).model;
    const sw::PointTM u = pts.front();
    sw::PointConditionReport a = sw::analyze_point(m, u, tol, 5);
    for (double c : {0.6, 1.7}) {
      sw::PointTM us = u;
      for (double& y : us.y) y *= c;
      sw::PointConditionReport b = sw::analyze_point(m, us, tol, 5);
      if (a.classification != b.classification ||
          a.cond1.pass != b.cond1.pass || a.reducible != b.reducible)
        fail(std::string("verdict changed under y-scaling for ") + name);
    }
  }

  report(6, pass, "differential and invariance property suite", detail);
}

// --- criterion 7: negative paths -------------------------------------------
sw::PointConditionReport synthetic_reduced(double eta1, double eta2,
                                           int theta_rank) {
  sw::PointConditionReport p;
  p.classification = sw::Classification::GenericDistinct;
  p.lambdas = {-0.5, 1.0, 0.0};
  p.cond1.pass = true;
  p.reducible = true;
  p.eta1 = eta1;
  p.eta2 = eta2;
  p.theta_computed = true;
  p.theta.m[0] = {eta1, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0};
  p.theta.m[1] = {eta2, theta_rank == 2 ? -0.2 : 0.1 * eta2 / eta1,
                  0.0, 0.0, 0.0, 0.0, 0.0};
  p.theta.sv1 = 1.0;
  p.theta.sv2 = theta_rank == 2 ? 0.5 : 1e-12;
  p.theta.rank = theta_rank;
  return p;
}

void criterion7() {
  bool pass = true;
  std::string detail;
  auto fail = [&](const std::string& why) {
    if (pass) detail = why;
    pass = false;
  };
  sw::Tolerances tol;

  // flat spray: metrizable, classified flat
  {
    sw::AnalysisConfig cfg;
    cfg.model = sw::catalog_get("flat3").model;
    cfg.sample.count = 8;
    cfg.sample.seed = kSeed;
    sw::AnalysisResult res = sw::run_analysis(cfg);
    if (res.verdict.verdict != sw::Verdict::Metrizable ||
        res.verdict.classification != sw::Classification::Flat)
      fail("flat spray verdict " + sw::to_string(res.verdict.verdict));
  }

  // eigenvalue collision surfaces as an explicit error and a degenerate
  // classification, never as a silent generic point
  {
    sw::PointTM u{{1.0, 0.0, 0.0}, {1.0, -0.25, 1.0}};
    const sw::SprayModel& m = sw::catalog_get("triangular-family").model;
    sw::SprayGeometry G(m, u, 5);
    bool threw = false;
    try {
      G.build_eigenframe(tol.tol_imag, tol.tol_sep);
    } catch (const sw::EigenvalueCollision&) {
      threw = true;
    }
    if (!threw) fail("eigenvalue collision not surfaced");
    sw::PointConditionReport r = sw::analyze_point(m, u, tol, 5);
    if (r.classification == sw::Classification::GenericDistinct)
      fail("collision point classified generic");
  }

  // synthetic reduced-path fixtures: sign test and compatibility-rank test
  {
    sw::AggregateVerdict v1 =
        sw::aggregate_verdict({synthetic_reduced(0.4, -0.9, 1)}, tol, 3);
    if (v1.verdict != sw::Verdict::MetrizableReduced)
      fail("rank-1 fixture: " + sw::to_string(v1.verdict));
    sw::AggregateVerdict v2 =
        sw::aggregate_verdict({synthetic_reduced(0.4, -0.9, 2)}, tol, 3);
    if (v2.verdict != sw::Verdict::NotMetrizable)
      fail("rank-2 fixture: " + sw::to_string(v2.verdict));
    sw::AggregateVerdict v3 =
        sw::aggregate_verdict({synthetic_reduced(0.4, 0.9, 1)}, tol, 3);
    if (v3.verdict != sw::Verdict::NotMetrizable)
      fail("same-sign fixture: " + sw::to_string(v3.verdict));
  }

  report(7, pass, "negative and degenerate paths behave as specified", detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (g_failures == 0) {
    std::printf("acceptance: all 7 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
