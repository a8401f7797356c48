#include "spraywork/analysis.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace spraywork {

namespace {

constexpr int kMaxOrder = 7;

struct PointOutcome {
  bool skipped = false;
  std::string skip_reason;
  PointConditionReport report;
};

PointOutcome analyze_with_escalation(const SprayModel& model, const PointTM& u,
                                     const Tolerances& tol, int order) {
  PointOutcome out;
  for (int k = order; k <= kMaxOrder; ++k) {
    try {
      out.report = analyze_point(model, u, tol, k);
    } catch (const OrderExceeded&) {
      continue;
    } catch (const DomainError& e) {
      out.skipped = true;
      out.skip_reason = e.what();
      return out;
    } catch (const DivisionByZeroJet& e) {
      out.skipped = true;
      out.skip_reason = e.what();
      return out;
    }
    // the compatibility-matrix pass needs one jet order more than the rest
    // of the pipeline; retry the whole point rather than mixing orders
    if (!out.report.theta_error.empty() && k < kMaxOrder) continue;
    return out;
  }
  return out;
}

}  // namespace

AnalysisResult run_analysis(const AnalysisConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  const SprayModel& model = cfg.model;
  if (model.n < 2) throw ConfigError("spray dimension must be >= 2");
  if (static_cast<int>(model.coeffs.size()) != model.n)
    throw ConfigError("spray must have one coefficient per dimension");
  if (cfg.order < 4 || cfg.order > kMaxOrder)
    throw ConfigError("jet order must be between 4 and " +
                      std::to_string(kMaxOrder));

  AnalysisResult res;

  // homogeneity gate: coefficients must be fiberwise quadratic
  {
    SampleSpec hs;
    hs.count = 20;
    hs.seed = cfg.sample.seed ^ 0x5bd1e995u;
    std::vector<PointTM> hpts = sample_points(model.n, hs);
    for (int i = 0; i < model.n; ++i) {
      HomogeneityReport hr =
          check_homogeneity(model.coeffs[i], model.n, 2, hpts, cfg.tol.tol);
      if (!hr.pass) {
        std::string msg =
            "coefficient " + std::to_string(i + 1) +
            " is not 2-homogeneous in the velocities (residual " +
            std::to_string(hr.failures.front().residual) + ")";
        if (!cfg.skip_homogeneity) throw ConfigError(msg);
        res.warnings.push_back(msg + "; check skipped by request");
      }
    }
  }

  res.points = cfg.explicit_points;
  if (cfg.sample.count > 0) {
    std::vector<PointTM> sampled = sample_points(model.n, cfg.sample);
    res.points.insert(res.points.end(), sampled.begin(), sampled.end());
  }
  if (res.points.empty()) throw ConfigError("no sample points configured");

  const int npts = static_cast<int>(res.points.size());
  std::vector<PointOutcome> outcomes(npts);
  if (cfg.threads <= 1) {
    for (int i = 0; i < npts; ++i)
      outcomes[i] =
          analyze_with_escalation(model, res.points[i], cfg.tol, cfg.order);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    int nt = std::min(cfg.threads, npts);
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&]() {
        for (;;) {
          int i = next.fetch_add(1);
          if (i >= npts) return;
          outcomes[i] = analyze_with_escalation(model, res.points[i], cfg.tol,
                                                cfg.order);
        }
      });
    for (auto& th : pool) th.join();
  }

  std::vector<PointConditionReport> kept;
  for (int i = 0; i < npts; ++i) {
    res.reports.push_back(outcomes[i].report);
    if (outcomes[i].skipped) {
      res.skipped.push_back(i);
      res.warnings.push_back("point " + std::to_string(i) +
                             " skipped: " + outcomes[i].skip_reason);
    } else {
      kept.push_back(outcomes[i].report);
    }
  }
  res.verdict = aggregate_verdict(kept, cfg.tol, model.n);

  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

namespace {

nlohmann::ordered_json point_json(const PointTM& p) {
  return {{"x", p.x}, {"y", p.y}};
}

nlohmann::ordered_json report_entry_json(const PointConditionReport& r) {
  nlohmann::ordered_json j;
  j["classification"] = to_string(r.classification);
  j["flat_residual"] = r.flat_res;
  j["isotropic_residual"] = r.isotropic_res;
  if (!r.degenerate_reason.empty())
    j["degenerate_reason"] = r.degenerate_reason;
  if (r.classification != Classification::GenericDistinct) return j;
  j["eigenvalues"] = r.lambdas;
  j["span_fit"] = {{"A", r.cond1.A},
                   {"B", r.cond1.B},
                   {"residual", r.cond1.residual},
                   {"pass", r.cond1.pass}};
  j["third_order_residual"] = r.kappa_theta_res;
  j["off_slot_residual"] = r.beta_gamma_res;
  j["involutivity_residual"] = r.involutivity_res;
  j["reducible"] = r.reducible;
  j["eta"] = {r.eta1, r.eta2};
  if (r.theta_computed) {
    j["theta"] = {{"rows", {r.theta.m[0], r.theta.m[1]}},
                  {"sv", {r.theta.sv1, r.theta.sv2}},
                  {"rank", r.theta.rank}};
  } else if (!r.theta_error.empty()) {
    j["theta_error"] = r.theta_error;
  }
  return j;
}

}  // namespace

nlohmann::ordered_json report_json(const AnalysisConfig& cfg,
                                   const AnalysisResult& res) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = kToolVersion;

  nlohmann::ordered_json cj;
  cj["label"] = cfg.model.label;
  cj["dimension"] = cfg.model.n;
  std::vector<std::string> exprs;
  for (const auto& e : cfg.model.coeffs) exprs.push_back(print(e));
  cj["coeffs"] = exprs;
  cj["order"] = cfg.order;
  cj["threads"] = cfg.threads;
  cj["skip_homogeneity"] = cfg.skip_homogeneity;
  cj["sample"] = {{"count", cfg.sample.count},
                  {"box", cfg.sample.box},
                  {"ymin", cfg.sample.ymin},
                  {"ymax", cfg.sample.ymax},
                  {"seed", cfg.sample.seed}};
  cj["tolerances"] = {{"tol", cfg.tol.tol},
                      {"tol_sep", cfg.tol.tol_sep},
                      {"tol_imag", cfg.tol.tol_imag},
                      {"rank_tol", cfg.tol.rank_tol},
                      {"eta_tol", cfg.tol.eta_tol}};
  j["config"] = cj;

  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : res.points) pts.push_back(point_json(p));
  j["points"] = pts;

  nlohmann::ordered_json reps = nlohmann::ordered_json::array();
  for (const auto& r : res.reports) reps.push_back(report_entry_json(r));
  j["reports"] = reps;
  j["skipped_points"] = res.skipped;

  const AggregateVerdict& v = res.verdict;
  j["aggregate"] = {{"verdict", to_string(v.verdict)},
                    {"classification", to_string(v.classification)},
                    {"reasons", v.reasons},
                    {"span_condition", v.cond1_pass},
                    {"third_order_zero", v.third_order_zero},
                    {"reducible", v.reducible},
                    {"eta_nonzero", v.eta_nonzero},
                    {"eta_sign_ok", v.eta_sign_ok},
                    {"theta_rank1", v.theta_rank1}};
  j["warnings"] = res.warnings;
  j["elapsed_seconds"] = res.elapsed_seconds;
  return j;
}

}  // namespace spraywork
