#include "arggrad/report_io.hpp"

#include <cstdio>

#include "arggrad/digest.hpp"

namespace arggrad {

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string status_name(RootStatus s) {
  switch (s) {
    case RootStatus::Confirmed: return "confirmed";
    case RootStatus::NearSingularity: return "near_singularity";
    case RootStatus::Unconverged: return "unconverged";
  }
  return "unknown";
}

namespace {

RootStatus status_from_name(const std::string& name) {
  if (name == "confirmed") return RootStatus::Confirmed;
  if (name == "near_singularity") return RootStatus::NearSingularity;
  if (name == "unconverged") return RootStatus::Unconverged;
  throw ParseError(0, "unknown root status '" + name + "'");
}

}  // namespace

Json rectangle_to_json(const Rectangle& r) {
  return Json{{"sigma_min", r.sigma_min},
              {"sigma_max", r.sigma_max},
              {"t_min", r.t_min},
              {"t_max", r.t_max}};
}

Rectangle rectangle_from_json(const Json& j) {
  return Rectangle(j.at("sigma_min").get<double>(), j.at("sigma_max").get<double>(),
                   j.at("t_min").get<double>(), j.at("t_max").get<double>());
}

Json policy_to_json(const NumericPolicy& p) {
  return Json{{"grad_tol", p.grad_tol},
              {"residual_tol", p.residual_tol},
              {"singular_radius", p.singular_radius},
              {"fd_step_scale", p.fd_step_scale},
              {"newton_max_iter", p.newton_max_iter},
              {"dedup_radius", p.dedup_radius}};
}

NumericPolicy policy_from_json(const Json& j) {
  NumericPolicy p;
  p.grad_tol = j.at("grad_tol").get<double>();
  p.residual_tol = j.at("residual_tol").get<double>();
  p.singular_radius = j.at("singular_radius").get<double>();
  p.fd_step_scale = j.at("fd_step_scale").get<double>();
  p.newton_max_iter = j.at("newton_max_iter").get<int>();
  p.dedup_radius = j.at("dedup_radius").get<double>();
  return p;
}

Json locate_report_to_json(const LocateReport& report) {
  Json roots = Json::array();
  for (const RootCandidate& r : report.roots) {
    roots.push_back(Json{{"sigma", r.point.sigma},
                         {"t", r.point.t},
                         {"grad_norm", r.grad_norm},
                         {"wprime_residual", r.wprime_residual},
                         {"status", status_name(r.status)}});
  }
  Json histogram = Json::array();
  // Trailing zero bins carry no information.
  std::size_t last = report.newton_stats.iterations_histogram.size();
  while (last > 0 && report.newton_stats.iterations_histogram[last - 1] == 0) --last;
  for (std::size_t i = 0; i < last; ++i)
    histogram.push_back(report.newton_stats.iterations_histogram[i]);

  return Json{{"region", rectangle_to_json(report.region)},
              {"grid_density", report.grid_density},
              {"roots", roots},
              {"newton_stats",
               Json{{"iterations_histogram", histogram},
                    {"seeds_total", report.newton_stats.seeds_total},
                    {"seeds_skipped_near_singularity",
                     report.newton_stats.seeds_skipped_near_singularity},
                    {"seeds_unconverged", report.newton_stats.seeds_unconverged},
                    {"degenerate_jacobian_hits", report.newton_stats.degenerate_jacobian_hits}}}};
}

LocateReport locate_report_from_json(const Json& j) {
  LocateReport report{rectangle_from_json(j.at("region")), {}, j.at("grid_density").get<int>(), {}};
  for (const Json& r : j.at("roots")) {
    report.roots.push_back(RootCandidate{
        ComplexPoint(r.at("sigma").get<double>(), r.at("t").get<double>()),
        r.at("grad_norm").get<double>(), r.at("wprime_residual").get<double>(),
        status_from_name(r.at("status").get<std::string>())});
  }
  const Json& stats = j.at("newton_stats");
  for (const Json& bin : stats.at("iterations_histogram"))
    report.newton_stats.iterations_histogram.push_back(bin.get<int>());
  report.newton_stats.seeds_total = stats.at("seeds_total").get<int>();
  report.newton_stats.seeds_skipped_near_singularity =
      stats.at("seeds_skipped_near_singularity").get<int>();
  report.newton_stats.seeds_unconverged = stats.at("seeds_unconverged").get<int>();
  report.newton_stats.degenerate_jacobian_hits =
      stats.at("degenerate_jacobian_hits").get<int>();
  return report;
}

std::string locate_report_to_csv(const LocateReport& report) {
  std::string out = "sigma,t,grad_norm,wprime_residual,status\n";
  for (const RootCandidate& r : report.roots) {
    out += format_double(r.point.sigma) + "," + format_double(r.point.t) + "," +
           format_double(r.grad_norm) + "," + format_double(r.wprime_residual) + "," +
           status_name(r.status) + "\n";
  }
  return out;
}

namespace {

const char* partial_label(PartialAxis p) { return p == PartialAxis::Sigma ? "sigma" : "t"; }
const char* sign_label(CertSign s) { return s == CertSign::Positive ? "positive" : "negative"; }
const char* method_label(CertMethod m) {
  return m == CertMethod::TermwiseSign ? "termwise" : "interval";
}

}  // namespace

Json certificate_to_json(const ExclusionCertificate& cert, const std::string& model_hash) {
  return Json{{"region", rectangle_to_json(cert.region)},
              {"partial", partial_label(cert.partial)},
              {"sign", sign_label(cert.sign)},
              {"method", method_label(cert.method)},
              {"margin", cert.margin},
              {"model_hash", model_hash}};
}

ExclusionCertificate certificate_from_json(const Json& j) {
  const std::string partial = j.at("partial").get<std::string>();
  const std::string sign = j.at("sign").get<std::string>();
  const std::string method = j.at("method").get<std::string>();
  return ExclusionCertificate{
      rectangle_from_json(j.at("region")),
      partial == "sigma" ? PartialAxis::Sigma : PartialAxis::T,
      sign == "positive" ? CertSign::Positive : CertSign::Negative,
      method == "termwise" ? CertMethod::TermwiseSign : CertMethod::IntervalBound,
      j.at("margin").get<double>()};
}

Json certify_outcome_to_json(const CertifyOutcome& outcome, const std::string& model_hash) {
  Json j{{"certified", outcome.ok()}};
  if (outcome.ok()) {
    j["certificate"] = certificate_to_json(*outcome.certificate, model_hash);
  } else {
    Json failure{{"reason", outcome.failure.reason}};
    if (outcome.failure.offending_factor)
      failure["offending_factor"] = *outcome.failure.offending_factor;
    if (!outcome.failure.undecided_cells.empty()) {
      Json cells = Json::array();
      for (const Rectangle& c : outcome.failure.undecided_cells)
        cells.push_back(rectangle_to_json(c));
      failure["undecided_cells"] = cells;
    }
    j["failure"] = failure;
  }
  return j;
}

Json bench_summary_to_json(const BenchSummary& summary) {
  Json per = Json::array();
  for (const BenchInstanceResult& r : summary.per_instance) {
    per.push_back(Json{{"oracle_roots", r.oracle_roots},
                       {"matched", r.matched},
                       {"missed", r.missed},
                       {"spurious", r.spurious}});
  }
  return Json{{"seed", summary.seed},
              {"instances", summary.instances},
              {"pairing_distance", summary.pairing_distance},
              {"total_matched", summary.total_matched},
              {"total_missed", summary.total_missed},
              {"total_spurious", summary.total_spurious},
              {"per_instance", per}};
}

BenchSummary bench_summary_from_json(const Json& j) {
  BenchSummary s;
  s.seed = j.at("seed").get<std::uint64_t>();
  s.instances = j.at("instances").get<int>();
  s.pairing_distance = j.at("pairing_distance").get<double>();
  s.total_matched = j.at("total_matched").get<int>();
  s.total_missed = j.at("total_missed").get<int>();
  s.total_spurious = j.at("total_spurious").get<int>();
  for (const Json& r : j.at("per_instance")) {
    s.per_instance.push_back(BenchInstanceResult{
        r.at("oracle_roots").get<int>(), r.at("matched").get<int>(), r.at("missed").get<int>(),
        r.at("spurious").get<int>()});
  }
  return s;
}

}  // namespace arggrad
