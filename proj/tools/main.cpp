#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arggrad/bench.hpp"
#include "arggrad/certifier.hpp"
#include "arggrad/digest.hpp"
#include "arggrad/locator.hpp"
#include "arggrad/model_spec.hpp"
#include "arggrad/report_io.hpp"
#include "arggrad/special_fns.hpp"

namespace {

using arggrad::Json;

constexpr int kExitOk = 0;
constexpr int kExitUnsatisfied = 1;  // certify failure / bench mismatch
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
  std::string model_spec;
  std::string model_file;
  std::vector<double> region;
  int grid = 64;
  double tol_grad = -1.0, tol_res = -1.0, singular_radius = -1.0, dedup_radius = -1.0;
  std::string format = "json";
  std::string out_path;
};

void add_model_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--model", opts.model_spec, "inline model spec (poly:/factors:/gamma:/xi:/...)");
  cmd->add_option("--model-file", opts.model_file, "model description file");
}

void add_region_option(CLI::App* cmd, CommonOpts& opts, bool required) {
  auto* opt = cmd->add_option("--region", opts.region,
                              "rectangle: sigma_min sigma_max t_min t_max")
                  ->expected(4);
  if (required) opt->required();
}

void add_policy_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--tol-grad", opts.tol_grad, "gradient norm tolerance");
  cmd->add_option("--tol-res", opts.tol_res, "|W'| residual tolerance");
  cmd->add_option("--singular-radius", opts.singular_radius, "exclusion radius around zeros/poles");
  cmd->add_option("--dedup-radius", opts.dedup_radius, "root clustering distance");
}

void add_output_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts.out_path, "output path (default: stdout)");
}

arggrad::NumericPolicy make_policy(const CommonOpts& opts) {
  arggrad::NumericPolicy p;
  if (opts.tol_grad > 0) p.grad_tol = opts.tol_grad;
  if (opts.tol_res > 0) p.residual_tol = opts.tol_res;
  if (opts.singular_radius > 0) p.singular_radius = opts.singular_radius;
  if (opts.dedup_radius > 0) p.dedup_radius = opts.dedup_radius;
  p.validate();
  return p;
}

arggrad::AnyModel load_model(const CommonOpts& opts) {
  if (!opts.model_spec.empty() && !opts.model_file.empty())
    throw arggrad::InvalidModel("give either --model or --model-file, not both");
  if (!opts.model_spec.empty()) return arggrad::parse_model_spec(opts.model_spec);
  if (!opts.model_file.empty()) {
    std::ifstream in(opts.model_file);
    if (!in) throw arggrad::InvalidModel("cannot open model file '" + opts.model_file + "'");
    return arggrad::parse_model_file(in);
  }
  throw arggrad::InvalidModel("a model is required (--model or --model-file)");
}

arggrad::Rectangle region_of(const CommonOpts& opts) {
  return arggrad::Rectangle(opts.region[0], opts.region[1], opts.region[2], opts.region[3]);
}

void write_output(const CommonOpts& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.out_path);
  if (!out) throw arggrad::InvalidModel("cannot open output path '" + opts.out_path + "'");
  out << text;
}

std::string model_hash(const arggrad::AnyModel& model) {
  return arggrad::fnv1a64_hex(arggrad::canonical_description(model));
}

// Documents carry the full description only for small models; large
// product models are identified by their hash.
std::string model_summary(const arggrad::AnyModel& model) {
  const std::string full = arggrad::canonical_description(model);
  if (full.size() <= 256) return full;
  const auto* fm = std::get_if<arggrad::FactoredFunction>(&model);
  return "factored: " + std::to_string(fm ? fm->factors().size() : 0) + " factors";
}

int run_locate(const CommonOpts& opts) {
  const arggrad::AnyModel model = load_model(opts);
  const arggrad::NumericPolicy policy = make_policy(opts);
  const arggrad::LocateReport report = locate(model, region_of(opts), policy, opts.grid);
  if (opts.format == "csv") {
    write_output(opts, arggrad::locate_report_to_csv(report));
  } else {
    Json doc{{"command", "locate"},
             {"model", model_summary(model)},
             {"model_hash", model_hash(model)},
             {"policy", arggrad::policy_to_json(policy)}};
    doc.update(arggrad::locate_report_to_json(report));
    write_output(opts, doc.dump(2) + "\n");
  }
  return kExitOk;
}

int run_certify(const CommonOpts& opts, const std::string& partial_name,
                const std::string& method_name, int depth) {
  const arggrad::AnyModel model = load_model(opts);
  const auto* factored = std::get_if<arggrad::FactoredFunction>(&model);
  if (!factored)
    throw arggrad::InvalidModel("certification works on factored models; use factors:/gamma:/xi:");
  const arggrad::PartialAxis partial =
      partial_name == "sigma" ? arggrad::PartialAxis::Sigma : arggrad::PartialAxis::T;
  const arggrad::CertifyOutcome outcome =
      method_name == "termwise"
          ? certify_termwise(*factored, region_of(opts), partial)
          : certify_interval(*factored, region_of(opts), partial, depth);

  if (opts.format == "csv") {
    std::string text = "certified,partial,sign,method,margin,model_hash\n";
    if (outcome.ok()) {
      const auto& c = *outcome.certificate;
      text += std::string("true,") + partial_name + "," +
              (c.sign == arggrad::CertSign::Positive ? "positive" : "negative") + "," +
              method_name + "," + arggrad::format_double(c.margin) + "," + model_hash(model) +
              "\n";
    } else {
      text += std::string("false,") + partial_name + ",,," + "," + model_hash(model) + "\n";
    }
    write_output(opts, text);
  } else {
    Json doc{{"command", "certify"},
             {"model", model_summary(model)},
             {"model_hash", model_hash(model)}};
    doc.update(arggrad::certify_outcome_to_json(outcome, model_hash(model)));
    write_output(opts, doc.dump(2) + "\n");
  }
  return outcome.ok() ? kExitOk : kExitUnsatisfied;
}

int run_field(const CommonOpts& opts) {
  const arggrad::AnyModel model = load_model(opts);
  const arggrad::NumericPolicy policy = make_policy(opts);
  const arggrad::Rectangle region = region_of(opts);
  const int n = opts.grid;
  if (n < 2) throw arggrad::InvalidModel("field grid needs at least 2 points per axis");
  const auto [zeros, poles] = zeros_and_poles(model);

  struct Row {
    double sigma, t, d_sigma, d_t, abs_w;
    bool agreement, masked;
  };
  std::vector<Row> rows;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Row row{};
      row.sigma = region.sigma_min + i * region.width() / (n - 1);
      row.t = region.t_min + j * region.height() / (n - 1);
      const arggrad::ComplexPoint p(row.sigma, row.t);
      row.masked =
          arggrad::distance_to_singularity(zeros, poles, p.value()) < policy.singular_radius;
      try {
        row.abs_w = std::abs(evaluate(model, p));
      } catch (const arggrad::NumericError&) {
        row.abs_w = 0.0;
      }
      if (!row.masked) {
        const arggrad::RouteValues routes = evaluate_routes(model, p, policy.fd_step_scale);
        row.d_sigma = routes.logd.d_sigma;
        row.d_t = routes.logd.d_t;
        row.agreement = routes.max_discrepancy <= 1e-6;
      }
      rows.push_back(row);
    }
  }

  if (opts.format == "csv") {
    std::string text = "sigma,t,d_sigma,d_t,abs_w,agreement,masked\n";
    for (const Row& r : rows) {
      text += arggrad::format_double(r.sigma) + "," + arggrad::format_double(r.t) + "," +
              arggrad::format_double(r.d_sigma) + "," + arggrad::format_double(r.d_t) + "," +
              arggrad::format_double(r.abs_w) + "," + (r.agreement ? "true" : "false") + "," +
              (r.masked ? "true" : "false") + "\n";
    }
    write_output(opts, text);
  } else {
    Json out_rows = Json::array();
    for (const Row& r : rows) {
      out_rows.push_back(Json{{"sigma", r.sigma},
                              {"t", r.t},
                              {"d_sigma", r.d_sigma},
                              {"d_t", r.d_t},
                              {"abs_w", r.abs_w},
                              {"agreement", r.agreement},
                              {"masked", r.masked}});
    }
    Json doc{{"command", "field"},
             {"model", model_summary(model)},
             {"model_hash", model_hash(model)},
             {"region", arggrad::rectangle_to_json(region)},
             {"grid", n},
             {"rows", out_rows}};
    write_output(opts, doc.dump(2) + "\n");
  }
  return kExitOk;
}

int run_bench(const CommonOpts& opts, int count, std::uint64_t seed) {
  const arggrad::NumericPolicy policy = make_policy(opts);
  const arggrad::Rectangle region = region_of(opts);
  const auto start = std::chrono::steady_clock::now();
  const arggrad::BenchSummary summary = run_bench(count, seed, region, policy, opts.grid);
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  // Timing goes to stderr so the summary document stays byte-reproducible.
  std::cerr << "bench: " << count << " instances in " << elapsed.count() << " ms\n";

  Json doc{{"command", "bench"}, {"region", arggrad::rectangle_to_json(region)}};
  doc.update(arggrad::bench_summary_to_json(summary));
  write_output(opts, doc.dump(2) + "\n");
  return summary.clean() ? kExitOk : kExitUnsatisfied;
}

int run_digamma(const CommonOpts& opts, int count, int n, int cert_n) {
  const std::vector<double> zeros = arggrad::digamma_real_zeros(count, n);

  const arggrad::GammaModel model = arggrad::build_gamma(cert_n);
  const arggrad::Rectangle region(-10.0, 10.0, 0.1, 10.0);
  const arggrad::CertifyOutcome cert =
      certify_termwise(model.model, region, arggrad::PartialAxis::Sigma);
  const double tail = model.tail_bound(arggrad::PartialAxis::Sigma, region);
  const std::string hash = model_hash(arggrad::AnyModel{model.model});

  Json zeros_json = Json::array();
  for (double z : zeros) zeros_json.push_back(z);
  const bool extends = cert.ok() && cert.certificate->margin > tail;
  Json doc{{"command", "digamma"},
           {"count", count},
           {"n", n},
           {"cert_n", cert_n},
           {"zeros", zeros_json},
           {"model_certificate", arggrad::certify_outcome_to_json(cert, hash)},
           {"tail_margin", tail},
           {"extends_to_gamma", extends},
           {"gamma_margin", extends ? cert.certificate->margin - tail : 0.0}};
  write_output(opts, doc.dump(2) + "\n");
  return cert.ok() ? kExitOk : kExitUnsatisfied;
}

int run_xi(const CommonOpts& opts, const std::string& zeros_path, int n, double sigma,
           int pairs) {
  std::ifstream in(zeros_path);
  if (!in) throw arggrad::InvalidModel("cannot open zeros file '" + zeros_path + "'");
  const arggrad::ZetaZeroTable table = arggrad::ingest_zeta_zeros(in);
  const arggrad::XiModel model = build_xi(table, n, sigma);
  const std::string hash = model_hash(arggrad::AnyModel{model.model});
  const arggrad::NumericPolicy policy = make_policy(opts);

  const arggrad::Rectangle right(1.05, 3.0, -60.0, 60.0);
  const arggrad::Rectangle left(-2.0, -0.05, -60.0, 60.0);
  const arggrad::CertifyOutcome right_cert =
      certify_termwise(model.model, right, arggrad::PartialAxis::T);
  const arggrad::CertifyOutcome left_cert =
      certify_termwise(model.model, left, arggrad::PartialAxis::T);

  Json doc{{"command", "xi"},
           {"n", n},
           {"assumed_sigma", sigma},
           {"source_digest", table.source_digest},
           {"model_hash", hash},
           {"right_strip", arggrad::certify_outcome_to_json(right_cert, hash)},
           {"right_tail_margin", xi_tail_margin(model, table, right, arggrad::PartialAxis::T)},
           {"left_strip", arggrad::certify_outcome_to_json(left_cert, hash)},
           {"left_tail_margin", xi_tail_margin(model, table, left, arggrad::PartialAxis::T)}};

  bool satisfied = right_cert.ok() && left_cert.ok();
  if (sigma == 0.5 && pairs > 0) {
    if (n < pairs + 1)
      throw arggrad::InvalidModel("need at least pairs+1 ordinates for the line scan");
    const double t_lo = model.zero_ordinates.front();
    const double t_hi = model.zero_ordinates[static_cast<std::size_t>(pairs)];
    const arggrad::XiLineScan scan =
        xi_critical_line_derivative_zeros(model, t_lo, t_hi, policy);
    Json intervals = Json::array();
    for (std::size_t k = 0; k < scan.roots_per_interval.size(); ++k) {
      intervals.push_back(Json{{"t_lo", scan.interval_lo[k]},
                               {"t_hi", scan.interval_hi[k]},
                               {"roots", scan.roots_per_interval[k]}});
    }
    Json roots = Json::array();
    for (double t : scan.root_ts) roots.push_back(t);
    doc["line_scan"] = Json{{"intervals", intervals},
                            {"roots", roots},
                            {"right_band", arggrad::certify_outcome_to_json(scan.right_band, hash)},
                            {"left_band", arggrad::certify_outcome_to_json(scan.left_band, hash)}};
    satisfied = satisfied && scan.right_band.ok() && scan.left_band.ok();
  }

  write_output(opts, doc.dump(2) + "\n");
  return satisfied ? kExitOk : kExitUnsatisfied;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"argument-gradient locator and certifier for derivative zeros"};
  app.require_subcommand(1);

  CommonOpts locate_opts, certify_opts, field_opts, bench_opts, digamma_opts, xi_opts;

  auto* locate_cmd = app.add_subcommand("locate", "find zeros of W' inside a rectangle");
  add_model_options(locate_cmd, locate_opts);
  add_region_option(locate_cmd, locate_opts, true);
  locate_cmd->add_option("--grid", locate_opts.grid, "seeds per axis");
  add_policy_options(locate_cmd, locate_opts);
  add_output_options(locate_cmd, locate_opts);

  std::string partial = "sigma", method = "termwise";
  int depth = 12;
  auto* certify_cmd = app.add_subcommand("certify", "prove a rectangle holds no zeros of W'");
  add_model_options(certify_cmd, certify_opts);
  add_region_option(certify_cmd, certify_opts, true);
  certify_cmd->add_option("--partial", partial, "which partial: sigma or t")
      ->required()
      ->check(CLI::IsMember({"sigma", "t"}));
  certify_cmd->add_option("--method", method, "termwise or interval")
      ->check(CLI::IsMember({"termwise", "interval"}));
  certify_cmd->add_option("--depth", depth, "interval subdivision depth limit");
  add_output_options(certify_cmd, certify_opts);

  auto* field_cmd = app.add_subcommand("field", "export the argument-gradient field on a grid");
  add_model_options(field_cmd, field_opts);
  add_region_option(field_cmd, field_opts, true);
  field_cmd->add_option("--grid", field_opts.grid, "points per axis (endpoints included)");
  add_policy_options(field_cmd, field_opts);
  add_output_options(field_cmd, field_opts);

  int bench_count = 200;
  std::uint64_t bench_seed = 42;
  auto* bench_cmd = app.add_subcommand("bench", "locator vs polynomial oracle over random models");
  bench_cmd->add_option("--count", bench_count, "number of random instances");
  bench_cmd->add_option("--seed", bench_seed, "generator seed");
  add_region_option(bench_cmd, bench_opts, false);
  bench_cmd->add_option("--grid", bench_opts.grid, "seeds per axis");
  add_policy_options(bench_cmd, bench_opts);
  add_output_options(bench_cmd, bench_opts);

  int digamma_count = 5, digamma_n = 100000, digamma_cert_n = 1000;
  auto* digamma_cmd = app.add_subcommand("digamma", "real digamma zeros + off-axis certificate");
  digamma_cmd->add_option("--count", digamma_count, "how many real zeros");
  digamma_cmd->add_option("--n", digamma_n, "series truncation for the zero table");
  digamma_cmd->add_option("--cert-n", digamma_cert_n, "model truncation for the certificate");
  add_output_options(digamma_cmd, digamma_opts);

  std::string xi_zeros_path;
  int xi_n = 100, xi_pairs = 10;
  double xi_sigma = 0.5;
  auto* xi_cmd = app.add_subcommand("xi", "strip-exterior certificates + between-ordinate roots");
  xi_cmd->add_option("--zeros", xi_zeros_path, "zeta zero ordinate file")->required();
  xi_cmd->add_option("--n", xi_n, "number of ordinates to use");
  xi_cmd->add_option("--sigma", xi_sigma, "assumed zero abscissa in (0,1)");
  xi_cmd->add_option("--pairs", xi_pairs, "ordinate pairs to scan on the line (0 = skip)");
  add_policy_options(xi_cmd, xi_opts);
  add_output_options(xi_cmd, xi_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (locate_cmd->parsed()) return run_locate(locate_opts);
    if (certify_cmd->parsed()) return run_certify(certify_opts, partial, method, depth);
    if (field_cmd->parsed()) return run_field(field_opts);
    if (bench_cmd->parsed()) {
      if (bench_opts.region.empty()) bench_opts.region = {-6.0, 6.0, -6.0, 6.0};
      return run_bench(bench_opts, bench_count, bench_seed);
    }
    if (digamma_cmd->parsed()) return run_digamma(digamma_opts, digamma_count, digamma_n,
                                                  digamma_cert_n);
    if (xi_cmd->parsed()) return run_xi(xi_opts, xi_zeros_path, xi_n, xi_sigma, xi_pairs);
  } catch (const arggrad::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const arggrad::InvalidModel& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const arggrad::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitConfig;
}
