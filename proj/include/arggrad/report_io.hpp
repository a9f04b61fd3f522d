#ifndef ARGGRAD_REPORT_IO_HPP
#define ARGGRAD_REPORT_IO_HPP

#include <string>

#include <json.hpp>

#include "arggrad/bench.hpp"
#include "arggrad/certifier.hpp"
#include "arggrad/locator.hpp"

namespace arggrad {

// Field names and CSV column order below are part of the CLI contract;
// downstream plot scripts key on them.

using Json = nlohmann::ordered_json;

Json rectangle_to_json(const Rectangle& r);
Rectangle rectangle_from_json(const Json& j);

Json policy_to_json(const NumericPolicy& p);
NumericPolicy policy_from_json(const Json& j);

Json locate_report_to_json(const LocateReport& report);
LocateReport locate_report_from_json(const Json& j);
std::string locate_report_to_csv(const LocateReport& report);

Json certificate_to_json(const ExclusionCertificate& cert, const std::string& model_hash);
ExclusionCertificate certificate_from_json(const Json& j);
Json certify_outcome_to_json(const CertifyOutcome& outcome, const std::string& model_hash);

Json bench_summary_to_json(const BenchSummary& summary);
BenchSummary bench_summary_from_json(const Json& j);

std::string status_name(RootStatus s);
std::string format_double(double v);  // %.17g, round-trip exact

}  // namespace arggrad

#endif
