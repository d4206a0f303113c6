#include "mmwsim/output.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "mmwsim/error.hpp"
#include "mmwsim/format.hpp"

namespace mmwsim {

namespace {

constexpr std::string_view kSummaryHeader =
    "policy,lambda_b,tau_b,n_t,sigma,p1_rate_bps,mean_rate_bps,jain_mean,jain_pooled,drops,seed";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write failed for " + path.string());
}

double field_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  if (!parse_double(s, v)) throw Error("summary.csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ParameterError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

SummaryRow summary_row(const CampaignResult& result, std::size_t drops, std::uint64_t seed) {
  const auto& p = result.point;
  const auto& r = result.report;
  return {std::string(to_string(p.policy)), p.arrival_rate_per_s, p.mean_duration_ms, p.window_ms,
          p.error_std_db, r.p1_rate_bps, r.mean_rate_bps, r.jain_mean, r.jain_pooled, drops, seed};
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    os << r.policy << ',' << format_double(r.lambda_b) << ',' << format_double(r.tau_b) << ','
       << format_double(r.n_t) << ',' << format_double(r.sigma) << ',' << format_double(r.p1_rate_bps) << ','
       << format_double(r.mean_rate_bps) << ',' << format_double(r.jain_mean) << ','
       << format_double(r.jain_pooled) << ',' << r.drops << ',' << r.seed << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kSummaryHeader) throw Error("summary.csv: unexpected header");
  std::vector<SummaryRow> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 11) throw Error("summary.csv line " + std::to_string(line_no) + ": expected 11 columns");
    SummaryRow r;
    r.policy = f[0];
    r.lambda_b = field_double(f[1], line_no);
    r.tau_b = field_double(f[2], line_no);
    r.n_t = field_double(f[3], line_no);
    r.sigma = field_double(f[4], line_no);
    r.p1_rate_bps = field_double(f[5], line_no);
    r.mean_rate_bps = field_double(f[6], line_no);
    r.jain_mean = field_double(f[7], line_no);
    r.jain_pooled = field_double(f[8], line_no);
    r.drops = std::stoull(f[9]);
    r.seed = std::stoull(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_ecdf_csv(std::ostream& os, const Ecdf& ecdf) {
  os << "rate_bps,cum_prob\n";
  for (std::size_t i = 0; i < ecdf.values.size(); ++i)
    os << format_double(ecdf.values[i]) << ',' << format_double(ecdf.probs[i]) << '\n';
}

std::string ecdf_file_name(const ScenarioPoint& point) { return "ecdf_" + point.label() + ".csv"; }

std::vector<std::filesystem::path> emit_results(const std::vector<CampaignResult>& results, OutputFormat format,
                                                const std::filesystem::path& out_dir, const RunConfig& config,
                                                RunManifest manifest) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  const std::size_t drops = config.scenario.drops;
  const std::uint64_t seed = config.scenario.master_seed;

  auto emit = [&](const std::string& name, auto&& body) {
    const auto path = out_dir / name;
    auto out = open_out(path);
    body(out);
    check_written(out, path);
    written.push_back(path);
    manifest.outputs.push_back(name);
  };

  std::vector<SummaryRow> rows;
  for (const auto& r : results) rows.push_back(summary_row(r, drops, seed));

  if (format == OutputFormat::kCsv) {
    for (const auto& r : results)
      emit(ecdf_file_name(r.point), [&](std::ostream& os) { write_ecdf_csv(os, r.report.ecdf); });
    emit("summary.csv", [&](std::ostream& os) { write_summary_csv(os, rows); });
  } else {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& row = rows[i];
      const auto& ecdf = results[i].report.ecdf;
      doc.push_back({{"policy", row.policy},
                     {"lambda_b", row.lambda_b},
                     {"tau_b", row.tau_b},
                     {"n_t", row.n_t},
                     {"sigma", row.sigma},
                     {"p1_rate_bps", row.p1_rate_bps},
                     {"mean_rate_bps", row.mean_rate_bps},
                     {"jain_mean", row.jain_mean},
                     {"jain_pooled", row.jain_pooled},
                     {"drops", row.drops},
                     {"seed", row.seed},
                     {"ecdf", {{"rate_bps", ecdf.values}, {"cum_prob", ecdf.probs}}}});
    }
    emit("results.json", [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  }

  emit("config.yaml", [&](std::ostream& os) { os << dump_config(config); });

  nlohmann::ordered_json m;
  m["tool"] = "mmwsim";
  m["tool_version"] = manifest.tool_version;
  m["command"] = manifest.command;
  m["master_seed"] = manifest.master_seed;
  m["threads"] = manifest.threads;
  m["config"] = "config.yaml";
  m["outputs"] = manifest.outputs;
  m["wall_clock_s"] = manifest.wall_clock_s;
  const auto manifest_path = out_dir / "manifest.json";
  auto out = open_out(manifest_path);
  out << m.dump(2) << '\n';
  check_written(out, manifest_path);
  written.push_back(manifest_path);
  return written;
}

}  // namespace mmwsim
