#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mmwsim/config.hpp"
#include "mmwsim/engine.hpp"

namespace mmwsim {

enum class OutputFormat { kCsv, kJson };

OutputFormat parse_output_format(std::string_view name);

// One line of summary.csv.
struct SummaryRow {
  std::string policy;
  double lambda_b = 0.0;
  double tau_b = 0.0;
  double n_t = 0.0;
  double sigma = 0.0;
  double p1_rate_bps = 0.0;
  double mean_rate_bps = 0.0;
  double jain_mean = 0.0;
  double jain_pooled = 0.0;
  std::size_t drops = 0;
  std::uint64_t seed = 0;

  bool operator==(const SummaryRow&) const = default;
};

SummaryRow summary_row(const CampaignResult& result, std::size_t drops, std::uint64_t seed);

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& is);

// rate_bps,cum_prob
void write_ecdf_csv(std::ostream& os, const Ecdf& ecdf);

std::string ecdf_file_name(const ScenarioPoint& point);

struct RunManifest {
  std::string command;
  std::string tool_version;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;
  double wall_clock_s = 0.0;
  std::vector<std::string> outputs;  // relative to the output directory
};

// Writes the per-point ECDFs plus summary (csv) or a single results.json,
// then config.yaml and manifest.json. Returns the files written.
std::vector<std::filesystem::path> emit_results(const std::vector<CampaignResult>& results, OutputFormat format,
                                                const std::filesystem::path& out_dir, const RunConfig& config,
                                                RunManifest manifest);

}  // namespace mmwsim
