#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stormtrack/diagnostics.hpp"
#include "stormtrack/distributions.hpp"
#include "stormtrack/synth.hpp"
#include "stormtrack/timing.hpp"

namespace stormtrack {

/// Comment header written at the top of every CSV: tool id, config hash and
/// the parameters that produced the file, echoed in order.
struct OutputHeader {
    std::string tool;
    std::string config_hash;
    std::vector<std::pair<std::string, std::string>> params;
};

void write_header(std::ostream& out, const OutputHeader& header);

void write_cluster_catalog(std::ostream& out, const OutputHeader& header,
                           const ClusterSeries& clusters);
void write_event_catalog(std::ostream& out, const OutputHeader& header,
                         std::span<const StormEvent> events);
void write_metrics_catalog(std::ostream& out, const OutputHeader& header,
                           std::span<const StormMetrics> storms);
void write_track_sidecar(std::ostream& out, const OutputHeader& header,
                         std::span<const StormMetrics> storms);
void write_profile(std::ostream& out, const OutputHeader& header, const Profile& profile);

/// Table-2-style layout: one row per factor, one column per model dataset.
void write_bias_tables(std::ostream& out, const OutputHeader& header,
                       std::span<const std::string> model_names,
                       std::span<const BiasTable> tables);

void write_histogram(std::ostream& out, const OutputHeader& header, const Histogram& histogram);

/// Paired model/null comparison (Fig-7-style) on shared bins.
void write_histogram_pair(std::ostream& out, const OutputHeader& header, const Histogram& model,
                          const Histogram& reference, const std::string& reference_label);

void write_metric_map_csv(std::ostream& out, const OutputHeader& header, const MetricMap& map);
void write_series_csv(std::ostream& out, const OutputHeader& header,
                      std::span<const std::string> columns,
                      std::span<const std::vector<double>> rows);
void write_diurnal(std::ostream& out, const OutputHeader& header,
                   std::span<const DiurnalBinStats> stats);
void write_fits(std::ostream& out, const OutputHeader& header,
                std::span<const std::pair<std::string, FitResult>> fits);
void write_presence_counts(std::ostream& out, const OutputHeader& header,
                           const PresenceCounts& counts);
void write_truth_catalog(std::ostream& out, const OutputHeader& header,
                         const TruthCatalog& truth);

/// Member cell sidecar (binary): per cluster u32 timestep, u32 cluster id,
/// u32 cell count, then the row-major cell indices as u32.
void write_cluster_cells(const std::filesystem::path& path, const ClusterSeries& clusters);

}  // namespace stormtrack
