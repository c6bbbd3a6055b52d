#include "stormtrack/csv.hpp"

#include <fstream>

#include "stormtrack/errors.hpp"
#include "stormtrack/numformat.hpp"

namespace stormtrack {

void write_header(std::ostream& out, const OutputHeader& header) {
    out << "# " << header.tool << "\n";
    if (!header.config_hash.empty()) out << "# config_hash = " << header.config_hash << "\n";
    for (const auto& [k, v] : header.params) out << "# " << k << " = " << v << "\n";
}

void write_cluster_catalog(std::ostream& out, const OutputHeader& header,
                           const ClusterSeries& clusters) {
    write_header(out, header);
    out << "timestep,cluster_id,n_cells,area_km2,total_mm,centroid_x_km,centroid_y_km\n";
    for (const auto& at_t : clusters.by_time)
        for (const Cluster& c : at_t)
            out << c.timestep << ',' << c.id << ',' << c.cells.size() << ','
                << format_num(c.area_km2) << ',' << format_num(c.total_mm) << ','
                << format_num(c.centroid_x_km) << ',' << format_num(c.centroid_y_km) << "\n";
}

void write_event_catalog(std::ostream& out, const OutputHeader& header,
                         std::span<const StormEvent> events) {
    write_header(out, header);
    out << "event_id,t_first,t_last,n_timesteps,clusters,n_merges,n_splits\n";
    for (const StormEvent& ev : events) {
        out << ev.id << ',' << ev.t_first << ',' << ev.t_last << ',' << ev.n_timesteps() << ',';
        for (std::size_t i = 0; i < ev.clusters_per_t.size(); ++i) {
            if (i > 0) out << ';';
            const auto& ids = ev.clusters_per_t[i];
            for (std::size_t j = 0; j < ids.size(); ++j) {
                if (j > 0) out << '+';
                out << ids[j];
            }
        }
        out << ',' << ev.n_merges << ',' << ev.n_splits << "\n";
    }
}

void write_metrics_catalog(std::ostream& out, const OutputHeader& header,
                           std::span<const StormMetrics> storms) {
    write_header(out, header);
    out << "event_id,amount_km3,intensity_mm_hr,size_km2,duration_hr,t_first,t_last\n";
    for (const StormMetrics& s : storms)
        out << s.event_id << ',' << format_num(s.amount_km3) << ','
            << format_num(s.mean_intensity_mm_hr) << ',' << format_num(s.mean_size_km2) << ','
            << format_num(s.duration_hr) << ',' << s.t_first << ',' << s.t_last << "\n";
}

void write_track_sidecar(std::ostream& out, const OutputHeader& header,
                         std::span<const StormMetrics> storms) {
    write_header(out, header);
    out << "event_id,timestep,x_km,y_km,area_km2,total_mm\n";
    for (const StormMetrics& s : storms)
        for (const TrackPoint& p : s.track)
            out << s.event_id << ',' << p.t << ',' << format_num(p.x_km) << ','
                << format_num(p.y_km) << ',' << format_num(p.area_km2) << ','
                << format_num(p.total_mm) << "\n";
}

void write_profile(std::ostream& out, const OutputHeader& header, const Profile& profile) {
    write_header(out, header);
    out << "bin_lo,bin_hi,mean_intensity,n_samples\n";
    for (std::size_t b = 0; b < profile.mean_intensity.size(); ++b)
        out << format_num(profile.edges[b]) << ',' << format_num(profile.edges[b + 1]) << ','
            << format_num(profile.mean_intensity[b]) << ',' << profile.counts[b] << "\n";
}

void write_bias_tables(std::ostream& out, const OutputHeader& header,
                       std::span<const std::string> model_names,
                       std::span<const BiasTable> tables) {
    if (model_names.size() != tables.size())
        throw ConfigError("write_bias_tables: one table per model required");
    write_header(out, header);
    out << "factor";
    for (const std::string& name : model_names) out << ',' << name;
    out << "\n";
    const auto row = [&](const char* label, auto proj) {
        out << label;
        for (const BiasTable& t : tables) out << ',' << format_num(proj(t));
        out << "\n";
    };
    row("Amount", [](const BiasTable& t) { return t.amount_pct; });
    row("Intensity", [](const BiasTable& t) { return t.intensity_pct; });
    row("Size", [](const BiasTable& t) { return t.size_pct; });
    row("Duration", [](const BiasTable& t) { return t.duration_pct; });
    row("Num. of storms", [](const BiasTable& t) { return t.number_pct; });
}

void write_histogram(std::ostream& out, const OutputHeader& header, const Histogram& histogram) {
    write_header(out, header);
    out << "# sub_threshold_total = " << format_num(histogram.sub_threshold_total) << "\n";
    out << "# sub_threshold_count = " << histogram.sub_threshold_count << "\n";
    out << "# dry_count = " << histogram.dry_count << "\n";
    out << "bin_lo,bin_hi,total,count\n";
    for (std::size_t b = 0; b < histogram.n_bins(); ++b)
        out << format_num(histogram.edges[b]) << ',' << format_num(histogram.edges[b + 1]) << ','
            << format_num(histogram.totals[b]) << ',' << histogram.counts[b] << "\n";
}

void write_histogram_pair(std::ostream& out, const OutputHeader& header, const Histogram& model,
                          const Histogram& reference, const std::string& reference_label) {
    write_header(out, header);
    const std::size_t n = std::max(model.n_bins(), reference.n_bins());
    out << "bin_lo,bin_hi,model_total,model_count," << reference_label << "_total,"
        << reference_label << "_count\n";
    const auto& edges = model.n_bins() >= reference.n_bins() ? model.edges : reference.edges;
    for (std::size_t b = 0; b < n; ++b) {
        out << format_num(edges[b]) << ',' << format_num(edges[b + 1]) << ',';
        if (b < model.n_bins())
            out << format_num(model.totals[b]) << ',' << model.counts[b];
        else
            out << "0,0";
        out << ',';
        if (b < reference.n_bins())
            out << format_num(reference.totals[b]) << ',' << reference.counts[b];
        else
            out << "0,0";
        out << "\n";
    }
}

void write_metric_map_csv(std::ostream& out, const OutputHeader& header, const MetricMap& map) {
    write_header(out, header);
    out << "# metric = " << map.metric << "\n";
    out << "# nx = " << map.spec.nx << ", ny = " << map.spec.ny
        << ", cell_km = " << format_num(map.spec.cell_km) << "\n";
    out << "# rows south to north; undefined cells written as NA\n";
    for (int y = 0; y < map.spec.ny; ++y) {
        for (int x = 0; x < map.spec.nx; ++x) {
            const std::int64_t i = static_cast<std::int64_t>(y) * map.spec.nx + x;
            if (x > 0) out << ',';
            if (map.defined[i])
                out << format_num(map.values[i]);
            else
                out << "NA";
        }
        out << "\n";
    }
}

void write_series_csv(std::ostream& out, const OutputHeader& header,
                      std::span<const std::string> columns,
                      std::span<const std::vector<double>> rows) {
    write_header(out, header);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c > 0) out << ',';
        out << columns[c];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ',';
            out << format_num(row[c]);
        }
        out << "\n";
    }
}

void write_diurnal(std::ostream& out, const OutputHeader& header,
                   std::span<const DiurnalBinStats> stats) {
    write_header(out, header);
    out << "bin_center_local_hour,mean_bias,median,p9,p25,p75,p91,model_mean,obs_mean,n\n";
    for (const DiurnalBinStats& s : stats)
        out << format_num(s.local_hour_center) << ',' << format_num(s.bias.mean) << ','
            << format_num(s.bias.median) << ',' << format_num(s.bias.p9) << ','
            << format_num(s.bias.p25) << ',' << format_num(s.bias.p75) << ','
            << format_num(s.bias.p91) << ',' << format_num(s.model_mean) << ','
            << format_num(s.obs_mean) << ',' << s.bias.n << "\n";
}

void write_fits(std::ostream& out, const OutputHeader& header,
                std::span<const std::pair<std::string, FitResult>> fits) {
    write_header(out, header);
    out << "subset,slope,intercept,r,n,zero_variance_y\n";
    for (const auto& [label, f] : fits)
        out << label << ',' << format_num(f.slope) << ',' << format_num(f.intercept) << ','
            << format_num(f.r) << ',' << f.n << ',' << (f.zero_variance_y ? 1 : 0) << "\n";
}

void write_presence_counts(std::ostream& out, const OutputHeader& header,
                           const PresenceCounts& counts) {
    write_header(out, header);
    out << "timestep,events_present,events_initiated\n";
    for (std::size_t t = 0; t < counts.present.size(); ++t)
        out << t << ',' << counts.present[t] << ',' << counts.initiated[t] << "\n";
}

void write_truth_catalog(std::ostream& out, const OutputHeader& header,
                         const TruthCatalog& truth) {
    write_header(out, header);
    out << "storm,timestep,n_cells,area_km2,total_mm,cx_km,cy_km\n";
    for (std::size_t s = 0; s < truth.storms.size(); ++s)
        for (const TruthInterval& ti : truth.storms[s].intervals)
            out << s << ',' << ti.t << ',' << ti.n_cells << ',' << format_num(ti.area_km2) << ','
                << format_num(ti.total_mm) << ',' << format_num(ti.cx_km) << ','
                << format_num(ti.cy_km) << "\n";
}

void write_cluster_cells(const std::filesystem::path& path, const ClusterSeries& clusters) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    const auto put_u32 = [&out](std::uint32_t v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof v);
    };
    for (const auto& at_t : clusters.by_time)
        for (const Cluster& c : at_t) {
            put_u32(static_cast<std::uint32_t>(c.timestep));
            put_u32(static_cast<std::uint32_t>(c.id));
            put_u32(static_cast<std::uint32_t>(c.cells.size()));
            for (const std::int32_t cell : c.cells) put_u32(static_cast<std::uint32_t>(cell));
        }
    if (!out) throw DataError("I/O error while writing '" + path.string() + "'");
}

}  // namespace stormtrack
