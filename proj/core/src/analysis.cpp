#include "tmgen/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "tmgen/errors.hpp"

namespace tmgen {
namespace {

void check_probability_vector(std::span<const double> p, const char* name) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw DomainError(std::string(name) +
                        " has a negative or non-finite entry");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw DomainError(std::string(name) + " must sum to 1 (got " +
                      format_double(sum) + ")");
  }
}

}  // namespace

double jensen_shannon_distance(std::span<const double> p,
                               std::span<const double> q) {
  if (p.size() != q.size()) {
    throw DomainError("jensen_shannon_distance: length mismatch");
  }
  check_probability_vector(p, "p");
  check_probability_vector(q, "q");

  double divergence = 0.0;  // in bits
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) divergence += 0.5 * p[i] * std::log2(p[i] / m);
    if (q[i] > 0.0) divergence += 0.5 * q[i] * std::log2(q[i] / m);
  }
  return std::sqrt(std::clamp(divergence, 0.0, 1.0));
}

std::vector<double> generated_node_distribution(const Assignment& assignment) {
  const InfoUnits total = total_actual_info(assignment.final_state);
  if (total <= 0) {
    throw DomainError("generated_node_distribution: zero total information");
  }
  std::vector<double> dist(assignment.final_state.actual_info.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    dist[i] = static_cast<double>(assignment.final_state.actual_info[i]) /
              static_cast<double>(total);
  }
  return dist;
}

MatrixReport audit_capacity(const TrafficTrace& trace,
                            const TopologyConfig& topology,
                            double unit_scale) {
  topology.validate();
  MatrixReport report;
  report.per_node_load.assign(topology.num_nodes, 0.0);
  if (trace.rows.empty()) return report;

  std::vector<InfoUnits> src_total(topology.num_nodes, 0);
  std::vector<InfoUnits> dst_total(topology.num_nodes, 0);
  for (const auto& r : trace.rows) {
    if (r.src >= topology.num_nodes || r.dst >= topology.num_nodes) {
      throw DomainError("trace references node outside topology (flow " +
                        std::to_string(r.flow_id) + ")");
    }
    src_total[r.src] += r.size;
    dst_total[r.dst] += r.size;
  }

  const double duration = trace.duration();
  const InfoUnits budget = duration > 0.0
      ? to_info_units(topology.node_capacity / 2.0 * duration, unit_scale)
      : 0;
  for (NodeIndex n = 0; n < topology.num_nodes; ++n) {
    const double src_util =
        budget > 0 ? static_cast<double>(src_total[n]) / budget : 0.0;
    const double dst_util =
        budget > 0 ? static_cast<double>(dst_total[n]) / budget : 0.0;
    report.per_node_load[n] = std::max(src_util, dst_util);
    report.max_port_utilization =
        std::max({report.max_port_utilization, src_util, dst_util});
    if (src_total[n] > budget) {
      report.violations.push_back({n, PortSide::src, src_total[n] - budget});
    }
    if (dst_total[n] > budget) {
      report.violations.push_back({n, PortSide::dst, dst_total[n] - budget});
    }
  }
  return report;
}

void export_heatmap(std::span<const double> fractions, std::size_t num_nodes,
                    const std::filesystem::path& path, HeatmapFormat format) {
  if (fractions.size() != num_nodes * (num_nodes - 1)) {
    throw DomainError("fraction vector length does not match node count");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");

  // Row-major pair order: cell (r, c) is pair (r, c), diagonal 0.
  auto cell = [&](std::size_t r, std::size_t c) -> double {
    if (r == c) return 0.0;
    return fractions[r * (num_nodes - 1) + c - (c > r ? 1 : 0)];
  };

  if (format == HeatmapFormat::csv) {
    for (std::size_t r = 0; r < num_nodes; ++r) {
      for (std::size_t c = 0; c < num_nodes; ++c) {
        if (c) out << ',';
        out << format_double(cell(r, c));
      }
      out << '\n';
    }
  } else {
    double max_fraction = 0.0;
    for (double f : fractions) max_fraction = std::max(max_fraction, f);
    out << "P5\n" << num_nodes << " " << num_nodes << "\n255\n";
    for (std::size_t r = 0; r < num_nodes; ++r) {
      for (std::size_t c = 0; c < num_nodes; ++c) {
        const double v = max_fraction > 0.0 ? cell(r, c) / max_fraction : 0.0;
        out.put(static_cast<char>(
            static_cast<unsigned char>(std::lround(v * 255.0))));
      }
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<double> import_heatmap_csv(const std::filesystem::path& path,
                                       std::size_t expected_nodes) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  std::vector<double> fractions;
  fractions.reserve(expected_nodes * (expected_nodes - 1));
  std::string line;
  std::size_t line_no = 0;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (row >= expected_nodes) {
      throw ParseError("more than " + std::to_string(expected_nodes) +
                           " rows in " + path.string(),
                       path.string(), line_no);
    }
    std::size_t col = 0;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      double value = 0.0;
      const char* begin = line.data() + start;
      const char* end = line.data() + comma;
      const auto res = std::from_chars(begin, end, value);
      if (res.ec != std::errc{} || res.ptr != end) {
        throw ParseError("bad cell in " + path.string(), path.string(),
                         line_no);
      }
      if (col >= expected_nodes) {
        throw ParseError("row has more than " +
                             std::to_string(expected_nodes) + " columns",
                         path.string(), line_no);
      }
      if (row == col) {
        if (std::fabs(value) > 1e-12) {
          throw ParseError("diagonal cell must be 0", path.string(), line_no);
        }
      } else {
        fractions.push_back(value);
      }
      ++col;
      start = comma + 1;
      if (comma == line.size()) break;
    }
    if (col != expected_nodes) {
      throw ParseError("expected " + std::to_string(expected_nodes) +
                           " columns, got " + std::to_string(col),
                       path.string(), line_no);
    }
    ++row;
  }
  if (row != expected_nodes) {
    throw ParseError("expected " + std::to_string(expected_nodes) +
                         " rows, got " + std::to_string(row),
                     path.string(), line_no);
  }

  double sum = 0.0;
  for (double f : fractions) {
    if (f < 0.0) {
      throw DomainError("heatmap fractions must be non-negative");
    }
    sum += f;
  }
  if (std::fabs(sum - 1.0) > 1e-6) {
    throw DomainError("heatmap fractions must sum to ~1 (got " +
                      format_double(sum) + ")");
  }
  for (auto& f : fractions) f /= sum;
  return fractions;
}

}  // namespace tmgen
