#include "tmgen/trace.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "tmgen/errors.hpp"

namespace tmgen {
namespace {

constexpr std::string_view kHeader = "flow_id,arrival_time,size,src,dst";

template <typename T>
T parse_field(std::string_view text, const std::filesystem::path& path,
              std::size_t line, const char* what) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ParseError("bad " + std::string(what) + " field '" +
                         std::string(text) + "' in " + path.string(),
                     path.string(), line);
  }
  return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::vector<FlowRecord> make_trace_rows(const FlowSet& flows,
                                        const Assignment& assignment,
                                        const PairSpace& pairs) {
  if (assignment.pair_of_flow.size() != flows.sizes.size()) {
    throw DomainError("assignment length does not match flow set");
  }
  std::vector<FlowRecord> rows(flows.sizes.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const PairIndex p = assignment.pair_of_flow[i];
    rows[i] = FlowRecord{static_cast<std::uint64_t>(i), flows.arrival_times[i],
                         flows.sizes[i], pairs.src_of[p], pairs.dst_of[p]};
  }
  return rows;
}

void write_trace(const std::filesystem::path& path, const TrafficTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");

  out << "# tmgen trace v1\n";
  out << "# tool_version: " << trace.tool_version << "\n";
  out << "# seed: " << trace.seed << "\n";
  out << "# config: " << trace.config_json << "\n";
  out << kHeader << "\n";
  for (const auto& r : trace.rows) {
    out << r.flow_id << ',' << format_double(r.arrival_time) << ',' << r.size
        << ',' << r.src << ',' << r.dst << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

TrafficTrace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  TrafficTrace trace;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string_view view(line);
      if (view.starts_with("# config: ")) {
        trace.config_json = line.substr(10);
      } else if (view.starts_with("# seed: ")) {
        trace.seed = parse_field<std::uint64_t>(view.substr(8), path, line_no,
                                                "seed");
      } else if (view.starts_with("# tool_version: ")) {
        trace.tool_version = line.substr(16);
      }
      continue;
    }
    if (!header_seen) {
      if (line != kHeader) {
        throw ParseError("expected header '" + std::string(kHeader) +
                             "' in " + path.string(),
                         path.string(), line_no);
      }
      header_seen = true;
      continue;
    }

    const auto fields = split_csv(line);
    if (fields.size() != 5) {
      throw ParseError("expected 5 fields, got " +
                           std::to_string(fields.size()) + " in " +
                           path.string(),
                       path.string(), line_no);
    }
    FlowRecord r;
    r.flow_id = parse_field<std::uint64_t>(fields[0], path, line_no, "flow_id");
    r.arrival_time =
        parse_field<double>(fields[1], path, line_no, "arrival_time");
    r.size = parse_field<InfoUnits>(fields[2], path, line_no, "size");
    r.src = parse_field<NodeIndex>(fields[3], path, line_no, "src");
    r.dst = parse_field<NodeIndex>(fields[4], path, line_no, "dst");

    if (r.flow_id != trace.rows.size()) {
      throw ParseError("flow_id not dense: expected " +
                           std::to_string(trace.rows.size()) + ", got " +
                           std::to_string(r.flow_id),
                       path.string(), line_no);
    }
    if (!trace.rows.empty() &&
        r.arrival_time < trace.rows.back().arrival_time) {
      throw ParseError("arrival_time decreases at flow " +
                           std::to_string(r.flow_id),
                       path.string(), line_no);
    }
    if (r.src == r.dst) {
      throw ParseError("src == dst for flow " + std::to_string(r.flow_id),
                       path.string(), line_no);
    }
    if (r.size <= 0) {
      throw ParseError("non-positive size for flow " + std::to_string(r.flow_id),
                       path.string(), line_no);
    }
    trace.rows.push_back(r);
  }
  if (!header_seen) {
    throw ParseError("missing trace header in " + path.string(), path.string(),
                     line_no);
  }
  return trace;
}

}  // namespace tmgen
