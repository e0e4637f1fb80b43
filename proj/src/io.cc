#include "dnml/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <utility>

#include "dnml/errors.hpp"

namespace dnml {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view token, std::int64_t& value) {
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in, const EdgeListOptions& options) {
  if (options.indexing != 0 && options.indexing != 1) {
    throw DomainError("indexing must be 0 or 1");
  }
  LoadReport report;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const bool comment = std::any_of(
        options.comment_prefixes.begin(), options.comment_prefixes.end(),
        [&](const std::string& p) { return !p.empty() && body.starts_with(p); });
    if (comment) continue;
    ++report.lines_read;

    std::istringstream fields{std::string(body)};
    std::string a;
    std::string b;
    if (!(fields >> a >> b)) throw ParseError("expected two node ids", line_no);
    std::int64_t u = 0;
    std::int64_t v = 0;
    if (!parse_int(a, u) || !parse_int(b, v)) {
      throw ParseError("node ids must be integers, got '" + a + "' '" + b + "'",
                       line_no);
    }
    if (!options.compact_ids && (u < options.indexing || v < options.indexing)) {
      throw ParseError("node id below indexing base " +
                           std::to_string(options.indexing),
                       line_no);
    }
    if (u == v) {
      ++report.self_loops_dropped;
      continue;
    }
    pairs.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (report.lines_read == 0) throw DomainError("edge list contains no edges");

  std::vector<std::int64_t> ids;
  std::size_t n = 0;
  if (options.compact_ids) {
    for (const auto& [u, v] : pairs) {
      ids.push_back(u);
      ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    n = ids.size();
  } else {
    std::int64_t max_id = options.indexing;
    for (const auto& [u, v] : pairs) max_id = std::max(max_id, v);
    n = static_cast<std::size_t>(max_id - options.indexing + 1);
    ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      ids[i] = static_cast<std::int64_t>(i) + options.indexing;
    }
  }
  if (options.num_nodes) {
    if (options.compact_ids) {
      throw DomainError("num_nodes override cannot be combined with compact_ids");
    }
    if (*options.num_nodes < n) {
      throw DomainError("num_nodes override " + std::to_string(*options.num_nodes) +
                        " is smaller than the largest node id requires (" +
                        std::to_string(n) + ")");
    }
    for (std::size_t i = n; i < *options.num_nodes; ++i) {
      ids.push_back(static_cast<std::int64_t>(i) + options.indexing);
    }
    n = *options.num_nodes;
  }

  const auto internal = [&](std::int64_t id) -> NodeId {
    if (options.compact_ids) {
      return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) -
                                 ids.begin());
    }
    return static_cast<NodeId>(id - options.indexing);
  };
  std::sort(pairs.begin(), pairs.end());
  const auto unique_end = std::unique(pairs.begin(), pairs.end());
  report.duplicates_dropped = static_cast<std::size_t>(pairs.end() - unique_end);
  pairs.erase(unique_end, pairs.end());

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) edges.push_back({internal(u), internal(v)});
  return {Graph(n, std::move(edges), std::move(ids)), report};
}

LoadedGraph load_edge_list(const std::filesystem::path& path,
                           const EdgeListOptions& options) {
  auto in = open_or_throw(path);
  return parse_edge_list(in, options);
}

LoadedGraph parse_adjacency_csv(std::istream& in) {
  std::vector<std::vector<int>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    std::vector<int> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      const std::string_view cell = trim(body.substr(
          start, comma == std::string_view::npos ? std::string_view::npos
                                                 : comma - start));
      if (cell == "0") {
        row.push_back(0);
      } else if (cell == "1") {
        row.push_back(1);
      } else {
        throw ParseError("adjacency entries must be 0 or 1, got '" +
                             std::string(cell) + "'",
                         line_no);
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("row has " + std::to_string(row.size()) +
                           " entries, expected " +
                           std::to_string(rows.front().size()),
                       line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DomainError("adjacency matrix is empty");
  const std::size_t n = rows.size();
  if (rows.front().size() != n) {
    throw InputShapeError("adjacency matrix is " + std::to_string(n) + " x " +
                          std::to_string(rows.front().size()));
  }
  LoadReport report;
  report.lines_read = n;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 0) ++report.self_loops_dropped;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rows[i][j] != rows[j][i]) {
        throw DomainError("adjacency matrix is not symmetric at (" +
                          std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
      }
      if (rows[i][j] != 0) {
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
      }
    }
  }
  std::vector<std::int64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::int64_t>(i) + 1;
  return {Graph(n, std::move(edges), std::move(ids)), report};
}

LoadedGraph load_adjacency_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_adjacency_csv(in);
}

void write_edge_list(std::ostream& out, const Graph& g, int indexing) {
  for (const Edge& e : g.edges()) {
    out << e.u + indexing << ' ' << e.v + indexing << '\n';
  }
}

}  // namespace dnml
