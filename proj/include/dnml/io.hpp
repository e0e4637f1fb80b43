#ifndef DNML_IO_HPP
#define DNML_IO_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dnml/graph.hpp"

namespace dnml {

struct EdgeListOptions {
  // Index of the first node in the file (0 or 1).
  int indexing = 1;
  std::vector<std::string> comment_prefixes = {"#", "%"};
  // Node count override; must cover every id in the file.
  std::optional<std::size_t> num_nodes;
  // Map the distinct ids present in the file onto 0..m-1 in increasing order
  // instead of using id - indexing. Isolated ids are then lost.
  bool compact_ids = false;
};

struct LoadReport {
  std::size_t lines_read = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;

  std::size_t warnings() const { return self_loops_dropped + duplicates_dropped; }
};

struct LoadedGraph {
  Graph graph;
  LoadReport report;
};

// Whitespace-separated "u v" lines; extra columns (weights) are ignored.
// Throws ParseError (with line number) on malformed lines, DomainError on an
// empty file or an id below the indexing base.
LoadedGraph parse_edge_list(std::istream& in, const EdgeListOptions& options = {});
LoadedGraph load_edge_list(const std::filesystem::path& path,
                           const EdgeListOptions& options = {});

// n lines of n comma-separated 0/1 values. Asymmetric input is a DomainError;
// nonzero diagonal entries are dropped and counted as self-loops.
LoadedGraph parse_adjacency_csv(std::istream& in);
LoadedGraph load_adjacency_csv(const std::filesystem::path& path);

// Writes "u v" lines of internal ids shifted by indexing, u < v.
void write_edge_list(std::ostream& out, const Graph& g, int indexing = 1);

}  // namespace dnml

#endif  // DNML_IO_HPP
