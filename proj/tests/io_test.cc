#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dnml/errors.hpp"
#include "dnml/io.hpp"

using namespace dnml;

namespace {

LoadedGraph parse(const std::string& text, const EdgeListOptions& options = {}) {
  std::istringstream in(text);
  return parse_edge_list(in, options);
}

}  // namespace

TEST_CASE("edge list basics") {
  const LoadedGraph loaded = parse("1 2\n2 3");
  CHECK(loaded.graph.num_nodes() == 3);
  CHECK(loaded.graph.num_edges() == 2);
  CHECK(loaded.graph.has_edge(0, 1));
  CHECK(loaded.graph.has_edge(1, 2));
  CHECK(loaded.graph.original_id(0) == 1);
  CHECK(loaded.report.warnings() == 0);
}

TEST_CASE("edge list drops self-loops and duplicates with a count") {
  const LoadedGraph loops = parse("1 1\n1 2\n");
  CHECK(loops.report.self_loops_dropped == 1);
  CHECK(loops.graph.num_edges() == 1);

  const LoadedGraph dups = parse("1 2\n2 1\n1 2 0.5\n");
  CHECK(dups.report.duplicates_dropped == 2);
  CHECK(dups.graph.num_edges() == 1);
}

TEST_CASE("edge list comments, blank lines and zero indexing") {
  const LoadedGraph loaded = parse("% header\n# another\n\n0 4\n  3 1  \n",
                                   {.indexing = 0});
  CHECK(loaded.graph.num_nodes() == 5);
  CHECK(loaded.graph.has_edge(0, 4));
  CHECK(loaded.graph.has_edge(1, 3));
  CHECK(loaded.report.lines_read == 2);
}

TEST_CASE("edge list node count override and compaction") {
  CHECK(parse("1 2\n", {.num_nodes = 5}).graph.num_nodes() == 5);
  CHECK_THROWS_AS(parse("1 9\n", {.num_nodes = 5}), DomainError);

  const LoadedGraph compact = parse("100 7\n7 42\n", {.compact_ids = true});
  CHECK(compact.graph.num_nodes() == 3);
  CHECK(compact.graph.original_id(0) == 7);
  CHECK(compact.graph.original_id(2) == 100);
  CHECK(compact.graph.has_edge(0, 2));
}

TEST_CASE("edge list errors") {
  CHECK_THROWS_AS(parse(""), DomainError);
  CHECK_THROWS_AS(parse("# only comments\n"), DomainError);
  try {
    parse("1 2\n2 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("1\n"), ParseError);
  CHECK_THROWS_AS(parse("0 1\n"), ParseError);
  CHECK_THROWS_AS(parse("1 2\n", {.indexing = 2}), DomainError);
  CHECK_THROWS(load_edge_list("/nonexistent/graph.txt"));
}

TEST_CASE("adjacency csv") {
  std::istringstream ok("0,1,0\n1,0,1\n0,1,0\n");
  const LoadedGraph g = parse_adjacency_csv(ok);
  CHECK(g.graph.num_nodes() == 3);
  CHECK(g.graph.num_edges() == 2);

  std::istringstream loop("1,1\n1,0\n");
  CHECK(parse_adjacency_csv(loop).report.self_loops_dropped == 1);

  std::istringstream asymmetric("0,1\n0,0\n");
  CHECK_THROWS_AS(parse_adjacency_csv(asymmetric), DomainError);
  std::istringstream ragged("0,1\n1\n");
  CHECK_THROWS_AS(parse_adjacency_csv(ragged), ParseError);
  std::istringstream not_square("0,1,0\n1,0,0\n");
  CHECK_THROWS_AS(parse_adjacency_csv(not_square), InputShapeError);
  std::istringstream bad("0,2\n2,0\n");
  CHECK_THROWS_AS(parse_adjacency_csv(bad), ParseError);
}

TEST_CASE("bundled karate club edge list") {
  const LoadedGraph karate =
      load_edge_list(std::filesystem::path(DNML_SOURCE_DIR) / "data" / "karate.edgelist");
  CHECK(karate.graph.num_nodes() == 34);
  CHECK(karate.graph.num_edges() == 78);
  CHECK(karate.graph.degree(0) == 16);
  CHECK(karate.graph.degree(33) == 17);
  CHECK(karate.report.warnings() == 0);
}

TEST_CASE("write_edge_list round trip") {
  const LoadedGraph loaded = parse("1 3\n2 3\n");
  std::ostringstream out;
  write_edge_list(out, loaded.graph);
  const LoadedGraph again = parse(out.str());
  CHECK(std::vector<Edge>(again.graph.edges().begin(), again.graph.edges().end()) ==
        std::vector<Edge>(loaded.graph.edges().begin(), loaded.graph.edges().end()));
}
