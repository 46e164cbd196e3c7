#pragma once

// Shared helpers for the test suites: deterministic random generators over a
// small term universe, and fixture file access.

#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cbiont/graph.hpp"
#include "cbiont/vocab.hpp"

namespace testsupport {

using namespace cbiont;

inline std::string fixture_path(const std::string& name) {
  return std::string(CBIONT_FIXTURES_DIR) + "/" + name;
}

inline std::string repo_path(const std::string& name) {
  return std::string(CBIONT_REPO_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "cannot open ", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE_MESSAGE(bool(out), "cannot write ", path);
  out << content;
}

// Small IRI pool: dense graphs, frequent joins.
inline Iri pool_iri(std::mt19937& rng, int pool = 24) {
  std::uniform_int_distribution<int> pick(0, pool - 1);
  return Iri("http://example.org/t" + std::to_string(pick(rng)));
}

inline Literal pool_literal(std::mt19937& rng) {
  static const char* lexicals[] = {"alpha", "beta", "gamma", "Question", "42", "x y\nz"};
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<int> kind(0, 3);
  std::string lexical = lexicals[pick(rng)];
  switch (kind(rng)) {
    case 0: return Literal::string(std::move(lexical));
    case 1: return Literal(std::move(lexical), vocab::xsd_integer());
    case 2: return Literal::lang_string(std::move(lexical), "en");
    default: return Literal(std::move(lexical), vocab::xsd_date_time());
  }
}

inline Term pool_term(std::mt19937& rng, int literal_percent = 25) {
  std::uniform_int_distribution<int> pct(0, 99);
  if (pct(rng) < literal_percent) return pool_literal(rng);
  return pool_iri(rng);
}

inline Triple random_triple(std::mt19937& rng) {
  return Triple(pool_iri(rng), pool_iri(rng, 8), pool_term(rng));
}

inline Graph random_graph(std::mt19937& rng, std::size_t max_triples) {
  std::uniform_int_distribution<std::size_t> size(0, max_triples);
  Graph g;
  const std::size_t n = size(rng);
  for (std::size_t i = 0; i < n; ++i) g.insert(random_triple(rng));
  return g;
}

// Brute-force match: linear scan over every triple.
inline std::vector<Triple> linear_scan_match(const Graph& g, const std::optional<Iri>& s,
                                             const std::optional<Iri>& p,
                                             const std::optional<Term>& o) {
  std::vector<Triple> out;
  for (const Triple& t : g) {
    if (s && !(t.subject == *s)) continue;
    if (p && !(t.predicate == *p)) continue;
    if (o && !(t.object == *o)) continue;
    out.push_back(t);
  }
  // Graph iteration is already (S,P,O)-sorted, so no re-sort is needed.
  return out;
}

}  // namespace testsupport
