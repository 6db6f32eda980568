#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sbmphase/graph.hpp"

namespace sbmphase {

// File-format or file-content failure; the message carries path and, where
// applicable, the 1-based line number as "path:line".
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LabeledGraph {
  Graph graph;
  std::vector<std::string> ids;                        // dense index -> external id
  std::unordered_map<std::string, std::uint32_t> id_map;  // external id -> dense index
  std::vector<std::uint8_t> labels;                    // empty when has_labels is false
  bool has_labels = false;
};

// Whitespace-delimited edge list: two id tokens per line, extra tokens
// ignored, '#'-prefixed and blank lines skipped. Ids may be arbitrary
// strings and are assigned dense indices in first-appearance order.
// Duplicate edges, reverse orientations, and self-loops collapse or drop;
// nodes appearing only in self-loops stay, with degree 0.
LabeledGraph read_edge_list(const std::string& path);

// One "id label" pair per line, same dialect. Exactly two distinct label
// values must appear; they map to 1 and 2 in first-appearance order. Every
// id must be known and every known id must be labeled; offenders are named
// in the error.
std::vector<std::uint8_t> read_labels(const std::string& path,
                                      const std::unordered_map<std::string, std::uint32_t>& id_map);

// With drop_isolated set, removes degree-0 nodes and compacts indices,
// external ids, and labels; otherwise returns the input unchanged.
// Idempotent.
LabeledGraph preprocess(const LabeledGraph& lg, bool drop_isolated);

// Sorted "min max" integer pairs over dense indices, one per line.
void write_canonical_edge_list(std::ostream& os, const Graph& g);

}  // namespace sbmphase
