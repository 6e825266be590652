#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "clxflow/graph.hpp"

namespace clxflow {

/// Canonical format: {"n": int, "edges": [{"src","dst","re","im"}],
/// "labels": [str]?}. Edges may instead use the polar keys
/// {"src","dst","r","beta_deg"}.
ComplexDigraph parse_graph_json(const std::string& text);
ComplexDigraph load_graph_json(const std::string& path);
nlohmann::json graph_to_json(const ComplexDigraph& g);

/// Message-count CSV, one directed edge per row `i,j,messages_ij,messages_ji`
/// (1-based node ids, nonnegative integer counts). Emits edge i→j with
/// weight messages_ij + ι·messages_ji; rows with messages_ij = 0 emit
/// nothing.
ComplexDigraph ingest_eies(std::istream& in);
ComplexDigraph load_eies_csv(const std::string& path);

}  // namespace clxflow
