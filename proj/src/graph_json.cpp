#include "clxflow/graph_json.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clxflow/errors.hpp"

namespace clxflow {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::kParseError, what);
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    parse_fail(std::string("missing or non-integer field '") + key + "'");
  }
  return j[key].get<int>();
}

double require_double(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    parse_fail(std::string("missing or non-numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

}  // namespace

ComplexDigraph parse_graph_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) parse_fail("top level must be an object");

  const int n = require_int(root, "n");
  if (!root.contains("edges") || !root["edges"].is_array()) {
    parse_fail("missing 'edges' array");
  }

  std::vector<Edge> edges;
  for (const json& item : root["edges"]) {
    if (!item.is_object()) parse_fail("edge entries must be objects");
    Edge e;
    e.src = require_int(item, "src");
    e.dst = require_int(item, "dst");
    if (item.contains("re") || item.contains("im")) {
      e.weight = Complex(require_double(item, "re"), require_double(item, "im"));
    } else if (item.contains("r") || item.contains("beta_deg")) {
      e.weight = ComplexWeight::polar(require_double(item, "r"),
                                      require_double(item, "beta_deg"))
                     .value();
    } else {
      parse_fail("edge needs either {re, im} or {r, beta_deg}");
    }
    edges.push_back(e);
  }

  std::vector<std::string> labels;
  if (root.contains("labels")) {
    if (!root["labels"].is_array()) parse_fail("'labels' must be an array");
    for (const json& label : root["labels"]) {
      if (!label.is_string()) parse_fail("labels must be strings");
      labels.push_back(label.get<std::string>());
    }
  }

  return build_digraph(edges, n, std::move(labels));
}

ComplexDigraph load_graph_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_json(buffer.str());
}

nlohmann::json graph_to_json(const ComplexDigraph& g) {
  json root;
  root["n"] = g.size();
  root["edges"] = json::array();
  for (const Edge& e : g.edges()) {
    root["edges"].push_back({{"src", e.src},
                             {"dst", e.dst},
                             {"re", e.weight.real()},
                             {"im", e.weight.imag()}});
  }
  if (!g.labels().empty()) root["labels"] = g.labels();
  return root;
}

ComplexDigraph ingest_eies(std::istream& in) {
  std::vector<Edge> edges;
  int max_node = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;

    std::istringstream fields(line);
    long long values[4];
    char comma;
    for (int k = 0; k < 4; ++k) {
      if (k > 0 && !(fields >> comma && comma == ',')) {
        parse_fail("line " + std::to_string(line_no) +
                   ": expected 'i,j,messages_ij,messages_ji'");
      }
      if (!(fields >> values[k])) {
        parse_fail("line " + std::to_string(line_no) +
                   ": expected 'i,j,messages_ij,messages_ji'");
      }
    }
    const long long src = values[0], dst = values[1];
    const long long fwd = values[2], rev = values[3];
    if (src < 1 || dst < 1) {
      parse_fail("line " + std::to_string(line_no) + ": node ids are 1-based");
    }
    if (fwd < 0 || rev < 0) {
      throw Error(ErrorCode::kNegativeCount,
                  "line " + std::to_string(line_no) +
                      ": message counts must be nonnegative");
    }
    max_node = std::max(max_node, static_cast<int>(std::max(src, dst)));
    if (fwd == 0) continue;  // no messages forward, no edge
    edges.push_back({static_cast<int>(src - 1), static_cast<int>(dst - 1),
                     Complex(static_cast<double>(fwd), static_cast<double>(rev))});
  }
  if (max_node == 0) parse_fail("no usable rows in message CSV");
  return build_digraph(edges, max_node);
}

ComplexDigraph load_eies_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  return ingest_eies(in);
}

}  // namespace clxflow
