/*
Copyright 2026 The gbcs-lab Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "core/topology.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace gbcs {

Topology::Topology(int agents, std::vector<Edge> edges)
    : agents_(agents), edges_(std::move(edges)) {
  adjacency_.assign(agents_ + 1, std::vector<char>(agents_ + 1, 0));
  for (const Edge& e : edges_) {
    adjacency_[e.a][e.b] = 1;
    adjacency_[e.b][e.a] = 1;
  }
}

Topology Topology::Create(int agent_count, std::vector<Edge> edges) {
  if (agent_count < 1) throw UsageError("topology needs at least one agent");
  for (Edge& e : edges) {
    if (e.a == e.b) throw UsageError("self-loop on agent " + std::to_string(e.a));
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.a < 1 || e.b > agent_count) {
      throw UsageError("edge {" + std::to_string(e.a) + "," + std::to_string(e.b) +
                       "} outside [1, " + std::to_string(agent_count) + "]");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw UsageError("duplicate edge {" + std::to_string(dup->a) + "," +
                     std::to_string(dup->b) + "}");
  }
  return Topology(agent_count, std::move(edges));
}

bool Topology::adjacent(int i, int j) const {
  if (i < 1 || j < 1 || i > agents_ || j > agents_) return false;
  return adjacency_[i][j] != 0;
}

int Topology::degree(int i) const {
  if (i < 1 || i > agents_) throw UsageError("agent index out of range");
  return static_cast<int>(std::count(adjacency_[i].begin(), adjacency_[i].end(), 1));
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> Tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

int ParseInt(const Token& tok, std::size_t line) {
  int value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected an integer, got '" + std::string(tok.text) + "'", line,
                     tok.column);
  }
  return value;
}

}  // namespace

Topology ParseTopology(std::string_view text) {
  std::optional<int> agents;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = end + 1;

    const auto toks = Tokenize(line);
    if (toks.empty()) continue;
    const Token& head = toks.front();
    if (head.text == "agents") {
      if (agents) throw ParseError("repeated 'agents' directive", line_no, head.column);
      if (toks.size() != 2) throw ParseError("usage: agents <H>", line_no, head.column);
      const int h = ParseInt(toks[1], line_no);
      if (h < 1) throw ParseError("agent count must be positive", line_no, toks[1].column);
      agents = h;
    } else if (head.text == "edge") {
      if (!agents) {
        throw ParseError("'agents <H>' must precede edges", line_no, head.column);
      }
      if (toks.size() != 3) throw ParseError("usage: edge <i> <j>", line_no, head.column);
      const int i = ParseInt(toks[1], line_no);
      const int j = ParseInt(toks[2], line_no);
      if (i < 1 || i > *agents) {
        throw ParseError("agent index " + std::to_string(i) + " out of range [1, " +
                             std::to_string(*agents) + "]",
                         line_no, toks[1].column);
      }
      if (j < 1 || j > *agents) {
        throw ParseError("agent index " + std::to_string(j) + " out of range [1, " +
                             std::to_string(*agents) + "]",
                         line_no, toks[2].column);
      }
      if (i == j) throw ParseError("self-loop on agent " + std::to_string(i), line_no,
                                   toks[1].column);
      const Edge e{std::min(i, j), std::max(i, j)};
      if (std::find(edges.begin(), edges.end(), e) != edges.end()) {
        throw ParseError("duplicate edge {" + std::to_string(e.a) + "," +
                             std::to_string(e.b) + "}",
                         line_no, head.column);
      }
      edges.push_back(e);
    } else {
      throw ParseError("unknown directive '" + std::string(head.text) + "'", line_no,
                       head.column);
    }
  }
  if (!agents) throw ParseError("missing 'agents <H>' directive", 1, 1);
  return Topology::Create(*agents, std::move(edges));
}

Topology ParseTopologyJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("agents") || !doc["agents"].is_number_integer())
    throw ParseError("JSON graph needs an integer 'agents' field");
  const int h = doc["agents"].get<int>();
  if (h < 1) throw ParseError("agent count must be positive");
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ParseError("'edges' must be an array");
    std::size_t idx = 0;
    for (const auto& e : doc["edges"]) {
      ++idx;
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw ParseError("edge #" + std::to_string(idx) + " must be [i, j]");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
  }
  for (const auto& [k, v] : doc.items()) {
    if (k != "agents" && k != "edges") throw ParseError("unknown key '" + k + "'");
  }
  try {
    return Topology::Create(h, std::move(edges));
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
}

Topology LoadTopology(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open graph file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    if (path.extension() == ".json") return ParseTopologyJson(buf.str());
    return ParseTopology(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.what());
  }
}

std::string FormatTopology(const Topology& top) {
  std::string out = "agents " + std::to_string(top.agent_count()) + "\n";
  for (const Edge& e : top.edges())
    out += "edge " + std::to_string(e.a) + " " + std::to_string(e.b) + "\n";
  return out;
}

StrategyVector StrategyVectorOf(const Topology& top, int agent) {
  if (agent < 1 || agent > top.agent_count())
    throw UsageError("agent index " + std::to_string(agent) + " out of range");
  StrategyVector v(top.dimension(), 0);
  v[0] = 1;
  v[agent] = 1;
  for (int j = 1; j <= top.agent_count(); ++j)
    if (top.adjacent(agent, j)) v[j] = 1;
  return v;
}

linalg::Matrix Laplacian(const Topology& top) {
  const int h = top.agent_count();
  linalg::Matrix l(h, h);
  for (const Edge& e : top.edges()) {
    l(e.a - 1, e.b - 1) -= 1.0;
    l(e.b - 1, e.a - 1) -= 1.0;
    l(e.a - 1, e.a - 1) += 1.0;
    l(e.b - 1, e.b - 1) += 1.0;
  }
  return l;
}

bool ClassicControllable(const Topology& top, int leader, std::optional<double> tol) {
  const int h = top.agent_count();
  if (leader < 1 || leader > h) throw UsageError("leader index out of range");
  const linalg::Matrix l = Laplacian(top);
  linalg::Matrix kalman(h, h);
  std::vector<double> col(h, 0.0);
  col[leader - 1] = 1.0;
  for (int k = 0; k < h; ++k) {
    for (int r = 0; r < h; ++r) kalman(r, k) = col[r];
    col = l * col;
  }
  return linalg::Rank(kalman, tol).rank == static_cast<std::size_t>(h);
}

}  // namespace gbcs
