// Copyright 2026 The fenhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Line-based text formats.
//
// Game:       header `fen 1 <n> <d> <f> <e>`, then one line per undirected
//             edge, `F <u> <v>` or `E <u> <v>` with u < v.
// Partition:  header `partition <n> <c|unbounded>`, then one line per
//             coalition with ascending space-separated player ids.
// Edit script: one line per step, `<op> <u> <v>` with op one of
//             insert-friend / delete-friend / insert-enemy / delete-enemy.
//
// Blank lines and `#` comments are ignored everywhere.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fenhg/game.hpp"

namespace fenhg {

namespace detail {

// Yields non-empty, non-comment lines.
inline bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    return true;
  }
  return false;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

inline long long parse_ll(const std::string& s, const char* what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(std::string("cannot parse ") + what + ": '" + s + "'");
  }
}

}  // namespace detail

inline void write_game(std::ostream& out, const FenGame& g) {
  out << "fen 1 " << g.n() << ' ' << g.degree_bound() << ' ' << g.params().f << ' '
      << g.params().e << '\n';
  for (const Edge& e : g.edges())
    out << (e.label == EdgeLabel::Friend ? 'F' : 'E') << ' ' << e.u << ' ' << e.v << '\n';
}

inline FenGame read_game(std::istream& in) {
  std::string line;
  if (!detail::next_content_line(in, line)) throw ValidationError("game file: missing header");
  auto head = detail::tokens(line);
  if (head.size() != 6 || head[0] != "fen" || head[1] != "1")
    throw ValidationError("game file: bad header '" + line + "'");
  int n = static_cast<int>(detail::parse_ll(head[2], "n"));
  int d = static_cast<int>(detail::parse_ll(head[3], "d"));
  UtilityParams params{detail::parse_ll(head[4], "f"), detail::parse_ll(head[5], "e")};
  std::vector<Edge> edges;
  while (detail::next_content_line(in, line)) {
    auto t = detail::tokens(line);
    if (t.size() != 3 || (t[0] != "F" && t[0] != "E"))
      throw ValidationError("game file: bad edge line '" + line + "'");
    Player u = static_cast<Player>(detail::parse_ll(t[1], "edge endpoint"));
    Player v = static_cast<Player>(detail::parse_ll(t[2], "edge endpoint"));
    if (u >= v) throw ValidationError("game file: edge endpoints must satisfy u < v: '" + line + "'");
    edges.push_back({u, v, t[0] == "F" ? EdgeLabel::Friend : EdgeLabel::Enemy});
  }
  return FenGame(n, d, params, edges);
}

inline void write_partition(std::ostream& out, const CoalitionStructure& p) {
  out << "partition " << p.n() << ' ' << p.bound().str() << '\n';
  for (const auto& c : p.coalitions()) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << '\n';
  }
}

inline CoalitionStructure read_partition(std::istream& in) {
  std::string line;
  if (!detail::next_content_line(in, line)) throw ValidationError("partition file: missing header");
  auto head = detail::tokens(line);
  if (head.size() != 3 || head[0] != "partition")
    throw ValidationError("partition file: bad header '" + line + "'");
  int n = static_cast<int>(detail::parse_ll(head[1], "n"));
  SizeBound bound = SizeBound::parse(head[2]);
  std::vector<std::vector<Player>> coalitions;
  while (detail::next_content_line(in, line)) {
    std::vector<Player> c;
    for (const auto& t : detail::tokens(line))
      c.push_back(static_cast<Player>(detail::parse_ll(t, "player id")));
    coalitions.push_back(std::move(c));
  }
  return CoalitionStructure(n, std::move(coalitions), bound);
}

inline void write_edit_script(std::ostream& out, const EditScript& s) {
  for (const EditStep& st : s.steps())
    out << edit_op_name(st.op) << ' ' << st.u << ' ' << st.v << '\n';
}

inline EditScript read_edit_script(std::istream& in) {
  EditScript script;
  std::string line;
  while (detail::next_content_line(in, line)) {
    auto t = detail::tokens(line);
    auto op = t.size() == 3 ? edit_op_parse(t[0]) : std::nullopt;
    if (!op) throw ValidationError("edit script: bad line '" + line + "'");
    script.push(*op, static_cast<Player>(detail::parse_ll(t[1], "u")),
                static_cast<Player>(detail::parse_ll(t[2], "v")));
  }
  return script;
}

// File-path conveniences used by the CLI.

template <typename T, typename Reader>
T read_file(const std::string& path, Reader reader, const char* kind) {
  std::ifstream in(path);
  if (!in) throw ValidationError(std::string("cannot open ") + kind + " file: " + path);
  return reader(in);
}

inline FenGame read_game_file(const std::string& path) {
  return read_file<FenGame>(path, [](std::istream& in) { return read_game(in); }, "game");
}

inline CoalitionStructure read_partition_file(const std::string& path) {
  return read_file<CoalitionStructure>(
      path, [](std::istream& in) { return read_partition(in); }, "partition");
}

template <typename Writer>
void write_file(const std::string& path, Writer writer, const char* kind) {
  std::ofstream out(path);
  if (!out) throw ValidationError(std::string("cannot open ") + kind + " file for writing: " + path);
  writer(out);
}

}  // namespace fenhg
