// Copyright 2026 The gamebush Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gamebush/game_bundle.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gamebush/error.h"

namespace gamebush {

using nlohmann::json;

double GameBundle::PayoffBound() const {
  double b = 0.0;
  for (const PayoffModel& m : continuation) b = std::max(b, m.bound());
  return b;
}

std::string FormatViolations(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << v.invariant;
    if (!v.vertices.empty()) {
      os << " at";
      for (const auto& id : v.vertices) os << ' ' << id;
    }
    if (!v.detail.empty()) os << ": " << v.detail;
    os << '\n';
  }
  return os.str();
}

namespace {

// Reorders a model whose class was listed in some order so that row i of the
// result belongs to block position i. from_block[i] is the block position of
// listed terminal i.
PayoffModel Reorder(const PayoffModel& model, const std::vector<int>& from_block) {
  const int k = model.class_size();
  const int n = model.num_players();
  bool identity = true;
  for (int i = 0; i < k; ++i) identity = identity && from_block[i] == i;
  if (identity) return model;

  auto rows = [&](const std::vector<double>& listed) {
    std::vector<double> out(listed.size());
    for (int i = 0; i < k; ++i) {
      std::copy_n(listed.begin() + i * n, n, out.begin() + from_block[i] * n);
    }
    return out;
  };
  auto point = [&](const std::vector<double>& listed) {
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) out[from_block[i]] = listed[i];
    return out;
  };
  switch (model.kind()) {
    case PayoffModel::Kind::kConstant:
      return PayoffModel::Constant(k, n, rows(model.constant()));
    case PayoffModel::Kind::kFunction: {
      PayoffEvaluator eval = [model, from_block, k, n](std::span<const double> w) {
        std::vector<double> listed_w(k);
        for (int i = 0; i < k; ++i) listed_w[i] = w[from_block[i]];
        auto cands = model.Evaluate(listed_w);
        for (auto& c : cands) {
          std::vector<double> out(c.payoff.size());
          for (int i = 0; i < k; ++i) {
            std::copy_n(c.payoff.begin() + i * n, n,
                        out.begin() + from_block[i] * n);
          }
          c.payoff = std::move(out);
        }
        return cands;
      };
      return PayoffModel::Function(k, n, model.function_name(),
                                   model.function_params(), std::move(eval),
                                   model.bound(), model.max_candidates());
    }
    case PayoffModel::Kind::kSamples:
      break;
  }
  if (model.interpolation() == Interpolation::kNearest) {
    std::vector<NearestSample> pts;
    for (const NearestSample& p : model.nearest_points()) {
      NearestSample q;
      q.w = point(p.w);
      for (const PayoffCandidate& c : p.candidates) {
        q.candidates.push_back({rows(c.payoff), c.tag});
      }
      pts.push_back(std::move(q));
    }
    return PayoffModel::Nearest(k, n, std::move(pts), model.radius());
  }
  std::vector<std::vector<GraphSample>> branches;
  for (const auto& branch : model.branches()) {
    std::vector<GraphSample> b;
    for (const GraphSample& s : branch) {
      b.push_back({point(s.w), rows(s.payoff), s.tag});
    }
    branches.push_back(std::move(b));
  }
  return PayoffModel::LinearBranches(k, n, std::move(branches));
}

}  // namespace

GameBundle MakeBundle(GameBush bush,
                      std::vector<std::pair<Block, PayoffModel>> models,
                      ParameterMap parameters) {
  bush.Finalize();
  std::vector<Violation> violations = ValidateBush(bush);
  if (!violations.empty()) {
    throw ValidationError("invalid game bush:\n" + FormatViolations(violations));
  }
  GameBundle bundle;
  bundle.meet = ComputeMeetPartition(bush);
  bundle.parameters = std::move(parameters);
  std::vector<std::optional<PayoffModel>> slots(bundle.meet.num_blocks());
  for (auto& [cls, model] : models) {
    if (cls.empty()) throw UnknownClassError("empty continuation class");
    int block = bundle.meet.index[cls[0]];
    std::set<int> given(cls.begin(), cls.end());
    bool matches = block >= 0 && given.size() == cls.size() &&
                   given == std::set<int>(bundle.meet.blocks[block].begin(),
                                          bundle.meet.blocks[block].end());
    if (!matches) {
      std::string ids;
      for (int v : cls) ids += " " + bush.id(v);
      throw UnknownClassError("continuation class {" + ids +
                              " } is not a block of the meet partition");
    }
    if (slots[block]) {
      throw ValidationError("duplicate continuation for class of terminal " +
                            bush.id(cls[0]));
    }
    if (model.class_size() != static_cast<int>(cls.size()) ||
        model.num_players() != bush.num_players()) {
      throw ValidationError("continuation for class of terminal " +
                            bush.id(cls[0]) + " has the wrong shape");
    }
    const Block& target = bundle.meet.blocks[block];
    std::vector<int> from_block(cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i) {
      from_block[i] = static_cast<int>(
          std::find(target.begin(), target.end(), cls[i]) - target.begin());
    }
    slots[block] = Reorder(model, from_block);
  }
  for (int b = 0; b < bundle.meet.num_blocks(); ++b) {
    if (!slots[b]) {
      throw ValidationError("missing continuation for the class of terminal " +
                            bush.id(bundle.meet.blocks[b][0]));
    }
    bundle.continuation.push_back(std::move(*slots[b]));
  }
  bundle.bush = std::move(bush);
  return bundle;
}

namespace {

double Number(const json& j, const ParameterMap& params) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return EvaluateExpression(j.get<std::string>(), params);
  throw ParseError("expected a number or an expression, got " + j.dump());
}

Probability ParseProbability(const json& j, const ParameterMap& params) {
  Probability p;
  if (j.is_string()) {
    p.exact = ParseRational(j.get<std::string>());
    p.value = p.exact ? p.exact->value() : Number(j, params);
  } else {
    p.value = Number(j, params);
  }
  return p;
}

std::vector<std::string> Strings(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const json& e : j) {
    if (!e.is_string()) {
      throw ParseError(std::string(what) + " must contain strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::vector<std::string>> ParseBlocks(
    const json& j, const std::vector<std::string>& universe, const char* what) {
  std::vector<std::vector<std::string>> blocks;
  if (j.is_string()) {
    const std::string mode = j.get<std::string>();
    if (mode == "discrete") {
      for (const auto& id : universe) blocks.push_back({id});
    } else if (mode == "single") {
      blocks.push_back(universe);
    } else {
      throw ParseError(std::string(what) + ": unknown shorthand '" + mode + "'");
    }
    return blocks;
  }
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  for (const json& b : j) blocks.push_back(Strings(b, what));
  return blocks;
}

// Rows for the listed class order from {"t": [..]} or [[..], ..] or [..].
std::vector<double> ParseRows(const json& j, const std::vector<std::string>& cls,
                              int num_players, const ParameterMap& params) {
  std::vector<double> out;
  auto row = [&](const json& r) {
    if (!r.is_array() || static_cast<int>(r.size()) != num_players) {
      throw ParseError("payoff row must list one value per player");
    }
    for (const json& x : r) out.push_back(Number(x, params));
  };
  if (j.is_object()) {
    for (const auto& t : cls) {
      if (!j.contains(t)) throw ParseError("payoff missing terminal '" + t + "'");
      row(j.at(t));
    }
  } else if (j.is_array() && !j.empty() && j[0].is_array()) {
    if (j.size() != cls.size()) throw ParseError("payoff rows != class size");
    for (const json& r : j) row(r);
  } else if (j.is_array() && cls.size() == 1) {
    row(j);
  } else {
    throw ParseError("unrecognized payoff table " + j.dump());
  }
  return out;
}

std::vector<double> ParsePoint(const json& j, std::size_t k,
                               const ParameterMap& params) {
  if (!j.is_array() || j.size() != k) {
    throw ParseError("sample point must have one coordinate per class terminal");
  }
  std::vector<double> w;
  for (const json& x : j) w.push_back(Number(x, params));
  return w;
}

PayoffModel ParseModel(const json& entry, const std::vector<std::string>& cls,
                       int num_players, const ParameterMap& params) {
  const std::string kind = entry.value("kind", "");
  const int k = static_cast<int>(cls.size());
  if (kind == "constant") {
    return PayoffModel::Constant(
        k, num_players, ParseRows(entry.at("payoff"), cls, num_players, params));
  }
  if (kind == "function") {
    ParameterMap fparams;
    if (entry.contains("params")) {
      for (const auto& [key, value] : entry.at("params").items()) {
        fparams[key] = Number(value, params);
      }
    }
    return MakeBuiltinModel(entry.at("name").get<std::string>(), fparams, k,
                            num_players);
  }
  if (kind == "samples") {
    const std::string interp = entry.value("interpolation", "linear");
    if (interp == "linear") {
      std::vector<std::vector<GraphSample>> branches;
      for (const json& b : entry.at("branches")) {
        std::vector<GraphSample> branch;
        for (const json& s : b) {
          branch.push_back({ParsePoint(s.at("w"), cls.size(), params),
                            ParseRows(s.at("payoff"), cls, num_players, params),
                            s.value("tag", std::int64_t{-1})});
        }
        branches.push_back(std::move(branch));
      }
      return PayoffModel::LinearBranches(k, num_players, std::move(branches));
    }
    if (interp == "nearest") {
      std::vector<NearestSample> pts;
      for (const json& p : entry.at("points")) {
        NearestSample s;
        s.w = ParsePoint(p.at("w"), cls.size(), params);
        for (const json& c : p.at("candidates")) {
          s.candidates.push_back(
              {ParseRows(c, cls, num_players, params), -1});
        }
        pts.push_back(std::move(s));
      }
      return PayoffModel::Nearest(k, num_players, std::move(pts),
                                  Number(entry.at("radius"), params));
    }
    throw ParseError("unknown interpolation '" + interp + "'");
  }
  throw ParseError("unknown continuation kind '" + kind + "'");
}

}  // namespace

GameBundle ParseBundle(const json& doc, const ParameterMap& overrides) {
  try {
    ParameterMap params;
    if (doc.contains("parameters")) {
      for (const auto& [key, value] : doc.at("parameters").items()) {
        params[key] = Number(value, params);
      }
    }
    for (const auto& [key, value] : overrides) params[key] = value;

    GameBush bush;
    for (const auto& name : Strings(doc.at("players"), "players")) {
      bush.AddPlayer(name);
    }
    for (const json& v : doc.at("vertices")) {
      bush.AddVertex(v.is_object() ? v.at("id").get<std::string>()
                                   : v.get<std::string>());
    }
    for (const json& a : doc.at("arrows")) {
      auto pair = Strings(a, "arrow");
      if (pair.size() != 2) throw ParseError("arrow must have two endpoints");
      bush.AddArrow(pair[0], pair[1]);
    }
    if (doc.contains("nature")) {
      for (const auto& [vertex, dist] : doc.at("nature").items()) {
        std::vector<std::string> kids;
        std::vector<Probability> probs;
        for (const auto& [child, p] : dist.items()) {
          kids.push_back(child);
          probs.push_back(ParseProbability(p, params));
        }
        bush.SetNature(vertex, std::move(kids), std::move(probs));
      }
    }
    if (doc.contains("info_partitions")) {
      for (const auto& [player, sets] : doc.at("info_partitions").items()) {
        int n = bush.PlayerIndex(player);
        if (n < 0) throw ParseError("unknown player '" + player + "'");
        for (const json& set : sets) {
          std::vector<std::pair<std::string, std::vector<std::string>>> moves;
          for (const auto& [vertex, kids] : set.at("moves").items()) {
            moves.emplace_back(vertex, Strings(kids, "moves"));
          }
          bush.AddInfoSet(n, set.at("name").get<std::string>(),
                          Strings(set.at("actions"), "actions"),
                          std::move(moves));
        }
      }
    }
    bush.Finalize();
    auto partitions = [&](const char* key, const std::vector<int>& universe,
                          bool roots) {
      if (!doc.contains(key)) throw ParseError(std::string("missing ") + key);
      for (const auto& [player, blocks] : doc.at(key).items()) {
        int n = bush.PlayerIndex(player);
        if (n < 0) throw ParseError("unknown player '" + player + "'");
        auto parsed = ParseBlocks(blocks, bush.Ids(universe), key);
        if (roots) {
          bush.SetRootPartition(n, std::move(parsed));
        } else {
          bush.SetTerminalPartition(n, std::move(parsed));
        }
      }
    };
    partitions("root_partitions", bush.roots(), true);
    partitions("terminal_partitions", bush.terminals(), false);
    bush.Finalize();

    std::vector<std::pair<Block, PayoffModel>> models;
    for (const json& entry : doc.at("continuations")) {
      auto cls = Strings(entry.at("class"), "class");
      Block block;
      for (const auto& id : cls) block.push_back(bush.RequireIndex(id));
      models.emplace_back(std::move(block),
                          ParseModel(entry, cls, bush.num_players(), params));
    }
    return MakeBundle(std::move(bush), std::move(models), std::move(params));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed bundle: ") + e.what());
  }
}

GameBundle LoadBundle(const std::string& path, const ParameterMap& overrides) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return ParseBundle(doc, overrides);
}

namespace {

json RowsToJson(const GameBundle& b, const Block& cls,
                const std::vector<double>& payoff) {
  json out = json::object();
  const int n = b.bush.num_players();
  for (std::size_t i = 0; i < cls.size(); ++i) {
    out[b.bush.id(cls[i])] = std::vector<double>(
        payoff.begin() + i * n, payoff.begin() + (i + 1) * n);
  }
  return out;
}

}  // namespace

json BundleToJson(const GameBundle& b) {
  const GameBush& bush = b.bush;
  json doc;
  if (!b.parameters.empty()) {
    doc["parameters"] = json::object();
    for (const auto& [k, v] : b.parameters) doc["parameters"][k] = v;
  }
  doc["players"] = json::array();
  for (int n = 0; n < bush.num_players(); ++n) {
    doc["players"].push_back(bush.player_name(n));
  }
  doc["vertices"] = json::array();
  for (int v = 0; v < bush.num_vertices(); ++v) doc["vertices"].push_back(bush.id(v));
  doc["arrows"] = json::array();
  for (auto [from, to] : bush.arrows()) {
    doc["arrows"].push_back({bush.id(from), bush.id(to)});
  }
  doc["nature"] = json::object();
  for (const NatureNode& node : bush.nature_nodes()) {
    json dist = json::object();
    for (std::size_t k = 0; k < node.children.size(); ++k) {
      const Probability& p = node.probabilities[k];
      if (p.exact) {
        dist[bush.id(node.children[k])] =
            std::to_string(p.exact->num) + "/" + std::to_string(p.exact->den);
      } else {
        dist[bush.id(node.children[k])] = p.value;
      }
    }
    doc["nature"][bush.id(node.vertex)] = dist;
  }
  doc["info_partitions"] = json::object();
  doc["root_partitions"] = json::object();
  doc["terminal_partitions"] = json::object();
  for (int n = 0; n < bush.num_players(); ++n) {
    const std::string& name = bush.player_name(n);
    json sets = json::array();
    for (int i : bush.info_sets_of(n)) {
      const InfoSet& set = bush.info_sets()[i];
      json moves = json::object();
      for (std::size_t k = 0; k < set.vertices.size(); ++k) {
        moves[bush.id(set.vertices[k])] = bush.Ids(set.moves[k]);
      }
      sets.push_back({{"name", set.name}, {"actions", set.actions},
                      {"moves", moves}});
    }
    doc["info_partitions"][name] = sets;
    json roots = json::array();
    for (const Block& blk : bush.root_partition(n)) roots.push_back(bush.Ids(blk));
    doc["root_partitions"][name] = roots;
    json terms = json::array();
    for (const Block& blk : bush.terminal_partition(n)) {
      terms.push_back(bush.Ids(blk));
    }
    doc["terminal_partitions"][name] = terms;
  }
  doc["continuations"] = json::array();
  for (int c = 0; c < b.meet.num_blocks(); ++c) {
    const Block& cls = b.meet.blocks[c];
    const PayoffModel& m = b.model(c);
    json entry;
    entry["class"] = bush.Ids(cls);
    switch (m.kind()) {
      case PayoffModel::Kind::kConstant:
        entry["kind"] = "constant";
        entry["payoff"] = RowsToJson(b, cls, m.constant());
        break;
      case PayoffModel::Kind::kFunction:
        entry["kind"] = "function";
        entry["name"] = m.function_name();
        entry["params"] = json::object();
        for (const auto& [k, v] : m.function_params()) entry["params"][k] = v;
        break;
      case PayoffModel::Kind::kSamples:
        entry["kind"] = "samples";
        if (m.interpolation() == Interpolation::kLinear) {
          entry["interpolation"] = "linear";
          entry["branches"] = json::array();
          for (const auto& branch : m.branches()) {
            json jb = json::array();
            for (const GraphSample& s : branch) {
              jb.push_back({{"w", s.w}, {"payoff", RowsToJson(b, cls, s.payoff)},
                            {"tag", s.tag}});
            }
            entry["branches"].push_back(jb);
          }
        } else {
          entry["interpolation"] = "nearest";
          entry["radius"] = m.radius();
          entry["points"] = json::array();
          for (const NearestSample& p : m.nearest_points()) {
            json cands = json::array();
            for (const auto& c : p.candidates) {
              cands.push_back(RowsToJson(b, cls, c.payoff));
            }
            entry["points"].push_back({{"w", p.w}, {"candidates", cands}});
          }
        }
        break;
    }
    doc["continuations"].push_back(entry);
  }
  return doc;
}

}  // namespace gamebush
