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

#include "gamebush/strategies.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gamebush/error.h"
#include "gamebush/simd/kernels.h"
#include "gamebush/subgames.h"

namespace gamebush {

using nlohmann::json;

std::int64_t StrategySpace::Encode(std::span<const int> actions) const {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < sets.size(); ++k) s += actions[k] * stride[k];
  return s;
}

StrategySpace EnumeratePure(const GameBush& bush, int player,
                            std::int64_t cap) {
  StrategySpace space;
  space.player = player;
  space.sets = bush.info_sets_of(player);
  for (int w : space.sets) {
    int r = bush.info_sets()[w].num_actions();
    if (r <= 0) {
      throw ValidationError("information set " + bush.info_sets()[w].name +
                            " has no actions");
    }
    if (space.size > cap / r) {
      throw SizeGuardError("player " + bush.player_name(player) +
                           " has more than " + std::to_string(cap) +
                           " pure strategies");
    }
    space.size *= r;
    space.radix.push_back(r);
  }
  space.stride.assign(space.sets.size(), 1);
  for (int k = static_cast<int>(space.sets.size()) - 2; k >= 0; --k) {
    space.stride[k] = space.stride[k + 1] * space.radix[k + 1];
  }
  return space;
}

StrategyTables::StrategyTables(const GameBush& bush, std::int64_t cap)
    : bush_(&bush) {
  const int nv = bush.num_vertices();
  const int nt = static_cast<int>(bush.terminals().size());
  chance_.assign(nv, 1.0);
  for (int v = 0; v < nv; ++v) {
    std::vector<int> path = bush.PathTo(v);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const NatureNode* node = bush.nature(path[i]);
      if (node == nullptr) continue;
      auto it = std::find(node->children.begin(), node->children.end(),
                          path[i + 1]);
      chance_[v] *= node->probabilities[it - node->children.begin()].value;
    }
  }
  for (int n = 0; n < bush.num_players(); ++n) {
    spaces_.push_back(EnumeratePure(bush, n, cap));
    const StrategySpace& sp = spaces_.back();
    std::vector<int> slot_of(bush.info_sets().size(), -1);
    for (std::size_t k = 0; k < sp.sets.size(); ++k) slot_of[sp.sets[k]] = k;

    std::vector<double> vm(static_cast<std::size_t>(nv) * sp.size, 0.0);
    for (int v = 0; v < nv; ++v) {
      std::vector<std::pair<int, int>> need;  // (slot, action)
      std::vector<int> path = bush.PathTo(v);
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        int w = bush.info_set_of(path[i]);
        if (w < 0 || slot_of[w] < 0) continue;
        need.emplace_back(slot_of[w], bush.ActionTo(path[i], path[i + 1]));
      }
      double* row = vm.data() + static_cast<std::size_t>(v) * sp.size;
      for (std::int64_t s = 0; s < sp.size; ++s) {
        bool ok = true;
        for (auto [k, a] : need) ok = ok && sp.Action(s, k) == a;
        row[s] = ok ? 1.0 : 0.0;
      }
    }
    std::vector<double> tm(static_cast<std::size_t>(sp.size) * nt);
    for (std::int64_t s = 0; s < sp.size; ++s) {
      for (int t = 0; t < nt; ++t) {
        tm[s * nt + t] =
            vm[static_cast<std::size_t>(bush.terminals()[t]) * sp.size + s];
      }
    }
    vertex_mask_.push_back(std::move(vm));
    terminal_mask_.push_back(std::move(tm));
  }
}

std::span<const double> StrategyTables::VertexMask(int n, int v) const {
  const std::size_t m = spaces_[n].size;
  return {vertex_mask_[n].data() + v * m, m};
}

std::span<const double> StrategyTables::TerminalMask(int n,
                                                     std::int64_t s) const {
  const std::size_t nt = bush_->terminals().size();
  return {terminal_mask_[n].data() + s * nt, nt};
}

double StrategyTables::PlayerReach(int n, std::span<const double> sigma_n,
                                   int v) const {
  return simd::Dot(sigma_n, VertexMask(n, v));
}

MixedProfile StrategyTables::Uniform() const {
  MixedProfile p;
  for (const StrategySpace& sp : spaces_) {
    p.sigma.emplace_back(sp.size, 1.0 / sp.size);
  }
  return p;
}

MixedProfile StrategyTables::Pure(std::span<const std::int64_t> choice) const {
  MixedProfile p;
  for (int n = 0; n < num_players(); ++n) {
    p.sigma.emplace_back(spaces_[n].size, 0.0);
    p.sigma[n][choice[n]] = 1.0;
  }
  return p;
}

std::string StrategyTables::Label(int n, std::int64_t s) const {
  const StrategySpace& sp = spaces_[n];
  if (sp.sets.empty()) return "-";
  std::string out;
  for (std::size_t k = 0; k < sp.sets.size(); ++k) {
    if (k > 0) out += '.';
    out += bush_->info_sets()[sp.sets[k]].actions[sp.Action(s, k)];
  }
  return out;
}

std::int64_t StrategyTables::FindLabel(int n, std::string_view label) const {
  for (std::int64_t s = 0; s < spaces_[n].size; ++s) {
    if (Label(n, s) == label) return s;
  }
  return -1;
}

ReachReport Reach(const GameBundle& bundle, const StrategyTables& tables,
                  std::span<const double> q, const MixedProfile& sigma) {
  const GameBush& bush = bundle.bush;
  ReachReport r;
  r.q.assign(q.begin(), q.end());
  r.vertex.assign(bush.num_vertices(), 0.0);
  for (int v = 0; v < bush.num_vertices(); ++v) {
    double p = q[bush.root_position(bush.root_of(v))] * tables.chance(v);
    for (int n = 0; n < bush.num_players() && p != 0.0; ++n) {
      p *= tables.PlayerReach(n, sigma.sigma[n], v);
    }
    r.vertex[v] = p;
  }
  for (int t : bush.terminals()) r.terminal.push_back(r.vertex[t]);
  for (const Block& block : bundle.meet.blocks) {
    double mass = 0.0;
    for (int t : block) mass += r.vertex[t];
    r.class_prob.push_back(mass);
    std::vector<double> cond;
    if (mass > 0.0) {
      for (int t : block) cond.push_back(r.vertex[t] / mass);
    }
    r.conditional.push_back(std::move(cond));
  }
  return r;
}

Selector Selector::Parse(std::string_view text) {
  Selector s;
  if (text == "first") return s;
  if (text == "nearest") {
    s.rule = Rule::kNearest;
    return s;
  }
  constexpr std::string_view kExplicit = "explicit:";
  if (text.substr(0, kExplicit.size()) == kExplicit) {
    s.rule = Rule::kExplicit;
    std::stringstream in(std::string(text.substr(kExplicit.size())));
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        s.branch.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw ParseError("bad selector branch '" + item + "'");
      }
      if (s.branch.back() < 0) throw ParseError("negative selector branch");
    }
    return s;
  }
  throw ParseError("unknown selector '" + std::string(text) + "'");
}

std::optional<Selection> SelectCandidate(const PayoffModel& model,
                                         std::span<const double> w,
                                         const Selector& selector, int block) {
  std::vector<PayoffCandidate> cands = model.Evaluate(w);
  if (cands.empty()) return std::nullopt;
  int k = static_cast<int>(cands.size());
  int pick = 0;
  if (selector.rule == Selector::Rule::kExplicit &&
      block < static_cast<int>(selector.branch.size())) {
    pick = std::min(selector.branch[block], k - 1);
  } else if (selector.rule == Selector::Rule::kNearest &&
             block < static_cast<int>(selector.reference.size()) &&
             !selector.reference[block].empty()) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      double d = 0.0;
      for (std::size_t j = 0; j < cands[i].payoff.size(); ++j) {
        double e = cands[i].payoff[j] - selector.reference[block][j];
        d += e * e;
      }
      if (d < best) {
        best = d;
        pick = i;
      }
    }
  }
  return Selection{std::move(cands[pick]), pick, k};
}

namespace {

std::string Describe(const GameBush& bush, const Block& block,
                     std::span<const double> w) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < block.size(); ++i) {
    os << (i ? "," : "") << bush.id(block[i]);
  }
  os << "} at w=(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ')';
  return os.str();
}

}  // namespace

Plan MakePlan(const GameBundle& bundle, const StrategyTables& tables,
              std::span<const double> q, const MixedProfile& sigma,
              const Selector& selector) {
  const GameBush& bush = bundle.bush;
  const int np = bush.num_players();
  Plan plan;
  plan.q.assign(q.begin(), q.end());
  plan.sigma = sigma;
  plan.reach = Reach(bundle, tables, q, sigma);
  plan.y.assign(bush.terminals().size() * np, 0.0);
  for (int c = 0; c < bundle.meet.num_blocks(); ++c) {
    const Block& block = bundle.meet.blocks[c];
    std::vector<double> w = plan.reach.conditional[c];
    std::vector<double> witness;
    if (w.empty()) {
      if (c < static_cast<int>(selector.witness.size()) &&
          !selector.witness[c].empty()) {
        w = selector.witness[c];
      } else {
        w.assign(block.size(), 1.0 / block.size());
      }
      witness = w;
    }
    std::optional<Selection> sel =
        SelectCandidate(bundle.model(c), w, selector, c);
    if (!sel) {
      throw NoPlanError("no plan: continuation of class " +
                        Describe(bush, block, w) + " is empty");
    }
    for (std::size_t i = 0; i < block.size(); ++i) {
      int t = bush.terminal_position(block[i]);
      std::copy_n(sel->candidate.payoff.begin() + i * np, np,
                  plan.y.begin() + t * np);
    }
    plan.witness.push_back(std::move(witness));
    plan.branch.push_back(sel->index);
    plan.num_candidates.push_back(sel->num_candidates);
    plan.tags.push_back(sel->candidate.tag);
  }
  return plan;
}

std::vector<double> PlanResiduals(const GameBundle& bundle, const Plan& plan) {
  const GameBush& bush = bundle.bush;
  const int np = bush.num_players();
  std::vector<double> out;
  for (int c = 0; c < bundle.meet.num_blocks(); ++c) {
    const Block& block = bundle.meet.blocks[c];
    const std::vector<double>& w = plan.reach.conditional[c].empty()
                                       ? plan.witness[c]
                                       : plan.reach.conditional[c];
    std::vector<double> y;
    for (int t : block) {
      int pos = bush.terminal_position(t);
      y.insert(y.end(), plan.y.begin() + pos * np,
               plan.y.begin() + (pos + 1) * np);
    }
    out.push_back(bundle.model(c).Distance(w, y));
  }
  return out;
}

std::vector<double> ActionValues(const GameBundle& bundle,
                                 const StrategyTables& tables, const Plan& plan,
                                 int n) {
  const GameBush& bush = bundle.bush;
  const int np = bush.num_players();
  const auto& terms = bush.terminals();
  std::vector<double> weight(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    int v = terms[t];
    double p = plan.q[bush.root_position(bush.root_of(v))] * tables.chance(v);
    for (int m = 0; m < np && p != 0.0; ++m) {
      if (m != n) p *= tables.PlayerReach(m, plan.sigma.sigma[m], v);
    }
    weight[t] = p * plan.y[t * np + n];
  }
  std::vector<double> f(tables.num_strategies(n));
  for (std::int64_t s = 0; s < tables.num_strategies(n); ++s) {
    f[s] = simd::Dot(tables.TerminalMask(n, s), weight);
  }
  return f;
}

std::vector<double> ExpectedPayoffs(const GameBundle& bundle,
                                    const Plan& plan) {
  const int np = bundle.bush.num_players();
  std::vector<double> out(np, 0.0);
  for (std::size_t t = 0; t < plan.reach.terminal.size(); ++t) {
    for (int n = 0; n < np; ++n) {
      out[n] += plan.reach.terminal[t] * plan.y[t * np + n];
    }
  }
  return out;
}

KuhnResult MixedToBehaviour(const StrategyTables& tables,
                            const MixedProfile& sigma) {
  const GameBush& bush = tables.bush();
  KuhnResult out;
  out.recall_warning = !HasPerfectRecall(bush).ok;
  out.behaviour.probs.resize(bush.info_sets().size());
  for (int n = 0; n < tables.num_players(); ++n) {
    const StrategySpace& sp = tables.space(n);
    const std::vector<double>& s_n = sigma.sigma[n];
    for (std::size_t k = 0; k < sp.sets.size(); ++k) {
      const InfoSet& set = bush.info_sets()[sp.sets[k]];
      std::vector<double> cond(set.num_actions(), 0.0);
      std::vector<double> marginal(set.num_actions(), 0.0);
      double mass = 0.0;
      for (std::int64_t s = 0; s < sp.size; ++s) {
        int a = sp.Action(s, k);
        marginal[a] += s_n[s];
        bool consistent = false;
        for (int v : set.vertices) {
          consistent = consistent || tables.VertexMask(n, v)[s] != 0.0;
        }
        if (consistent) {
          cond[a] += s_n[s];
          mass += s_n[s];
        }
      }
      if (mass > 0.0) {
        for (double& x : cond) x /= mass;
        out.behaviour.probs[sp.sets[k]] = std::move(cond);
      } else {
        out.behaviour.probs[sp.sets[k]] = std::move(marginal);
      }
    }
  }
  return out;
}

MixedProfile BehaviourToMixed(const StrategyTables& tables,
                              const BehaviourProfile& behaviour) {
  MixedProfile out;
  for (int n = 0; n < tables.num_players(); ++n) {
    const StrategySpace& sp = tables.space(n);
    std::vector<double> s_n(sp.size);
    for (std::int64_t s = 0; s < sp.size; ++s) {
      double p = 1.0;
      for (std::size_t k = 0; k < sp.sets.size(); ++k) {
        p *= behaviour.probs[sp.sets[k]][sp.Action(s, k)];
      }
      s_n[s] = p;
    }
    out.sigma.push_back(std::move(s_n));
  }
  return out;
}

json ProfileToJson(const StrategyTables& tables, const MixedProfile& sigma) {
  json doc = json::object();
  for (int n = 0; n < tables.num_players(); ++n) {
    json player = json::object();
    for (std::int64_t s = 0; s < tables.num_strategies(n); ++s) {
      if (sigma.sigma[n][s] != 0.0) {
        player[tables.Label(n, s)] = sigma.sigma[n][s];
      }
    }
    doc[tables.bush().player_name(n)] = player;
  }
  return doc;
}

MixedProfile ParseProfile(const StrategyTables& tables, const json& doc) {
  const GameBush& bush = tables.bush();
  const json& body = doc.contains("profile") ? doc.at("profile") : doc;
  MixedProfile out;
  for (int n = 0; n < tables.num_players(); ++n) {
    const std::string& name = bush.player_name(n);
    std::vector<double> s_n(tables.num_strategies(n), 0.0);
    if (!body.contains(name)) {
      if (tables.num_strategies(n) != 1) {
        throw ParseError("profile missing player '" + name + "'");
      }
      s_n[0] = 1.0;
      out.sigma.push_back(std::move(s_n));
      continue;
    }
    const json& entry = body.at(name);
    if (entry.contains("behaviour")) {
      BehaviourProfile b;
      b.probs.resize(bush.info_sets().size());
      for (int w : bush.info_sets_of(n)) {
        const InfoSet& set = bush.info_sets()[w];
        const json& dist = entry.at("behaviour").at(set.name);
        b.probs[w].assign(set.num_actions(), 0.0);
        for (const auto& [action, p] : dist.items()) {
          auto it = std::find(set.actions.begin(), set.actions.end(), action);
          if (it == set.actions.end()) {
            throw ParseError("unknown action '" + action + "' at " + set.name);
          }
          b.probs[w][it - set.actions.begin()] = p.get<double>();
        }
      }
      const StrategySpace& sp = tables.space(n);
      for (std::int64_t s = 0; s < sp.size; ++s) {
        double p = 1.0;
        for (std::size_t k = 0; k < sp.sets.size(); ++k) {
          p *= b.probs[sp.sets[k]][sp.Action(s, k)];
        }
        s_n[s] = p;
      }
    } else {
      for (const auto& [label, p] : entry.items()) {
        std::int64_t s = tables.FindLabel(n, label);
        if (s < 0) {
          throw ParseError("unknown strategy '" + label + "' for " + name);
        }
        s_n[s] = p.get<double>();
      }
    }
    double total = 0.0;
    for (double x : s_n) {
      if (!(x >= 0.0)) throw ParseError("negative weight in profile of " + name);
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw ParseError("profile of " + name + " does not sum to 1");
    }
    out.sigma.push_back(std::move(s_n));
  }
  return out;
}

}  // namespace gamebush
