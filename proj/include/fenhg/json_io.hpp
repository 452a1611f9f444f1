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

// JSON views of reports, verdicts, and certificates (the CLI's machine
// interface).

#include <json.hpp>

#include "fenhg/exact.hpp"
#include "fenhg/generators.hpp"
#include "fenhg/oracles.hpp"
#include "fenhg/testers.hpp"
#include "fenhg/witness.hpp"

namespace fenhg {

inline nlohmann::json to_json(const QueryLedger& q) {
  return {{"neighbor", q.neighbor}, {"find", q.find}, {"member", q.member}, {"total", q.total()}};
}

inline nlohmann::json to_json(const Evidence& e) {
  nlohmann::json j{{"kind", evidence_kind_name(e.kind)}};
  if (e.kind == Evidence::Kind::JoinCoalition) j["key"] = e.key;
  if (!e.players.empty()) j["players"] = e.players;
  return j;
}

inline nlohmann::json to_json(const WitnessReport& r) {
  return {{"player", r.player},
          {"concept", concept_name(r.concept_)},
          {"verdict", r.witness ? 1 : 0},
          {"evidence", to_json(r.evidence)},
          {"queries", to_json(r.queries_used)}};
}

inline nlohmann::json witnesses_json(const std::vector<WitnessReport>& ws) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : ws) arr.push_back(to_json(w));
  return arr;
}

inline nlohmann::json verdict_json(const TesterVerdict& v, const std::string& mode,
                                   const std::string& concept_label, double epsilon, SizeBound c) {
  return {{"decision", v.accept ? "accept" : "reject"},
          {"mode", mode},
          {"sample", v.sample},
          {"witnesses", witnesses_json(v.witnesses)},
          {"queries", to_json(v.ledger)},
          {"seed", v.seed},
          {"epsilon", epsilon},
          {"concept", concept_label},
          {"c", c.str()}};
}

inline nlohmann::json to_json(const StabilityCertificate& cert) {
  return {{"stable", cert.stable},
          {"concept", concept_name(cert.concept_)},
          {"c", cert.c.str()},
          {"witnesses", witnesses_json(cert.witnesses)}};
}

inline nlohmann::json to_json(const PerfectExistenceCertificate& cert) {
  nlohmann::json j{{"exists", cert.exists}};
  if (cert.exists) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& coal : cert.structure->coalitions()) parts.push_back(coal);
    j["structure"] = parts;
  } else {
    j["violation"] = to_json(cert.violation);
  }
  return j;
}

inline nlohmann::json to_json(const FamilyCertificate& cert) {
  nlohmann::json j{{"family", family_name(cert.family)}, {"notes", cert.notes}};
  if (cert.has_claims) {
    j["stable_all_concepts"] = cert.stable_all_concepts;
    j["perfect_exists"] = cert.perfect_exists;
    if (cert.far_concept) {
      j["far_concept"] = concept_name(*cert.far_concept);
      j["witness_count"] = cert.witness_count;
      j["distance_lower"] = cert.distance_lower;
      j["epsilon_far_threshold"] = cert.epsilon_far_threshold;
    }
    if (!cert.far_concept && cert.family == Family::FriendPathOversized) {
      j["witness_count"] = cert.witness_count;
      j["distance_lower"] = cert.distance_lower;
      j["epsilon_far_threshold"] = cert.epsilon_far_threshold;
    }
  }
  return j;
}

inline nlohmann::json to_json(const EditScript& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const EditStep& st : s.steps())
    arr.push_back({{"op", edit_op_name(st.op)}, {"u", st.u}, {"v", st.v}});
  return arr;
}

inline nlohmann::json to_json(const FarDistanceBound& b) {
  return {{"lower", b.lower},
          {"upper", b.upper},
          {"method", b.method},
          {"repair", to_json(b.repair)}};
}

}  // namespace fenhg
