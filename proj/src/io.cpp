// Copyright 2026 The latentq authors
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

#include "latentq/io.hpp"

#include <fstream>
#include <sstream>

namespace latentq::io {

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& what) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw std::invalid_argument("unknown key '" + key + "' in " + what);
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

Matrix state_from_spec(const json& j, Index dim, const std::string& what) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "pure_basis0") return pure_basis0_state(dim);
    if (name == "maximally_mixed") return maximally_mixed_state(dim);
    throw std::invalid_argument("unknown state preset '" + name + "' in " + what);
  }
  Matrix m = matrix_from_json(j);
  if (m.rows() != dim)
    throw std::invalid_argument(what + ": state has wrong dimension");
  return m;
}

}  // namespace

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw std::invalid_argument("matrix rows must be arrays");
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      if (e.is_number()) {
        m(static_cast<Index>(r), static_cast<Index>(c)) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
                 e[1].is_number()) {
        m(static_cast<Index>(r), static_cast<Index>(c)) =
            Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw std::invalid_argument("matrix entries must be numbers or [re, im]");
      }
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string mutation_name(Mutation m) {
  switch (m) {
    case Mutation::kNone: return "none";
    case Mutation::kStarWrongFresh: return "star_wrong_fresh";
    case Mutation::kSeqDropLatent: return "seq_drop_latent";
    case Mutation::kSwapNoLatent: return "swap_no_latent";
  }
  return "none";
}

Mutation mutation_from_name(const std::string& name) {
  if (name == "none") return Mutation::kNone;
  if (name == "star_wrong_fresh") return Mutation::kStarWrongFresh;
  if (name == "seq_drop_latent") return Mutation::kSeqDropLatent;
  if (name == "swap_no_latent") return Mutation::kSwapNoLatent;
  throw std::invalid_argument("unknown mutation '" + name + "'");
}

LatentConfig config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"labels", "default_latent_dim", "default_latent_state",
                       "pair_overrides", "mutation"},
                      "theory config");
  const Index default_dim = j.value("default_latent_dim", 1);
  Matrix default_state = pure_basis0_state(default_dim);
  if (j.contains("default_latent_state"))
    default_state =
        state_from_spec(j.at("default_latent_state"), default_dim, "config");

  LatentConfig cfg(default_dim, std::move(default_state));
  if (!j.contains("labels") || !j.at("labels").is_array() || j.at("labels").empty())
    throw std::invalid_argument("config needs a non-empty 'labels' array");
  for (const json& l : j.at("labels")) {
    reject_unknown_keys(l, {"name", "dim"}, "label");
    cfg.register_label(
        ElementaryLabel{l.at("name").get<std::string>(), l.at("dim").get<Index>()});
  }
  if (j.contains("pair_overrides")) {
    for (const json& o : j.at("pair_overrides")) {
      reject_unknown_keys(o, {"labels", "dim", "state"}, "pair override");
      const auto names = o.at("labels").get<std::vector<std::string>>();
      if (names.size() != 2)
        throw std::invalid_argument("pair override needs exactly two labels");
      const Index dim = o.at("dim").get<Index>();
      Matrix state = o.contains("state")
                         ? state_from_spec(o.at("state"), dim, "pair override")
                         : pure_basis0_state(dim);
      cfg.set_pair(names[0], names[1], dim, std::move(state));
    }
  }
  if (j.contains("mutation"))
    cfg.mutation = mutation_from_name(j.at("mutation").get<std::string>());
  return cfg;
}

LatentConfig load_config(const std::string& path) {
  return config_from_json(load_json(path));
}

SystemString system_from_json(const json& j, const LatentConfig& cfg) {
  if (!j.is_array()) throw std::invalid_argument("system must be a label list");
  std::vector<ElementaryLabel> labels;
  for (const json& name : j) {
    const auto found = cfg.find_label(name.get<std::string>());
    if (!found)
      throw std::invalid_argument("unknown label '" + name.get<std::string>() +
                                  "' in scenario");
    labels.push_back(*found);
  }
  return canonicalize(std::move(labels));
}

namespace {

LqtState component_from_json(const json& j, const LatentConfig& cfg) {
  reject_unknown_keys(j, {"system", "matrix", "embed_qt"}, "state component");
  const SystemString sys = system_from_json(j.at("system"), cfg);
  if (j.contains("matrix") == j.contains("embed_qt"))
    throw std::invalid_argument("state component needs 'matrix' or 'embed_qt'");
  Matrix op = j.contains("matrix")
                  ? matrix_from_json(j.at("matrix"))
                  : embed_qt_state(matrix_from_json(j.at("embed_qt")), sys, cfg);
  return make_state(sys, std::move(op), cfg);
}

Povm setting_from_json(const json& j, const SystemString& sys,
                       const LatentConfig& cfg) {
  reject_unknown_keys(j, {"effects", "projective_angle"}, "setting");
  if (j.contains("projective_angle")) {
    if (sys.length() != 1)
      throw std::invalid_argument("projective_angle needs an elementary party");
    return qubit_angle_povm(sys.at(1), j.at("projective_angle").get<double>(), cfg);
  }
  if (!j.contains("effects"))
    throw std::invalid_argument("setting needs 'effects' or 'projective_angle'");
  std::vector<Matrix> elements;
  for (const json& e : j.at("effects")) elements.push_back(matrix_from_json(e));
  return make_povm(sys, std::move(elements), cfg);
}

}  // namespace

Scenario scenario_from_json(const json& j, const LatentConfig& cfg) {
  reject_unknown_keys(j, {"parties", "shared_state"}, "scenario");
  if (!j.contains("parties") || !j.at("parties").is_array())
    throw std::invalid_argument("scenario needs a 'parties' array");

  std::vector<Party> parties;
  for (const json& pj : j.at("parties")) {
    reject_unknown_keys(pj, {"system", "settings"}, "party");
    Party party;
    party.subsystem = system_from_json(pj.at("system"), cfg);
    for (const json& sj : pj.at("settings"))
      party.settings.push_back(setting_from_json(sj, party.subsystem, cfg));
    parties.push_back(std::move(party));
  }

  const json& st = j.at("shared_state");
  reject_unknown_keys(st, {"matrix", "embed_qt", "product", "mixture"},
                      "shared_state");
  if (st.contains("matrix")) {
    SystemString total;
    for (const Party& p : parties) total = compose_systems(total, p.subsystem);
    return make_scenario(std::move(parties),
                         make_state(total, matrix_from_json(st.at("matrix")), cfg),
                         cfg);
  }
  if (st.contains("embed_qt"))
    return make_embedded_scenario(std::move(parties),
                                  matrix_from_json(st.at("embed_qt")), cfg);

  std::vector<Preparation> preps;
  if (st.contains("product")) {
    Preparation prep;
    for (const json& c : st.at("product"))
      prep.components.push_back(component_from_json(c, cfg));
    preps.push_back(std::move(prep));
  } else if (st.contains("mixture")) {
    for (const json& tj : st.at("mixture")) {
      reject_unknown_keys(tj, {"weight", "product"}, "mixture term");
      Preparation prep;
      prep.weight = tj.at("weight").get<double>();
      for (const json& c : tj.at("product"))
        prep.components.push_back(component_from_json(c, cfg));
      preps.push_back(std::move(prep));
    }
  } else {
    throw std::invalid_argument(
        "shared_state needs one of: matrix, embed_qt, product, mixture");
  }
  return make_product_scenario(std::move(parties), std::move(preps), cfg);
}

Scenario load_scenario(const std::string& path, const LatentConfig& cfg) {
  return scenario_from_json(load_json(path), cfg);
}

json check_report_to_json(const CheckReport& r) {
  return json{{"name", r.name},
              {"trials", r.trials},
              {"max_deviation", r.max_deviation},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"witness", r.witness}};
}

json table_to_json(const CorrelationTable& t) {
  json rows = json::array();
  for (const auto& e : t.entries)
    rows.push_back(
        json{{"settings", e.settings}, {"outcomes", e.outcomes}, {"p", e.p}});
  return rows;
}

std::string tables_to_csv(const CorrelationTable& lqt,
                          const CorrelationTable& qt) {
  if (lqt.entries.size() != qt.entries.size())
    throw std::invalid_argument("tables of different size");
  std::ostringstream os;
  const std::size_t np = lqt.entries.empty() ? 0 : lqt.entries[0].settings.size();
  for (std::size_t p = 0; p < np; ++p) os << "setting_" << p + 1 << ",";
  for (std::size_t p = 0; p < np; ++p) os << "outcome_" << p + 1 << ",";
  os << "p_lqt,p_qt\n";
  os.precision(17);
  for (std::size_t i = 0; i < lqt.entries.size(); ++i) {
    const auto& e = lqt.entries[i];
    for (int s : e.settings) os << s << ",";
    for (int o : e.outcomes) os << o << ",";
    os << e.p << "," << qt.entries[i].p << "\n";
  }
  return os.str();
}

}  // namespace latentq::io
