#include "eveopt/serialization.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace eveopt {

namespace {

nlohmann::ordered_json ket_to_json(const Ket& k) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    arr.push_back({k[i].real(), k[i].imag()});
  }
  return arr;
}

Ket ket_from_json(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 4) {
    throw std::runtime_error("field '" + field + "' must be a list of 4 [re, im] pairs");
  }
  Ket k(4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& entry = j[i];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      throw std::runtime_error("field '" + field + "' entry " + std::to_string(i) +
                               " must be a [re, im] number pair");
    }
    k[static_cast<Eigen::Index>(i)] = Complex(entry[0].get<double>(), entry[1].get<double>());
  }
  if (!all_finite(k)) {
    throw std::runtime_error("field '" + field + "' has non-finite components");
  }
  return k;
}

double number_field(const nlohmann::json& j, const std::string& field) {
  if (!j.contains(field) || !j.at(field).is_number()) {
    throw std::runtime_error("missing or non-numeric field '" + field + "'");
  }
  return j.at(field).get<double>();
}

}  // namespace

nlohmann::ordered_json to_json(const InteractionDocument& doc) {
  nlohmann::ordered_json j;
  j["basis"] = doc.iv.basis_label;
  j["d_xy"] = doc.d.d_xy;
  j["d_uv"] = doc.d.d_uv;
  j["xi_x"] = ket_to_json(doc.iv.xi_x);
  j["xi_y"] = ket_to_json(doc.iv.xi_y);
  j["zeta_x"] = ket_to_json(doc.iv.zeta_x);
  j["zeta_y"] = ket_to_json(doc.iv.zeta_y);
  return j;
}

InteractionDocument interaction_document_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("document root must be an object");
  InteractionDocument doc;
  if (!j.contains("basis") || !j.at("basis").is_string()) {
    throw std::runtime_error("missing or non-string field 'basis'");
  }
  doc.iv.basis_label = j.at("basis").get<std::string>();
  doc.d.d_xy = number_field(j, "d_xy");
  doc.d.d_uv = number_field(j, "d_uv");
  require_valid(doc.d);
  for (const char* field : {"xi_x", "xi_y", "zeta_x", "zeta_y"}) {
    if (!j.contains(field)) throw std::runtime_error(std::string("missing field '") + field + "'");
  }
  doc.iv.xi_x = ket_from_json(j.at("xi_x"), "xi_x");
  doc.iv.xi_y = ket_from_json(j.at("xi_y"), "xi_y");
  doc.iv.zeta_x = ket_from_json(j.at("zeta_x"), "zeta_x");
  doc.iv.zeta_y = ket_from_json(j.at("zeta_y"), "zeta_y");
  validate(doc.iv);
  return doc;
}

InteractionDocument load_interaction_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("parse error in '" + path + "': " + e.what());
  }
  return interaction_document_from_json(j);
}

nlohmann::ordered_json to_json(const CanonicalForm& form) {
  nlohmann::ordered_json j;
  auto matrix = nlohmann::ordered_json::array();
  for (int r = 0; r < 4; ++r) {
    auto row = nlohmann::ordered_json::array();
    for (int c = 0; c < 4; ++c) row.push_back(form.coefficients(r, c));
    matrix.push_back(row);
  }
  j["coefficients"] = matrix;
  j["permutation"] = form.permutation;
  j["signs"] = form.signs;
  j["eigenvalues"] = form.eigenvalues;
  j["degenerate"] = form.degenerate;
  j["matches_pattern"] = form.matches_pattern;
  j["max_deviation"] = form.max_deviation;
  auto basis = nlohmann::ordered_json::array();
  for (const Ket& e : form.eigenbasis) basis.push_back(ket_to_json(e));
  j["eigenbasis"] = basis;
  return j;
}

nlohmann::ordered_json to_json(const ConditionReport& rep) {
  nlohmann::ordered_json j;
  j["epsilon"] = rep.epsilon;
  j["residual_u"] = rep.residual_u;
  j["residual_v"] = rep.residual_v;
  j["max_residual"] = rep.max_residual();
  j["verdict"] = rep.verdict;
  j["degenerate"] = rep.degenerate;
  return j;
}

nlohmann::ordered_json report_json(const InteractionDocument& doc,
                                   const EavesdropReport& rep, bool bits) {
  const double unit = bits ? 1.0 / std::log(2.0) : 1.0;
  nlohmann::ordered_json j = to_json(doc);
  j["d_xy_measured"] = rep.d_measured.d_xy;
  j["d_uv_measured"] = rep.d_measured.d_uv;
  auto povm = nlohmann::ordered_json::array();
  for (const Ket& e : rep.canonical.eigenbasis) povm.push_back(ket_to_json(e));
  j["povm"] = povm;
  j["eigenvalues"] = rep.canonical.eigenvalues;
  j["gain"] = {{"achieved", rep.bounds.g_achieved}, {"bound", rep.bounds.g_bound}};
  j["mutual_information"] = {{"achieved", rep.bounds.i_achieved * unit},
                             {"bound", rep.bounds.i_bound * unit},
                             {"units", bits ? "bits" : "nats"}};
  auto outcomes = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < rep.stats.q.size(); ++l) {
    outcomes.push_back({{"p_given_x", rep.stats.p_given_x[l]},
                        {"p_given_y", rep.stats.p_given_y[l]},
                        {"q", rep.stats.q[l]},
                        {"post_x", rep.stats.post_x[l]},
                        {"post_y", rep.stats.post_y[l]},
                        {"gain", rep.stats.gain[l]}});
  }
  j["outcomes"] = outcomes;
  j["conditions"] = to_json(rep.conditions);
  j["canonical"] = to_json(rep.canonical);
  j["degenerate"] = rep.degenerate;
  j["optimal"] = rep.optimal;
  return j;
}

}  // namespace eveopt
