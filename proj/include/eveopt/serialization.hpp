#pragma once

#include "eveopt/optimality.hpp"

#include <json.hpp>

#include <string>

namespace eveopt {

/// On-disk form of an interaction: the four probe vectors plus the
/// disturbance pair they were built for. Complex numbers are [re, im] pairs.
struct InteractionDocument {
  InteractionVectors iv;
  DisturbancePair d;
};

nlohmann::ordered_json to_json(const InteractionDocument& doc);

/// Parses and validates; error messages name the offending field.
InteractionDocument interaction_document_from_json(const nlohmann::json& j);
InteractionDocument load_interaction_document(const std::string& path);

nlohmann::ordered_json to_json(const CanonicalForm& form);
nlohmann::ordered_json to_json(const ConditionReport& rep);

/// Full construct-command payload. The document keys sit at the top level so
/// the output itself is a valid canonicalize input.
nlohmann::ordered_json report_json(const InteractionDocument& doc,
                                   const EavesdropReport& rep, bool bits);

}  // namespace eveopt
