#pragma once

#include <string>

#include "valtoric/keypoly.hpp"
#include "valtoric/oracle.hpp"
#include "valtoric/toric.hpp"

namespace valtoric {

/// Parsed input document for the command-line front end. All numbers are
/// exact strings in the JSON source, never floats.
struct Document {
  Field field;
  MonomialOrder order;
  std::vector<std::string> variables;
  std::vector<ValueVec> weights;
  std::vector<Poly> equations;
  ValueVec truncation;
  std::string source_digest;  // FNV-1a of the canonical serialization

  // optional branch-data payload (for structure / sequence commands)
  std::optional<BranchData> branch;
  // optional semigroup payload
  std::optional<std::vector<ValueVec>> semigroup_gens;

  OverweightSystem system() const;
};

/// Parses the JSON document format; throws std::invalid_argument with a
/// location message on malformed input.
Document parse_document(const std::string& json_text);

/// Canonical serialization (stable across runs; reparses to the same doc).
std::string print_document(const Document& doc);

std::string fnv1a_digest(const std::string& data);

std::string field_to_string(const Field& f);
Field parse_field(const std::string& s);

std::string order_to_string(const MonomialOrder& o);

}  // namespace valtoric
