#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "rigidity/embedding.hpp"
#include "rigidity/multigraph.hpp"
#include "rigidity/randmodels.hpp"

namespace rigidity {

using Json = nlohmann::ordered_json;

// Documents carry a "type" field: "multigraph", "embedding" or "model_L".
// Rationals travel as canonical strings ("7/3"); a bare JSON integer is
// accepted on input. Schema violations raise parse errors that name the JSON
// pointer of the offending value.

Json to_json(const Multigraph& g);
Json to_json(const LineEmbedding& emb);
Json to_json(const ModelLSample& sample);

Multigraph multigraph_from_json(const Json& doc);
LineEmbedding embedding_from_json(const Json& doc);
ModelLSample model_L_from_json(const Json& doc);

/// Reads and parses a JSON file (parse error on malformed text).
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

/// Field access with schema errors located by JSON pointer.
const Json& require_field(const Json& obj, const std::string& key, const std::string& where);
std::uint64_t json_uint(const Json& value, const std::string& where);
Rational json_rational(const Json& value, const std::string& where);

}  // namespace rigidity
