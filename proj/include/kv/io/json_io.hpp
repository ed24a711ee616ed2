#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "kv/problem/kv_problem.hpp"

namespace kv {

using Json = nlohmann::json;  // std::map-backed, so object keys are sorted

// Malformed document, unknown kind, or a value in the wrong slot.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Canonical bytes: two-space indentation, sorted keys, trailing newline.
std::string canonical_dump(const Json& j);
Json parse_json(const std::string& text);

Json to_json(const Alphabet& a);
Json to_json(const LieSeries& s);
Json to_json(const TensorSeries& s);
Json to_json(const CyclicSeries& s);
// Scalar series carry no alphabet; "cut" is the order.
Json to_json(const ScalarSeries& s);
Json to_json(const TangentialDerivation& u);
Json to_json(const Automorphism& F);
Json to_json(const KVSolution& sol, const KVInstance& inst);
Json instance_to_json(const KVInstance& inst);

Alphabet alphabet_from_json(const Json& j);
LieSeries lie_from_json(const Json& j);
TensorSeries tensor_from_json(const Json& j);
CyclicSeries cyclic_from_json(const Json& j);
ScalarSeries scalar_from_json(const Json& j);
TangentialDerivation derivation_from_json(const Json& j);
Automorphism automorphism_from_json(const Json& j);

struct LoadedSolution {
    KVInstance instance;
    KVSolution solution;
};
LoadedSolution solution_from_json(const Json& j);

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

}  // namespace kv
