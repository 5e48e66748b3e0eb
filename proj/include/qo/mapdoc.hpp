#pragma once

#include <stdexcept>
#include <string>

#include "qo/classifier.hpp"
#include "qo/normalizer.hpp"
#include "qo/quadmap.hpp"

namespace qo {

// Input-document errors carry a position string ("components[2][4]").
struct MapDocError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"field": "C"|"R", "n": k, "components": [[a,b,c,d,e,g], ...]} with
// rationals as "p/q" strings or plain integers.
QuadMap parse_map_document(const std::string& json_text);
std::string serialize_map_document(const QuadMap& F);

// Terse component syntax: "x^2+y, y^2+x, xy - (3/2)x - (3/2)y".
QuadMap parse_expr_map(const std::string& expr, Field field);

// deterministic JSON renderings used by the command-line driver
std::string classification_json(const QuadMap& F, const ClassificationReport& rep,
                                bool timings, double elapsed_ms);
std::string invariants_json(const QuadMap& F, uint64_t seed);
std::string witness_json(const QuadMap& F, const WitnessReport& rep,
                         const std::string& label);

}  // namespace qo
