#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ucr/equivalence.hpp"
#include "ucr/relation_matrix.hpp"
#include "ucr/types.hpp"

namespace ucr::io {

using Json = nlohmann::ordered_json;

/// A parsed input file: always carries a validated relation matrix; also the
/// declared permutation when the file used the permutation form.
struct RelationInput {
  RelationMatrix rel;
  std::optional<PairPermutation> permutation;
};

/// Input format: {"n": int, "m": int, "u": [[[re,im], ...], ...]} with rows
/// in lexicographic pair order, or {"n":..,"m":..,"permutation":"(11,22,12)"}
/// declaring a permutation in cycle notation over 1-based pairs.
/// Throws ParseError (with position info from the JSON parser), then the
/// validation errors of RelationMatrix.
RelationInput read_relation_text(const std::string& text,
                                 double unitarity_tol = 1e-10);
RelationInput read_relation_file(const std::string& path,
                                 double unitarity_tol = 1e-10);

Json relation_to_json(const RelationMatrix& rel);
Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);
Json complex_to_json(Complex c);

/// Cycle notation over 1-based pair tokens, e.g. "(11,22,12)" or
/// "(11,12)(21,22)"; "id" or "()" denote the identity.
PairPermutation parse_cycles(const std::string& text, int n, int m);
std::string format_cycles(const PairPermutation& theta, int n, int m);

/// FNV-1a 64-bit content digest, hex-encoded.
std::string digest64(const std::string& bytes);

}  // namespace ucr::io
