#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "triplelab/factor.hpp"

namespace triplelab {

// Factor-spec files:  {"summands":[{"type":1,"p":2,"q":2},{"type":4,"n":3}]}
// Element files:      {"blocks":[ [[[re,im],...],...], [[re,im],...] ]}
//   matrix summands are arrays of rows; spin summands are flat arrays.
// Doubles are written in shortest round-trip form, so values survive a
// write/read cycle bit for bit.
//
// All parse_* functions throw Error(ParseError) on malformed input and the
// usual descriptor/shape errors on well-formed but invalid content.

nlohmann::json to_json(const FactorDescriptor& f);
FactorDescriptor parse_factor(const nlohmann::json& j);

nlohmann::json to_json(const AtomicTriple& t);
AtomicTriple parse_atomic_triple(const nlohmann::json& j);

nlohmann::json complex_to_json(Complex z);
Complex parse_complex(const nlohmann::json& j);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix parse_matrix(const nlohmann::json& j);

nlohmann::json element_to_json(const AtomicTriple& t, const Element& x);
/// Parses and validates the element against `t`.
Element parse_element(const AtomicTriple& t, const nlohmann::json& j);

/// Reads a whole JSON document; ParseError on I/O or syntax failure.
nlohmann::json read_json_file(const std::string& path);

}  // namespace triplelab
