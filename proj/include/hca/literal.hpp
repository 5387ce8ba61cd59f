#pragma once

// Literal encoding shared by configs and reports:
//   integer          JSON integer, or a decimal string when it does not fit in 64 bits
//   GaussianInt      [re, im]; a bare integer is accepted on input as im = 0
//   GIVector         [z0, z1, ...]
//   GIMatrix         row-major [[z00, z01, ...], [z10, ...], ...]

#include "json.hpp"

#include "hca/matrix.hpp"

namespace hca {

using json = nlohmann::json;

json to_json(const BigInt& v);
json to_json(const GaussianInt& z);
json to_json(const GIVector& v);
json to_json(const GIMatrix& m);

/// All parsers throw LiteralError naming the offending element.
BigInt bigint_from_json(const json& j);
GaussianInt gaussian_from_json(const json& j);
GIVector vector_from_json(const json& j);
GIMatrix matrix_from_json(const json& j);

}  // namespace hca
