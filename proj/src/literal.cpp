#include "hca/literal.hpp"

#include <cstdint>
#include <limits>

#include "hca/errors.hpp"

namespace hca {

namespace {

bool is_decimal_integer(const std::string& s) {
  std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (k == s.size()) return false;
  for (; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') return false;
  }
  return true;
}

}  // namespace

json to_json(const BigInt& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return json(static_cast<std::int64_t>(v.get_si()));
  return json(v.get_str());
}

json to_json(const GaussianInt& z) { return json::array({to_json(z.re()), to_json(z.im())}); }

json to_json(const GIVector& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(to_json(z));
  return out;
}

json to_json(const GIMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    return BigInt(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (!is_decimal_integer(s)) throw LiteralError("not a decimal integer: \"" + s + "\"");
    return BigInt(s[0] == '+' ? s.substr(1) : s, 10);
  }
  throw LiteralError("expected an integer, got " + j.dump());
}

GaussianInt gaussian_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw LiteralError("complex integer must be a pair [re, im], got " + j.dump());
    return {bigint_from_json(j[0]), bigint_from_json(j[1])};
  }
  return GaussianInt(bigint_from_json(j));
}

GIVector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw LiteralError("vector must be a non-empty array, got " + j.dump());
  std::vector<GaussianInt> entries;
  entries.reserve(j.size());
  for (std::size_t a = 0; a < j.size(); ++a) {
    try {
      entries.push_back(gaussian_from_json(j[a]));
    } catch (const LiteralError& e) {
      throw LiteralError("entry " + std::to_string(a) + ": " + e.what());
    }
  }
  return GIVector(std::move(entries));
}

GIMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw LiteralError("matrix must be a non-empty array of rows");
  std::vector<std::vector<GaussianInt>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != j.size()) {
      throw LiteralError("row " + std::to_string(r) + " must hold " + std::to_string(j.size()) +
                         " entries (square matrix)");
    }
    std::vector<GaussianInt> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      try {
        row.push_back(gaussian_from_json(j[r][c]));
      } catch (const LiteralError& e) {
        throw LiteralError("entry (" + std::to_string(r) + "," + std::to_string(c) + "): " + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  return GIMatrix::from_rows(rows);
}

}  // namespace hca
