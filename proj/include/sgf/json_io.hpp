#pragma once

// JSON encoding of every artifact. Complex scalars are [re, im], matrices are
// row-major nested arrays, and canonical output sorts keys and prints doubles
// with 17 significant digits so that parse -> dump is byte-stable.

#include <string>

#include "json.hpp"

#include "sgf/tensor_frames.hpp"
#include "sgf/transport.hpp"

namespace sgf {

using json = nlohmann::json;

std::string canonical_dump(const json& j);

json encode_complex(Complex z);
Complex decode_complex(const json& j);
json encode_matrix(const Matrix& m);
Matrix decode_matrix(const json& j);

void to_json(json& j, const Tolerance& tol);
void from_json(const json& j, Tolerance& tol);
void to_json(json& j, const AlgebraShape& shape);
void from_json(const json& j, AlgebraShape& shape);
void to_json(json& j, const AlgebraElement& a);
void from_json(const json& j, AlgebraElement& a);
void to_json(json& j, const ModuleSpace& space);
void from_json(const json& j, ModuleSpace& space);
void to_json(json& j, const ModuleVector& x);
void from_json(const json& j, ModuleVector& x);
void to_json(json& j, const AdjointableOp& t);
void from_json(const json& j, AdjointableOp& t);
void to_json(json& j, const FrameBounds& b);
void from_json(const json& j, FrameBounds& b);
void to_json(json& j, const StarGFrame& f);
void from_json(const json& j, StarGFrame& f);
void to_json(json& j, const BoundsCertificate& c);
void from_json(const json& j, BoundsCertificate& c);
void to_json(json& j, const TensorFrameResult& r);
void from_json(const json& j, TensorFrameResult& r);

/// Fixture parameter file: {"p", "d", "perm", "h", "L", "lambdas"}; every key optional.
struct FixtureParams {
  BanachStoneParams banach_stone;
  std::vector<double> lambdas;
};
FixtureParams decode_fixture_params(const json& j);

/// Parses text and converts nlohmann errors into Error(kParse).
json parse_json(const std::string& text);

template <class T>
T decode(const json& j) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  } catch (const Error& e) {
    // Well-formed JSON describing an inconsistent object is still bad input.
    if (e.code() == ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, e.what());
  }
}

template <class T>
std::string to_canonical(const T& value) {
  return canonical_dump(json(value));
}

std::string read_file(const std::string& path);
/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace sgf
