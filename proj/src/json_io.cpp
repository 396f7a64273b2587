#include "sgf/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sgf {

namespace {

void dump_into(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::null:
      out += "null";
      return;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) throw Error(ErrorCode::kParse, "non-finite number in JSON output");
      if (v == 0.0) {
        out += "0";  // drops the sign of -0, which would not survive a re-parse
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    case json::value_t::string:
      out += j.dump();
      return;
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        dump_into(e, out);
      }
      out += ']';
      return;
    }
    case json::value_t::object: {
      // nlohmann::json objects are std::map, so iteration is key-sorted.
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      return;
    }
    case json::value_t::binary:
    case json::value_t::discarded:
      break;
  }
  throw Error(ErrorCode::kParse, "unsupported JSON value");
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kParse, what);
}

}  // namespace

std::string canonical_dump(const json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

json encode_complex(Complex z) { return json::array({z.real(), z.imag()}); }

Complex decode_complex(const json& j) {
  expect(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
         "complex scalar must be [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json encode_matrix(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(encode_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix decode_matrix(const json& j) {
  expect(j.is_array(), "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    expect(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols, "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = decode_complex(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

void to_json(json& j, const Tolerance& tol) {
  j = json{{"eig_slack", tol.eig_slack}, {"eq_rtol", tol.eq_rtol}};
}

void from_json(const json& j, Tolerance& tol) {
  tol.eig_slack = j.at("eig_slack").get<double>();
  tol.eq_rtol = j.at("eq_rtol").get<double>();
  tol.validate();
}

void to_json(json& j, const AlgebraShape& shape) { j = shape.blocks(); }

void from_json(const json& j, AlgebraShape& shape) {
  shape = AlgebraShape(j.get<std::vector<int>>());
}

void to_json(json& j, const AlgebraElement& a) {
  json blocks = json::array();
  for (const auto& b : a.blocks()) blocks.push_back(encode_matrix(b));
  j = json{{"shape", a.shape()}, {"blocks", std::move(blocks)}};
}

void from_json(const json& j, AlgebraElement& a) {
  AlgebraShape shape = j.at("shape").get<AlgebraShape>();
  std::vector<Matrix> blocks;
  for (const auto& b : j.at("blocks")) blocks.push_back(decode_matrix(b));
  a = AlgebraElement(std::move(shape), std::move(blocks));
}

void to_json(json& j, const ModuleSpace& space) {
  j = json{{"algebra", space.algebra}, {"rank", space.rank}};
}

void from_json(const json& j, ModuleSpace& space) {
  space = ModuleSpace(j.at("algebra").get<AlgebraShape>(), j.at("rank").get<int>());
}

void to_json(json& j, const ModuleVector& x) {
  j = json{{"algebra", x.space().algebra}, {"rank", x.space().rank}, {"coords", x.coords()}};
}

void from_json(const json& j, ModuleVector& x) {
  ModuleSpace space(j.at("algebra").get<AlgebraShape>(), j.at("rank").get<int>());
  x = ModuleVector(std::move(space), j.at("coords").get<std::vector<AlgebraElement>>());
}

void to_json(json& j, const AdjointableOp& t) {
  json rows = json::array();
  for (int i = 0; i < t.domain().rank; ++i) {
    json row = json::array();
    for (int c = 0; c < t.codomain().rank; ++c) row.push_back(t.entry(i, c));
    rows.push_back(std::move(row));
  }
  j = json{{"algebra", t.domain().algebra},
           {"domain_rank", t.domain().rank},
           {"codomain_rank", t.codomain().rank},
           {"matrix", std::move(rows)}};
}

void from_json(const json& j, AdjointableOp& t) {
  const AlgebraShape shape = j.at("algebra").get<AlgebraShape>();
  const ModuleSpace dom(shape, j.at("domain_rank").get<int>());
  const ModuleSpace cod(shape, j.at("codomain_rank").get<int>());
  const json& rows = j.at("matrix");
  expect(rows.is_array() && static_cast<int>(rows.size()) == dom.rank,
         "operator matrix must have domain_rank rows");
  std::vector<AlgebraElement> entries;
  for (const auto& row : rows) {
    expect(row.is_array() && static_cast<int>(row.size()) == cod.rank,
           "operator matrix rows must have codomain_rank entries");
    for (const auto& e : row) entries.push_back(e.get<AlgebraElement>());
  }
  t = AdjointableOp(dom, cod, std::move(entries));
}

void to_json(json& j, const FrameBounds& b) { j = json{{"A", b.lower}, {"B", b.upper}}; }

void from_json(const json& j, FrameBounds& b) {
  b.lower = j.at("A").get<AlgebraElement>();
  b.upper = j.at("B").get<AlgebraElement>();
}

void to_json(json& j, const StarGFrame& f) {
  j = json{{"space", f.space()}, {"operators", f.ops()}, {"declared_bounds", nullptr}};
  if (f.declared_bounds()) j["declared_bounds"] = *f.declared_bounds();
}

void from_json(const json& j, StarGFrame& f) {
  std::optional<FrameBounds> bounds;
  if (j.contains("declared_bounds") && !j.at("declared_bounds").is_null()) {
    bounds = j.at("declared_bounds").get<FrameBounds>();
  }
  f = StarGFrame(j.at("space").get<ModuleSpace>(), j.at("operators").get<std::vector<AdjointableOp>>(),
                 std::move(bounds));
}

void to_json(json& j, const BoundsCertificate& c) {
  j = json{{"status", to_string(c.status)},
           {"witness", nullptr},
           {"method", c.method},
           {"samples_used", c.samples_used},
           {"tol", c.tol}};
  if (c.witness) j["witness"] = *c.witness;
}

void from_json(const json& j, BoundsCertificate& c) {
  c.status = parse_status(j.at("status").get<std::string>());
  c.witness.reset();
  if (!j.at("witness").is_null()) c.witness = j.at("witness").get<ModuleVector>();
  c.method = j.at("method").get<std::string>();
  c.samples_used = j.at("samples_used").get<std::size_t>();
  c.tol = j.at("tol").get<Tolerance>();
}

void to_json(json& j, const TensorFrameResult& r) {
  j = json{{"frame", r.frame},
           {"predicted_operator", r.predicted_operator},
           {"predicted_bounds", r.predicted_bounds},
           {"verification",
            {{"operator_residual", r.verification.operator_residual},
             {"certificate", r.verification.certificate}}}};
}

void from_json(const json& j, TensorFrameResult& r) {
  r.frame = j.at("frame").get<StarGFrame>();
  r.predicted_operator = j.at("predicted_operator").get<AdjointableOp>();
  r.predicted_bounds = j.at("predicted_bounds").get<FrameBounds>();
  const json& v = j.at("verification");
  r.verification.operator_residual = v.at("operator_residual").get<double>();
  r.verification.certificate = v.at("certificate").get<BoundsCertificate>();
}

FixtureParams decode_fixture_params(const json& j) {
  try {
    FixtureParams out;
    auto& bs = out.banach_stone;
    if (j.contains("p")) bs.p = j.at("p").get<int>();
    if (j.contains("d")) bs.d = j.at("d").get<int>();
    if (j.contains("perm")) bs.perm = j.at("perm").get<std::vector<int>>();
    if (j.contains("h")) {
      for (const auto& m : j.at("h")) bs.h.push_back(decode_matrix(m));
    }
    if (j.contains("L")) {
      for (const auto& m : j.at("L")) bs.L.push_back(decode_matrix(m));
    }
    if (j.contains("lambdas")) out.lambdas = j.at("lambdas").get<std::vector<double>>();
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
    out << contents;
    if (!out.flush()) throw Error(ErrorCode::kParse, "write to '" + path + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kParse, "cannot move result into '" + path + "'");
  }
}

}  // namespace sgf
