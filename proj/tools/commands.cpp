#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

namespace sgframe {

using sgf::Error;
using sgf::ErrorCode;
using sgf::json;

sgf::CertifyOptions GlobalOptions::certify() const {
  sgf::CertifyOptions o;
  o.budget = budget;
  o.seed = seed;
  return o;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) {
    if (v != std::floor(v)) throw Error(ErrorCode::kInvalidParams, "expected integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidParams, "bad list entry '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidParams, "empty list");
  return out;
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Report {
 public:
  Report(std::string command, const GlobalOptions& g)
      : start_(std::chrono::steady_clock::now()) {
    j_ = json{{"command", std::move(command)},
              {"inputs", json::object()},
              {"outputs", json::array()},
              {"residuals", json::object()},
              {"certificates", json::array()},
              {"seed", g.seed},
              {"tol", g.tol}};
  }

  std::string read_input(const std::string& path) {
    std::string bytes = sgf::read_file(path);
    j_["inputs"][path] = digest(bytes);
    return bytes;
  }
  void output(const std::string& path) { j_["outputs"].push_back(path); }
  void residual(const std::string& name, double v) { j_["residuals"][name] = v; }
  void certificate(const sgf::BoundsCertificate& c) { j_["certificates"].push_back(c); }
  json& operator[](const std::string& key) { return j_[key]; }

  void write(const std::string& path) {
    if (path.empty()) return;
    j_["elapsed"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    sgf::write_file_atomic(path, sgf::canonical_dump(j_) + "\n");
  }

 private:
  json j_;
  std::chrono::steady_clock::time_point start_;
};

int default_exit(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kInvalidParams:
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kSpaceMismatch:
      return kExitUsage;
    case ErrorCode::kNotAFrame:
    case ErrorCode::kMissingBounds:
      return kExitNotAFrame;
    default:
      return kExitFailed;
  }
}

int guarded(const std::function<int()>& body,
            const std::function<int(ErrorCode)>& exit_for = default_exit) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

sgf::StarGFrame parse_frame(const std::string& bytes) {
  return sgf::decode<sgf::StarGFrame>(sgf::parse_json(bytes));
}

sgf::AdjointableOp parse_op(const std::string& bytes) {
  return sgf::decode<sgf::AdjointableOp>(sgf::parse_json(bytes));
}

std::string describe(const sgf::AlgebraElement& a) {
  if (!sgf::is_central(a)) return "(non-central)";
  std::string out;
  for (int t = 0; t < a.shape().num_blocks(); ++t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s%.12g", t ? " " : "", a.block(t)(0, 0).real());
    out += buf;
  }
  return out;
}

void print_bounds(const char* label, const sgf::FrameBounds& b) {
  std::cout << label << " lower: " << describe(b.lower) << "\n"
            << label << " upper: " << describe(b.upper) << "\n";
}

void print_certificate(const sgf::BoundsCertificate& c) {
  std::cout << "certificate: " << sgf::to_string(c.status) << " (" << c.method << ", "
            << c.samples_used << " samples)\n";
}

std::string or_default(const std::string& chosen, const std::string& fallback) {
  return chosen.empty() ? fallback : chosen;
}

sgf::StarGFrame make_tight(const sgf::StarGFrame& f) {
  const auto r = sgf::inverse_sqrt(sgf::frame_operator(f));
  const double scale = std::sqrt(static_cast<double>(f.ops().size()));
  std::vector<sgf::AdjointableOp> ops;
  for (const auto& op : f.ops()) ops.push_back(sgf::Complex(scale) * sgf::compose(op, r));
  const auto& shape = f.space().algebra;
  sgf::FrameBounds b{sgf::AlgebraElement::scalar(shape, scale), sgf::AlgebraElement::scalar(shape, scale)};
  return sgf::StarGFrame(f.space(), std::move(ops), b);
}

}  // namespace

int cmd_gen(const GlobalOptions& g, const GenArgs& a) {
  return guarded([&] {
    if (a.num_ops < 1) throw Error(ErrorCode::kInvalidParams, "--num-ops must be >= 1");
    const sgf::ModuleSpace space(sgf::AlgebraShape(parse_int_list(a.blocks)), a.rank);

    sgf::StarGFrame frame;
    if (a.kind == "tight") {
      frame = make_tight(sgf::random_frame(space, a.num_ops, a.rank, g.seed));
    } else if (a.kind == "random" || a.kind == "vector-frame") {
      if (a.kind == "random") {
        frame = sgf::random_frame(space, a.num_ops, a.rank, g.seed);
      } else {
        std::vector<sgf::ModuleVector> xs;
        for (int i = 0; i < a.num_ops; ++i) {
          xs.push_back(sgf::random_vector(space, sub_seed(g.seed, static_cast<std::uint64_t>(i))));
        }
        frame = sgf::frame_from_vectors(xs);
      }
      try {
        frame = frame.with_bounds(sgf::optimal_central_bounds(frame, g.tol));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNotAFrame) throw;
        std::cerr << "warning: generated operators are not a frame; no bounds declared\n";
      }
    } else {
      throw Error(ErrorCode::kInvalidParams, "unknown --kind '" + a.kind + "'");
    }

    sgf::write_file_atomic(a.out, sgf::to_canonical(frame) + "\n");
    Report report("gen", g);
    report.output(a.out);
    report["kind"] = a.kind;
    report.write(g.report_path);
    std::cout << "wrote " << a.out << " (" << frame.ops().size() << " operators)\n";
    if (frame.declared_bounds()) print_bounds("declared", *frame.declared_bounds());
    return kExitOk;
  });
}

int cmd_check(const GlobalOptions& g, const CheckArgs& a) {
  const auto exit_for = [](ErrorCode c) {
    return c == ErrorCode::kNotInvertible || c == ErrorCode::kNotPositive ? kExitUsage : default_exit(c);
  };
  return guarded(
      [&] {
        Report report("check", g);
        const sgf::StarGFrame frame = parse_frame(report.read_input(a.frame));
        const auto& shape = frame.space().algebra;

        sgf::FrameBounds bounds;
        if (a.scalar_bounds.size() == 2) {
          bounds = {sgf::AlgebraElement::scalar(shape, a.scalar_bounds[0]),
                    sgf::AlgebraElement::scalar(shape, a.scalar_bounds[1])};
        } else if (!a.bounds_file.empty()) {
          bounds = sgf::decode<sgf::FrameBounds>(sgf::parse_json(report.read_input(a.bounds_file)));
        } else if (frame.declared_bounds()) {
          bounds = *frame.declared_bounds();
        } else {
          throw Error(ErrorCode::kInvalidParams, "no bounds given and none declared in the frame");
        }

        const auto cert = sgf::certify_bounds(frame, bounds.lower, bounds.upper, g.tol, g.certify());
        report["bounds"] = bounds;
        report["status"] = sgf::to_string(cert.status);
        report.certificate(cert);
        if (cert.witness) {
          report.residual("witness_gap",
                          sgf::inequality_gap(frame, bounds.lower, bounds.upper, *cert.witness).worst());
        }
        report.write(or_default(g.report_path, a.frame + ".report.json"));

        print_bounds("checked", bounds);
        print_certificate(cert);
        return cert.refuted() ? kExitFailed : kExitOk;
      },
      exit_for);
}

int cmd_bounds(const GlobalOptions& g, const std::string& frame_path) {
  return guarded([&] {
    Report report("bounds", g);
    const sgf::StarGFrame frame = parse_frame(report.read_input(frame_path));
    const sgf::FrameBounds b = sgf::optimal_central_bounds(frame, g.tol);
    report["optimal_bounds"] = b;
    report.write(g.report_path);
    for (int t = 0; t < b.lower.shape().num_blocks(); ++t) {
      std::printf("block %d: %.12g %.12g\n", t, b.lower.block(t)(0, 0).real(),
                  b.upper.block(t)(0, 0).real());
    }
    return kExitOk;
  });
}

int cmd_tensor(const GlobalOptions& g, const TensorArgs& a) {
  return guarded([&] {
    Report report("tensor", g);
    const sgf::StarGFrame f = parse_frame(report.read_input(a.left));
    const sgf::StarGFrame h = parse_frame(report.read_input(a.right));
    const sgf::TensorFrameResult r = sgf::tensor_product_frame(f, h, g.tol, g.certify());

    sgf::write_file_atomic(a.out, sgf::to_canonical(r) + "\n");
    report.output(a.out);
    report.residual("operator_residual", r.verification.operator_residual);
    report.certificate(r.verification.certificate);
    report["predicted_bounds"] = r.predicted_bounds;
    report.write(or_default(g.report_path, a.out + ".report.json"));

    print_bounds("predicted", r.predicted_bounds);
    std::printf("operator residual: %.3e\n", r.verification.operator_residual);
    print_certificate(r.verification.certificate);
    return r.verified() ? kExitOk : kExitFailed;
  });
}

int cmd_transform(const GlobalOptions& g, const TransformArgs& a) {
  return guarded([&] {
    Report report("transform", g);
    const sgf::StarGFrame f = parse_frame(report.read_input(a.frame));
    const sgf::AdjointableOp q = parse_op(report.read_input(a.q));
    const sgf::ModuleSpace k = sgf::factor_right(f.space(), q.domain());
    const sgf::TensorFrameResult r = sgf::transform_frame(f, q, k, g.tol, g.certify());
    const sgf::SandwichConstants c = sgf::sandwich_constants(q, g.tol);

    sgf::write_file_atomic(a.out, sgf::to_canonical(r) + "\n");
    report.output(a.out);
    report.residual("operator_residual", r.verification.operator_residual);
    report.certificate(r.verification.certificate);
    report["q_norm"] = c.upper;
    report["q_adjoint_inverse_norm"] = 1.0 / c.lower;
    report["predicted_bounds"] = r.predicted_bounds;
    try {
      report["certified_bounds"] = sgf::optimal_central_bounds(r.frame, g.tol);
    } catch (const Error&) {
      report["certified_bounds"] = nullptr;
    }
    report.write(or_default(g.report_path, a.out + ".report.json"));

    std::printf("||Q|| = %.12g, ||Q*^-1|| = %.12g\n", c.upper, 1.0 / c.lower);
    print_bounds("predicted", r.predicted_bounds);
    std::printf("operator residual: %.3e\n", r.verification.operator_residual);
    print_certificate(r.verification.certificate);
    return r.verified() ? kExitOk : kExitFailed;
  });
}

int cmd_transport(const GlobalOptions& g, const TransportArgs& a) {
  return guarded([&] {
    Report report("transport", g);
    sgf::FixtureParams fp;
    if (!a.params.empty()) fp = sgf::decode_fixture_params(sgf::parse_json(report.read_input(a.params)));

    sgf::TransportSetup setup;
    if (a.fixture == "adjoint") {
      std::vector<double> lambdas = fp.lambdas;
      if (!a.lambdas.empty() || lambdas.empty()) lambdas = parse_double_list(or_default(a.lambdas, "1,2"));
      setup = sgf::fixture_adjoint_map(sgf::AlgebraShape(parse_int_list(a.blocks)), lambdas);
      report["lambdas"] = lambdas;
    } else if (a.fixture == "banach-stone") {
      sgf::BanachStoneParams& bs = fp.banach_stone;
      if (a.params.empty()) bs.p = 3, bs.d = 2;
      if (a.p) bs.p = *a.p;
      if (a.d) bs.d = *a.d;
      if (bs.p < 1 || bs.d < 1) throw Error(ErrorCode::kInvalidParams, "--p and --d must be >= 1");
      if (!a.perm.empty()) bs.perm = parse_int_list(a.perm);
      if (bs.perm.empty()) {
        for (int y = 0; y < bs.p; ++y) bs.perm.push_back((y + 1) % bs.p);
      }
      if (bs.h.empty()) bs.h.assign(static_cast<std::size_t>(bs.p), sgf::Matrix::Identity(bs.d, bs.d));
      if (bs.L.empty()) {
        sgf::Matrix l = sgf::Matrix::Zero(bs.d, bs.d);
        for (int i = 0; i < bs.d; ++i) l(i, i) = i + 1.0;
        bs.L.push_back(l);
      }
      setup = sgf::fixture_banach_stone(bs, g.tol);
      report["p"] = bs.p;
      report["d"] = bs.d;
      report["perm"] = bs.perm;
    } else {
      throw Error(ErrorCode::kInvalidParams, "unknown --fixture '" + a.fixture + "'");
    }

    const sgf::TransportRecord rec = sgf::transport_frame(setup.frame, setup.phi, setup.theta, g.tol, g.certify());
    report["fixture"] = a.fixture;
    report["transported_bounds"] = rec.transported_bounds;
    report.residual("transport_residual", rec.residual);
    report.residual("intertwining_residual", rec.intertwining_residual);
    report.residual("commutation_residual", rec.commutation_residual);
    report.residual("source_adjoint_residual", rec.source_adjoint_residual);
    report.residual("target_adjoint_residual", rec.target_adjoint_residual);
    report.certificate(rec.source_certificate);
    report.certificate(rec.certificate);
    report.write(g.report_path);

    std::printf("transport residual: %.3e\n", rec.residual);
    print_bounds("transported", rec.transported_bounds);
    print_certificate(rec.certificate);
    if (!rec.adjointable_in_source || !rec.adjointable_in_target) {
      std::cout << "frame operators are not adjointable in both structures\n";
    }
    return rec.passed(g.tol) ? kExitOk : kExitFailed;
  });
}

int cmd_lemma26(const GlobalOptions& g, const Lemma26Args& a) {
  const auto exit_for = [](ErrorCode c) {
    return c == ErrorCode::kNotInvertible ? kExitUsage : default_exit(c);
  };
  return guarded(
      [&] {
        if (a.samples < 1) throw Error(ErrorCode::kInvalidParams, "--samples must be >= 1");
        Report report("lemma26", g);
        const sgf::AdjointableOp q = parse_op(report.read_input(a.q));
        const sgf::ModuleSpace k(sgf::AlgebraShape(parse_int_list(a.k_blocks)), a.k_rank);
        const sgf::ModuleSpace hk = sgf::tensor_space(q.domain(), k);
        const sgf::SandwichConstants c = sgf::sandwich_constants(q, g.tol);

        int failures = 0;
        double worst = std::numeric_limits<double>::infinity();
        for (int s = 0; s < a.samples; ++s) {
          const auto z = sgf::random_vector(hk, sub_seed(g.seed, static_cast<std::uint64_t>(s)));
          const sgf::SandwichCheck check = sgf::lemma_sandwich(q, k, z, g.tol);
          worst = std::min(worst, check.margin);
          if (!check.holds) ++failures;
        }
        report["samples"] = a.samples;
        report["failures"] = failures;
        report["q_norm"] = c.upper;
        report["q_adjoint_inverse_norm"] = 1.0 / c.lower;
        report.residual("worst_margin", worst);
        report.write(g.report_path);

        std::printf("%d samples, %d violations, worst margin %.3e\n", a.samples, failures, worst);
        return failures == 0 ? kExitOk : kExitFailed;
      },
      exit_for);
}

}  // namespace sgframe
