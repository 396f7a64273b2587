#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgf/json_io.hpp"

namespace sgframe {

// Process exit codes.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;
constexpr int kExitNotAFrame = 3;

struct GlobalOptions {
  sgf::Tolerance tol;
  std::uint64_t seed = 0;
  std::size_t budget = 1000;
  std::string report_path;  // empty: command default

  sgf::CertifyOptions certify() const;
};

struct GenArgs {
  std::string blocks = "2";
  int rank = 1;
  int num_ops = 2;
  std::string kind = "random";
  std::string out;
};

struct CheckArgs {
  std::string frame;
  std::vector<double> scalar_bounds;  // empty or {a, b}
  std::string bounds_file;
};

struct TensorArgs {
  std::string left;
  std::string right;
  std::string out;
};

struct TransformArgs {
  std::string frame;
  std::string q;
  std::string out;
};

struct TransportArgs {
  std::string fixture;
  std::string blocks = "2";
  std::string lambdas;  // empty: params file, else 1,2
  std::optional<int> p;  // flags override the params file
  std::optional<int> d;
  std::string perm;
  std::string params;
};

struct Lemma26Args {
  std::string q;
  int samples = 100;
  std::string k_blocks = "2";
  int k_rank = 2;
};

int cmd_gen(const GlobalOptions& g, const GenArgs& a);
int cmd_check(const GlobalOptions& g, const CheckArgs& a);
int cmd_bounds(const GlobalOptions& g, const std::string& frame_path);
int cmd_tensor(const GlobalOptions& g, const TensorArgs& a);
int cmd_transform(const GlobalOptions& g, const TransformArgs& a);
int cmd_transport(const GlobalOptions& g, const TransportArgs& a);
int cmd_lemma26(const GlobalOptions& g, const Lemma26Args& a);

/// "2,3" -> {2, 3}. Throws Error(kInvalidParams) on malformed input.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string digest(const std::string& bytes);

}  // namespace sgframe
