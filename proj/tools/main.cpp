// sgframe: generate, certify, tensor, transform and transport *-g-frames.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace sgframe;

  CLI::App app{"Numerical toolkit for *-g-frames on finite-dimensional Hilbert C*-modules"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--eig-slack", g.tol.eig_slack, "Absolute eigenvalue slack for positivity")
      ->check(CLI::PositiveNumber);
  app.add_option("--eq-rtol", g.tol.eq_rtol, "Relative tolerance for equality checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for generators and sampled certificates");
  app.add_option("--budget", g.budget, "Random samples for non-central certification");
  app.add_option("--report", g.report_path, "Write the run report to this path");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a frame file");
  gen_cmd->add_option("--blocks", gen.blocks, "Block sizes of the algebra, e.g. 2,1");
  gen_cmd->add_option("--rank", gen.rank, "Module rank")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--num-ops", gen.num_ops, "Number of operators");
  gen_cmd->add_option("--kind", gen.kind, "tight, random or vector-frame")
      ->check(CLI::IsMember({"tight", "random", "vector-frame"}));
  gen_cmd->add_option("-o,--out", gen.out, "Output frame file")->required();

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Certify frame bounds");
  check_cmd->add_option("frame", check.frame, "Frame file")->required();
  auto* scalar = check_cmd->add_option("--scalar-bounds", check.scalar_bounds, "Scalar bounds A B")
                     ->expected(2);
  check_cmd->add_option("--bounds-file", check.bounds_file, "Bounds file {\"A\": ..., \"B\": ...}")
      ->excludes(scalar);

  std::string bounds_frame;
  auto* bounds_cmd = app.add_subcommand("bounds", "Print optimal central bounds");
  bounds_cmd->add_option("frame", bounds_frame, "Frame file")->required();

  TensorArgs tensor;
  auto* tensor_cmd = app.add_subcommand("tensor", "Tensor two frames and verify the result");
  tensor_cmd->add_option("left", tensor.left, "Frame on H")->required();
  tensor_cmd->add_option("right", tensor.right, "Frame on K")->required();
  tensor_cmd->add_option("-o,--out", tensor.out, "Output result file")->required();

  TransformArgs transform;
  auto* transform_cmd = app.add_subcommand("transform", "Transform a frame on H (x) K by Q^* (x) I");
  transform_cmd->add_option("frame", transform.frame, "Frame on H (x) K")->required();
  transform_cmd->add_option("q", transform.q, "Invertible operator Q on H")->required();
  transform_cmd->add_option("-o,--out", transform.out, "Output result file")->required();

  TransportArgs transport;
  auto* transport_cmd = app.add_subcommand("transport", "Transport a fixture frame");
  transport_cmd->add_option("--fixture", transport.fixture, "adjoint or banach-stone")
      ->required()
      ->check(CLI::IsMember({"adjoint", "banach-stone"}));
  transport_cmd->add_option("--blocks", transport.blocks, "Algebra blocks (adjoint)");
  transport_cmd->add_option("--lambdas", transport.lambdas, "Frame scalars (adjoint), e.g. 1,2");
  transport_cmd->add_option("--p", transport.p, "Number of points (banach-stone)");
  transport_cmd->add_option("--d", transport.d, "Fiber dimension (banach-stone)");
  transport_cmd->add_option("--perm", transport.perm, "Point bijection Y -> X, e.g. 1,2,0");
  transport_cmd->add_option("--params", transport.params, "Fixture parameter file");

  Lemma26Args lemma;
  auto* lemma_cmd = app.add_subcommand("lemma26", "Sample the norm sandwich for Q^* (x) I");
  lemma_cmd->add_option("q", lemma.q, "Invertible operator Q on H")->required();
  lemma_cmd->add_option("--samples", lemma.samples, "Number of random z");
  lemma_cmd->add_option("--k-blocks", lemma.k_blocks, "Algebra blocks of K");
  lemma_cmd->add_option("--k-rank", lemma.k_rank, "Rank of K")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*gen_cmd) return cmd_gen(g, gen);
  if (*check_cmd) return cmd_check(g, check);
  if (*bounds_cmd) return cmd_bounds(g, bounds_frame);
  if (*tensor_cmd) return cmd_tensor(g, tensor);
  if (*transform_cmd) return cmd_transform(g, transform);
  if (*transport_cmd) return cmd_transport(g, transport);
  if (*lemma_cmd) return cmd_lemma26(g, lemma);
  return kExitUsage;
}
