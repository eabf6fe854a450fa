#include "hho/adapt.hpp"
#include "hho/assembly.hpp"
#include "hho/local_ops.hpp"
#include "hho/pdas.hpp"
#include "hho/problems.hpp"

#include <benchmark/benchmark.h>

namespace {

hho::Mesh refined_square(int rounds) {
  hho::Mesh mesh = hho::example1().initial_mesh;
  for (int r = 0; r < rounds; ++r) mesh = hho::uniform_refine(mesh);
  return mesh;
}

void BM_LocalStiffness(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  hho::Mesh mesh = refined_square(1);
  for (auto _ : state) {
    for (int t = 0; t < mesh.cell_count(); ++t)
      benchmark::DoNotOptimize(hho::local_stiffness(mesh, t, k));
  }
  state.SetItemsProcessed(state.iterations() * mesh.cell_count());
}
BENCHMARK(BM_LocalStiffness)->Arg(0)->Arg(1);

void BM_AssembleGlobal(benchmark::State& state) {
  const int rounds = static_cast<int>(state.range(0));
  hho::ProblemSpec problem = hho::example1();
  hho::Mesh mesh = refined_square(rounds);
  hho::DofMap map = hho::build_dof_map(mesh, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(hho::assemble_global(mesh, map, problem.f));
  state.SetItemsProcessed(state.iterations() * mesh.cell_count());
}
BENCHMARK(BM_AssembleGlobal)->Arg(2)->Arg(3)->Arg(4);

void BM_PdasSolve(benchmark::State& state) {
  const int rounds = static_cast<int>(state.range(0));
  hho::ProblemSpec problem = hho::example1();
  hho::Mesh mesh = refined_square(rounds);
  hho::DofMap map = hho::build_dof_map(mesh, 1);
  hho::GlobalSystem sys = hho::assemble_global(mesh, map, problem.f);
  hho::ReducedSystem red = hho::apply_boundary_data(sys, map, mesh, problem.g);
  auto chi_bar = hho::obstacle_averages(mesh, problem.chi);
  for (auto _ : state)
    benchmark::DoNotOptimize(hho::solve_pdas(red, chi_bar, mesh));
  state.SetItemsProcessed(state.iterations() * red.A.rows());
}
BENCHMARK(BM_PdasSolve)->Arg(2)->Arg(3)->Arg(4);

void BM_AdaptiveLevel(benchmark::State& state) {
  hho::AdaptOptions opts;
  opts.k = 1;
  opts.max_dofs = static_cast<int>(state.range(0));
  hho::ProblemSpec problem = hho::example1();
  for (auto _ : state)
    benchmark::DoNotOptimize(hho::adaptive_loop(problem, opts));
}
BENCHMARK(BM_AdaptiveLevel)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
