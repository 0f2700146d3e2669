#include "fdfsi/system.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace fdfsi;

namespace {

Triangle random_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    Triangle t{Point2(u(rng), u(rng)), Point2(u(rng), u(rng)), Point2(u(rng), u(rng))};
    const double s = signed_area(t);
    if (std::abs(s) < 1e-3) continue;
    if (s < 0) std::swap(t[1], t[2]);
    return t;
  }
}

void BM_Clip(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Triangle> tris;
  for (int k = 0; k < 1024; ++k) tris.push_back(random_triangle(rng));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(clip_triangles(tris[k % 1024], tris[(k + 1) % 1024]));
    ++k;
  }
}
BENCHMARK(BM_Clip);

void BM_IntersectionTable(benchmark::State& state) {
  const ManufacturedCase c = flower_case();
  const Discretization d = discretize(c, static_cast<int>(state.range(0)));
  const BackgroundGrid grid(d.fluid_half);
  const auto mapped = map_elements(d.solid, d.mapped_vertices(c));
  for (auto _ : state) benchmark::DoNotOptimize(build_intersection_table(mapped, d.fluid_half, grid));
  state.counters["solid_elements"] = static_cast<double>(d.solid.n_triangles());
}
BENCHMARK(BM_IntersectionTable)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_AssembleCf(benchmark::State& state) {
  const ManufacturedCase c = flower_case();
  const Discretization d = discretize(c, 3);
  const BackgroundGrid grid(d.fluid_half);
  const CouplingGeometry geo = build_coupling_geometry(d.solid, d.mapped_vertices(c), d.fluid_half, grid);
  const auto kind = state.range(0) ? CouplingKind::C1 : CouplingKind::C0;
  const auto mode = state.range(1) ? AssemblyMode::Inexact : AssemblyMode::Exact;
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_Cf(d.solid, geo, d.fluid_half, grid, d.l_map, d.u_map, kind, mode));
  state.SetLabel(std::string(to_string(kind)) + "/" + to_string(mode));
}
BENCHMARK(BM_AssembleCf)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);

} // namespace
