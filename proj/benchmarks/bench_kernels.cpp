#include <benchmark/benchmark.h>

#include "invforge/invariants.hpp"

using namespace invforge;
using namespace invforge::gf;
using namespace invforge::mpoly;
using namespace invforge::invariants;

namespace {

PolyMatrix dickson_matrix(const FieldSpec& spec, int n) {
    VarGrid grid{1, n};
    std::vector<std::vector<SparsePoly>> cols;
    std::uint64_t e = 1;
    for (int c = 0; c < n; ++c) {
        std::vector<SparsePoly> col;
        for (int r = 1; r <= n; ++r)
            col.push_back(SparsePoly::variable(spec, grid, 1, r, e));
        cols.push_back(std::move(col));
        e *= spec.q();
    }
    return PolyMatrix::from_columns(cols);
}

void BM_DicksonDetCofactor(benchmark::State& state) {
    auto spec = make_field((std::uint32_t)state.range(0), 1);
    auto m = dickson_matrix(*spec, (int)state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(determinant(m, DetStrategy::Cofactor));
}

void BM_DicksonDetBareiss(benchmark::State& state) {
    auto spec = make_field((std::uint32_t)state.range(0), 1);
    auto m = dickson_matrix(*spec, (int)state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(determinant(m, DetStrategy::Bareiss));
}

void BM_SteinbergBuild(benchmark::State& state) {
    auto spec = make_field((std::uint32_t)state.range(0), 1);
    int n = (int)state.range(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(steinberg_build(n, n, *spec));
}

void BM_SteinbergLijk(benchmark::State& state) {
    auto spec = make_field((std::uint32_t)state.range(0), 1);
    int n = (int)state.range(1);
    auto fam = steinberg_build(n, n, *spec);
    int k = (int)state.range(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(steinberg_lijk(fam, 1, 1, k));
}

void BM_Ell0Power(benchmark::State& state) {
    auto spec = make_field((std::uint32_t)state.range(0), 1);
    int n = (int)state.range(1);
    auto fam = steinberg_build(n, n, *spec);
    const std::uint64_t e = spec->q() - 1 + n; // the det(ell_ij) identity exponent
    for (auto _ : state)
        benchmark::DoNotOptimize(pow(fam.ell0(), e));
}

void BM_ExactDivDickson(benchmark::State& state) {
    auto spec = make_field((std::uint32_t)state.range(0), 1);
    int n = (int)state.range(1);
    VarGrid grid{1, n};
    auto d0 = dickson_d(n, 0, 1, grid, *spec);
    auto dn = dickson_d(n, n, 1, grid, *spec);
    for (auto _ : state) benchmark::DoNotOptimize(exact_div(d0, dn));
}

} // namespace

BENCHMARK(BM_DicksonDetCofactor)
    ->Args({2, 2})
    ->Args({2, 3})
    ->Args({2, 4})
    ->Args({3, 3});
BENCHMARK(BM_DicksonDetBareiss)
    ->Args({2, 2})
    ->Args({2, 3})
    ->Args({2, 4})
    ->Args({3, 3});
BENCHMARK(BM_SteinbergBuild)->Args({2, 2})->Args({2, 3})->Args({3, 2});
BENCHMARK(BM_SteinbergLijk)
    ->Args({2, 2, 2})
    ->Args({2, 3, 2})
    ->Args({3, 2, 3});
BENCHMARK(BM_Ell0Power)->Args({2, 3})->Args({3, 2});
BENCHMARK(BM_ExactDivDickson)->Args({2, 3})->Args({3, 2})->Args({3, 3});

BENCHMARK_MAIN();
