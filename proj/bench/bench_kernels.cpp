#include <benchmark/benchmark.h>

#include <random>

#include "mcdeform/artin.hpp"
#include "mcdeform/builtins.hpp"

using namespace mcdeform;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = Scalar(num(gen), den(gen));
            m(i, j).canonicalize();
        }
    return m;
}

void BM_rref_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix m = random_matrix(n, n + 8, 11);
    for (auto _ : state) benchmark::DoNotOptimize(rref_serial(m));
}

void BM_rref_parallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix m = random_matrix(n, n + 8, 11);
    for (auto _ : state) benchmark::DoNotOptimize(rref_parallel(m));
}

DglaPtr jacobi_input(int n) {
    return tensor_dgla(builtin_dgla("heis"), truncated_polynomial(static_cast<unsigned>(n))).dgla;
}

void BM_jacobi_serial(benchmark::State& state) {
    const DglaPtr l = jacobi_input(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(jacobi_violations_serial(*l));
    state.counters["dim"] = static_cast<double>(l->dim());
}

void BM_jacobi_parallel(benchmark::State& state) {
    const DglaPtr l = jacobi_input(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(jacobi_violations_parallel(*l));
    state.counters["dim"] = static_cast<double>(l->dim());
}

}  // namespace

BENCHMARK(BM_rref_serial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_parallel)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_jacobi_serial)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_jacobi_parallel)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
