#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cliffray/brackets.hpp"
#include "cliffray/cliffor.hpp"
#include "cliffray/dsl.hpp"
#include "cliffray/imaging.hpp"
#include "cliffray/paraxial.hpp"

namespace {

using namespace cliffray;

Cliffor random_cliffor(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), {u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}, u(rng)};
}

void BM_GeometricProduct(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const Cliffor a = random_cliffor(rng);
    const Cliffor b = random_cliffor(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(geometric_product(a, b));
    }
}
BENCHMARK(BM_GeometricProduct);

void BM_ComposeChain(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    std::vector<SystemMatrix> stages;
    for (int k = 0; k < 64; ++k) {
        const double a = 1.0 + u(rng);
        const double b = u(rng);
        const double c = u(rng);
        stages.push_back(make_system(a, b, c, (1.0 - b * c) / a));
    }
    for (auto _ : state) {
        SystemMatrix total = make_propagation(0.0);
        for (const SystemMatrix& stage : stages) total = compose(total, stage);
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_ComposeChain);

void BM_DistanceHeightBrackets(benchmark::State& state) {
    const BoxMatrix box(1.0, 0.5, 0.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance_height_brackets(box, 4.0, 1.0));
    }
}
BENCHMARK(BM_DistanceHeightBrackets);

void BM_DslParseEval(benchmark::State& state) {
    const std::string src = "<(a1 e1 + a2 e2 + a3 e3)(b1 e1 + b2 e2 + b3 e3)>_2";
    const dsl::Env env = {{"a1", 0.3}, {"a2", -0.7}, {"a3", 0.2},
                          {"b1", 0.9}, {"b2", 0.1},  {"b3", -0.4}};
    for (auto _ : state) {
        const dsl::ExprPtr expr = dsl::parse(src);
        benchmark::DoNotOptimize(dsl::eval(*expr, env));
    }
}
BENCHMARK(BM_DslParseEval);

}  // namespace

BENCHMARK_MAIN();
