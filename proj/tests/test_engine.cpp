#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qsim/engine.hpp"
#include "qsim/error.hpp"
#include "test_support.hpp"

using namespace qsim;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Circuit bell_circuit() {
    return Circuit{{2, 2},
                   {Stage{{gate_hadamard(1), gate_identity(2)}}, Stage{{gate_cnot()}}}};
}

// Reference M·v written out with explicit loops over the stage tensors.
StateVector reference_apply(const Circuit& c, const StateVector& v) {
    StateVector state = v;
    for (const auto& s : c.stages) {
        Matrix m = s.gates.front().matrix();
        for (std::size_t g = 1; g < s.gates.size(); ++g) {
            m = tensor_product(m, s.gates[g].matrix());
        }
        std::vector<Complex> out(m.dim());
        for (std::size_t i = 0; i < m.dim(); ++i) {
            for (std::size_t j = 0; j < m.dim(); ++j) {
                out[i] += m(i, j) * state[j];
            }
        }
        state = StateVector(v.dims(), std::move(out));
    }
    return state;
}

} // namespace

TEST_CASE("evaluator examples") {
    SUBCASE("[H] on (1,0)") {
        const Circuit c{{2}, {Stage{{gate_hadamard(1)}}}};
        for (const auto& out : {eval_naive(c, StateVector({1.0, 0.0})).first,
                                eval_efficient(c, StateVector({1.0, 0.0})).first}) {
            CHECK(std::abs(out[0] - kInvSqrt2) <= 1e-12);
            CHECK(std::abs(out[1] - kInvSqrt2) <= 1e-12);
        }
    }
    SUBCASE("empty circuit") {
        const Circuit c{{2, 3}, {}};
        RandomSource rng(1);
        const auto v = testing::random_state({2, 3}, rng);
        CHECK(eval_naive(c, v).first == v);
        CHECK(eval_efficient(c, v).first == v);
        CHECK(eval_naive(c, v).second.peak_live_cells == 0);
    }
    SUBCASE("Bell preparation") {
        const auto in = StateVector::basis({2, 2}, 0);
        for (const auto& out :
             {eval_naive(bell_circuit(), in).first, eval_efficient(bell_circuit(), in).first}) {
            CHECK(std::abs(out[0] - kInvSqrt2) <= 1e-12);
            CHECK(std::abs(out[1]) <= 1e-12);
            CHECK(std::abs(out[2]) <= 1e-12);
            CHECK(std::abs(out[3] - kInvSqrt2) <= 1e-12);
        }
    }
    SUBCASE("layout errors") {
        CHECK_THROWS_AS(eval_naive(bell_circuit(), StateVector({1.0, 0.0})), Error);
        CHECK_THROWS_AS(eval_efficient(bell_circuit(), StateVector({4}, {1.0, 0.0, 0.0, 0.0})),
                        Error);
        try {
            eval_efficient(bell_circuit(), StateVector({1.0, 0.0}));
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::DimensionMismatch);
        }
    }
}

TEST_CASE("apply_stage_streamed examples") {
    const auto x = apply_stage_streamed(Stage{{gate_not(1)}}, StateVector({0.6, 0.8})).first;
    CHECK(std::abs(x[0] - 0.8) <= 1e-15);
    CHECK(std::abs(x[1] - 0.6) <= 1e-15);

    const auto hh = apply_stage_streamed(Stage{{gate_hadamard(1), gate_hadamard(1)}},
                                         StateVector::basis({2, 2}, 0))
                        .first;
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(hh[i] - 0.5) <= 1e-15);
    }

    RandomSource rng(2);
    const auto v = testing::random_state({2, 2}, rng);
    CHECK(apply_stage_streamed(Stage{{gate_identity(2), gate_identity(2)}}, v).first == v);

    CHECK_THROWS_AS(apply_stage_streamed(Stage{{gate_not(1)}}, v), Error);
}

TEST_CASE("property: efficient and naive evaluators agree on random circuits") {
    RandomSource rng(424242);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto c = testing::random_circuit(rng, 64, 4);
        const auto v = testing::random_state(c.register_dims, rng);
        const auto naive = eval_naive(c, v).first;
        const auto eff = eval_efficient(c, v).first;
        const double diff = max_abs_diff(naive.amps(), eff.amps());
        worst = std::max(worst, diff);
        CHECK(diff <= 1e-10);
        CHECK(max_abs_diff(eff.amps(), reference_apply(c, v).amps()) <= 1e-10);
        CHECK(std::abs(naive.norm_squared() - 1.0) <= 1e-9);
        CHECK(std::abs(eff.norm_squared() - 1.0) <= 1e-9);
    }
    MESSAGE("worst deviation " << worst);
}

TEST_CASE("property: eval_efficient folds apply_stage_streamed") {
    RandomSource rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = testing::random_circuit(rng, 64, 4);
        auto v = testing::random_state(c.register_dims, rng);
        const auto whole = eval_efficient(c, v).first;
        for (const auto& s : c.stages) {
            v = apply_stage_streamed(s, v).first;
        }
        CHECK(max_abs_diff(whole.amps(), v.amps()) <= 1e-12);
    }
}

TEST_CASE("property: evaluators are deterministic") {
    RandomSource rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = testing::random_circuit(rng, 64, 4);
        const auto v = testing::random_state(c.register_dims, rng);
        const auto a = eval_efficient(c, v);
        const auto b = eval_efficient(c, v);
        CHECK(a.first == b.first);
        CHECK(a.second.madds == b.second.madds);
        CHECK(eval_naive(c, v).first == eval_naive(c, v).first);
    }
}

TEST_CASE("metrics") {
    SUBCASE("2-stage, 8-dimensional circuit") {
        const Circuit c{{2, 2, 2},
                        {Stage{{gate_hadamard(1), gate_cnot()}},
                         Stage{{gate_not(1), gate_hadamard(1), gate_identity(2)}}}};
        const auto in = StateVector::basis({2, 2, 2}, 0);
        const auto naive = eval_naive(c, in).second;
        const auto eff = eval_efficient(c, in).second;
        CHECK(naive.stages_processed == 2);
        CHECK(eff.stages_processed == 2);
        CHECK(eff.peak_live_cells < naive.peak_live_cells);
        CHECK(naive.peak_live_cells >= 64);
        CHECK(eff.peak_live_cells <= 8 * 8);
    }
    SUBCASE("memory separation with K = 8 on random circuits with D >= 8") {
        RandomSource rng(8);
        int checked = 0;
        while (checked < 100) {
            const auto c = testing::random_circuit(rng, 64, 4);
            const auto d = c.dim();
            if (d < 8) {
                continue;
            }
            const auto v = testing::random_state(c.register_dims, rng);
            CHECK(eval_efficient(c, v).second.peak_live_cells <= 8 * d);
            CHECK(eval_naive(c, v).second.peak_live_cells >= d * d);
            ++checked;
        }
    }
}

TEST_CASE("WorkspaceMeter leases") {
    WorkspaceMeter meter;
    {
        auto a = meter.acquire(10);
        auto b = meter.acquire(5);
        CHECK(meter.live() == 15);
        a = std::move(b);
        CHECK(meter.live() == 5);
    }
    CHECK(meter.live() == 0);
    CHECK(meter.peak() == 15);
}

TEST_CASE("naive cap") {
    const auto c = make_benchmark_circuit(13, StageTemplate::Hadamard, 1);
    const auto in = StateVector::basis(c.register_dims, 0);
    try {
        eval_naive(c, in);
        FAIL("expected ResourceLimit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ResourceLimit);
    }
    EvalOptions small;
    small.naive_max_dim = 4;
    CHECK_THROWS_AS(eval_naive(make_benchmark_circuit(3, StageTemplate::Not, 1),
                               StateVector::basis({2, 2, 2}, 0), small),
                    Error);
}

TEST_CASE("benchmark scaling") {
    const auto eff = run_benchmark(6, 10, EvalMode::Efficient);
    const auto naive = run_benchmark(6, 10, EvalMode::Naive);
    REQUIRE(eff.size() == 5);
    REQUIRE(naive.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
        const std::uint64_t d = std::uint64_t{1} << (6 + k);
        CHECK_FALSE(eff[k].crashed);
        CHECK_FALSE(naive[k].crashed);
        CHECK(eff[k].peak_live_cells <= 8 * d);
        CHECK(naive[k].peak_live_cells >= d * d);
        if (k > 0) {
            const double re = double(eff[k].peak_live_cells) / double(eff[k - 1].peak_live_cells);
            const double rn =
                double(naive[k].peak_live_cells) / double(naive[k - 1].peak_live_cells);
            CHECK(re >= 1.8);
            CHECK(re <= 2.5);
            CHECK(rn >= 3.5);
            CHECK(rn <= 4.5);
        }
    }

    BenchConfig cfg;
    cfg.eval.naive_max_dim = 1 << 5;
    const auto capped = run_benchmark(4, 6, EvalMode::Naive, cfg);
    CHECK_FALSE(capped[1].crashed);
    CHECK(capped[2].crashed);

    std::ostringstream csv;
    write_bench_csv(csv, capped);
    const auto text = csv.str();
    CHECK(text.rfind("qubits,mode,elapsed_ms,peak_live_cells,madds\n", 0) == 0);
    CHECK(text.find("6,naive,crash,crash,crash") != std::string::npos);

    CHECK_THROWS_AS(run_benchmark(5, 4, EvalMode::Efficient), Error);
    CHECK(parse_eval_mode("naive") == EvalMode::Naive);
    CHECK_THROWS_AS(parse_eval_mode("fast"), Error);
}
