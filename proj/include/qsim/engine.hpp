#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/linalg.hpp"

namespace qsim {

/// Counters collected during one evaluation.
///
/// `peak_live_cells` counts complex cells held simultaneously in evaluator
/// workspace: tensor partials, stage/circuit matrices, streamed row slices.
/// The input and output vectors are not counted. `madds` counts complex
/// multiplications, including the ones that build tensor products.
struct EvalMetrics {
    std::uint64_t peak_live_cells = 0;
    std::uint64_t madds = 0;
    std::uint64_t stages_processed = 0;
};

/// Live-cell accounting for evaluator workspace. Buffers register their size
/// through a `Lease`, which releases it on destruction.
class WorkspaceMeter {
public:
    class Lease {
    public:
        Lease() = default;
        Lease(WorkspaceMeter& meter, std::uint64_t cells);
        Lease(Lease&& other) noexcept;
        Lease& operator=(Lease&& other) noexcept;
        Lease(const Lease&) = delete;
        Lease& operator=(const Lease&) = delete;
        ~Lease();

        void release() noexcept;

    private:
        WorkspaceMeter* meter_ = nullptr;
        std::uint64_t cells_ = 0;
    };

    Lease acquire(std::uint64_t cells) { return Lease(*this, cells); }

    std::uint64_t live() const noexcept { return live_; }
    std::uint64_t peak() const noexcept { return peak_; }

private:
    std::uint64_t live_ = 0;
    std::uint64_t peak_ = 0;
};

struct EvalOptions {
    /// Largest register dimension the naive evaluator will materialize.
    /// The default admits 12 qubits and refuses 13.
    std::size_t naive_max_dim = std::size_t{1} << 12;
};

/// Builds the full circuit matrix (stage tensors multiplied left to right)
/// and applies it to the input. Throws ResourceLimit when the register
/// dimension exceeds `options.naive_max_dim`.
std::pair<StateVector, EvalMetrics> eval_naive(const Circuit& c, const StateVector& input,
                                               const EvalOptions& options = {});

/// Streams each stage: output entry i is the dot product of the input with
/// row i of the stage matrix, formed as the tensor product of the matching
/// gate rows and discarded once used. Workspace stays O(D).
std::pair<StateVector, EvalMetrics> eval_efficient(const Circuit& c, const StateVector& input);

/// Single-stage kernel of eval_efficient.
std::pair<StateVector, EvalMetrics> apply_stage_streamed(const Stage& s, const StateVector& input);

// ---------------------------------------------------------------------------
// Benchmark harness

enum class EvalMode { Naive, Efficient };

std::string to_string(EvalMode mode);
EvalMode parse_eval_mode(const std::string& text);

enum class StageTemplate { Hadamard, Not };

StageTemplate parse_stage_template(const std::string& text);

/// Test circuit on `qubits` wires: `stages` copies of a stage made of one
/// single-qubit gate per wire.
Circuit make_benchmark_circuit(std::size_t qubits, StageTemplate tmpl, std::size_t stages);

struct BenchRow {
    std::size_t qubits = 0;
    EvalMode mode = EvalMode::Efficient;
    bool crashed = false; // ResourceLimit hit
    double elapsed_ms = 0.0;
    std::uint64_t peak_live_cells = 0;
    std::uint64_t madds = 0;
};

struct BenchConfig {
    StageTemplate stage_template = StageTemplate::Hadamard;
    std::size_t stages = 2;
    EvalOptions eval;
};

std::vector<BenchRow> run_benchmark(std::size_t n_min, std::size_t n_max, EvalMode mode,
                                    const BenchConfig& config = {});

/// CSV with header `qubits,mode,elapsed_ms,peak_live_cells,madds`. Refused
/// runs print `crash` in the measured columns.
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);
void write_bench_table(std::ostream& os, const std::vector<BenchRow>& rows);

} // namespace qsim
