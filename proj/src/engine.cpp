#include "qsim/engine.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>

#include "qsim/error.hpp"

namespace qsim {

// ---------------------------------------------------------------------------
// WorkspaceMeter

WorkspaceMeter::Lease::Lease(WorkspaceMeter& meter, std::uint64_t cells)
    : meter_(&meter), cells_(cells) {
    meter.live_ += cells;
    if (meter.live_ > meter.peak_) {
        meter.peak_ = meter.live_;
    }
}

WorkspaceMeter::Lease::Lease(Lease&& other) noexcept
    : meter_(std::exchange(other.meter_, nullptr)), cells_(std::exchange(other.cells_, 0)) {}

WorkspaceMeter::Lease& WorkspaceMeter::Lease::operator=(Lease&& other) noexcept {
    if (this != &other) {
        release();
        meter_ = std::exchange(other.meter_, nullptr);
        cells_ = std::exchange(other.cells_, 0);
    }
    return *this;
}

WorkspaceMeter::Lease::~Lease() { release(); }

void WorkspaceMeter::Lease::release() noexcept {
    if (meter_ != nullptr) {
        meter_->live_ -= cells_;
        meter_ = nullptr;
        cells_ = 0;
    }
}

namespace {

// Structural check only; Gate construction already guarantees unitarity.
void check_layout(const Circuit& c, const StateVector& input) {
    if (c.register_dims.empty()) {
        throw Error(ErrorKind::InvalidInput, "circuit has no wires");
    }
    if (input.dims() != c.register_dims) {
        throw Error(ErrorKind::DimensionMismatch,
                    "input register layout does not match the circuit");
    }
    for (std::size_t s = 0; s < c.stages.size(); ++s) {
        if (c.stages[s].wire_dims() != c.register_dims) {
            throw Error(ErrorKind::StageDimensionMismatch,
                        "stage gates do not cover the register layout", s);
        }
    }
}

std::uint64_t cells(const Matrix& m) { return m.size(); }

} // namespace

// ---------------------------------------------------------------------------
// Naive evaluator

std::pair<StateVector, EvalMetrics> eval_naive(const Circuit& c, const StateVector& input,
                                               const EvalOptions& options) {
    check_layout(c, input);
    const auto d = c.dim();
    if (d > options.naive_max_dim) {
        throw Error(ErrorKind::ResourceLimit,
                    "naive evaluation needs a " + std::to_string(d) + "x" + std::to_string(d) +
                        " matrix; the cap is dimension " + std::to_string(options.naive_max_dim));
    }

    WorkspaceMeter meter;
    EvalMetrics metrics;
    if (c.stages.empty()) {
        return {input, metrics};
    }

    Matrix circuit_matrix;
    WorkspaceMeter::Lease circuit_lease;
    for (const auto& stage : c.stages) {
        // Tensor the gates top to bottom into the stage matrix.
        Matrix stage_matrix = stage.gates.front().matrix();
        auto stage_lease = meter.acquire(cells(stage_matrix));
        for (std::size_t g = 1; g < stage.gates.size(); ++g) {
            const auto& next = stage.gates[g].matrix();
            auto grown_lease = meter.acquire(cells(stage_matrix) * cells(next));
            Matrix grown = tensor_product(stage_matrix, next);
            metrics.madds += cells(grown);
            stage_matrix = std::move(grown);
            stage_lease = std::move(grown_lease);
        }

        if (metrics.stages_processed == 0) {
            circuit_matrix = std::move(stage_matrix);
            circuit_lease = std::move(stage_lease);
        } else {
            // Later stages act after earlier ones: M <- S · M.
            auto product_lease = meter.acquire(cells(circuit_matrix));
            Matrix product = mat_mul(stage_matrix, circuit_matrix);
            metrics.madds += static_cast<std::uint64_t>(d) * d * d;
            circuit_matrix = std::move(product);
            circuit_lease = std::move(product_lease);
        }
        ++metrics.stages_processed;
    }

    auto out = mat_vec(circuit_matrix, input);
    metrics.madds += static_cast<std::uint64_t>(d) * d;
    metrics.peak_live_cells = meter.peak();
    return {std::move(out), metrics};
}

// ---------------------------------------------------------------------------
// Streaming evaluator

namespace {

StateVector stream_stage(const Stage& stage, const StateVector& input, WorkspaceMeter& meter,
                         EvalMetrics& metrics) {
    const auto d = input.size();
    const auto in = input.amps();
    const auto& gates = stage.gates;
    const auto n_gates = gates.size();

    std::vector<Complex> out(d);
    std::vector<std::size_t> sub(n_gates);
    for (std::size_t i = 0; i < d; ++i) {
        // Per-gate row indices of output entry i; the last gate is least significant.
        std::size_t rest = i;
        for (std::size_t g = n_gates; g-- > 0;) {
            sub[g] = rest % gates[g].dim();
            rest /= gates[g].dim();
        }

        // Row i of the stage matrix, grown one gate row at a time.
        std::vector<Complex> slice{Complex{1.0}};
        auto slice_lease = meter.acquire(1);
        for (std::size_t g = 0; g < n_gates; ++g) {
            const auto grow = gates[g].matrix().row(sub[g]);
            const auto width = grow.size();
            auto grown_lease = meter.acquire(slice.size() * width);
            std::vector<Complex> grown(slice.size() * width);
            for (std::size_t a = 0; a < slice.size(); ++a) {
                const Complex s = slice[a];
                Complex* dst = grown.data() + a * width;
                for (std::size_t b = 0; b < width; ++b) {
                    dst[b] = s * grow[b];
                }
            }
            metrics.madds += grown.size();
            slice = std::move(grown);
            slice_lease = std::move(grown_lease);
        }

        Complex acc{};
        for (std::size_t j = 0; j < d; ++j) {
            acc += slice[j] * in[j];
        }
        metrics.madds += d;
        out[i] = acc;
    }
    ++metrics.stages_processed;
    return StateVector(input.dims(), std::move(out));
}

} // namespace

std::pair<StateVector, EvalMetrics> apply_stage_streamed(const Stage& s, const StateVector& input) {
    if (s.gates.empty() || s.dim() != input.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "stage dimension " + std::to_string(s.dim()) +
                        " does not match input length " + std::to_string(input.size()));
    }
    WorkspaceMeter meter;
    EvalMetrics metrics;
    auto out = stream_stage(s, input, meter, metrics);
    metrics.peak_live_cells = meter.peak();
    return {std::move(out), metrics};
}

std::pair<StateVector, EvalMetrics> eval_efficient(const Circuit& c, const StateVector& input) {
    check_layout(c, input);
    WorkspaceMeter meter;
    EvalMetrics metrics;
    StateVector state = input;
    for (const auto& stage : c.stages) {
        state = stream_stage(stage, state, meter, metrics);
    }
    metrics.peak_live_cells = meter.peak();
    return {std::move(state), metrics};
}

// ---------------------------------------------------------------------------
// Benchmark

std::string to_string(EvalMode mode) {
    return mode == EvalMode::Naive ? "naive" : "efficient";
}

EvalMode parse_eval_mode(const std::string& text) {
    if (text == "naive") {
        return EvalMode::Naive;
    }
    if (text == "efficient") {
        return EvalMode::Efficient;
    }
    throw Error(ErrorKind::InvalidInput, "unknown mode '" + text + "' (naive|efficient)");
}

StageTemplate parse_stage_template(const std::string& text) {
    if (text == "h" || text == "hadamard") {
        return StageTemplate::Hadamard;
    }
    if (text == "not") {
        return StageTemplate::Not;
    }
    throw Error(ErrorKind::InvalidInput, "unknown stage template '" + text + "' (hadamard|not)");
}

Circuit make_benchmark_circuit(std::size_t qubits, StageTemplate tmpl, std::size_t stages) {
    if (qubits < 1) {
        throw Error(ErrorKind::InvalidInput, "benchmark needs at least one qubit");
    }
    Stage stage;
    stage.gates.reserve(qubits);
    const Gate one = tmpl == StageTemplate::Hadamard ? gate_hadamard(1) : gate_not(1);
    for (std::size_t q = 0; q < qubits; ++q) {
        stage.gates.push_back(one);
    }
    Circuit c;
    c.register_dims.assign(qubits, 2);
    c.stages.assign(stages, stage);
    return c;
}

std::vector<BenchRow> run_benchmark(std::size_t n_min, std::size_t n_max, EvalMode mode,
                                    const BenchConfig& config) {
    if (n_min < 1 || n_min > n_max) {
        throw Error(ErrorKind::InvalidInput, "benchmark range must satisfy 1 <= n_min <= n_max");
    }
    std::vector<BenchRow> rows;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        const auto circuit = make_benchmark_circuit(n, config.stage_template, config.stages);
        const auto input = StateVector::basis(circuit.register_dims, 0);
        BenchRow row;
        row.qubits = n;
        row.mode = mode;
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto result = mode == EvalMode::Naive
                                    ? eval_naive(circuit, input, config.eval)
                                    : eval_efficient(circuit, input);
            row.peak_live_cells = result.second.peak_live_cells;
            row.madds = result.second.madds;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ResourceLimit) {
                throw;
            }
            row.crashed = true;
        }
        const auto stop = std::chrono::steady_clock::now();
        row.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        rows.push_back(row);
    }
    return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << "qubits,mode,elapsed_ms,peak_live_cells,madds\n";
    for (const auto& r : rows) {
        os << r.qubits << ',' << to_string(r.mode) << ',';
        if (r.crashed) {
            os << "crash,crash,crash\n";
        } else {
            os << std::fixed << std::setprecision(3) << r.elapsed_ms << std::defaultfloat << ','
               << r.peak_live_cells << ',' << r.madds << '\n';
        }
    }
}

void write_bench_table(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << std::left << std::setw(8) << "qubits" << std::setw(11) << "mode" << std::right
       << std::setw(14) << "elapsed_ms" << std::setw(18) << "peak_live_cells" << std::setw(18)
       << "madds" << '\n';
    for (const auto& r : rows) {
        os << std::left << std::setw(8) << r.qubits << std::setw(11) << to_string(r.mode)
           << std::right;
        if (r.crashed) {
            os << std::setw(14) << "crash" << std::setw(18) << "crash" << std::setw(18)
               << "crash" << '\n';
        } else {
            os << std::setw(14) << std::fixed << std::setprecision(3) << r.elapsed_ms
               << std::defaultfloat << std::setw(18) << r.peak_live_cells << std::setw(18)
               << r.madds << '\n';
        }
    }
}

} // namespace qsim
