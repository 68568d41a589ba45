#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "qsim/linalg.hpp"

namespace qsim {

/// Seeded source of uniform draws. Passed explicitly everywhere randomness is
/// needed; equal seeds give equal sequences on every platform.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [lo, hi].
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
    std::uint64_t next_u64() { return engine_(); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

struct MeasurementOutcome {
    /// Full basis index, or for a partial measurement the joint index of the
    /// measured wires taken in register order (lowest wire most significant).
    std::size_t basis_index = 0;
    double probability = 0.0;
    StateVector collapsed;
};

/// |amps_i|^2. Throws NotNormalized.
std::vector<double> probabilities(const StateVector& v);

/// Smallest index whose cumulative probability reaches `u`; the last index
/// absorbs rounding.
std::size_t cumulative_pick(std::span<const double> probs, double u);

MeasurementOutcome measure_full(const StateVector& v, RandomSource& rng);
/// Same as measure_full with the uniform draw supplied by the caller.
MeasurementOutcome measure_full_at(const StateVector& v, double u);

/// Measures the register wires listed in `wires` (any order, no repeats).
/// Throws EmptyWireSet, InvalidWire, NotNormalized.
MeasurementOutcome measure_partial(const StateVector& v, std::span<const std::size_t> wires,
                                   RandomSource& rng);
MeasurementOutcome measure_partial_at(const StateVector& v, std::span<const std::size_t> wires,
                                      double u);

/// Marginal distribution over the listed wires, indexed like basis_index above.
std::vector<double> marginal_probabilities(const StateVector& v,
                                           std::span<const std::size_t> wires);

std::map<std::size_t, std::size_t> sample_histogram(const StateVector& v, std::size_t trials,
                                                    RandomSource& rng);

/// Pearson chi-square statistic of observed counts against expected
/// probabilities, and the upper-tail p-value. Cells with zero expected
/// probability must have zero counts (otherwise the p-value is 0).
struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t degrees_of_freedom = 0;
    double p_value = 1.0;
};

ChiSquareResult chi_square_test(const std::map<std::size_t, std::size_t>& counts,
                                std::span<const double> expected_probs);

} // namespace qsim
