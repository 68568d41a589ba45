#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/linalg.hpp"
#include "qsim/measurement.hpp"

namespace qsim::simon {

/// f : {0,1}^n -> {0,1}^n as a value table indexed by x.
struct FunctionTable {
    std::size_t n = 0;
    std::vector<std::uint64_t> values;
};

/// Largest n accepted. The oracle is a dense 4^n x 4^n matrix, so n = 5
/// (a 1024-dimensional register) is the practical ceiling.
inline constexpr std::size_t kMaxBits = 5;

/// Throws MalformedTable unless the table has 2^n in-range values and f is
/// either injective or two-to-one under a single XOR mask.
void validate_table(const FunctionTable& f);

/// The XOR mask t of a two-to-one table, or nullopt for a one-to-one table.
std::optional<std::uint64_t> hidden_mask(const FunctionTable& f);

/// Text form: first line `n`, then 2^n lines `x f(x)` in decimal. `#` starts a comment.
FunctionTable read_table(std::istream& in);
void write_table(std::ostream& out, const FunctionTable& f);

FunctionTable random_one_to_one(std::size_t n, RandomSource& rng);
/// Two-to-one table with the given nonzero mask.
FunctionTable random_two_to_one(std::size_t n, std::uint64_t mask, RandomSource& rng);

/// Permutation gate on 2n qubits: |x, y> -> |x, y xor f(x)>.
Gate build_oracle(const FunctionTable& f);

/// Stages: [H^n on top, I on bottom], [oracle], [H^n on top, I on bottom].
Circuit build_circuit(const FunctionTable& f);

enum class Classification { OneToOne, TwoToOne, Inconclusive };

const char* to_string(Classification c);

struct SimonResult {
    Classification classification = Classification::Inconclusive;
    std::optional<Gf2Vector> recovered_t;
    std::vector<Gf2Vector> equations;
    std::size_t repetitions_used = 0;
};

/// Evaluates the circuit once with the streaming evaluator, then measures the
/// top n qubits of a fresh copy of the output `repetitions` times and solves
/// the resulting GF(2) system. repetitions == 0 means the default 3n.
SimonResult run(const FunctionTable& f, std::size_t repetitions, RandomSource& rng);

/// Classifies a set of measured equations against the table.
SimonResult solve(const FunctionTable& f, std::vector<Gf2Vector> equations);

/// Probability of reading y on the top register, from the exact final state.
/// Throws NotTwoToOne when f is one-to-one.
double interference_probability(const FunctionTable& f, const Gf2Vector& y);

} // namespace qsim::simon
