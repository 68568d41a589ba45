#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "qsim/circuit.hpp"
#include "qsim/linalg.hpp"
#include "qsim/measurement.hpp"

namespace qsim::shor {

// ---------------------------------------------------------------------------
// Number theory

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
/// Throws NotInvertible when gcd(a, m) != 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);
/// Smallest r >= 1 with x^r = 1 (mod n), by iteration. Throws NotCoprime.
std::uint64_t order_of(std::uint64_t x, std::uint64_t n);
bool is_prime(std::uint64_t n);

// ---------------------------------------------------------------------------
// Discrete logarithm circuit

/// Find r with g^r = x (mod p).
struct DlogInstance {
    std::uint64_t p = 0;
    std::uint64_t g = 0;
    std::uint64_t x = 0;
};

/// Largest prime accepted for the quantum circuit; the oracle is a dense
/// (p-1)^3 square matrix.
inline constexpr std::uint64_t kMaxPrime = 13;

/// Throws InvalidInstance unless p is an odd prime <= kMaxPrime, g generates
/// the multiplicative group and 1 <= x <= p-1.
void validate_instance(const DlogInstance& inst);

/// Third-register encoding: group element v in 1..p-1 sits at index v-1.
inline std::size_t element_index(std::uint64_t v) { return static_cast<std::size_t>(v - 1); }

/// |a, b, v> -> |a, b, v * g^a * x^(-b) mod p> on registers [p-1, p-1, p-1].
Gate build_dlog_oracle(const DlogInstance& inst);

/// [QFT, QFT, I], [oracle], [QFT, QFT, I] on registers [p-1, p-1, p-1].
Circuit build_dlog_circuit(const DlogInstance& inst);

/// |0, 0, element 1>.
StateVector dlog_input_state(const DlogInstance& inst);

/// With forward QFTs, the measured (c, d) always satisfy
/// c*r + kSupportSign*d = 0 (mod p-1), where r is the true logarithm.
inline constexpr int kSupportSign = +1;

/// Recovers r from a measured (c, d) with gcd(c, p-1) = 1, in 0..p-2.
std::uint64_t recover_exponent(std::uint64_t c, std::uint64_t d, std::uint64_t p);

struct DlogOutcome {
    std::uint64_t c = 0;
    std::uint64_t d = 0;
    std::size_t third_register = 0;
    std::optional<std::uint64_t> r;
    std::size_t tries = 0;
};

/// Runs and fully measures the circuit until gcd(c, p-1) = 1, then solves for
/// r. The returned r satisfies g^r = x (mod p). Throws TriesExhausted.
DlogOutcome shor_dlog(const DlogInstance& inst, RandomSource& rng, std::size_t max_tries = 50);

// ---------------------------------------------------------------------------
// Factoring driver

struct FactorResult {
    std::uint64_t factor = 0;
    std::size_t attempts = 0;
    std::uint64_t x = 0;             // the base that produced the factor
    std::optional<std::uint64_t> r;  // its order, absent for a lucky gcd
};

/// Random-base reduction of factoring to order finding (orders found
/// classically). Throws InvalidInput for even, prime or n < 9, and
/// AttemptsExhausted.
FactorResult factor(std::uint64_t n, RandomSource& rng, std::size_t max_attempts = 50);

} // namespace qsim::shor
