#include "qsim/shor.hpp"

#include <string>
#include <vector>

#include "qsim/engine.hpp"
#include "qsim/error.hpp"

namespace qsim::shor {

namespace {

__extension__ using Wide = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<Wide>(a) * b % m);
}

} // namespace

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m < 2) {
        throw Error(ErrorKind::InvalidInput, "modulus must be at least 2");
    }
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    if (m < 2) {
        throw Error(ErrorKind::InvalidInput, "modulus must be at least 2");
    }
    if (m > (std::uint64_t{1} << 62)) {
        throw Error(ErrorKind::InvalidInput, "modulus too large");
    }
    // Extended Euclid on signed values.
    std::int64_t old_r = static_cast<std::int64_t>(a % m);
    std::int64_t r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1;
    std::int64_t s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) {
        throw Error(ErrorKind::NotInvertible,
                    std::to_string(a) + " has no inverse mod " + std::to_string(m));
    }
    std::int64_t inv = old_s % static_cast<std::int64_t>(m);
    if (inv < 0) {
        inv += static_cast<std::int64_t>(m);
    }
    return static_cast<std::uint64_t>(inv);
}

std::uint64_t order_of(std::uint64_t x, std::uint64_t n) {
    if (n < 2) {
        throw Error(ErrorKind::InvalidInput, "modulus must be at least 2");
    }
    if (gcd(x % n, n) != 1) {
        throw Error(ErrorKind::NotCoprime,
                    std::to_string(x) + " is not coprime to " + std::to_string(n));
    }
    const std::uint64_t base = x % n;
    std::uint64_t acc = base;
    std::uint64_t r = 1;
    while (acc != 1) {
        acc = mul_mod(acc, base, n);
        ++r;
    }
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Discrete logarithm

void validate_instance(const DlogInstance& inst) {
    const auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::InvalidInstance,
                    "(p=" + std::to_string(inst.p) + ", g=" + std::to_string(inst.g) +
                        ", x=" + std::to_string(inst.x) + "): " + why);
    };
    if (inst.p < 3 || !is_prime(inst.p)) {
        fail("p must be an odd prime");
    }
    if (inst.p > kMaxPrime) {
        fail("p above " + std::to_string(kMaxPrime) + " is too large to simulate");
    }
    if (inst.g < 1 || inst.g >= inst.p || order_of(inst.g, inst.p) != inst.p - 1) {
        fail("g does not generate the multiplicative group");
    }
    if (inst.x < 1 || inst.x >= inst.p) {
        fail("x must lie in 1..p-1");
    }
}

Gate build_dlog_oracle(const DlogInstance& inst) {
    validate_instance(inst);
    const auto p = inst.p;
    const std::size_t m = p - 1;
    const auto x_inv = mod_inverse(inst.x, p);

    std::vector<std::size_t> perm(m * m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            const auto factor = mod_pow(inst.g, a, p) * mod_pow(x_inv, b, p) % p;
            for (std::size_t v = 1; v <= m; ++v) {
                const std::size_t src = (a * m + b) * m + element_index(v);
                perm[src] = (a * m + b) * m + element_index(v * factor % p);
            }
        }
    }
    return gate_permutation("dlog-oracle", {m, m, m}, perm);
}

Circuit build_dlog_circuit(const DlogInstance& inst) {
    auto oracle = build_dlog_oracle(inst);
    const std::size_t m = inst.p - 1;
    const auto qft = gate_qft(m);
    Stage fourier{{qft, qft, gate_identity(m)}};
    Circuit c;
    c.register_dims = {m, m, m};
    c.stages = {fourier, Stage{{std::move(oracle)}}, fourier};
    return c;
}

StateVector dlog_input_state(const DlogInstance& inst) {
    const std::size_t m = inst.p - 1;
    return StateVector::basis({m, m, m}, element_index(1));
}

std::uint64_t recover_exponent(std::uint64_t c, std::uint64_t d, std::uint64_t p) {
    const auto order = p - 1;
    const auto c_inv = mod_inverse(c % order, order);
    // c*r + s*d = 0  =>  r = -s * d * c^-1.
    const auto t = mul_mod(d % order, c_inv, order);
    if constexpr (kSupportSign > 0) {
        return (order - t) % order;
    } else {
        return t;
    }
}

DlogOutcome shor_dlog(const DlogInstance& inst, RandomSource& rng, std::size_t max_tries) {
    validate_instance(inst);
    if (max_tries < 1) {
        throw Error(ErrorKind::InvalidInput, "max_tries must be at least 1");
    }
    const auto circuit = build_dlog_circuit(inst);
    const auto input = dlog_input_state(inst);
    const auto order = inst.p - 1;

    for (std::size_t attempt = 1; attempt <= max_tries; ++attempt) {
        const auto state = eval_efficient(circuit, input).first;
        const auto outcome = measure_full(state, rng);
        const auto digits = index_to_digits(outcome.basis_index, circuit.register_dims);

        DlogOutcome result;
        result.c = digits[0];
        result.d = digits[1];
        result.third_register = digits[2];
        result.tries = attempt;
        if (gcd(result.c, order) != 1) {
            continue;
        }
        const auto r = recover_exponent(result.c, result.d, inst.p);
        if (mod_pow(inst.g, r, inst.p) != inst.x % inst.p) {
            continue;
        }
        result.r = r;
        return result;
    }
    throw Error(ErrorKind::TriesExhausted,
                "no measurement with gcd(c, p-1) = 1 in " + std::to_string(max_tries) + " tries");
}

// ---------------------------------------------------------------------------
// Factoring

FactorResult factor(std::uint64_t n, RandomSource& rng, std::size_t max_attempts) {
    if (n < 9 || n % 2 == 0 || is_prime(n)) {
        throw Error(ErrorKind::InvalidInput,
                    std::to_string(n) + " is not an odd composite number");
    }
    if (max_attempts < 1) {
        throw Error(ErrorKind::InvalidInput, "max_attempts must be at least 1");
    }
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        const auto x = rng.uniform_int(2, n - 1);
        if (const auto g = gcd(x, n); g > 1) {
            return {g, attempt, x, std::nullopt};
        }
        const auto r = order_of(x, n);
        if (r % 2 == 1) {
            continue;
        }
        const auto half = mod_pow(x, r / 2, n);
        if (half == n - 1) {
            continue;
        }
        // half != ±1 and half^2 = 1, so gcd(half - 1, n) is a proper factor.
        return {gcd(half - 1, n), attempt, x, r};
    }
    throw Error(ErrorKind::AttemptsExhausted,
                "no factor of " + std::to_string(n) + " in " + std::to_string(max_attempts) +
                    " attempts");
}

} // namespace qsim::shor
