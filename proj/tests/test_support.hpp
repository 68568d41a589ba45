#pragma once

// Generators shared by the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/linalg.hpp"
#include "qsim/measurement.hpp"

namespace qsim::testing {

inline double gaussian(RandomSource& rng) {
    // Box-Muller; 1 - u keeps the log argument positive.
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline StateVector random_state(const std::vector<std::size_t>& dims, RandomSource& rng) {
    const auto d = total_dim(dims);
    std::vector<Complex> amps(d);
    double norm2 = 0.0;
    for (auto& a : amps) {
        a = {gaussian(rng), gaussian(rng)};
        norm2 += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) {
        a *= scale;
    }
    return StateVector(dims, std::move(amps));
}

/// Haar-ish random unitary: Gram-Schmidt on a Gaussian matrix.
inline Matrix random_unitary(std::size_t d, RandomSource& rng) {
    std::vector<std::vector<Complex>> rows(d, std::vector<Complex>(d));
    for (std::size_t r = 0; r < d; ++r) {
        for (auto& z : rows[r]) {
            z = {gaussian(rng), gaussian(rng)};
        }
        for (std::size_t q = 0; q < r; ++q) {
            Complex proj{};
            for (std::size_t k = 0; k < d; ++k) {
                proj += std::conj(rows[q][k]) * rows[r][k];
            }
            for (std::size_t k = 0; k < d; ++k) {
                rows[r][k] -= proj * rows[q][k];
            }
        }
        double n2 = 0.0;
        for (const auto& z : rows[r]) {
            n2 += std::norm(z);
        }
        const double scale = 1.0 / std::sqrt(n2);
        for (auto& z : rows[r]) {
            z *= scale;
        }
    }
    Matrix m(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

inline std::vector<std::size_t> random_permutation(std::size_t d, RandomSource& rng) {
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) {
        perm[i] = i;
    }
    for (std::size_t i = d; i-- > 1;) {
        std::swap(perm[i], perm[rng.uniform_int(0, i)]);
    }
    return perm;
}

/// Random circuit over wires of dimension 2 or 3 with total dimension at most
/// `max_dim`, 1..max_stages stages, gates from {NOT, H, CNOT, QFT_d, random
/// permutation, identity}.
inline Circuit random_circuit(RandomSource& rng, std::size_t max_dim = 64,
                              std::size_t max_stages = 4) {
    Circuit c;
    std::size_t d = 1;
    while (true) {
        const std::size_t w = rng.uniform_int(2, 3);
        if (d * w > max_dim) {
            break;
        }
        c.register_dims.push_back(w);
        d *= w;
        if (c.register_dims.size() >= 2 && rng.uniform() < 0.25) {
            break;
        }
    }
    const auto& dims = c.register_dims;
    const auto n_stages = rng.uniform_int(1, max_stages);
    for (std::size_t s = 0; s < n_stages; ++s) {
        Stage stage;
        std::size_t pos = 0;
        while (pos < dims.size()) {
            const bool pair_of_qubits =
                pos + 1 < dims.size() && dims[pos] == 2 && dims[pos + 1] == 2;
            const auto choice = rng.uniform_int(0, 5);
            if (dims[pos] == 2 && choice == 0) {
                stage.gates.push_back(gate_not(1));
                pos += 1;
            } else if (dims[pos] == 2 && choice == 1) {
                if (pair_of_qubits && rng.uniform() < 0.5) {
                    stage.gates.push_back(gate_hadamard(2));
                    pos += 2;
                } else {
                    stage.gates.push_back(gate_hadamard(1));
                    pos += 1;
                }
            } else if (pair_of_qubits && choice == 2) {
                stage.gates.push_back(gate_cnot());
                pos += 2;
            } else if (choice == 3) {
                stage.gates.push_back(gate_qft(dims[pos]));
                pos += 1;
            } else if (choice == 4) {
                const std::size_t span = pos + 1 < dims.size() && rng.uniform() < 0.5 ? 2 : 1;
                std::vector<std::size_t> wires(dims.begin() + static_cast<std::ptrdiff_t>(pos),
                                               dims.begin() + static_cast<std::ptrdiff_t>(pos + span));
                const auto perm = random_permutation(total_dim(wires), rng);
                stage.gates.push_back(gate_permutation("perm", wires, perm));
                pos += span;
            } else {
                stage.gates.push_back(gate_identity(dims[pos]));
                pos += 1;
            }
        }
        c.stages.push_back(std::move(stage));
    }
    return c;
}

} // namespace qsim::testing
