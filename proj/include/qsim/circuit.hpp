#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qsim/linalg.hpp"

namespace qsim {

/// A unitary acting on a contiguous group of wires. The matrix dimension is
/// the product of `wire_dims`; the first wire is the high-order digit.
class Gate {
public:
    /// Validates dimensions and unitarity (NonUnitary, DimensionMismatch).
    Gate(std::string name, std::vector<std::size_t> wire_dims, Matrix matrix);

    const std::string& name() const noexcept { return name_; }
    const std::vector<std::size_t>& wire_dims() const noexcept { return wire_dims_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return matrix_.dim(); }

    friend bool operator==(const Gate&, const Gate&) = default;

private:
    std::string name_;
    std::vector<std::size_t> wire_dims_;
    Matrix matrix_;
};

/// Gates applied in parallel, listed top (high-order wires) to bottom.
struct Stage {
    std::vector<Gate> gates;

    std::size_t dim() const;
    std::vector<std::size_t> wire_dims() const;

    friend bool operator==(const Stage&, const Stage&) = default;
};

/// Stages applied in order; the output of one stage feeds the next.
struct Circuit {
    std::vector<std::size_t> register_dims;
    std::vector<Stage> stages;

    std::size_t dim() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

Gate gate_not(std::size_t k);
Gate gate_hadamard(std::size_t k);
/// Control is the high-order (first) wire.
Gate gate_cnot();
Gate gate_identity(std::size_t d);
/// Identity spanning several wires, for padding a stage.
Gate gate_identity(std::vector<std::size_t> wire_dims);
/// Fourier transform over Z_d on a single d-dimensional wire.
Gate gate_qft(std::size_t d);
Gate gate_custom(std::string name, std::vector<std::size_t> wire_dims, Matrix matrix);
/// Basis permutation: |j> -> |perm[j]>.
Gate gate_permutation(std::string name, std::vector<std::size_t> wire_dims,
                      std::span<const std::size_t> perm);

/// Throws StageDimensionMismatch (location = stage index) or NonUnitary.
void circuit_validate(const Circuit& c);

} // namespace qsim
