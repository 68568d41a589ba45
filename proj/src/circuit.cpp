#include "qsim/circuit.hpp"

#include <cmath>
#include <numbers>

#include "qsim/error.hpp"

namespace qsim {

Gate::Gate(std::string name, std::vector<std::size_t> wire_dims, Matrix matrix)
    : name_(std::move(name)), wire_dims_(std::move(wire_dims)), matrix_(std::move(matrix)) {
    if (wire_dims_.empty()) {
        throw Error(ErrorKind::DimensionMismatch, "gate '" + name_ + "' spans no wires");
    }
    if (total_dim(wire_dims_) != matrix_.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "gate '" + name_ + "' matrix dimension " + std::to_string(matrix_.dim()) +
                        " does not match its wires (" + std::to_string(total_dim(wire_dims_)) +
                        ")");
    }
    const double dev = unitarity_deviation(matrix_);
    if (dev > kUnitaryTol) {
        throw Error(ErrorKind::NonUnitary,
                    "gate '" + name_ + "' deviates from unitarity by " + std::to_string(dev));
    }
}

std::size_t Stage::dim() const {
    std::size_t d = 1;
    for (const auto& g : gates) {
        d *= g.dim();
    }
    return d;
}

std::vector<std::size_t> Stage::wire_dims() const {
    std::vector<std::size_t> dims;
    for (const auto& g : gates) {
        dims.insert(dims.end(), g.wire_dims().begin(), g.wire_dims().end());
    }
    return dims;
}

std::size_t Circuit::dim() const { return total_dim(register_dims); }

namespace {

Gate tensor_power(const std::string& name, const Matrix& one, std::size_t k) {
    if (k < 1) {
        throw Error(ErrorKind::InvalidInput, name + " needs at least one wire");
    }
    Matrix m = one;
    for (std::size_t i = 1; i < k; ++i) {
        m = tensor_product(m, one);
    }
    return Gate(name, std::vector<std::size_t>(k, 2), std::move(m));
}

} // namespace

Gate gate_not(std::size_t k) {
    static const Matrix kNot{{0.0, 1.0}, {1.0, 0.0}};
    return tensor_power("not", kNot, k);
}

Gate gate_hadamard(std::size_t k) {
    const double s = 1.0 / std::numbers::sqrt2;
    const Matrix h{{s, s}, {s, -s}};
    return tensor_power("h", h, k);
}

Gate gate_cnot() {
    return Gate("cnot", {2, 2},
                Matrix{{1.0, 0.0, 0.0, 0.0},
                       {0.0, 1.0, 0.0, 0.0},
                       {0.0, 0.0, 0.0, 1.0},
                       {0.0, 0.0, 1.0, 0.0}});
}

Gate gate_identity(std::size_t d) {
    return gate_identity(std::vector<std::size_t>{d});
}

Gate gate_identity(std::vector<std::size_t> wire_dims) {
    const auto d = total_dim(wire_dims);
    return Gate("id", std::move(wire_dims), Matrix::identity(d));
}

Gate gate_qft(std::size_t d) {
    if (d < 2) {
        throw Error(ErrorKind::InvalidInput, "qft dimension must be at least 2");
    }
    Matrix m(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) {
            // Reduce the exponent mod d first so large products keep full precision.
            const auto k = (x * y) % d;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                                 static_cast<double>(d);
            m(x, y) = std::polar(scale, angle);
        }
    }
    return Gate("qft", {d}, std::move(m));
}

Gate gate_custom(std::string name, std::vector<std::size_t> wire_dims, Matrix matrix) {
    return Gate(std::move(name), std::move(wire_dims), std::move(matrix));
}

Gate gate_permutation(std::string name, std::vector<std::size_t> wire_dims,
                      std::span<const std::size_t> perm) {
    const auto d = total_dim(wire_dims);
    if (perm.size() != d) {
        throw Error(ErrorKind::DimensionMismatch,
                    "permutation '" + name + "' has " + std::to_string(perm.size()) +
                        " entries for dimension " + std::to_string(d));
    }
    std::vector<bool> hit(d, false);
    Matrix m(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto dst = perm[j];
        if (dst >= d || hit[dst]) {
            throw Error(ErrorKind::NotBijective,
                        "permutation '" + name + "' is not a bijection on 0.." +
                            std::to_string(d - 1));
        }
        hit[dst] = true;
        m(dst, j) = 1.0;
    }
    return Gate(std::move(name), std::move(wire_dims), std::move(m));
}

void circuit_validate(const Circuit& c) {
    if (c.register_dims.empty()) {
        throw Error(ErrorKind::InvalidInput, "circuit has no wires");
    }
    total_dim(c.register_dims);
    for (std::size_t s = 0; s < c.stages.size(); ++s) {
        const auto& stage = c.stages[s];
        if (stage.wire_dims() != c.register_dims) {
            throw Error(ErrorKind::StageDimensionMismatch,
                        "stage gates do not cover the register layout", s);
        }
        for (const auto& g : stage.gates) {
            if (!is_unitary(g.matrix())) {
                throw Error(ErrorKind::NonUnitary, "gate '" + g.name() + "' is not unitary", s);
            }
        }
    }
}

} // namespace qsim
