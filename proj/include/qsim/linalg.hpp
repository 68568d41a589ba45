#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qsim {

using Complex = std::complex<double>;

/// Unitarity / normalization validation tolerance.
inline constexpr double kUnitaryTol = 1e-9;

/// Product of wire dimensions. Throws InvalidInput if any dimension is < 2.
std::size_t total_dim(std::span<const std::size_t> dims);

/// Dense square complex matrix, row-major. Holds gate matrices and, in the
/// naive evaluator, whole stage and circuit matrices.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim);
    Matrix(std::size_t dim, std::vector<Complex> entries);
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return entries_.size(); }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    std::span<const Complex> row(std::size_t r) const {
        return {entries_.data() + r * dim_, dim_};
    }
    std::span<const Complex> entries() const noexcept { return entries_; }

    Matrix adjoint() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// Amplitudes over a mixed-radix register. Wire 0 is the most significant
/// digit of the basis index.
class StateVector {
public:
    StateVector() = default;
    StateVector(std::vector<std::size_t> dims, std::vector<Complex> amps);

    /// Single-wire register of dimension amps.size().
    explicit StateVector(std::vector<Complex> amps);

    static StateVector basis(std::vector<std::size_t> dims, std::size_t index);

    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return amps_.size(); }
    std::span<const Complex> amps() const noexcept { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const;
    bool is_normalized(double tol = kUnitaryTol) const;

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    void check() const;

    std::vector<std::size_t> dims_;
    std::vector<Complex> amps_;
};

/// Decompose a basis index into per-wire digits (wire 0 first).
std::vector<std::size_t> index_to_digits(std::size_t index, std::span<const std::size_t> dims);
std::size_t digits_to_index(std::span<const std::size_t> digits,
                            std::span<const std::size_t> dims);

/// Kronecker product; `a` occupies the high-order index positions.
Matrix tensor_product(const Matrix& a, const Matrix& b);
Matrix mat_mul(const Matrix& a, const Matrix& b);
StateVector mat_vec(const Matrix& m, const StateVector& v);

/// Largest entrywise |M·M† − I|.
double unitarity_deviation(const Matrix& m);
bool is_unitary(const Matrix& m, double tol = kUnitaryTol);

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);

/// Bit vector over GF(2); bits()[0] is the leftmost (most significant) bit.
class Gf2Vector {
public:
    Gf2Vector() = default;
    explicit Gf2Vector(std::size_t n) : bits_(n, 0) {}
    explicit Gf2Vector(std::vector<std::uint8_t> bits);

    /// Parses a string of '0'/'1' characters.
    static Gf2Vector from_string(const std::string& text);
    /// Low n bits of `value`, most significant first.
    static Gf2Vector from_integer(std::uint64_t value, std::size_t n);

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, bool bit) { bits_[i] = bit ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }
    bool is_zero() const;

    std::uint64_t to_integer() const;
    std::string to_string() const;

    Gf2Vector& operator^=(const Gf2Vector& other);
    friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;
    friend auto operator<=>(const Gf2Vector&, const Gf2Vector&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Inner product mod 2.
int gf2_dot(const Gf2Vector& a, const Gf2Vector& b);

/// Basis of {t : rows[i]·t ≡ 0 (mod 2) for all i}. Empty when only t = 0 solves.
std::vector<Gf2Vector> gf2_nullspace(std::span<const Gf2Vector> rows, std::size_t n);

} // namespace qsim
