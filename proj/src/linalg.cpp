#include "qsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "qsim/error.hpp"

namespace qsim {

namespace {

void require_finite(std::span<const Complex> values, const char* what) {
    for (const auto& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorKind::NonFinite, std::string(what) + " contains a non-finite entry");
        }
    }
}

} // namespace

std::size_t total_dim(std::span<const std::size_t> dims) {
    std::size_t d = 1;
    for (auto w : dims) {
        if (w < 2) {
            throw Error(ErrorKind::InvalidInput, "wire dimension must be at least 2");
        }
        if (d > std::numeric_limits<std::size_t>::max() / w) {
            throw Error(ErrorKind::ResourceLimit, "register dimension overflows");
        }
        d *= w;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

Matrix::Matrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix of dimension " + std::to_string(dim_) + " needs " +
                        std::to_string(dim_ * dim_) + " entries, got " +
                        std::to_string(entries_.size()));
    }
    require_finite(entries_, "matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    entries_.reserve(dim_ * dim_);
    for (const auto& r : rows) {
        if (r.size() != dim_) {
            throw Error(ErrorKind::DimensionMismatch, "matrix literal is not square");
        }
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
    require_finite(entries_, "matrix");
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<std::size_t> dims, std::vector<Complex> amps)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
    check();
}

// dims_ is declared first, so it reads amps.size() before amps_ takes the buffer.
StateVector::StateVector(std::vector<Complex> amps)
    : dims_{amps.size()}, amps_(std::move(amps)) {
    check();
}

void StateVector::check() const {
    if (dims_.empty()) {
        throw Error(ErrorKind::InvalidInput, "state vector needs at least one wire");
    }
    if (total_dim(dims_) != amps_.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "amplitude count " + std::to_string(amps_.size()) +
                        " does not match register dimension " + std::to_string(total_dim(dims_)));
    }
    require_finite(amps_, "state vector");
}

StateVector StateVector::basis(std::vector<std::size_t> dims, std::size_t index) {
    const auto d = total_dim(dims);
    if (index >= d) {
        throw Error(ErrorKind::InvalidInput,
                    "basis index " + std::to_string(index) + " out of range for dimension " +
                        std::to_string(d));
    }
    std::vector<Complex> amps(d);
    amps[index] = 1.0;
    return StateVector(std::move(dims), std::move(amps));
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return s;
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

std::vector<std::size_t> index_to_digits(std::size_t index, std::span<const std::size_t> dims) {
    std::vector<std::size_t> digits(dims.size());
    for (std::size_t w = dims.size(); w-- > 0;) {
        digits[w] = index % dims[w];
        index /= dims[w];
    }
    return digits;
}

std::size_t digits_to_index(std::span<const std::size_t> digits,
                            std::span<const std::size_t> dims) {
    std::size_t index = 0;
    for (std::size_t w = 0; w < dims.size(); ++w) {
        index = index * dims[w] + digits[w];
    }
    return index;
}

// ---------------------------------------------------------------------------
// Products

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    const auto na = a.dim();
    const auto nb = b.dim();
    const auto n = na * nb;
    std::vector<Complex> out(n * n);
    for (std::size_t ia = 0; ia < na; ++ia) {
        for (std::size_t ja = 0; ja < na; ++ja) {
            const Complex s = a(ia, ja);
            for (std::size_t ib = 0; ib < nb; ++ib) {
                Complex* dst = out.data() + (ia * nb + ib) * n + ja * nb;
                const auto brow = b.row(ib);
                for (std::size_t jb = 0; jb < nb; ++jb) {
                    dst[jb] = s * brow[jb];
                }
            }
        }
    }
    return Matrix(n, std::move(out));
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "cannot multiply " + std::to_string(a.dim()) + "x" + std::to_string(a.dim()) +
                        " by " + std::to_string(b.dim()) + "x" + std::to_string(b.dim()));
    }
    const auto n = a.dim();
    std::vector<Complex> out(n * n);
    // i-k-j order keeps the inner loop contiguous in both b and out.
    for (std::size_t i = 0; i < n; ++i) {
        Complex* orow = out.data() + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const Complex s = a(i, k);
            if (s == Complex{}) {
                continue;
            }
            const auto brow = b.row(k);
            for (std::size_t j = 0; j < n; ++j) {
                orow[j] += s * brow[j];
            }
        }
    }
    return Matrix(n, std::move(out));
}

StateVector mat_vec(const Matrix& m, const StateVector& v) {
    if (m.dim() != v.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix dimension " + std::to_string(m.dim()) +
                        " does not match vector length " + std::to_string(v.size()));
    }
    const auto n = m.dim();
    const auto in = v.amps();
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = m.row(i);
        Complex acc{};
        for (std::size_t j = 0; j < n; ++j) {
            acc += row[j] * in[j];
        }
        out[i] = acc;
    }
    return StateVector(v.dims(), std::move(out));
}

double unitarity_deviation(const Matrix& m) {
    // Row i of M·M† is accumulated column by column over the nonzero entries,
    // so permutation-like matrices cost O(nnz) rather than O(n^3).
    const auto n = m.dim();
    std::vector<std::vector<std::pair<std::size_t, Complex>>> cols(n);
    std::vector<std::vector<std::size_t>> row_nz(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const Complex z = m(r, c);
            if (z != Complex{}) {
                cols[c].emplace_back(r, z);
                row_nz[r].push_back(c);
            }
        }
    }
    double worst = 0.0;
    std::vector<Complex> acc(n);
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i < n; ++i) {
        touched.clear();
        for (auto k : row_nz[i]) {
            const Complex mik = m(i, k);
            for (const auto& [j, mjk] : cols[k]) {
                if (acc[j] == Complex{}) {
                    touched.push_back(j);
                }
                acc[j] += mik * std::conj(mjk);
            }
        }
        worst = std::max(worst, std::abs(acc[i] - 1.0));
        for (auto j : touched) {
            if (j != i) {
                worst = std::max(worst, std::abs(acc[j]));
            }
            acc[j] = Complex{};
        }
        if (acc[i] != Complex{}) {
            acc[i] = Complex{};
        }
    }
    return worst;
}

bool is_unitary(const Matrix& m, double tol) {
    return m.dim() > 0 && unitarity_deviation(m) <= tol;
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// GF(2)

Gf2Vector::Gf2Vector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
        if (b > 1) {
            throw Error(ErrorKind::InvalidInput, "GF(2) entries must be 0 or 1");
        }
    }
}

Gf2Vector Gf2Vector::from_string(const std::string& text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw Error(ErrorKind::InvalidInput, "bad GF(2) digit '" + std::string(1, c) + "'");
        }
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return Gf2Vector(std::move(bits));
}

Gf2Vector Gf2Vector::from_integer(std::uint64_t value, std::size_t n) {
    Gf2Vector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v.bits_[n - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1U);
    }
    return v;
}

bool Gf2Vector::is_zero() const {
    return std::all_of(bits_.begin(), bits_.end(), [](auto b) { return b == 0; });
}

std::uint64_t Gf2Vector::to_integer() const {
    std::uint64_t v = 0;
    for (auto b : bits_) {
        v = (v << 1) | b;
    }
    return v;
}

std::string Gf2Vector::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) {
        s.push_back(static_cast<char>('0' + b));
    }
    return s;
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& other) {
    if (other.size() != size()) {
        throw Error(ErrorKind::DimensionMismatch, "GF(2) vectors differ in length");
    }
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        bits_[i] ^= other.bits_[i];
    }
    return *this;
}

int gf2_dot(const Gf2Vector& a, const Gf2Vector& b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::DimensionMismatch, "GF(2) vectors differ in length");
    }
    int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc ^= a[i] & b[i];
    }
    return acc;
}

std::vector<Gf2Vector> gf2_nullspace(std::span<const Gf2Vector> rows, std::size_t n) {
    std::vector<Gf2Vector> m(rows.begin(), rows.end());
    for (const auto& r : m) {
        if (r.size() != n) {
            throw Error(ErrorKind::DimensionMismatch, "equation length differs from n");
        }
    }

    // Reduced row echelon form.
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m.size(); ++col) {
        auto it = std::find_if(m.begin() + static_cast<std::ptrdiff_t>(rank), m.end(),
                               [col](const Gf2Vector& r) { return r[col] == 1; });
        if (it == m.end()) {
            continue;
        }
        std::iter_swap(m.begin() + static_cast<std::ptrdiff_t>(rank), it);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != rank && m[r][col] == 1) {
                m[r] ^= m[rank];
            }
        }
        pivot_cols.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_cols) {
        is_pivot[c] = true;
    }

    // One basis vector per free column: set that free variable, solve pivots.
    std::vector<Gf2Vector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        Gf2Vector t(n);
        t.set(free, true);
        for (std::size_t r = 0; r < rank; ++r) {
            if (m[r][free] == 1) {
                t.set(pivot_cols[r], true);
            }
        }
        basis.push_back(std::move(t));
    }
    return basis;
}

} // namespace qsim
