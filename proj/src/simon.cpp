#include "qsim/simon.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "qsim/engine.hpp"
#include "qsim/error.hpp"

namespace qsim::simon {

namespace {

std::size_t domain_size(std::size_t n) { return std::size_t{1} << n; }

void check_shape(const FunctionTable& f) {
    if (f.n < 1 || f.n > kMaxBits) {
        throw Error(ErrorKind::MalformedTable,
                    "n must be in 1.." + std::to_string(kMaxBits) + ", got " + std::to_string(f.n));
    }
    const auto size = domain_size(f.n);
    if (f.values.size() != size) {
        throw Error(ErrorKind::MalformedTable, "table needs " + std::to_string(size) +
                                                   " values, got " +
                                                   std::to_string(f.values.size()));
    }
    for (std::size_t x = 0; x < size; ++x) {
        if (f.values[x] >= size) {
            throw Error(ErrorKind::MalformedTable,
                        "f(" + std::to_string(x) + ") = " + std::to_string(f.values[x]) +
                            " is outside 0.." + std::to_string(size - 1));
        }
    }
}

// Shape must already be checked. Returns the mask, nullopt if injective,
// throws if the promise is violated.
std::optional<std::uint64_t> find_mask(const FunctionTable& f) {
    const auto size = domain_size(f.n);
    std::optional<std::uint64_t> mask;
    for (std::uint64_t x = 1; x < size; ++x) {
        if (f.values[x] == f.values[0]) {
            mask = x;
            break;
        }
    }
    if (!mask) {
        std::vector<bool> seen(size, false);
        for (auto v : f.values) {
            if (seen[v]) {
                throw Error(ErrorKind::MalformedTable,
                            "f is neither one-to-one nor two-to-one under an XOR mask");
            }
            seen[v] = true;
        }
        return std::nullopt;
    }
    // Two-to-one: f(x) == f(x ^ t) and no other collisions.
    std::vector<int> hits(size, 0);
    for (std::uint64_t x = 0; x < size; ++x) {
        if (f.values[x] != f.values[x ^ *mask] || ++hits[f.values[x]] > 2) {
            throw Error(ErrorKind::MalformedTable,
                        "f is neither one-to-one nor two-to-one under an XOR mask");
        }
    }
    return mask;
}

} // namespace

void validate_table(const FunctionTable& f) {
    check_shape(f);
    find_mask(f);
}

std::optional<std::uint64_t> hidden_mask(const FunctionTable& f) {
    check_shape(f);
    return find_mask(f);
}

FunctionTable read_table(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            lines.push_back(line);
        }
    }
    if (lines.empty()) {
        throw Error(ErrorKind::MalformedTable, "empty function table");
    }
    FunctionTable f;
    {
        std::istringstream head(lines[0]);
        std::string extra;
        if (!(head >> f.n) || (head >> extra)) {
            throw Error(ErrorKind::MalformedTable, "first line must be n");
        }
    }
    if (f.n < 1 || f.n > kMaxBits) {
        throw Error(ErrorKind::MalformedTable, "n must be in 1.." + std::to_string(kMaxBits));
    }
    const auto size = domain_size(f.n);
    if (lines.size() - 1 != size) {
        throw Error(ErrorKind::MalformedTable, "expected " + std::to_string(size) +
                                                   " entries, got " +
                                                   std::to_string(lines.size() - 1));
    }
    f.values.assign(size, 0);
    std::vector<bool> defined(size, false);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::uint64_t x = 0;
        std::uint64_t fx = 0;
        std::string extra;
        if (!(row >> x >> fx) || (row >> extra) || x >= size) {
            throw Error(ErrorKind::MalformedTable, "bad entry '" + lines[i] + "'");
        }
        if (defined[x]) {
            throw Error(ErrorKind::MalformedTable, "x = " + std::to_string(x) + " listed twice");
        }
        defined[x] = true;
        f.values[x] = fx;
    }
    validate_table(f);
    return f;
}

void write_table(std::ostream& out, const FunctionTable& f) {
    out << f.n << '\n';
    for (std::size_t x = 0; x < f.values.size(); ++x) {
        out << x << ' ' << f.values[x] << '\n';
    }
}

FunctionTable random_one_to_one(std::size_t n, RandomSource& rng) {
    FunctionTable f{n, std::vector<std::uint64_t>(domain_size(n))};
    std::iota(f.values.begin(), f.values.end(), std::uint64_t{0});
    for (std::size_t i = f.values.size(); i-- > 1;) {
        std::swap(f.values[i], f.values[rng.uniform_int(0, i)]);
    }
    check_shape(f);
    return f;
}

FunctionTable random_two_to_one(std::size_t n, std::uint64_t mask, RandomSource& rng) {
    const auto size = domain_size(n);
    if (mask == 0 || mask >= size) {
        throw Error(ErrorKind::InvalidInput, "mask must be a nonzero n-bit value");
    }
    // Distinct image values, one per coset {x, x ^ mask}.
    std::vector<std::uint64_t> images(size);
    std::iota(images.begin(), images.end(), std::uint64_t{0});
    for (std::size_t i = images.size(); i-- > 1;) {
        std::swap(images[i], images[rng.uniform_int(0, i)]);
    }
    FunctionTable f{n, std::vector<std::uint64_t>(size)};
    std::vector<bool> assigned(size, false);
    std::size_t next = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
        if (assigned[x]) {
            continue;
        }
        f.values[x] = f.values[x ^ mask] = images[next++];
        assigned[x] = assigned[x ^ mask] = true;
    }
    validate_table(f);
    return f;
}

Gate build_oracle(const FunctionTable& f) {
    validate_table(f);
    const auto size = domain_size(f.n);
    std::vector<std::size_t> perm(size * size);
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
            perm[x * size + y] = x * size + (y ^ f.values[x]);
        }
    }
    return gate_permutation("oracle", std::vector<std::size_t>(2 * f.n, 2), perm);
}

Circuit build_circuit(const FunctionTable& f) {
    auto oracle = build_oracle(f);
    Stage hadamards{{gate_hadamard(f.n), gate_identity(std::vector<std::size_t>(f.n, 2))}};
    Circuit c;
    c.register_dims.assign(2 * f.n, 2);
    c.stages = {hadamards, Stage{{std::move(oracle)}}, hadamards};
    return c;
}

const char* to_string(Classification c) {
    switch (c) {
    case Classification::OneToOne: return "one-to-one";
    case Classification::TwoToOne: return "two-to-one";
    case Classification::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

SimonResult solve(const FunctionTable& f, std::vector<Gf2Vector> equations) {
    validate_table(f);
    SimonResult result;
    result.repetitions_used = equations.size();
    const auto basis = gf2_nullspace(equations, f.n);
    result.equations = std::move(equations);

    if (basis.empty()) {
        result.classification = Classification::OneToOne;
    } else if (basis.size() == 1) {
        // A two-to-one mask always lies in the nullspace, so a lone candidate
        // that fails the classical check rules the two-to-one case out.
        const auto t = basis.front().to_integer();
        if (f.values[0] == f.values[t]) {
            result.classification = Classification::TwoToOne;
            result.recovered_t = basis.front();
        } else {
            result.classification = Classification::OneToOne;
        }
    } else {
        result.classification = Classification::Inconclusive;
    }
    return result;
}

namespace {

StateVector final_state(const FunctionTable& f) {
    const auto circuit = build_circuit(f);
    return eval_efficient(circuit, StateVector::basis(circuit.register_dims, 0)).first;
}

std::vector<std::size_t> top_wires(std::size_t n) {
    std::vector<std::size_t> wires(n);
    std::iota(wires.begin(), wires.end(), std::size_t{0});
    return wires;
}

} // namespace

SimonResult run(const FunctionTable& f, std::size_t repetitions, RandomSource& rng) {
    validate_table(f);
    if (repetitions == 0) {
        repetitions = 3 * f.n;
    }
    const auto state = final_state(f);
    const auto wires = top_wires(f.n);

    std::vector<Gf2Vector> equations;
    equations.reserve(repetitions);
    for (std::size_t r = 0; r < repetitions; ++r) {
        const auto y = measure_partial(state, wires, rng).basis_index;
        equations.push_back(Gf2Vector::from_integer(y, f.n));
    }
    return solve(f, std::move(equations));
}

double interference_probability(const FunctionTable& f, const Gf2Vector& y) {
    if (!hidden_mask(f)) {
        throw Error(ErrorKind::NotTwoToOne, "f is one-to-one");
    }
    if (y.size() != f.n) {
        throw Error(ErrorKind::DimensionMismatch, "y must have n bits");
    }
    const auto marginal = marginal_probabilities(final_state(f), top_wires(f.n));
    return marginal[y.to_integer()];
}

} // namespace qsim::simon
