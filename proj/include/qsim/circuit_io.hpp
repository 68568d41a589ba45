#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/linalg.hpp"

namespace qsim::io {

/// One gate as written in a circuit file: `h 2`, `qft 6`, `perm swap.txt`.
struct GateSpec {
    std::string name;
    std::vector<std::string> args;
    std::size_t line = 0; // 1-based source line, 0 if built in code

    friend bool operator==(const GateSpec& a, const GateSpec& b) {
        return a.name == b.name && a.args == b.args;
    }
};

/// Circuit file contents before gates are materialized.
///
///     registers 2 2        # wire dimensions, first = high-order
///     stage h 1 | id 1     # gates separated by '|'
///     stage cnot
///
/// Gates: `not k`, `h k`, `id k` span k wires (default 1); `cnot` spans two
/// qubit wires; `qft d` spans one wire of dimension d; `perm <file>` and
/// `unitary <file>` span as many wires as their matrix dimension covers.
struct CircuitDocument {
    std::vector<std::size_t> register_dims;
    std::vector<std::vector<GateSpec>> stages;

    friend bool operator==(const CircuitDocument&, const CircuitDocument&) = default;
};

/// Parses and fully validates (gate files are loaded relative to base_dir).
/// Throws ParseError or ValidationError carrying the offending line.
CircuitDocument parse_circuit(std::string_view text, const std::filesystem::path& base_dir = {});

Circuit build_circuit(const CircuitDocument& doc, const std::filesystem::path& base_dir = {});

std::string serialize_circuit(const CircuitDocument& doc);

/// Reads, parses and builds a circuit file; gate files resolve next to it.
Circuit load_circuit_file(const std::filesystem::path& path);

/// Permutation file: one `src dst` pair per line.
std::vector<std::size_t> read_permutation_file(const std::filesystem::path& path);
/// Unitary file: row-major `re im` pairs, whitespace separated.
Matrix read_unitary_file(const std::filesystem::path& path);
/// Amplitude file: one `re im` pair per line.
std::vector<Complex> read_amplitude_file(const std::filesystem::path& path);

/// `|01>` digit labels, `basis:<index>`, or `amps:<file>`.
StateVector parse_input_spec(const std::string& spec, const std::vector<std::size_t>& dims,
                             const std::filesystem::path& base_dir = {});

/// `|0110>` when every wire has dimension <= 10, otherwise `|3,0,11>`.
std::string basis_label(std::size_t index, const std::vector<std::size_t>& dims);

} // namespace qsim::io
