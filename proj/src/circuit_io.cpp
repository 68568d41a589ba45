#include "qsim/circuit_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qsim/error.hpp"

namespace qsim::io {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        const auto start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (i > start) {
            out.emplace_back(text.substr(start, i - start));
        }
    }
    return out;
}

std::string_view strip_comment(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
    }
    return line;
}

template <typename T>
bool parse_number(const std::string& text, T& value) {
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

std::size_t parse_count(const GateSpec& spec, std::size_t fallback) {
    if (spec.args.empty()) {
        return fallback;
    }
    std::size_t k = 0;
    if (spec.args.size() != 1 || !parse_number(spec.args[0], k) || k < 1) {
        throw Error(ErrorKind::ParseError,
                    "gate '" + spec.name + "' takes one positive integer argument", spec.line);
    }
    return k;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> read_numbers(const fs::path& path) {
    std::vector<double> values;
    std::istringstream in(read_text_file(path));
    std::string line;
    while (std::getline(in, line)) {
        for (const auto& tok : split_ws(strip_comment(line))) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end != tok.c_str() + tok.size()) {
                throw Error(ErrorKind::InvalidInput,
                            "bad number '" + tok + "' in " + path.string());
            }
            values.push_back(v);
        }
    }
    return values;
}

fs::path resolve(const fs::path& base_dir, const std::string& file) {
    fs::path p(file);
    return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

// Takes wires from `pos` until their product reaches `dim`.
std::vector<std::size_t> span_for_dim(const GateSpec& spec, std::size_t dim,
                                      const std::vector<std::size_t>& dims, std::size_t pos) {
    std::vector<std::size_t> wires;
    std::size_t product = 1;
    while (product < dim && pos < dims.size()) {
        product *= dims[pos];
        wires.push_back(dims[pos]);
        ++pos;
    }
    if (product != dim) {
        throw Error(ErrorKind::ValidationError,
                    "gate '" + spec.name + "' of dimension " + std::to_string(dim) +
                        " does not align with the remaining wires",
                    spec.line);
    }
    return wires;
}

std::vector<std::size_t> take_wires(const GateSpec& spec, std::size_t k,
                                    const std::vector<std::size_t>& dims, std::size_t pos) {
    if (pos + k > dims.size()) {
        throw Error(ErrorKind::ValidationError,
                    "gate '" + spec.name + "' needs " + std::to_string(k) +
                        " wires but only " + std::to_string(dims.size() - pos) + " remain",
                    spec.line);
    }
    return {dims.begin() + static_cast<std::ptrdiff_t>(pos),
            dims.begin() + static_cast<std::ptrdiff_t>(pos + k)};
}

void require_qubits(const GateSpec& spec, const std::vector<std::size_t>& wires) {
    for (auto w : wires) {
        if (w != 2) {
            throw Error(ErrorKind::ValidationError,
                        "gate '" + spec.name + "' acts on qubit wires, found dimension " +
                            std::to_string(w),
                        spec.line);
        }
    }
}

Gate make_gate_unchecked(const GateSpec& spec, const std::vector<std::size_t>& dims,
                         std::size_t pos, const fs::path& base_dir) {
    const auto& name = spec.name;
    if (name == "not" || name == "h") {
        const auto wires = take_wires(spec, parse_count(spec, 1), dims, pos);
        require_qubits(spec, wires);
        return name == "not" ? gate_not(wires.size()) : gate_hadamard(wires.size());
    }
    if (name == "cnot") {
        if (!spec.args.empty()) {
            throw Error(ErrorKind::ParseError, "cnot takes no arguments", spec.line);
        }
        require_qubits(spec, take_wires(spec, 2, dims, pos));
        return gate_cnot();
    }
    if (name == "id") {
        return gate_identity(take_wires(spec, parse_count(spec, 1), dims, pos));
    }
    if (name == "qft") {
        std::size_t d = 0;
        if (spec.args.size() != 1 || !parse_number(spec.args[0], d) || d < 2) {
            throw Error(ErrorKind::ParseError, "qft takes a dimension >= 2", spec.line);
        }
        const auto wires = take_wires(spec, 1, dims, pos);
        if (wires[0] != d) {
            throw Error(ErrorKind::ValidationError,
                        "qft " + std::to_string(d) + " placed on a wire of dimension " +
                            std::to_string(wires[0]),
                        spec.line);
        }
        return gate_qft(d);
    }
    if (name == "perm" || name == "unitary") {
        if (spec.args.size() != 1) {
            throw Error(ErrorKind::ParseError, name + " takes one file argument", spec.line);
        }
        const auto path = resolve(base_dir, spec.args[0]);
        if (name == "perm") {
            const auto perm = read_permutation_file(path);
            return gate_permutation(spec.args[0], span_for_dim(spec, perm.size(), dims, pos),
                                    perm);
        }
        auto m = read_unitary_file(path);
        auto wires = span_for_dim(spec, m.dim(), dims, pos);
        return gate_custom(spec.args[0], std::move(wires), std::move(m));
    }
    throw Error(ErrorKind::ParseError, "unknown gate '" + name + "'", spec.line);
}

Gate make_gate(const GateSpec& spec, const std::vector<std::size_t>& dims, std::size_t pos,
               const fs::path& base_dir) {
    try {
        return make_gate_unchecked(spec, dims, pos, base_dir);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::ValidationError) {
            throw;
        }
        // Library errors (NonUnitary, NotBijective, bad files) surface with the line.
        throw Error(ErrorKind::ValidationError, e.what(), spec.line);
    }
}

Stage build_stage(const std::vector<GateSpec>& specs, const std::vector<std::size_t>& dims,
                  const fs::path& base_dir, std::size_t line) {
    Stage stage;
    std::size_t pos = 0;
    for (const auto& spec : specs) {
        auto gate = make_gate(spec, dims, pos, base_dir);
        pos += gate.wire_dims().size();
        stage.gates.push_back(std::move(gate));
    }
    if (pos != dims.size()) {
        throw Error(ErrorKind::ValidationError,
                    "stage covers " + std::to_string(pos) + " of " + std::to_string(dims.size()) +
                        " wires",
                    line);
    }
    return stage;
}

} // namespace

CircuitDocument parse_circuit(std::string_view text, const fs::path& base_dir) {
    CircuitDocument doc;
    bool have_registers = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        const auto line = strip_comment(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;

        auto tokens = split_ws(line);
        if (tokens.empty()) {
            continue;
        }
        const auto& keyword = tokens[0];
        if (keyword == "registers") {
            if (have_registers) {
                throw Error(ErrorKind::ParseError, "registers declared twice", line_no);
            }
            if (tokens.size() < 2) {
                throw Error(ErrorKind::ParseError, "registers needs at least one dimension",
                            line_no);
            }
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                std::size_t d = 0;
                if (!parse_number(tokens[i], d) || d < 2) {
                    throw Error(ErrorKind::ParseError,
                                "bad wire dimension '" + tokens[i] + "'", line_no);
                }
                doc.register_dims.push_back(d);
            }
            total_dim(doc.register_dims);
            have_registers = true;
        } else if (keyword == "stage") {
            if (!have_registers) {
                throw Error(ErrorKind::ParseError, "stage before registers", line_no);
            }
            const auto body = line.substr(line.find("stage") + 5);
            std::vector<GateSpec> specs;
            std::size_t start = 0;
            while (true) {
                const auto bar = body.find('|', start);
                const auto segment = body.substr(
                    start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
                auto words = split_ws(segment);
                if (words.empty()) {
                    throw Error(ErrorKind::ParseError, "empty gate in stage", line_no);
                }
                GateSpec spec;
                spec.name = words[0];
                spec.args.assign(words.begin() + 1, words.end());
                spec.line = line_no;
                specs.push_back(std::move(spec));
                if (bar == std::string_view::npos) {
                    break;
                }
                start = bar + 1;
            }
            build_stage(specs, doc.register_dims, base_dir, line_no);
            doc.stages.push_back(std::move(specs));
        } else {
            throw Error(ErrorKind::ParseError, "unknown directive '" + keyword + "'", line_no);
        }
    }
    if (!have_registers) {
        throw Error(ErrorKind::ParseError, "missing registers line", line_no);
    }
    return doc;
}

Circuit build_circuit(const CircuitDocument& doc, const fs::path& base_dir) {
    Circuit c;
    c.register_dims = doc.register_dims;
    for (const auto& specs : doc.stages) {
        c.stages.push_back(build_stage(specs, doc.register_dims, base_dir,
                                       specs.empty() ? 0 : specs.front().line));
    }
    circuit_validate(c);
    return c;
}

std::string serialize_circuit(const CircuitDocument& doc) {
    std::ostringstream out;
    out << "registers";
    for (auto d : doc.register_dims) {
        out << ' ' << d;
    }
    out << '\n';
    for (const auto& stage : doc.stages) {
        out << "stage";
        for (std::size_t g = 0; g < stage.size(); ++g) {
            out << (g == 0 ? " " : " | ") << stage[g].name;
            for (const auto& a : stage[g].args) {
                out << ' ' << a;
            }
        }
        out << '\n';
    }
    return out.str();
}

Circuit load_circuit_file(const fs::path& path) {
    const auto text = read_text_file(path);
    const auto base = path.parent_path();
    return build_circuit(parse_circuit(text, base), base);
}

std::vector<std::size_t> read_permutation_file(const fs::path& path) {
    const auto numbers = read_numbers(path);
    if (numbers.empty() || numbers.size() % 2 != 0) {
        throw Error(ErrorKind::InvalidInput, path.string() + ": expected `src dst` pairs");
    }
    const auto d = numbers.size() / 2;
    std::vector<std::size_t> perm(d);
    std::vector<bool> defined(d, false);
    for (std::size_t i = 0; i < d; ++i) {
        const double src = numbers[2 * i];
        const double dst = numbers[2 * i + 1];
        if (src < 0 || dst < 0 || src != std::floor(src) || dst != std::floor(dst) ||
            src >= static_cast<double>(d) || defined[static_cast<std::size_t>(src)]) {
            throw Error(ErrorKind::NotBijective,
                        path.string() + ": entries must list each source 0.." +
                            std::to_string(d - 1) + " once");
        }
        defined[static_cast<std::size_t>(src)] = true;
        perm[static_cast<std::size_t>(src)] = static_cast<std::size_t>(dst);
    }
    return perm;
}

Matrix read_unitary_file(const fs::path& path) {
    const auto numbers = read_numbers(path);
    const auto cells = numbers.size() / 2;
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(cells))));
    if (numbers.size() % 2 != 0 || d * d != cells || d == 0) {
        throw Error(ErrorKind::InvalidInput,
                    path.string() + ": expected a square matrix of `re im` pairs");
    }
    std::vector<Complex> entries(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        entries[i] = {numbers[2 * i], numbers[2 * i + 1]};
    }
    return Matrix(d, std::move(entries));
}

std::vector<Complex> read_amplitude_file(const fs::path& path) {
    const auto numbers = read_numbers(path);
    if (numbers.empty() || numbers.size() % 2 != 0) {
        throw Error(ErrorKind::InvalidInput, path.string() + ": expected `re im` pairs");
    }
    std::vector<Complex> amps(numbers.size() / 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = {numbers[2 * i], numbers[2 * i + 1]};
    }
    return amps;
}

StateVector parse_input_spec(const std::string& spec, const std::vector<std::size_t>& dims,
                             const fs::path& base_dir) {
    if (spec.starts_with("basis:")) {
        std::size_t index = 0;
        if (!parse_number(spec.substr(6), index)) {
            throw Error(ErrorKind::InvalidInput, "bad basis index in '" + spec + "'");
        }
        return StateVector::basis(dims, index);
    }
    if (spec.starts_with("amps:")) {
        StateVector v(dims, read_amplitude_file(resolve(base_dir, spec.substr(5))));
        if (!v.is_normalized()) {
            throw Error(ErrorKind::NotNormalized, "input amplitudes are not normalized");
        }
        return v;
    }
    if (spec.size() >= 2 && spec.front() == '|' && spec.back() == '>') {
        const auto body = spec.substr(1, spec.size() - 2);
        std::vector<std::size_t> digits;
        if (body.find(',') != std::string::npos) {
            std::istringstream in(body);
            std::string part;
            while (std::getline(in, part, ',')) {
                std::size_t v = 0;
                if (!parse_number(part, v)) {
                    throw Error(ErrorKind::InvalidInput, "bad basis label '" + spec + "'");
                }
                digits.push_back(v);
            }
        } else {
            for (char ch : body) {
                if (ch < '0' || ch > '9') {
                    throw Error(ErrorKind::InvalidInput, "bad basis label '" + spec + "'");
                }
                digits.push_back(static_cast<std::size_t>(ch - '0'));
            }
        }
        if (digits.size() != dims.size()) {
            throw Error(ErrorKind::InvalidInput, "basis label '" + spec + "' needs " +
                                                     std::to_string(dims.size()) + " digits");
        }
        for (std::size_t w = 0; w < dims.size(); ++w) {
            if (digits[w] >= dims[w]) {
                throw Error(ErrorKind::InvalidInput,
                            "digit " + std::to_string(digits[w]) + " too large for wire " +
                                std::to_string(w));
            }
        }
        return StateVector::basis(dims, digits_to_index(digits, dims));
    }
    throw Error(ErrorKind::InvalidInput,
                "input must be |..>, basis:<index> or amps:<file>, got '" + spec + "'");
}

std::string basis_label(std::size_t index, const std::vector<std::size_t>& dims) {
    const auto digits = index_to_digits(index, dims);
    bool compact = true;
    for (auto d : dims) {
        compact = compact && d <= 10;
    }
    std::string out = "|";
    for (std::size_t w = 0; w < digits.size(); ++w) {
        if (!compact && w > 0) {
            out += ',';
        }
        out += std::to_string(digits[w]);
    }
    out += '>';
    return out;
}

} // namespace qsim::io
