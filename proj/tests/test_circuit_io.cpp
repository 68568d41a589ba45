#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "qsim/circuit_io.hpp"
#include "qsim/engine.hpp"
#include "qsim/error.hpp"
#include "test_support.hpp"

using namespace qsim;
using namespace qsim::io;

namespace {

const std::filesystem::path kData{QSIM_DATA_DIR};

const char* const kBell = "registers 2 2\n"
                          "stage h 1 | id 1\n"
                          "stage cnot\n";

std::pair<ErrorKind, std::optional<std::size_t>> failure(std::string_view text) {
    try {
        parse_circuit(text, kData);
    } catch (const Error& e) {
        return {e.kind(), e.location()};
    }
    FAIL("expected an error for: " << text);
    return {ErrorKind::InvalidInput, std::nullopt};
}

bool same_circuit(const Circuit& a, const Circuit& b) {
    if (a.register_dims != b.register_dims || a.stages.size() != b.stages.size()) {
        return false;
    }
    for (std::size_t s = 0; s < a.stages.size(); ++s) {
        const auto& ga = a.stages[s].gates;
        const auto& gb = b.stages[s].gates;
        if (ga.size() != gb.size()) {
            return false;
        }
        for (std::size_t g = 0; g < ga.size(); ++g) {
            if (ga[g].wire_dims() != gb[g].wire_dims() || !(ga[g].matrix() == gb[g].matrix())) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("Bell document") {
    const auto doc = parse_circuit(kBell);
    CHECK(doc.register_dims == std::vector<std::size_t>{2, 2});
    REQUIRE(doc.stages.size() == 2);
    CHECK(doc.stages[0].size() == 2);
    CHECK(doc.stages[0][0].name == "h");
    CHECK(doc.stages[1][0].name == "cnot");

    const auto c = build_circuit(doc);
    const auto out = eval_efficient(c, StateVector::basis({2, 2}, 0)).first;
    CHECK(std::abs(out[0] - 1.0 / std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(out[3] - 1.0 / std::sqrt(2.0)) <= 1e-12);

    CHECK(same_circuit(load_circuit_file(kData / "bell.qc"), c));
}

TEST_CASE("parse errors carry line numbers") {
    {
        const auto [kind, line] = failure("registers 2 2\nstage h 1 | id 1\nstage h 3\n");
        CHECK(kind == ErrorKind::ValidationError);
        CHECK(line == std::optional<std::size_t>{3});
    }
    {
        const auto [kind, line] = failure("registers 2 2\n\n# c\nstage frob 1 | h 1\n");
        CHECK(kind == ErrorKind::ParseError);
        CHECK(line == std::optional<std::size_t>{4});
    }
    {
        const auto [kind, line] = failure("registers 2 2\nstage h 1\n");
        CHECK(kind == ErrorKind::ValidationError);
        CHECK(line == std::optional<std::size_t>{2});
    }
    CHECK(failure("stage h 1\n").first == ErrorKind::ParseError);
    CHECK(failure("").first == ErrorKind::ParseError);
    CHECK(failure("registers 2 x\n").first == ErrorKind::ParseError);
    CHECK(failure("registers 2 2\nstage h 1 | | h 1\n").first == ErrorKind::ParseError);
    CHECK(failure("registers 3 2\nstage cnot\n").first == ErrorKind::ValidationError);
    CHECK(failure("registers 4\nstage qft 6\n").first == ErrorKind::ValidationError);
    CHECK(failure("registers 2\nstage unitary missing.unitary\n").first ==
          ErrorKind::ValidationError);
}

TEST_CASE("non-unitary custom matrices are rejected") {
    const auto dir = std::filesystem::temp_directory_path() / "qsim_io_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "bad.unitary");
        f << "1 0 1 0\n1 0 1 0\n";
    }
    try {
        parse_circuit("registers 2\nstage unitary bad.unitary\n", dir);
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ValidationError);
        CHECK(e.location() == std::optional<std::size_t>{2});
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("qft on a dimension-6 wire") {
    const auto doc = parse_circuit("registers 6\nstage qft 6\n");
    const auto c = build_circuit(doc);
    CHECK_NOTHROW(circuit_validate(c));
    CHECK(c.stages[0].gates[0].matrix() == gate_qft(6).matrix());
}

TEST_CASE("custom gate files") {
    const auto c = load_circuit_file(kData / "qutrit_qft.qc");
    CHECK(c.register_dims == std::vector<std::size_t>{6, 2});
    REQUIRE(c.stages.size() == 2);
    CHECK(c.stages[1].gates[0].wire_dims() == std::vector<std::size_t>{6, 2});

    const auto s = parse_circuit("registers 2 2\nstage unitary phase.unitary | h 1\n", kData);
    const auto built = build_circuit(s, kData);
    CHECK(built.stages[0].gates[0].matrix()(1, 1) == Complex(0.0, 1.0));

    const auto perm = read_permutation_file(kData / "swap_low.perm");
    CHECK(perm.size() == 12);
    CHECK(perm[10] == 11);
    CHECK(perm[3] == 3);
}

TEST_CASE("property: serialize and parse round trip") {
    const std::vector<std::string> docs{
        kBell,
        "registers 6 2\nstage qft 6 | h 1\nstage perm swap_low.perm\n",
        "registers 2 2 3 2\nstage not 2 | qft 3 | id 1\nstage cnot | id 2\n",
        "registers 2\n",
    };
    for (const auto& text : docs) {
        const auto doc = parse_circuit(text, kData);
        const auto again = parse_circuit(serialize_circuit(doc), kData);
        CHECK(again == doc);
        CHECK(same_circuit(build_circuit(doc, kData), build_circuit(again, kData)));
    }
}

TEST_CASE("input specs and labels") {
    const std::vector<std::size_t> qubits{2, 2};
    CHECK(parse_input_spec("|01>", qubits) == StateVector::basis(qubits, 1));
    CHECK(parse_input_spec("|10>", qubits) == StateVector::basis(qubits, 2));
    CHECK(parse_input_spec("basis:3", qubits) == StateVector::basis(qubits, 3));
    const std::vector<std::size_t> mixed{3, 12};
    CHECK(parse_input_spec("|2,11>", mixed) == StateVector::basis(mixed, 35));
    CHECK_THROWS_AS(parse_input_spec("|012>", qubits), Error);
    CHECK_THROWS_AS(parse_input_spec("|21>", qubits), Error);
    CHECK_THROWS_AS(parse_input_spec("basis:4", qubits), Error);
    CHECK_THROWS_AS(parse_input_spec("zero", qubits), Error);

    CHECK(basis_label(3, qubits) == "|11>");
    CHECK(basis_label(35, mixed) == "|2,11>");
    CHECK(basis_label(5, {2, 3}) == "|12>");

    const auto dir = std::filesystem::temp_directory_path() / "qsim_amps_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "plus.amps");
        f << "0.6 0\n0 0.8\n";
        std::ofstream g(dir / "bad.amps");
        g << "1 0\n1 0\n";
    }
    const auto v = parse_input_spec("amps:plus.amps", {2}, dir);
    CHECK(v[1] == Complex(0.0, 0.8));
    CHECK_THROWS_AS(parse_input_spec("amps:bad.amps", {2}, dir), Error);
    std::filesystem::remove_all(dir);
}
