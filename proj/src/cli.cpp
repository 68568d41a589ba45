#include "qsim/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qsim/circuit_io.hpp"
#include "qsim/engine.hpp"
#include "qsim/error.hpp"
#include "qsim/measurement.hpp"
#include "qsim/shor.hpp"
#include "qsim/simon.hpp"

namespace qsim::cli {

namespace {

struct GlobalOptions {
    std::string mode = "efficient";
    std::uint64_t seed = 1;
    std::optional<std::size_t> trials;
    std::size_t max_dim = EvalOptions{}.naive_max_dim;
};

struct Evaluated {
    Circuit circuit;
    StateVector output;
    EvalMetrics metrics;
    EvalMode mode;
    double elapsed_ms = 0.0;
};

Evaluated evaluate_file(const std::string& file, const std::string& input_spec,
                        const GlobalOptions& g) {
    const std::filesystem::path path(file);
    auto circuit = io::load_circuit_file(path);
    const auto input = io::parse_input_spec(input_spec, circuit.register_dims, path.parent_path());
    const auto mode = parse_eval_mode(g.mode);
    const auto start = std::chrono::steady_clock::now();
    auto [output, metrics] = mode == EvalMode::Naive
                                 ? eval_naive(circuit, input, EvalOptions{g.max_dim})
                                 : eval_efficient(circuit, input);
    const auto stop = std::chrono::steady_clock::now();
    return {std::move(circuit), std::move(output), metrics, mode,
            std::chrono::duration<double, std::milli>(stop - start).count()};
}

void cmd_run(std::ostream& out, const std::string& file, const std::string& input_spec,
             bool all, const GlobalOptions& g) {
    const auto r = evaluate_file(file, input_spec, g);
    const auto& dims = r.circuit.register_dims;
    out << std::fixed;
    for (std::size_t i = 0; i < r.output.size(); ++i) {
        const auto a = r.output[i];
        if (!all && std::abs(a) < 1e-12) {
            continue;
        }
        out << io::basis_label(i, dims) << "  " << std::showpos << std::setprecision(6)
            << a.real() << ' ' << a.imag() << 'i' << std::noshowpos << "  p=" << std::setprecision(4)
            << std::norm(a) << '\n';
    }
    out << std::defaultfloat << "mode=" << to_string(r.mode)
        << " stages=" << r.metrics.stages_processed
        << " peak_live_cells=" << r.metrics.peak_live_cells << " madds=" << r.metrics.madds
        << " elapsed_ms=" << std::fixed << std::setprecision(3) << r.elapsed_ms << '\n';
}

void cmd_sample(std::ostream& out, const std::string& file, const std::string& input_spec,
                const GlobalOptions& g) {
    const auto trials = g.trials.value_or(1000);
    const auto r = evaluate_file(file, input_spec, g);
    RandomSource rng(g.seed);
    const auto counts = sample_histogram(r.output, trials, rng);
    for (const auto& [index, count] : counts) {
        out << io::basis_label(index, r.circuit.register_dims) << "  " << count << '\n';
    }
    out << "trials=" << trials << " seed=" << g.seed << '\n';
}

void cmd_bench(std::ostream& out, std::size_t n_min, std::size_t n_max, std::size_t stages,
               const std::string& tmpl, const std::string& format, const GlobalOptions& g) {
    BenchConfig config;
    config.stage_template = parse_stage_template(tmpl);
    config.stages = stages;
    config.eval.naive_max_dim = g.max_dim;
    const auto rows = run_benchmark(n_min, n_max, parse_eval_mode(g.mode), config);
    if (format == "table") {
        write_bench_table(out, rows);
    } else {
        write_bench_csv(out, rows);
    }
}

void cmd_simon(std::ostream& out, const std::string& table_file, std::size_t repetitions,
               const GlobalOptions& g) {
    std::ifstream in(table_file);
    if (!in) {
        throw Error(ErrorKind::InvalidInput, "cannot open " + table_file);
    }
    const auto table = simon::read_table(in);
    const auto mask = simon::hidden_mask(table);
    const auto trials = g.trials.value_or(200);
    if (trials < 1) {
        throw Error(ErrorKind::InvalidInput, "trials must be at least 1");
    }
    const auto reps = repetitions == 0 ? 3 * table.n : repetitions;

    RandomSource rng(g.seed);
    std::size_t one = 0;
    std::size_t two = 0;
    std::size_t inconclusive = 0;
    std::size_t success = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto result = simon::run(table, reps, rng);
        switch (result.classification) {
        case simon::Classification::OneToOne: ++one; break;
        case simon::Classification::TwoToOne: ++two; break;
        case simon::Classification::Inconclusive: ++inconclusive; break;
        }
        const bool ok = mask ? (result.recovered_t && result.recovered_t->to_integer() == *mask)
                             : result.classification == simon::Classification::OneToOne;
        success += ok ? 1 : 0;
    }

    out << "n=" << table.n << " promise="
        << (mask ? "two-to-one t=" + Gf2Vector::from_integer(*mask, table.n).to_string()
                 : std::string("one-to-one"))
        << '\n';
    out << "trials=" << trials << " repetitions=" << reps << " seed=" << g.seed << '\n';
    out << "one-to-one=" << one << " two-to-one=" << two << " inconclusive=" << inconclusive
        << '\n';
    out << "success=" << success << '/' << trials << " success_rate=" << std::fixed
        << std::setprecision(4) << static_cast<double>(success) / static_cast<double>(trials)
        << '\n';
}

void cmd_factor(std::ostream& out, std::uint64_t n, std::size_t max_attempts,
                const GlobalOptions& g) {
    RandomSource rng(g.seed);
    const auto r = shor::factor(n, rng, max_attempts);
    out << r.factor << '\n';
    out << n << " = " << r.factor << " x " << n / r.factor << '\n';
    out << "attempts=" << r.attempts << " x=" << r.x;
    if (r.r) {
        out << " order=" << *r.r;
    } else {
        out << " order=none (gcd(x, n) > 1)";
    }
    out << " seed=" << g.seed << '\n';
}

void cmd_dlog(std::ostream& out, std::uint64_t p, std::uint64_t gen, std::uint64_t x,
              std::size_t max_tries, const GlobalOptions& g) {
    RandomSource rng(g.seed);
    const shor::DlogInstance inst{p, gen, x};
    const auto r = shor::shor_dlog(inst, rng, max_tries);
    out << *r.r << '\n';
    out << "c=" << r.c << " d=" << r.d << " element=" << r.third_register + 1
        << " tries=" << r.tries << " seed=" << g.seed << '\n';
    out << "check: " << gen << '^' << *r.r << " mod " << p << " = "
        << shor::mod_pow(gen, *r.r, p) << '\n';
}

void cmd_validate(std::ostream& out, const std::string& file) {
    const auto circuit = io::load_circuit_file(file);
    out << "ok: " << circuit.register_dims.size() << " wires, dimension " << circuit.dim() << ", "
        << circuit.stages.size() << " stages\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stage-lattice quantum circuit simulator", "qsim"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--mode", g.mode, "Evaluator: naive or efficient")
        ->check(CLI::IsMember({"naive", "efficient"}));
    app.add_option("--seed", g.seed, "Seed for every random draw");
    app.add_option("--trials", g.trials, "Number of trials");
    app.add_option("--max-dim", g.max_dim, "Largest register dimension naive mode accepts");

    std::string file;
    std::string input_spec = "basis:0";
    bool all = false;

    auto* run_cmd = app.add_subcommand("run", "Evaluate a circuit file and print amplitudes");
    run_cmd->add_option("file", file)->required();
    run_cmd->add_option("--input", input_spec, "|01>, basis:<index> or amps:<file>");
    run_cmd->add_flag("--all", all, "Print zero amplitudes too");

    auto* sample_cmd = app.add_subcommand("sample", "Measure the circuit output repeatedly");
    sample_cmd->add_option("file", file)->required();
    sample_cmd->add_option("--input", input_spec, "|01>, basis:<index> or amps:<file>");

    std::size_t n_min = 0;
    std::size_t n_max = 0;
    std::size_t stages = 2;
    std::string tmpl = "hadamard";
    std::string format = "csv";
    auto* bench_cmd = app.add_subcommand("bench", "Time and meter both evaluators");
    bench_cmd->add_option("n_min", n_min)->required();
    bench_cmd->add_option("n_max", n_max)->required();
    bench_cmd->add_option("--stages", stages, "Stages per test circuit");
    bench_cmd->add_option("--template", tmpl, "Stage template: hadamard or not");
    bench_cmd->add_option("--format", format, "csv or table")
        ->check(CLI::IsMember({"csv", "table"}));

    std::string table_file;
    std::size_t repetitions = 0;
    auto* simon_cmd = app.add_subcommand("simon", "Simon success-rate experiment");
    simon_cmd->add_option("table", table_file)->required();
    simon_cmd->add_option("--repetitions", repetitions, "Measurements per run (default 3n)");

    std::uint64_t n = 0;
    std::size_t max_attempts = 50;
    auto* factor_cmd = app.add_subcommand("factor", "Factor an odd composite");
    factor_cmd->add_option("n", n)->required();
    factor_cmd->add_option("--max-attempts", max_attempts);

    std::uint64_t p = 0;
    std::uint64_t gen = 0;
    std::uint64_t x = 0;
    std::size_t max_tries = 50;
    auto* dlog_cmd = app.add_subcommand("shor-dlog", "Discrete logarithm g^r = x (mod p)");
    dlog_cmd->add_option("p", p)->required();
    dlog_cmd->add_option("g", gen)->required();
    dlog_cmd->add_option("x", x)->required();
    dlog_cmd->add_option("--max-tries", max_tries);

    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a circuit file");
    validate_cmd->add_option("file", file)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::ostringstream buffer;
    try {
        if (*run_cmd) {
            cmd_run(buffer, file, input_spec, all, g);
        } else if (*sample_cmd) {
            cmd_sample(buffer, file, input_spec, g);
        } else if (*bench_cmd) {
            cmd_bench(buffer, n_min, n_max, stages, tmpl, format, g);
        } else if (*simon_cmd) {
            cmd_simon(buffer, table_file, repetitions, g);
        } else if (*factor_cmd) {
            cmd_factor(buffer, n, max_attempts, g);
        } else if (*dlog_cmd) {
            cmd_dlog(buffer, p, gen, x, max_tries, g);
        } else if (*validate_cmd) {
            cmd_validate(buffer, file);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    out << buffer.str();
    return 0;
}

} // namespace qsim::cli
