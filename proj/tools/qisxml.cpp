// qisxml: command-line front end for the QIS-XML toolchain.
//
// Exit status: 0 on success, 1 when documents have validation ERRORs or a
// backend rejects them, 2 on usage or I/O problems.

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qisxml/compiler.hpp"
#include "qisxml/document_set.hpp"
#include "qisxml/error.hpp"
#include "qisxml/genadder.hpp"
#include "qisxml/render.hpp"
#include "qisxml/simulator.hpp"
#include "qisxml/stdlib.hpp"
#include "qisxml/validation.hpp"
#include "qisxml/xml_io.hpp"

namespace fs = std::filesystem;
using namespace qisxml;

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr const char* kGenAdderUsage = "Usage: qisxml genadder <number_of_bits>";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_io_kind(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IoError:
        case ErrorKind::XmlSyntax:
        case ErrorKind::UnknownNamespace:
        case ErrorKind::UnknownElement:
        case ErrorKind::BadAttribute:
        case ErrorKind::InvalidContent:
        case ErrorKind::DuplicateId:
            return true;
        default:
            return false;
    }
}

DocumentSet load(const std::vector<std::string>& files, bool stdlib) {
    DocumentSet set;
    for (const auto& f : files) set.add_file(f);
    if (stdlib) add_builtins(set);
    return set;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

std::vector<Finding> drop_warnings(std::vector<Finding> findings) {
    std::erase_if(findings, [](const Finding& f) { return f.severity == Severity::Warning; });
    return findings;
}

int genadder(const std::string& bits, const std::string& output) {
    int numBits = 0;
    const char* first = bits.data();
    const char* last = first + bits.size();
    while (first != last && std::isspace(static_cast<unsigned char>(*first))) ++first;
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, numBits);
    if (ec != std::errc{} || ptr != last) {
        std::cerr << "Invalid number of bits: " << bits << "\n" << kGenAdderUsage << "\n";
        return 2;
    }
    if (numBits < 1) {
        std::cerr << "Number of bits must be positive: " << numBits << "\n" << kGenAdderUsage << "\n";
        return 2;
    }
    write_output(output, serialize(generate_adder(numBits)));
    return 0;
}

void print_distribution(const Distribution& d) {
    std::cout << "# 0-based qubits:";
    for (int q : d.qubits) std::cout << ' ' << q - 1;
    std::cout << "\n";
    for (const auto& o : d.outcomes) {
        for (int b : o.bits) std::cout << b;
        std::cout << ' ' << format_double(o.probability) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QIS-XML toolchain: validate, render, report, genadder, compile, simulate"};
    app.set_version_flag("--version", std::string("qisxml ") + kToolVersion);
    app.require_subcommand(1, 1);

    bool noStdlib = false;
    app.add_flag("--no-stdlib", noStdlib, "Do not load the builtin gate and circuit libraries");

    std::vector<std::string> files;
    std::string output;

    auto* validate_cmd = app.add_subcommand("validate", "Check documents and print findings");
    std::string format = "text";
    bool strictUnitary = false;
    bool noWarnings = false;
    validate_cmd->add_option("files", files, "QIS-XML documents")->required()->check(CLI::ExistingFile);
    validate_cmd->add_option("--format", format, "text or html")->check(CLI::IsMember({"text", "html"}));
    validate_cmd->add_flag("--strict-unitary", strictUnitary, "Report non-unitary gates as ERRORs");
    validate_cmd->add_flag("--no-warnings", noWarnings, "Hide WARNING findings");
    validate_cmd->add_option("-o,--output", output, "Output file (default stdout)");

    auto* render_cmd = app.add_subcommand("render", "Draw a circuit or gate as SVG");
    std::string circuitId;
    std::string gateId;
    render_cmd->add_option("files", files, "QIS-XML documents")->check(CLI::ExistingFile);
    auto* circuitOpt = render_cmd->add_option("--circuit", circuitId, "Circuit identifier");
    auto* gateOpt = render_cmd->add_option("--gate", gateId, "Gate identifier");
    circuitOpt->excludes(gateOpt);
    render_cmd->add_option("-o,--output", output, "Output SVG file (default stdout)");

    auto* report_cmd = app.add_subcommand("report", "Write an HTML catalogue of gates and circuits");
    bool reportBuiltins = false;
    report_cmd->add_option("files", files, "QIS-XML documents")->check(CLI::ExistingFile);
    report_cmd->add_flag("--include-builtins", reportBuiltins, "Also list builtin gates and circuits");
    report_cmd->add_option("-o,--output", output, "Output HTML file (default stdout)");

    auto* genadder_cmd = app.add_subcommand("genadder", "Generate an N-bit ripple-carry adder circuit library");
    std::string bits;
    bool genadderVersion = false;
    genadder_cmd->add_option("bits", bits, "Number of bits");
    genadder_cmd->add_flag("--version", genadderVersion, "Print the generator version");
    genadder_cmd->add_option("-o,--output", output, "Output XML file (default stdout)");

    auto* compile_cmd = app.add_subcommand("compile", "Translate a program into QCL");
    std::string programId;
    std::string target = "qcl";
    compile_cmd->add_option("files", files, "QIS-XML documents")->required()->check(CLI::ExistingFile);
    compile_cmd->add_option("--program", programId, "Program identifier")->required();
    compile_cmd->add_option("--target", target, "Output language")->check(CLI::IsMember({"qcl"}));
    compile_cmd->add_option("-o,--output", output, "Output file (default stdout)");

    auto* simulate_cmd = app.add_subcommand("simulate", "Run a program on the state-vector simulator");
    std::uint64_t seed = 0;
    std::string mode = "sample";
    bool allQubits = false;
    simulate_cmd->add_option("files", files, "QIS-XML documents")->required()->check(CLI::ExistingFile);
    simulate_cmd->add_option("--program", programId, "Program identifier")->required();
    simulate_cmd->add_option("--seed", seed, "Seed for sample mode");
    simulate_cmd->add_option("--mode", mode, "sample or distribution")
        ->check(CLI::IsMember({"sample", "distribution"}));
    simulate_cmd->add_flag("--all-qubits", allQubits, "Report every memory qubit");

    auto* stdlib_cmd = app.add_subcommand("stdlib", "Builtin library utilities");
    stdlib_cmd->require_subcommand(1, 1);
    auto* export_cmd = stdlib_cmd->add_subcommand("export", "Write the builtin libraries to a directory");
    std::string directory;
    export_cmd->add_option("-o,--output", directory, "Target directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        return 2;
    }

    try {
        if (*genadder_cmd) {
            if (genadderVersion) {
                std::cout << "genadder Version " << kGenAdderVersion << "\n";
                return 0;
            }
            if (bits.empty()) {
                std::cerr << "Wrong number of operands\n" << kGenAdderUsage << "\n";
                return 2;
            }
            return genadder(bits, output);
        }
        if (*stdlib_cmd) {
            fs::create_directories(directory);
            write_output((fs::path(directory) / "stdlib-gates.xml").string(), std::string(builtin_gates_xml()));
            write_output((fs::path(directory) / "stdlib-circuits.xml").string(), std::string(builtin_circuits_xml()));
            return 0;
        }

        const DocumentSet set = load(files, !noStdlib);

        if (*validate_cmd) {
            std::vector<Finding> findings = validate(set, {.strictUnitary = strictUnitary});
            const bool failed = count(findings, Severity::Error) > 0;
            if (noWarnings) findings = drop_warnings(std::move(findings));
            write_output(output, format == "html" ? report_validation_html(set, findings) : report_text(set, findings));
            return failed ? 1 : 0;
        }
        if (*render_cmd) {
            if (circuitId.empty() == gateId.empty()) throw UsageError("render needs exactly one of --circuit or --gate");
            const std::string svg = circuitId.empty() ? render_gate_svg(*set.resolve_gate(gateId).entity)
                                                      : render_circuit_svg(*set.resolve_circuit(circuitId).entity, set);
            write_output(output, svg);
            return 0;
        }
        if (*report_cmd) {
            write_output(output, report_html(set, {.includeBuiltins = reportBuiltins}));
            return 0;
        }
        if (*compile_cmd) {
            write_output(output, compile_qcl(*set.resolve_program(programId).entity, set));
            return 0;
        }
        if (*simulate_cmd) {
            RunOptions options;
            options.seed = seed;
            options.mode = mode == "distribution" ? RunMode::Distribution : RunMode::Sample;
            options.measureAll = allQubits;
            const RunResult result = run_program(*set.resolve_program(programId).entity, set, options);
            if (const auto* record = std::get_if<MeasurementRecord>(&result)) {
                for (const auto& b : record->bits) std::cout << ": " << b.qubit - 1 << " = " << b.bit << "\n";
            } else {
                print_distribution(std::get<Distribution>(result));
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "qisxml: " << e.what() << "\n" << app.help() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "qisxml: " << e.what() << "\n";
        return is_io_kind(e.kind()) ? 2 : 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "qisxml: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
