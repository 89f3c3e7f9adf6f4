// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include <expat.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qisxml/compiler.hpp"
#include "qisxml/error.hpp"
#include "qisxml/genadder.hpp"
#include "qisxml/render.hpp"
#include "qisxml/semantics.hpp"
#include "qisxml/simulator.hpp"
#include "qisxml/validation.hpp"

using namespace qisxml;

namespace {

// Collects the first failed check of a criterion.
struct Check {
    std::string failure;
    void operator()(bool ok, const std::string& what) {
        if (!ok && failure.empty()) failure = what;
    }
};

std::size_t occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

bool well_formed(const std::string& xml) {
    XML_Parser p = XML_ParserCreate("UTF-8");
    const bool ok = XML_Parse(p, xml.data(), static_cast<int>(xml.size()), XML_TRUE) == XML_STATUS_OK;
    XML_ParserFree(p);
    return ok;
}

std::string bits_of(const MeasurementRecord& r) {
    std::string s;
    for (const auto& b : r.bits) s += static_cast<char>('0' + b.bit);
    return s;
}

std::string run_command(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    status = pclose(pipe);
    return out;
}

Program add_program(int bits, unsigned a, unsigned b) {
    const oracle::AdderLayout l{bits};
    Program p;
    p.identification.id = "add";
    p.memory.size = l.qubits();
    Execute ex;
    ex.reg.size = l.qubits();
    QubitSet ones;
    ones.value = ComplexValue::real(1);
    for (int i = 0; i < bits; ++i) {
        if ((a >> i) & 1U) ones.qubitIndexes.push_back(l.a(i));
        if ((b >> i) & 1U) ones.qubitIndexes.push_back(l.b(i));
    }
    if (!ones.qubitIndexes.empty()) ex.reg.prepare = Prepare{{ones}};
    ex.target = CircuitRef{Reference{adder_circuit_id(bits)}};
    p.actions.push_back(ex);
    return p;
}

DocumentSet adder_set(int bits) {
    DocumentSet set;
    set.add(generate_adder(bits), "adder.xml");
    add_builtins(set);
    return set;
}

const Gate& stdgate(const std::string& id) {
    for (const auto& g : builtin_gates().gates) {
        if (g.identification.id == id) return g;
    }
    throw std::runtime_error("no builtin gate " + id);
}

void corpus_round_trip(Check& check) {
    const auto names = fixtures::corpus_files();
    for (const char* want : {"toffoli_transformation.xml", "hadamard_transformation.xml", "single_qubit_gates.xml",
                             "multi_qubit_gates.xml", "parameterized_gate.xml", "cnot_controlled_phase.xml",
                             "deutsch_gate.xml", "not_equivalent.xml", "phase_flip.xml", "register.xml",
                             "two_plus_one.xml", "adder2.xml", "six_plus_seven.xml"}) {
        check(std::find(names.begin(), names.end(), want) != names.end(), std::string("missing fixture ") + want);
    }
    for (const auto& name : names) {
        const auto path = fixtures::corpus(name);
        const Fragment first = parse_fragment(oracle::read_file(path), path.string());
        check(fixtures::round_trip(first) == first, name + " does not round-trip");
    }
}

void gate_library(Check& check) {
    const std::vector<double> thetas{0.0, std::numbers::pi / 7, std::numbers::pi / 2, 1.0, 2 * std::numbers::pi};
    check(builtin_gates().gates.size() == 17, "expected 17 builtin gates");
    for (const auto& g : builtin_gates().gates) {
        if (g.parameters.empty()) {
            check(unitarity_defect(realize_gate(g, {}, false)) <= 1e-9, g.identification.id + " not unitary");
            continue;
        }
        for (double t : thetas) {
            check(unitarity_defect(realize_gate(g, {{canonical_parameter_name(g.parameters[0].name), t}}, false)) <=
                      1e-9,
                  g.identification.id + " not unitary at theta=" + std::to_string(t));
        }
    }
}

void equivalent_circuits(Check& check) {
    {
        const DocumentSet set = fixtures::load({fixtures::corpus("not_equivalent.xml")});
        const Circuit* c = nullptr;
        for (const auto& e : set.circuits()) {
            if (!e.document->builtin) c = e.entity;
        }
        check(c && oracle::max_diff(oracle::pauli_x(), circuit_unitary(*c, set)) <= 1e-9, "not-equivalent != X");
    }
    {
        const DocumentSet set = fixtures::load({fixtures::corpus("phase_flip.xml")});
        using namespace oracle;
        const Mat h3 = kron(kron(hadamard(), hadamard()), hadamard());
        const Mat want = mul(mul(h3, cnot(3, 1, 3)), cnot(3, 1, 2));
        check(max_diff(want, circuit_unitary(*set.resolve_circuit("three_qubit_phase_flip").entity, set)) <= 1e-9,
              "phase flip circuit differs from tensor oracle");
    }
    {
        DocumentSet set;
        add_builtins(set);
        const CMatrix u = circuit_unitary(*set.resolve_circuit("toffoli_equivalent").entity, set);
        check(max_abs_diff(u, realize_gate(stdgate("TOFFOLI"), {}, false)) <= 1e-9,
              "toffoli equivalent differs from TOFFOLI gate");
        check(oracle::max_diff(oracle::toffoli(3, 1, 2, 3), u) <= 1e-9, "toffoli equivalent differs from truth table");
    }
}

void genadder_structure(Check& check) {
    for (int n = 2; n <= 10; ++n) {
        const CircuitLibrary lib = generate_adder(n);
        const Circuit& c = lib.circuits.at(0);
        check(c.size == 3 * n, "adder" + std::to_string(n) + " qubit count");
        check(c.operation_count() == static_cast<std::size_t>(7 * n - 6), "adder" + std::to_string(n) + " gate count");
    }
    const auto fixture =
        std::get<CircuitLibrary>(parse_document(oracle::read_file(fixtures::corpus("adder2.xml"))));
    const CircuitLibrary back = std::get<CircuitLibrary>(parse_document(serialize(generate_adder(2))));
    const Circuit& got = back.circuits.at(0);
    const Circuit& want = fixture.circuits.at(0);
    check(got.steps == want.steps, "adder2 steps differ from fixture");
    check(got.inputLabels == want.inputLabels && got.outputLabels == want.outputLabels,
          "adder2 labels differ from fixture");
}

void reference_results(Check& check) {
    {
        DocumentSet set = fixtures::load({fixtures::corpus("two_plus_one.xml")});
        set.add(generate_adder(2), "adder2.xml");
        const auto r =
            std::get<MeasurementRecord>(run_program(*set.resolve_program("two_plus_one").entity, set, {.seed = 1}));
        check(bits_of(r) == "010110", "two plus one measured " + bits_of(r));
    }
    DocumentSet set = fixtures::load({fixtures::corpus("six_plus_seven.xml")});
    set.add(generate_adder(5), "adder5.xml");
    const Program& p = *set.resolve_program("six_plus_seven").entity;
    const auto all = std::get<MeasurementRecord>(run_program(p, set, {.seed = 1, .measureAll = true}));
    check(bits_of(all) == "010100110010000", "six plus seven measured " + bits_of(all));
    int sum = 0;
    for (int i = 0; i < 5; ++i) sum |= all.bits.at(static_cast<std::size_t>(3 * i + 1)).bit << i;
    sum |= all.bits.at(14).bit << 5;
    check(sum == 13, "six plus seven decodes to " + std::to_string(sum));
}

void exhaustive_adder(Check& check) {
    for (int bits : {2, 3}) {
        const DocumentSet set = adder_set(bits);
        const oracle::AdderLayout l{bits};
        for (unsigned a = 0; a < (1U << bits); ++a) {
            for (unsigned b = 0; b < (1U << bits); ++b) {
                const auto r = std::get<MeasurementRecord>(run_program(add_program(bits, a, b), set, {.seed = 3}));
                const auto want = oracle::adder_expected(l, a, b);
                bool same = r.bits.size() == static_cast<std::size_t>(l.qubits());
                for (const auto& m : r.bits) same = same && m.bit == want[m.qubit];
                check(same, std::to_string(bits) + "-bit " + std::to_string(a) + "+" + std::to_string(b));
            }
        }
    }
}

void mutation_suite(Check& check) {
    const std::vector<std::pair<std::string, std::string>> faults{
        {"qubit_normalization", codes::kQubitNormalization},
        {"cell_out_of_range", codes::kCellOutOfRange},
        {"map_qubit_out_of_range", codes::kMapQubitOutOfRange},
        {"map_input_out_of_range", codes::kMapInputOutOfRange},
        {"duplicate_mapping", codes::kDuplicateMapping},
        {"dangling_reference", codes::kDanglingReference},
        {"register_size_mismatch", codes::kRegisterSizeMismatch},
        {"index_out_of_bounds", codes::kIndexOutOfBounds},
        {"not_unitary", codes::kNotUnitary},
        {"bad_cell_expression", codes::kBadCellExpression},
    };
    for (const auto& [fixture, code] : faults) {
        const DocumentSet set = fixtures::load({fixtures::mutation(fixture)});
        std::vector<Finding> errors;
        for (const auto& f : validate(set, {.strictUnitary = true})) {
            if (f.severity == Severity::Error) errors.push_back(f);
        }
        check(errors.size() == 1 && errors[0].code == code, fixture + " did not yield exactly one " + code);
    }
    // The unmapped-qubit check reports a WARNING, never an ERROR.
    {
        const DocumentSet set = fixtures::load({fixtures::mutation("unmapped_qubits")});
        const auto findings = validate(set, {.strictUnitary = true});
        check(findings.size() == 1 && findings[0].severity == Severity::Warning &&
                  findings[0].code == codes::kUnmappedQubits,
              "unmapped_qubits did not yield exactly one UNMAPPED_QUBITS warning");
    }
    const DocumentSet shor = fixtures::load({fixtures::root() / "shor9_faulty.xml"});
    const auto findings = validate(shor);
    const std::string report = report_text(shor, findings);
    check(count(findings, Severity::Error) == 1 && report.find("ERROR: Map 1 input=3 is out of Gate range.") !=
                                                       std::string::npos,
          "shor fixture: out of Gate range error");
    check(occurrences(report, "Warning: Not all qubits have been mapped.") == 5, "shor fixture: per-step warnings");
}

void compiler_goldens(Check& check) {
    DocumentSet set = fixtures::load({fixtures::corpus("two_plus_one.xml")});
    set.add(generate_adder(2), "adder2.xml");
    const Program& p = *set.resolve_program("two_plus_one").entity;
    const std::string qcl = compile_qcl(p, set);
    check(occurrences(qcl, "// STEP ") == 8, "expected 8 STEP blocks");
    check(qcl.find("if value != 1 { X(register0001[1]); }") != std::string::npos &&
              qcl.find("if value != 1 { X(register0001[3]); }") != std::string::npos &&
              occurrences(qcl, "if value != ") == 2,
          "prepare of bits {1,3}");
    const std::regex toffoli(R"(CNot\((register\d{4})\[2\], \1\[0\] & \1\[1\]\);)");
    check(std::distance(std::sregex_iterator(qcl.begin(), qcl.end(), toffoli), std::sregex_iterator()) == 4,
          "Toffoli encoding");
    check(qcl.find("for i=0 to 5 {\n    measure memory[i],value;") != std::string::npos, "6-iteration measure loop");
    check(compile_qcl(p, set) == qcl, "output differs between runs");

    const DocumentSet adders = adder_set(2);
    const oracle::AdderLayout l{2};
    for (unsigned a = 0; a < 4; ++a) {
        for (unsigned b = 0; b < 4; ++b) {
            const auto printed = oracle::MiniQcl().run(compile_qcl(add_program(2, a, b), adders));
            const auto want = oracle::adder_expected(l, a, b);
            bool same = printed.size() == static_cast<std::size_t>(l.qubits());
            for (const auto& [i, v] : printed) same = same && v == want[i + 1];
            check(same, "interpreted QCL for " + std::to_string(a) + "+" + std::to_string(b));
        }
    }
}

void render_goldens(Check& check) {
    const DocumentSet set = adder_set(2);
    const std::string svg = render_circuit_svg(*set.resolve_circuit("adder2").entity, set);
    check(well_formed(svg), "adder2 SVG is not well-formed");
    check(occurrences(svg, "<line class=\"wire\"") == 6, "adder2 SVG wire count");
    check(occurrences(svg, "<g class=\"column\"") == 8, "adder2 SVG column count");

    DocumentSet deutsch;
    deutsch.add_file(fixtures::corpus("deutsch_gate.xml"));
    const std::string html = report_html(deutsch);
    check(well_formed(html), "report is not well-formed");
    const std::string lower_right =
        "<tr><td>0</td><td>0</td><td>0</td><td>0</td><td>0</td><td>0</td><td>cos(θ)</td><td>i sin(θ)</td></tr>"
        "<tr><td>0</td><td>0</td><td>0</td><td>0</td><td>0</td><td>0</td><td>i sin(θ)</td><td>cos(θ)</td></tr>";
    std::string compact;
    for (char ch : html) {
        if (ch != '\n' && ch != ' ') compact += ch;
    }
    std::string needle;
    for (char ch : lower_right) {
        if (ch != ' ') needle += ch;
    }
    check(compact.find(needle) != std::string::npos, "Deutsch lower-right block");
}

void determinism(Check& check) {
    std::vector<std::pair<DocumentSet, Program>> programs;
    for (int bits : {2, 3}) {
        for (unsigned a = 0; a < (1U << bits); ++a) {
            for (unsigned b = 0; b < (1U << bits); ++b) programs.emplace_back(adder_set(bits), add_program(bits, a, b));
        }
    }
    for (const auto& [set, p] : programs) {
        const auto sample = std::get<MeasurementRecord>(run_program(p, set, {.seed = 11}));
        const auto dist = std::get<Distribution>(run_program(p, set, {.mode = RunMode::Distribution}));
        bool same = dist.outcomes.size() == 1 && std::abs(dist.outcomes[0].probability - 1.0) <= 1e-9 &&
                    dist.qubits.size() == sample.bits.size();
        for (std::size_t k = 0; same && k < sample.bits.size(); ++k) {
            same = dist.qubits[k] == sample.bits[k].qubit && dist.outcomes[0].bits[k] == sample.bits[k].bit;
        }
        check(same, "sample and distribution disagree");
    }

    const std::string cli = QISXML_CLI;
    const std::string bell = fixtures::mutation("base").string();
    std::set<std::string> distinct;
    for (int seed : {1, 2, 3, 4, 5, 6, 7, 8}) {
        const std::string cmd = "'" + cli + "' simulate '" + bell + "' --program run_bell --seed " +
                                std::to_string(seed) + " 2>&1";
        int s1 = 0;
        int s2 = 0;
        const std::string first = run_command(cmd, s1);
        const std::string second = run_command(cmd, s2);
        check(s1 == 0 && s2 == 0, "simulate failed: " + first);
        check(first == second, "simulate --seed " + std::to_string(seed) + " not reproducible");
        distinct.insert(first);
    }
    check(distinct.size() > 1, "seed has no effect on a superposed program");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"XML corpus parses and round-trips", corpus_round_trip},
        {"gate library integrity", gate_library},
        {"equivalent-circuit unitaries", equivalent_circuits},
        {"genadder structure", genadder_structure},
        {"reference simulation results", reference_results},
        {"exhaustive adder oracle", exhaustive_adder},
        {"validator mutation suite", mutation_suite},
        {"compiler goldens", compiler_goldens},
        {"render goldens", render_goldens},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Check check;
        try {
            criteria[k].second(check);
        } catch (const std::exception& e) {
            check(false, std::string("exception: ") + e.what());
        }
        const bool ok = check.failure.empty();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first;
        if (!ok) std::cout << " (" << check.failure << ")";
        std::cout << "\n";
    }
    return failed;
}
