#include <gtest/gtest.h>

#include <regex>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qisxml/compiler.hpp"
#include "qisxml/error.hpp"
#include "qisxml/genadder.hpp"

using namespace qisxml;

namespace {

std::size_t occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

DocumentSet two_plus_one_set() {
    DocumentSet set = fixtures::load({fixtures::corpus("two_plus_one.xml")});
    set.add(generate_adder(2), "adder2.xml");
    return set;
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

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error";
    return ErrorKind::IoError;
}

Program single_gate_program(const std::string& gate, int size, bool reverse = false) {
    Program p;
    p.identification.id = "one";
    p.memory.size = size;
    Circuit c;
    c.size = size;
    Operation op;
    for (int q = 1; q <= size; ++q) op.maps.push_back(Map{q, q, std::nullopt});
    op.target = GateRef{Reference{gate}};
    op.reverse = reverse;
    c.steps.push_back(Step{{op}, ""});
    Execute ex;
    ex.reg.size = size;
    ex.target = c;
    p.actions.push_back(ex);
    return p;
}

}  // namespace

TEST(CompileQcl, TwoPlusOneStructure) {
    const DocumentSet set = two_plus_one_set();
    const std::string qcl = compile_qcl(*set.resolve_program("two_plus_one").entity, set);
    EXPECT_EQ(occurrences(qcl, "// STEP "), 8U);
    EXPECT_EQ(occurrences(qcl, "// PREPARE"), 1U);
    EXPECT_NE(qcl.find("measure register0001[1],value;\nif value != 1 { X(register0001[1]); }"), std::string::npos);
    EXPECT_NE(qcl.find("measure register0001[3],value;\nif value != 1 { X(register0001[3]); }"), std::string::npos);
    EXPECT_EQ(occurrences(qcl, "if value != "), 2U);
    const std::regex toffoli(R"(CNot\((register\d{4})\[2\], \1\[0\] & \1\[1\]\);)");
    EXPECT_EQ(std::distance(std::sregex_iterator(qcl.begin(), qcl.end(), toffoli), std::sregex_iterator()), 4);
    EXPECT_NE(qcl.find("// MEASUREMENT\nfor i=0 to 5 {\n    measure memory[i],value;\n    print i,\"=\",value;\n}\n"),
              std::string::npos);
    EXPECT_TRUE(qcl.starts_with("// =====\n// QIS-XML QCL Compiler v1.0\n// Program two_plus_one (Two plus One)\n"));
    EXPECT_NE(qcl.find("qureg memory[6];"), std::string::npos);
}

TEST(CompileQcl, MatchesGolden) {
    const DocumentSet set = two_plus_one_set();
    EXPECT_EQ(compile_qcl(*set.resolve_program("two_plus_one").entity, set),
              oracle::read_file(fixtures::root() / "golden" / "two_plus_one.qcl"));
}

TEST(CompileQcl, Deterministic) {
    const DocumentSet set = two_plus_one_set();
    const Program& p = *set.resolve_program("two_plus_one").entity;
    const std::string first = compile_qcl(p, set);
    for (int k = 0; k < 5; ++k) EXPECT_EQ(compile_qcl(p, set), first);
}

TEST(CompileQcl, MeasureRunsBecomeLoops) {
    DocumentSet set = fixtures::load({fixtures::corpus("six_plus_seven.xml")});
    set.add(generate_adder(5), "adder5.xml");
    const std::string qcl = compile_qcl(*set.resolve_program("six_plus_seven").entity, set);
    for (const char* loop : {"for i=1 to 1 {", "for i=4 to 4 {", "for i=7 to 7 {", "for i=10 to 10 {",
                             "for i=13 to 14 {"}) {
        EXPECT_NE(qcl.find(loop), std::string::npos) << loop;
    }
    const auto printed = oracle::MiniQcl().run(qcl);
    const std::vector<std::pair<int, int>> want{{1, 1}, {4, 0}, {7, 1}, {10, 1}, {13, 0}, {14, 0}};
    EXPECT_EQ(printed, want);
}

TEST(CompileQcl, InterpreterAgreesWithClassicalOracle) {
    for (int bits : {2, 3}) {
        DocumentSet set;
        set.add(generate_adder(bits), "adder.xml");
        add_builtins(set);
        const oracle::AdderLayout l{bits};
        for (unsigned a = 0; a < (1U << bits); ++a) {
            for (unsigned b = 0; b < (1U << bits); ++b) {
                const auto printed = oracle::MiniQcl().run(compile_qcl(add_program(bits, a, b), set));
                const auto want = oracle::adder_expected(l, a, b);
                ASSERT_EQ(printed.size(), static_cast<std::size_t>(l.qubits()));
                for (const auto& [i, v] : printed) EXPECT_EQ(v, want[i + 1]) << a << "+" << b << " qubit " << i;
            }
        }
    }
}

TEST(CompileQcl, GateEncodings) {
    DocumentSet set;
    add_builtins(set);
    auto body = [&](const std::string& gate, int size, bool reverse = false) {
        const std::string qcl = compile_qcl(single_gate_program(gate, size, reverse), set);
        return qcl.substr(qcl.find("// OPERATION 1\n"));
    };
    EXPECT_NE(body("H", 1).find("H(register0002[0]);"), std::string::npos);
    EXPECT_NE(body("T", 1, true).find("!T(register0002[0]);"), std::string::npos);
    EXPECT_NE(body("C-NOT", 2).find("CNot(register0002[1],register0002[0]);"), std::string::npos);
    EXPECT_NE(body("SWAP", 2).find("Swap(register0002[0],register0002[1]);"), std::string::npos);
    EXPECT_NE(body("C-Z", 2).find("CPhase(pi, register0002[0] & register0002[1]);"), std::string::npos);
    EXPECT_NE(body("C-T", 2).find("CPhase(pi/4, register0002[0] & register0002[1]);"), std::string::npos);
    EXPECT_EQ(occurrences(body("FREDKIN", 3), "CNot("), 3U);
    EXPECT_EQ(kind_of([&] { compile_qcl(single_gate_program("SQRT-NOT", 1), set); }), ErrorKind::UnsupportedGate);
}

TEST(CompileQcl, FredkinSequenceSwapsUnderControl) {
    DocumentSet set;
    add_builtins(set);
    for (unsigned x = 0; x < 8; ++x) {
        Program p = single_gate_program("FREDKIN", 3);
        QubitSet ones;
        ones.value = ComplexValue::real(1);
        for (int q = 1; q <= 3; ++q) {
            if (oracle::bit(x, q, 3)) ones.qubitIndexes.push_back(q);
        }
        if (!ones.qubitIndexes.empty()) p.memory.prepare = Prepare{{ones}};
        const auto printed = oracle::MiniQcl().run(compile_qcl(p, set));
        unsigned want = x;
        if (x & 4U) want = (x & 4U) | ((x & 1U) << 1) | ((x >> 1) & 1U);
        for (const auto& [i, v] : printed) EXPECT_EQ(v, oracle::bit(want, i + 1, 3)) << x;
    }
}

TEST(CompileQcl, PartialRegisterAlias) {
    DocumentSet set;
    add_builtins(set);
    Program p = single_gate_program("C-NOT", 2);
    p.memory.size = 4;
    auto& ex = std::get<Execute>(p.actions[0]);
    ex.reg.selectors = {QubitIndex{4}, QubitIndex{2}};
    const std::string qcl = compile_qcl(p, set);
    EXPECT_NE(qcl.find("// Partial register: memory qubits 3,1 (0-based)\nqureg register0001 = memory[3]&memory[1];"),
              std::string::npos)
        << qcl;
}

TEST(CompileQcl, Rejections) {
    DocumentSet set;
    add_builtins(set);
    Program p = single_gate_program("C-NOT", 2);
    auto& op = std::get<Circuit>(std::get<Execute>(p.actions[0]).target).steps[0].operations[0];
    op.maps[0] = Map{std::nullopt, 1, 1};
    EXPECT_EQ(kind_of([&] { compile_qcl(p, set); }), ErrorKind::FixedValueMapUnsupported);

    Program missing = single_gate_program("NOPE", 1);
    EXPECT_EQ(kind_of([&] { compile_qcl(missing, set); }), ErrorKind::ValidationFailed);
}

TEST(CompileQcl, FreshRegisterNames) {
    EXPECT_EQ(fresh_register_name(1), "register0001");
    EXPECT_EQ(fresh_register_name(42), "register0042");
}
