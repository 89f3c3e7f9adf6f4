#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qisxml/error.hpp"
#include "qisxml/genadder.hpp"
#include "qisxml/simulator.hpp"

using namespace qisxml;

namespace {

std::string gate_id(const Operation& op) { return std::get<GateRef>(op.target).ref.id; }

// Builds a program that loads a and b into an N-bit adder and measures all.
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

}  // namespace

TEST(GenAdder, QubitAndGateCounts) {
    for (int n = 2; n <= 10; ++n) {
        const CircuitLibrary lib = generate_adder(n);
        ASSERT_EQ(lib.circuits.size(), 1U);
        const Circuit& c = lib.circuits[0];
        EXPECT_EQ(c.size, 3 * n);
        EXPECT_EQ(c.operation_count(), static_cast<std::size_t>(7 * n - 6));
        EXPECT_EQ(c.steps.size(), c.operation_count());
        EXPECT_EQ(c.identification->id, "adder" + std::to_string(n));
    }
}

TEST(GenAdder, OnlyToffoliAndCnot) {
    const CircuitLibrary lib = generate_adder(5);
    for (const auto& step : lib.circuits[0].steps) {
        for (const auto& op : step.operations) {
            const std::string id = gate_id(op);
            EXPECT_TRUE(id == "TOFFOLI" || id == "C-NOT") << id;
        }
    }
}

TEST(GenAdder, RejectsNonPositiveWidth) {
    for (int n : {0, -1, -20}) {
        try {
            generate_adder(n);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::BadWidth);
            EXPECT_NE(std::string(e.what()).find("Number of bits must be positive: " + std::to_string(n)),
                      std::string::npos);
        }
    }
}

TEST(GenAdder, TwoBitsMatchesReferenceCircuit) {
    const auto fixture =
        std::get<CircuitLibrary>(parse_document(oracle::read_file(fixtures::corpus("adder2.xml"))));
    const Circuit& want = fixture.circuits.at(0);
    const CircuitLibrary lib = generate_adder(2);
    const Circuit& got = lib.circuits.at(0);
    EXPECT_EQ(lib.identification, fixture.identification);
    EXPECT_EQ(got.size, want.size);
    EXPECT_EQ(got.inputLabels, want.inputLabels);
    EXPECT_EQ(got.outputLabels, want.outputLabels);
    EXPECT_EQ(got.steps, want.steps);
}

TEST(GenAdder, SerializedNotes) {
    const std::string xml = serialize(generate_adder(2));
    EXPECT_NE(xml.find("<!-- sum bit 0 -->"), std::string::npos);
    EXPECT_NE(xml.find("<!-- finish bit 0 -->"), std::string::npos);
}

TEST(GenAdder, ExhaustiveAgainstClassicalOracle) {
    for (int bits : {1, 2, 3}) {
        DocumentSet set;
        set.add(generate_adder(bits), "adder.xml");
        add_builtins(set);
        const oracle::AdderLayout l{bits};
        for (unsigned a = 0; a < (1U << bits); ++a) {
            for (unsigned b = 0; b < (1U << bits); ++b) {
                const auto result = run_program(add_program(bits, a, b), set, {.seed = 7});
                const auto& record = std::get<MeasurementRecord>(result);
                const auto want = oracle::adder_expected(l, a, b);
                ASSERT_EQ(record.bits.size(), static_cast<std::size_t>(l.qubits()));
                for (const auto& m : record.bits) {
                    EXPECT_EQ(m.bit, want[m.qubit]) << bits << "-bit " << a << "+" << b << " qubit " << m.qubit;
                }
            }
        }
    }
}
