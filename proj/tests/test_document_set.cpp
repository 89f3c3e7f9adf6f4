#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qisxml/error.hpp"
#include "qisxml/stdlib.hpp"
#include "qisxml/xml_io.hpp"

using namespace qisxml;

namespace {

GateLibrary gate_library(const std::string& libId, const std::string& gateId, const std::string& name,
                         std::optional<std::string> version = std::nullopt) {
    GateLibrary lib;
    lib.identification = Identification{libId};
    Gate g;
    g.identification = Identification{gateId, std::nullopt, version};
    g.name = name;
    g.transformation.cells = {{1, 1, ComplexValue::real(1)}, {2, 2, ComplexValue::real(1)}};
    lib.gates.push_back(g);
    return lib;
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

}  // namespace

TEST(DocumentSet, DuplicateWithinTier) {
    DocumentSet set;
    set.add(gate_library("a", "Q", "first"), "a.xml");
    EXPECT_EQ(kind_of([&] { set.add(gate_library("a", "Q", "second"), "b.xml"); }), ErrorKind::DuplicateId);
}

TEST(DocumentSet, SameIdDifferentVersionsCoexist) {
    DocumentSet set;
    set.add(gate_library("a", "Q", "v1", "1"), "a.xml");
    set.add(gate_library("a", "Q", "v2", "2"), "b.xml");
    EXPECT_EQ(set.resolve_gate(Reference{"Q", std::nullopt, std::nullopt, "2"}).entity->name, "v2");
    EXPECT_EQ(kind_of([&] { set.resolve_gate("Q"); }), ErrorKind::Ambiguous);
}

TEST(DocumentSet, UriBreaksTies) {
    DocumentSet set;
    set.add(gate_library("a", "Q", "from a", "1"), "dir/a.xml");
    set.add(gate_library("b", "Q", "from b", "2"), "dir/b.xml");
    EXPECT_EQ(kind_of([&] { set.resolve_gate("Q"); }), ErrorKind::Ambiguous);
    Reference ref{"Q"};
    ref.uri = "b.xml";
    EXPECT_EQ(set.resolve_gate(ref).entity->name, "from b");
    Reference by_lib{"Q", "a"};
    EXPECT_EQ(set.resolve_gate(by_lib).entity->name, "from a");
}

TEST(DocumentSet, AgencyFilter) {
    DocumentSet set;
    GateLibrary first = gate_library("lib", "Q", "first");
    first.gates[0].identification.agency = "acme";
    GateLibrary other = gate_library("lib2", "Q", "other");
    other.gates[0].identification.agency = "other";
    set.add(first, "a.xml");
    set.add(other, "b.xml");
    Reference ref{"Q"};
    ref.agencyId = "other";
    EXPECT_EQ(set.resolve_gate(ref).entity->name, "other");
}

TEST(DocumentSet, SameIdentityInDifferentFiles) {
    DocumentSet set;
    set.add(gate_library("a", "H", "one"), "a.xml");
    EXPECT_EQ(kind_of([&] { set.add(gate_library("b", "H", "two"), "b.xml"); }), ErrorKind::DuplicateId);
    // The failed add leaves the set as it was.
    EXPECT_EQ(set.documents().size(), 1U);
    EXPECT_EQ(set.resolve_gate("H").entity->name, "one");
}

TEST(DocumentSet, UserShadowsBuiltin) {
    DocumentSet set;
    add_builtins(set);
    set.add(gate_library("mine", "H", "My Hadamard"), "mine.xml");
    EXPECT_EQ(set.resolve_gate("H").entity->name, "My Hadamard");
    EXPECT_EQ(set.resolve_gate("X").entity->name, "Pauli-X");
    EXPECT_TRUE(set.resolve_gate("X").document->builtin);
}

TEST(DocumentSet, NotFound) {
    DocumentSet set;
    add_builtins(set);
    EXPECT_EQ(kind_of([&] { set.resolve_gate("NOPE"); }), ErrorKind::NotFound);
    EXPECT_EQ(kind_of([&] { set.resolve_circuit("NOPE"); }), ErrorKind::NotFound);
    EXPECT_EQ(kind_of([&] { set.resolve_program("NOPE"); }), ErrorKind::NotFound);
}

TEST(DocumentSet, EntriesKeepLibraryAndDocument) {
    DocumentSet set = fixtures::load({fixtures::corpus("phase_flip.xml")});
    const auto e = set.resolve_circuit("three_qubit_phase_flip");
    EXPECT_FALSE(e.document->builtin);
    EXPECT_EQ(e.entity->size, 3);
    // Builtins carry a circuit with the same identity; the user one wins.
    EXPECT_EQ(e.document->uri, fixtures::corpus("phase_flip.xml").string());
}

TEST(DocumentSet, MissingFile) {
    DocumentSet set;
    EXPECT_EQ(kind_of([&] { set.add_file("/nonexistent/file.xml"); }), ErrorKind::IoError);
}

TEST(DocumentSet, MoveKeepsEntriesValid) {
    DocumentSet a;
    add_builtins(a);
    DocumentSet b = std::move(a);
    EXPECT_EQ(b.resolve_gate("TOFFOLI").entity->size(), 3);
}
