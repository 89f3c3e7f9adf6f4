#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "qisxml/document_set.hpp"
#include "qisxml/stdlib.hpp"
#include "qisxml/xml_io.hpp"

namespace fixtures {

inline std::filesystem::path root() { return QISXML_FIXTURES; }
inline std::filesystem::path corpus(const std::string& name) { return root() / "corpus" / name; }
inline std::filesystem::path mutation(const std::string& name) { return root() / "mutations" / (name + ".xml"); }

inline std::vector<std::string> corpus_files() {
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(root() / "corpus")) {
        if (e.path().extension() == ".xml") names.push_back(e.path().filename().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

inline std::string test_name(std::string file) {
    file = file.substr(0, file.find('.'));
    for (char& ch : file) {
        if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
    }
    return file;
}

/// parse(serialize(x)). Fragments without a document root are wrapped in the
/// smallest document that can carry them and unwrapped afterwards.
inline qisxml::Fragment round_trip(const qisxml::Fragment& f) {
    using namespace qisxml;
    if (const auto* doc = std::get_if<Document>(&f)) return parse_document(serialize(*doc));
    if (const auto* t = std::get_if<UnitaryTransformation>(&f)) {
        GateLibrary lib;
        Gate g;
        g.identification.id = "wrapper";
        g.name = "wrapper";
        g.transformation = *t;
        lib.gates.push_back(g);
        return std::get<GateLibrary>(parse_document(serialize(lib))).gates.at(0).transformation;
    }
    const auto& reg = std::get<Register>(f);
    ProgramLibrary lib;
    Program p;
    p.identification.id = "wrapper";
    p.memory.size = reg.size;
    p.actions.push_back(Execute{reg, CircuitRef{Reference{"wrapper"}}});
    lib.programs.push_back(p);
    const auto back = std::get<ProgramLibrary>(parse_document(serialize(lib)));
    return std::get<Execute>(back.programs.at(0).actions.at(0)).reg;
}

/// User documents plus the builtin libraries.
inline qisxml::DocumentSet load(const std::vector<std::filesystem::path>& paths) {
    qisxml::DocumentSet set = qisxml::load_set(paths);
    qisxml::add_builtins(set);
    return set;
}

}  // namespace fixtures
