#include "qisxml/document_set.hpp"

#include <fstream>
#include <sstream>

#include "qisxml/error.hpp"
#include "qisxml/xml_io.hpp"

namespace qisxml {

namespace {

const Identification* library_id(const std::optional<Identification>& id) { return id ? &*id : nullptr; }

const Identification* entity_id(const Gate& g) { return &g.identification; }
const Identification* entity_id(const Circuit& c) { return library_id(c.identification); }
const Identification* entity_id(const Program& p) { return &p.identification; }

std::string describe(const Identification& id) {
    std::string s = id.id;
    if (id.agency) s += " agency=" + *id.agency;
    if (id.version) s += " version=" + *id.version;
    return s;
}

template <typename T>
void check_unique(const std::vector<Entry<T>>& existing, const Entry<T>& added, std::string_view kind) {
    const Identification* id = entity_id(*added.entity);
    if (!id) return;
    for (const auto& e : existing) {
        const Identification* other = entity_id(*e.entity);
        if (other && *other == *id && e.document->builtin == added.document->builtin) {
            throw Error(ErrorKind::DuplicateId, std::string(kind) + " '" + describe(*id) + "' defined in " +
                                                    e.document->uri + " and " + added.document->uri);
        }
    }
}

bool uri_matches(const std::string& document_uri, const std::string& ref_uri) {
    if (document_uri == ref_uri) return true;
    const auto name = std::filesystem::path(document_uri).filename().string();
    return !name.empty() && (name == ref_uri || std::filesystem::path(ref_uri).filename().string() == name);
}

template <typename T>
Entry<T> resolve(const std::vector<Entry<T>>& entries, const Reference& ref, std::string_view kind) {
    std::vector<Entry<T>> user, builtin;
    for (const auto& e : entries) {
        const Identification* id = entity_id(*e.entity);
        if (!id || id->id != ref.id) continue;
        if (ref.libraryId && (!e.library || e.library->id != *ref.libraryId)) continue;
        if (ref.agencyId && id->agency != ref.agencyId) continue;
        if (ref.version && id->version != ref.version) continue;
        (e.document->builtin ? builtin : user).push_back(e);
    }
    auto& candidates = user.empty() ? builtin : user;
    if (candidates.size() > 1 && ref.uri) {
        std::vector<Entry<T>> narrowed;
        for (const auto& e : candidates) {
            if (uri_matches(e.document->uri, *ref.uri)) narrowed.push_back(e);
        }
        if (!narrowed.empty()) candidates = std::move(narrowed);
    }
    if (candidates.empty()) throw Error(ErrorKind::NotFound, std::string(kind) + " '" + ref.id + "' not found");
    if (candidates.size() > 1) {
        std::string list;
        for (const auto& e : candidates) {
            if (!list.empty()) list += ", ";
            list += describe(*entity_id(*e.entity)) + " in " + e.document->uri;
        }
        throw Error(ErrorKind::Ambiguous, std::string(kind) + " '" + ref.id + "' matches " + list);
    }
    return candidates.front();
}

}  // namespace

void DocumentSet::add(Document document, std::string uri, bool builtin) {
    // Index into scratch vectors first so a DuplicateId leaves the set unchanged.
    documents_.push_back(LoadedDocument{std::move(uri), std::move(document), builtin});
    const LoadedDocument* doc = &documents_.back();
    auto gates = gates_;
    auto circuits = circuits_;
    auto programs = programs_;
    auto add_gates = [&](const GateLibrary& lib) {
        for (const auto& g : lib.gates) {
            Entry<Gate> e{&g, library_id(lib.identification), doc};
            check_unique(gates, e, "gate");
            gates.push_back(e);
        }
    };
    auto add_circuits = [&](const CircuitLibrary& lib) {
        for (const auto& c : lib.circuits) {
            Entry<Circuit> e{&c, library_id(lib.identification), doc};
            check_unique(circuits, e, "circuit");
            circuits.push_back(e);
        }
    };
    auto add_programs = [&](const ProgramLibrary& lib) {
        for (const auto& p : lib.programs) {
            Entry<Program> e{&p, library_id(lib.identification), doc};
            check_unique(programs, e, "program");
            programs.push_back(e);
        }
    };
    try {
        std::visit(
            [&](const auto& d) {
                using D = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<D, Instance>) {
                    for (const auto& l : d.gateLibraries) add_gates(l);
                    for (const auto& l : d.circuitLibraries) add_circuits(l);
                    for (const auto& l : d.programLibraries) add_programs(l);
                } else if constexpr (std::is_same_v<D, GateLibrary>) {
                    add_gates(d);
                } else if constexpr (std::is_same_v<D, CircuitLibrary>) {
                    add_circuits(d);
                } else {
                    add_programs(d);
                }
            },
            doc->document);
    } catch (...) {
        documents_.pop_back();
        throw;
    }
    gates_ = std::move(gates);
    circuits_ = std::move(circuits);
    programs_ = std::move(programs);
}

void DocumentSet::add_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::IoError, "error reading " + path.string());
    add(parse_document(buf.str(), path.string()), path.string());
}

Entry<Gate> DocumentSet::resolve_gate(const Reference& ref) const { return resolve(gates_, ref, "gate"); }

Entry<Circuit> DocumentSet::resolve_circuit(const Reference& ref) const {
    return resolve(circuits_, ref, "circuit");
}

Entry<Program> DocumentSet::resolve_program(const Reference& ref) const {
    return resolve(programs_, ref, "program");
}

DocumentSet load_set(std::span<const std::filesystem::path> paths) {
    DocumentSet set;
    for (const auto& p : paths) set.add_file(p);
    return set;
}

}  // namespace qisxml
