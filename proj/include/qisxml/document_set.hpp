#pragma once

// A loaded collection of QIS-XML documents against which references resolve.
//
// Documents live in two tiers: user documents and the builtin library. A
// user entity with the same identity as a builtin one shadows it; within a
// tier, identities must be unique per entity kind.

#include <deque>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qisxml/model.hpp"

namespace qisxml {

struct LoadedDocument {
    std::string uri;
    Document document;
    bool builtin = false;
};

/// An entity inside a loaded document. `library` is null when the enclosing
/// library carries no identification.
template <typename T>
struct Entry {
    const T* entity = nullptr;
    const Identification* library = nullptr;
    const LoadedDocument* document = nullptr;
};

class DocumentSet {
  public:
    DocumentSet() = default;
    DocumentSet(DocumentSet&&) = default;
    DocumentSet& operator=(DocumentSet&&) = default;
    DocumentSet(const DocumentSet&) = delete;
    DocumentSet& operator=(const DocumentSet&) = delete;

    /// Throws DuplicateId when an identity repeats within the same tier.
    void add(Document document, std::string uri, bool builtin = false);
    /// Reads and parses a file. Throws IoError plus any parse error.
    void add_file(const std::filesystem::path& path);

    const std::deque<LoadedDocument>& documents() const noexcept { return documents_; }

    /// All entities in load order (user and builtin tiers together).
    const std::vector<Entry<Gate>>& gates() const noexcept { return gates_; }
    const std::vector<Entry<Circuit>>& circuits() const noexcept { return circuits_; }
    const std::vector<Entry<Program>>& programs() const noexcept { return programs_; }

    /// Match by id, narrowed by libraryId/agencyId/version when present.
    /// User documents are searched before builtins; @URI only breaks ties
    /// among loaded documents. Throws NotFound or Ambiguous.
    Entry<Gate> resolve_gate(const Reference& ref) const;
    Entry<Circuit> resolve_circuit(const Reference& ref) const;
    Entry<Program> resolve_program(const Reference& ref) const;

    Entry<Gate> resolve_gate(const std::string& id) const { return resolve_gate(Reference{id}); }
    Entry<Circuit> resolve_circuit(const std::string& id) const { return resolve_circuit(Reference{id}); }
    Entry<Program> resolve_program(const std::string& id) const { return resolve_program(Reference{id}); }

  private:
    std::deque<LoadedDocument> documents_;
    std::vector<Entry<Gate>> gates_;
    std::vector<Entry<Circuit>> circuits_;
    std::vector<Entry<Program>> programs_;
};

/// Loads each path into a fresh set (no builtins). Throws IoError, DuplicateId
/// and parse errors.
DocumentSet load_set(std::span<const std::filesystem::path> paths);

}  // namespace qisxml
