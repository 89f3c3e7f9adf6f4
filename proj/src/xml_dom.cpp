#include "xml_dom.hpp"

#include <expat.h>

#include <map>
#include <memory>

#include "qisxml/error.hpp"

namespace qisxml::detail {

namespace {

using Scope = std::map<std::string, std::string, std::less<>>;

// Documents published without xmlns declarations still use the customary
// prefixes, so those are bound when nothing else binds them.
Scope default_scope() {
    return {{"i", "qis:instance:1_0"}, {"g", "qis:gate:1_0"}, {"c", "qis:circuit:1_0"},
            {"p", "qis:program:1_0"},  {"r", "qis:reusable:1_0"}, {"xsi", "http://www.w3.org/2001/XMLSchema-instance"}};
}

struct Builder {
    XML_Parser parser = nullptr;
    std::vector<XmlNode> stack;
    std::vector<Scope> scopes{default_scope()};
    XmlNode root;
    bool has_root = false;
    std::string failure;

    // Resolves "prefix:local". Unprefixed attributes have no namespace;
    // unprefixed elements take the default namespace ("" key).
    bool resolve(std::string_view name, bool is_element, std::string& ns, std::string& local) {
        const auto colon = name.find(':');
        const auto& scope = scopes.back();
        if (colon == std::string_view::npos) {
            local = name;
            ns.clear();
            if (is_element) {
                if (auto it = scope.find(""); it != scope.end()) ns = it->second;
            }
            return true;
        }
        const auto prefix = name.substr(0, colon);
        local = name.substr(colon + 1);
        auto it = scope.find(prefix);
        if (it == scope.end()) {
            if (failure.empty()) failure = "unbound namespace prefix '" + std::string(prefix) + "'";
            return false;
        }
        ns = it->second;
        return true;
    }

    void append(XmlNode node) {
        if (stack.empty()) {
            return;  // prolog/epilog text and comments
        }
        auto& children = stack.back().children;
        if (node.kind == XmlNode::Kind::Text && !children.empty() && children.back().kind == XmlNode::Kind::Text) {
            children.back().text += node.text;
            return;
        }
        children.push_back(std::move(node));
    }

    static void on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
        auto* self = static_cast<Builder*>(data);
        Scope scope = self->scopes.back();
        for (int k = 0; attrs[k] != nullptr; k += 2) {
            const std::string_view n(attrs[k]);
            if (n == "xmlns") scope[""] = attrs[k + 1];
            else if (n.starts_with("xmlns:")) scope[std::string(n.substr(6))] = attrs[k + 1];
        }
        self->scopes.push_back(std::move(scope));
        XmlNode node;
        node.line = static_cast<int>(XML_GetCurrentLineNumber(self->parser));
        node.column = static_cast<int>(XML_GetCurrentColumnNumber(self->parser)) + 1;
        if (!self->resolve(name, true, node.ns, node.local)) {
            XML_StopParser(self->parser, XML_FALSE);
            return;
        }
        for (int k = 0; attrs[k] != nullptr; k += 2) {
            const std::string_view n(attrs[k]);
            if (n == "xmlns" || n.starts_with("xmlns:")) continue;
            XmlAttribute a;
            if (!self->resolve(n, false, a.ns, a.local)) {
                XML_StopParser(self->parser, XML_FALSE);
                return;
            }
            a.value = attrs[k + 1];
            node.attributes.push_back(std::move(a));
        }
        self->stack.push_back(std::move(node));
    }

    static void on_end(void* data, const XML_Char*) {
        auto* self = static_cast<Builder*>(data);
        // A self-closing element still ends after its start handler stopped
        // the parser.
        if (!self->failure.empty()) return;
        self->scopes.pop_back();
        XmlNode node = std::move(self->stack.back());
        self->stack.pop_back();
        if (self->stack.empty()) {
            self->root = std::move(node);
            self->has_root = true;
        } else {
            self->stack.back().children.push_back(std::move(node));
        }
    }

    static void on_text(void* data, const XML_Char* s, int len) {
        auto* self = static_cast<Builder*>(data);
        XmlNode node;
        node.kind = XmlNode::Kind::Text;
        node.text.assign(s, static_cast<std::size_t>(len));
        self->append(std::move(node));
    }

    static void on_comment(void* data, const XML_Char* s) {
        auto* self = static_cast<Builder*>(data);
        XmlNode node;
        node.kind = XmlNode::Kind::Comment;
        node.text = s;
        node.line = static_cast<int>(XML_GetCurrentLineNumber(self->parser));
        self->append(std::move(node));
    }
};

}  // namespace

XmlNode parse_xml(std::string_view bytes, const std::string& source) {
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
        XML_ParserCreate("UTF-8"), &XML_ParserFree);
    Builder builder;
    builder.parser = parser.get();
    XML_SetUserData(parser.get(), &builder);
    XML_SetElementHandler(parser.get(), &Builder::on_start, &Builder::on_end);
    XML_SetCharacterDataHandler(parser.get(), &Builder::on_text);
    XML_SetCommentHandler(parser.get(), &Builder::on_comment);
    if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE) == XML_STATUS_ERROR) {
        const auto line = XML_GetCurrentLineNumber(parser.get());
        const auto col = XML_GetCurrentColumnNumber(parser.get()) + 1;
        throw Error(ErrorKind::XmlSyntax, (source.empty() ? std::string() : source + ":") + std::to_string(line) + ":" +
                                              std::to_string(col) + ": " +
                                              (builder.failure.empty()
                                                   ? std::string(XML_ErrorString(XML_GetErrorCode(parser.get())))
                                                   : builder.failure));
    }
    if (!builder.has_root) {
        throw Error(ErrorKind::XmlSyntax, source + ": no root element");
    }
    return std::move(builder.root);
}

}  // namespace qisxml::detail
