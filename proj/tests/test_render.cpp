#include <gtest/gtest.h>

#include <expat.h>

#include <regex>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qisxml/error.hpp"
#include "qisxml/genadder.hpp"
#include "qisxml/render.hpp"

using namespace qisxml;

namespace {

bool well_formed(const std::string& xml) {
    XML_Parser p = XML_ParserCreate("UTF-8");
    const bool ok = XML_Parse(p, xml.data(), static_cast<int>(xml.size()), XML_TRUE) == XML_STATUS_OK;
    XML_ParserFree(p);
    return ok;
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

DocumentSet adder_set(int bits) {
    DocumentSet set;
    set.add(generate_adder(bits), "adder.xml");
    add_builtins(set);
    return set;
}

// Text content of every <td> in row `row` (1-based) of the first matrix table
// after `anchor`.
std::vector<std::string> matrix_row(const std::string& html, const std::string& anchor, int row) {
    auto pos = html.find(anchor);
    pos = html.find("<table class=\"matrix\">", pos);
    for (int r = 0; r < row; ++r) pos = html.find("<tr>", pos + 1);
    const auto end = html.find("</tr>", pos);
    const std::string tr = html.substr(pos, end - pos);
    std::vector<std::string> cells;
    static const std::regex td("<td>([^<]*)</td>");
    for (auto it = std::sregex_iterator(tr.begin(), tr.end(), td); it != std::sregex_iterator(); ++it) {
        cells.push_back((*it)[1]);
    }
    return cells;
}

}  // namespace

TEST(RenderSvg, AdderWiresAndColumns) {
    const DocumentSet set = adder_set(2);
    const std::string svg = render_circuit_svg(*set.resolve_circuit("adder2").entity, set);
    EXPECT_TRUE(well_formed(svg));
    EXPECT_EQ(occurrences(svg, "<line class=\"wire\""), 6U);
    EXPECT_EQ(occurrences(svg, "<g class=\"column\""), 8U);
    // Four Toffolis with two controls each and four C-NOTs with one.
    EXPECT_EQ(occurrences(svg, "<circle class=\"control\""), 12U);
    EXPECT_EQ(occurrences(svg, "<g class=\"oplus\">"), 8U);
    EXPECT_NE(svg.find(">InputA0</text>"), std::string::npos);
    EXPECT_NE(svg.find(">CarryOut</text>"), std::string::npos);
}

TEST(RenderSvg, Deterministic) {
    const DocumentSet set = adder_set(3);
    const Circuit& c = *set.resolve_circuit("adder3").entity;
    EXPECT_EQ(render_circuit_svg(c, set), render_circuit_svg(c, set));
    EXPECT_EQ(occurrences(render_circuit_svg(c, set), "<g class=\"column\""), 15U);
}

TEST(RenderSvg, LayoutControlsGeometry) {
    const DocumentSet set = adder_set(2);
    const Circuit& c = *set.resolve_circuit("adder2").entity;
    Layout wide;
    wide.wireSpacing = 100;
    const std::string a = render_circuit_svg(c, set);
    const std::string b = render_circuit_svg(c, set, wide);
    EXPECT_NE(a, b);
    EXPECT_TRUE(well_formed(b));
}

TEST(RenderSvg, ToffoliEquivalentShowsDaggers) {
    DocumentSet set;
    add_builtins(set);
    const std::string svg = render_circuit_svg(*set.resolve_circuit("toffoli_equivalent").entity, set);
    EXPECT_TRUE(well_formed(svg));
    EXPECT_EQ(occurrences(svg, "<line class=\"wire\""), 3U);
    EXPECT_EQ(occurrences(svg, "<g class=\"column\""), 15U);
    EXPECT_EQ(occurrences(svg, "class=\"dagger\""), 3U);
}

TEST(RenderSvg, NestedCircuitIsABox) {
    DocumentSet set;
    add_builtins(set);
    Circuit c;
    c.size = 2;
    Operation op;
    op.maps = {Map{1, 1, std::nullopt}, Map{2, 2, std::nullopt}};
    op.target = CircuitRef{Reference{"cnot_equivalent"}};
    c.steps.push_back(Step{{op}, ""});
    const std::string svg = render_circuit_svg(c, set);
    EXPECT_EQ(occurrences(svg, "<rect class=\"circuit\""), 1U);
    EXPECT_NE(svg.find(">cnot_equivalent<"), std::string::npos);

    c.steps[0].operations[0].target = CircuitRef{Reference{"missing"}};
    try {
        render_circuit_svg(c, set);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DanglingReference);
    }
}

TEST(RenderSvg, FixedValueStub) {
    DocumentSet set;
    add_builtins(set);
    Circuit c;
    c.size = 1;
    Operation op;
    op.maps = {Map{std::nullopt, 1, 1}, Map{1, 2, std::nullopt}};
    op.target = GateRef{Reference{"C-NOT"}};
    c.steps.push_back(Step{{op}, ""});
    const std::string svg = render_circuit_svg(c, set);
    EXPECT_TRUE(well_formed(svg));
    EXPECT_EQ(occurrences(svg, "class=\"fixed\""), 1U);
}

TEST(RenderSvg, GateDiagrams) {
    for (const auto& g : builtin_gates().gates) {
        const std::string svg = render_gate_svg(g);
        EXPECT_TRUE(well_formed(svg)) << g.identification.id;
        EXPECT_EQ(occurrences(svg, "<line class=\"wire\""), static_cast<std::size_t>(g.size())) << g.identification.id;
    }
}

TEST(ReportHtml, DeutschMatrixIsSymbolic) {
    DocumentSet set;
    set.add_file(fixtures::corpus("deutsch_gate.xml"));
    const std::string html = report_html(set);
    EXPECT_TRUE(well_formed(html));
    EXPECT_NE(html.find("DEUTSCH(theta) ="), std::string::npos);
    EXPECT_EQ(matrix_row(html, "gate-DEUTSCH", 1),
              (std::vector<std::string>{"1", "0", "0", "0", "0", "0", "0", "0"}));
    EXPECT_EQ(matrix_row(html, "gate-DEUTSCH", 7),
              (std::vector<std::string>{"0", "0", "0", "0", "0", "0", "cos(θ)", "i sin(θ)"}));
    EXPECT_EQ(matrix_row(html, "gate-DEUTSCH", 8),
              (std::vector<std::string>{"0", "0", "0", "0", "0", "0", "i sin(θ)", "cos(θ)"}));
}

TEST(ReportHtml, BuiltinsOnRequest) {
    DocumentSet set;
    add_builtins(set);
    EXPECT_EQ(report_html(set).find("gate-TOFFOLI"), std::string::npos);
    const std::string html = report_html(set, {.includeBuiltins = true});
    EXPECT_TRUE(well_formed(html));
    EXPECT_NE(html.find("gate-TOFFOLI"), std::string::npos);
    EXPECT_NE(html.find("gate-FREDKIN"), std::string::npos);
    EXPECT_EQ(matrix_row(html, "gate-H", 1), (std::vector<std::string>{"1", "1"}));
    EXPECT_NE(html.find("H = 1/sqrt(2) &#215;"), std::string::npos);
}

TEST(ReportHtml, DisplayValue) {
    EXPECT_EQ(display_value(ComplexValue::real(1)), "1");
    EXPECT_EQ(display_value(ComplexValue::imag(1)), "i");
    EXPECT_EQ(display_value(ComplexValue::imag(-1)), "-i");
    EXPECT_EQ(display_value(ComplexValue{0.5, -0.5, {}}), "0.5-0.5i");
    EXPECT_EQ(display_value(ComplexValue{std::nullopt, std::nullopt, {{"odf", "a"}, {"html", "b"}}}), "b");
}

TEST(ReportHtml, ValidationSummary) {
    const DocumentSet set = fixtures::load({fixtures::root() / "shor9_faulty.xml"});
    const std::string html = report_validation_html(set, validate(set));
    EXPECT_TRUE(well_formed(html));
    EXPECT_NE(html.find("1 error, 5 warnings"), std::string::npos);
    EXPECT_EQ(occurrences(html, "<div class=\"error\">"), 1U);
    EXPECT_EQ(occurrences(html, "<div class=\"warning\">"), 5U);

    DocumentSet clean;
    add_builtins(clean);
    EXPECT_NE(report_validation_html(clean, {}).find("0 errors, 0 warnings"), std::string::npos);
}

TEST(RenderSvg, AdderMatchesGolden) {
    const DocumentSet set = adder_set(2);
    EXPECT_EQ(render_circuit_svg(*set.resolve_circuit("adder2").entity, set),
              oracle::read_file(fixtures::root() / "golden" / "adder2.svg"));
}
