#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qisxml/error.hpp"
#include "qisxml/symexpr.hpp"

using namespace qisxml;
using std::numbers::pi;

namespace {

std::complex<double> ev(std::string_view src, const Bindings& b = {}, ParseMode mode = ParseMode::Strict) {
    return eval_expr(parse_expr(src, mode), b);
}

void expect_near(std::complex<double> got, std::complex<double> want) {
    EXPECT_NEAR(got.real(), want.real(), 1e-12);
    EXPECT_NEAR(got.imag(), want.imag(), 1e-12);
}

}  // namespace

TEST(Symexpr, InverseSquareRootOfTwo) { expect_near(ev("1/sqrt(2)"), 1.0 / std::sqrt(2.0)); }

TEST(Symexpr, ImplicitMultiplication) {
    const std::vector<double> thetas{0.0, pi / 7, pi / 2, 1.0, 2 * pi};
    for (double t : thetas) {
        expect_near(ev("i sin(θ)", {{"theta", t}}), std::complex<double>(0, std::sin(t)));
        expect_near(ev("cos(theta)", {{"theta", t}}), std::cos(t));
        expect_near(ev("e^(2πiθ)", {{"theta", t}}), std::exp(std::complex<double>(0, 2 * pi * t)));
    }
}

TEST(Symexpr, EntityEncodedGreek) {
    const std::string decoded = decode_entities("e^(2&#960;i&#952;)");
    EXPECT_EQ(decoded, "e^(2πiθ)");
    expect_near(ev(decoded, {{"theta", 0.25}}), std::complex<double>(0, 1));
}

TEST(Symexpr, LenientClosesOpenParentheses) {
    EXPECT_THROW(parse_expr("e^(2πiθ"), Error);
    expect_near(ev("e^(2πiθ", {{"theta", 0.5}}, ParseMode::Lenient), -1.0);
}

TEST(Symexpr, SyntaxErrorKind) {
    try {
        parse_expr("cos(");
        FAIL() << "expected a syntax error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
    }
    EXPECT_THROW(parse_expr("1 +"), Error);
    EXPECT_THROW(parse_expr(")"), Error);
}

TEST(Symexpr, UnboundParameter) {
    try {
        ev("cos(phi)");
        FAIL() << "expected UnboundParameter";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnboundParameter);
    }
}

TEST(Symexpr, Precedence) {
    expect_near(ev("1+2*3"), 7.0);
    expect_near(ev("-2^2"), -4.0);
    expect_near(ev("2^3^2"), 512.0);
    expect_near(ev("(1+i)/2"), std::complex<double>(0.5, 0.5));
    expect_near(ev("2 pi"), 2 * pi);
}

TEST(Symexpr, FreeParameters) {
    const auto params = free_parameters(parse_expr("cos(θ) + i sin(phi) * pi"));
    EXPECT_EQ(params, (std::set<std::string>{"theta", "phi"}));
}

TEST(Symexpr, ToStringRoundTrip) {
    for (const char* src : {"1/sqrt(2)", "i sin(θ)", "e^(2πiθ)", "-(1+i)/2", "2^3^2", "cos(theta)*cos(theta)"}) {
        const Expr e = parse_expr(src);
        EXPECT_EQ(parse_expr(to_string(e)), e) << src << " -> " << to_string(e);
    }
}

TEST(Symexpr, CanonicalNames) {
    EXPECT_EQ(canonical_parameter_name("θ"), "theta");
    EXPECT_EQ(canonical_parameter_name("phi"), "phi");
}

TEST(Symexpr, PythagoreanIdentityOnGrid) {
    for (int k = 0; k < 100; ++k) {
        const double t = 2 * pi * k / 100;
        const auto c = ev("cos(θ)", {{"theta", t}});
        const auto s = ev("sin(θ)", {{"theta", t}});
        EXPECT_LE(std::abs(c * c + s * s - 1.0), 1e-12) << t;
    }
}

TEST(Symexpr, LiteralsAreExact) {
    for (const char* lit : {"0", "1", "0.5", "0.707106781", "3.14159", "1e-3", "123456.789"}) {
        EXPECT_EQ(ev(lit), std::complex<double>(std::stod(lit), 0.0)) << lit;
    }
}
