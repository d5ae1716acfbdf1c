#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wordrep/error.hpp"

namespace wordrep {

// Truncated formal power series over GF(2).  coeffs[i] is the coefficient of
// z^i and the truncation order is coeffs.size(); every operation below keeps
// the order of its inputs and requires them to agree.
struct Gf2Series {
    std::vector<uint8_t> coeffs;

    std::size_t order() const { return coeffs.size(); }

    friend bool operator==(const Gf2Series&, const Gf2Series&) = default;
};

namespace detail {
inline void require_same_order(const Gf2Series& a, const Gf2Series& b) {
    if (a.order() != b.order())
        fail("OrderMismatch", "series truncation orders differ: " +
                                  std::to_string(a.order()) + " vs " +
                                  std::to_string(b.order()));
}
} // namespace detail

inline Gf2Series series_add(const Gf2Series& a, const Gf2Series& b) {
    detail::require_same_order(a, b);
    Gf2Series r = a;
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] ^= b.coeffs[i];
    return r;
}

inline Gf2Series series_mul(const Gf2Series& a, const Gf2Series& b) {
    detail::require_same_order(a, b);
    Gf2Series r;
    r.coeffs.assign(a.order(), 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (!a.coeffs[i]) continue;
        for (std::size_t j = 0; i + j < b.coeffs.size(); ++j)
            r.coeffs[i + j] ^= b.coeffs[j];
    }
    return r;
}

// How a series is described before expansion.  The verbatim source text is
// kept so cache keys and reports can echo exactly what the user wrote.
struct SeriesSpec {
    enum class Kind { polynomial, rational, catalan_g, catalan_f };

    Kind kind = Kind::polynomial;
    std::vector<uint8_t> num; // polynomial bits, or rational numerator
    std::vector<uint8_t> den; // rational denominator (empty otherwise)
    std::string text;

    static SeriesSpec polynomial(std::vector<uint8_t> bits, std::string text = "");
    static SeriesSpec rational(std::vector<uint8_t> num, std::vector<uint8_t> den,
                               std::string text = "");
    static SeriesSpec catalan_g();
    static SeriesSpec catalan_f();
};

namespace detail {
inline std::string bits_to_text(const std::vector<uint8_t>& bits) {
    std::string s;
    s.reserve(bits.size());
    for (uint8_t b : bits) s.push_back(b ? '1' : '0');
    return s;
}

inline std::vector<uint8_t> parse_bits(const std::string& s, const char* what) {
    if (s.empty())
        fail("SeriesSyntax", std::string("empty ") + what + " in series spec");
    std::vector<uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1')
            fail("SeriesSyntax", std::string("bad character '") + c + "' in " + what);
        bits.push_back(static_cast<uint8_t>(c - '0'));
    }
    return bits;
}
} // namespace detail

inline SeriesSpec SeriesSpec::polynomial(std::vector<uint8_t> bits, std::string text) {
    SeriesSpec s;
    s.kind = Kind::polynomial;
    s.num = std::move(bits);
    s.text = text.empty() ? detail::bits_to_text(s.num) : std::move(text);
    return s;
}

inline SeriesSpec SeriesSpec::rational(std::vector<uint8_t> num, std::vector<uint8_t> den,
                                       std::string text) {
    SeriesSpec s;
    s.kind = Kind::rational;
    s.num = std::move(num);
    s.den = std::move(den);
    s.text = text.empty() ? detail::bits_to_text(s.num) + "/" + detail::bits_to_text(s.den)
                          : std::move(text);
    return s;
}

inline SeriesSpec SeriesSpec::catalan_g() {
    SeriesSpec s;
    s.kind = Kind::catalan_g;
    s.text = "catalan_g";
    return s;
}

inline SeriesSpec SeriesSpec::catalan_f() {
    SeriesSpec s;
    s.kind = Kind::catalan_f;
    s.text = "catalan_f";
    return s;
}

// Text forms: "110" is 1 + z (bits by ascending power), "11/1001" is
// (1+z)/(1+z^3), and "catalan_g" / "catalan_f" (plain "catalan" means
// catalan_g) name the builtin Catalan pair.
inline SeriesSpec parse_series_spec(const std::string& text) {
    if (text == "catalan" || text == "catalan_g") {
        SeriesSpec s = SeriesSpec::catalan_g();
        s.text = text;
        return s;
    }
    if (text == "catalan_f") return SeriesSpec::catalan_f();
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return SeriesSpec::polynomial(detail::parse_bits(text, "polynomial"), text);
    if (text.find('/', slash + 1) != std::string::npos)
        fail("SeriesSyntax", "more than one '/' in series spec: " + text);
    return SeriesSpec::rational(detail::parse_bits(text.substr(0, slash), "numerator"),
                                detail::parse_bits(text.substr(slash + 1), "denominator"),
                                text);
}

namespace detail {
inline Gf2Series expand_catalan_g(std::size_t order) {
    // Fixed point of S = 1 + z*S^2.  Squaring is the Frobenius map over
    // GF(2), so each round at least doubles the agreeing prefix; the loop
    // terminates after about log2(order) rounds.
    Gf2Series s;
    s.coeffs.assign(order, 0);
    if (order > 0) s.coeffs[0] = 1;
    for (;;) {
        Gf2Series sq = series_mul(s, s);
        Gf2Series next;
        next.coeffs.assign(order, 0);
        if (order > 0) next.coeffs[0] = 1;
        for (std::size_t i = 1; i < order; ++i) next.coeffs[i] = sq.coeffs[i - 1];
        if (next == s) return s;
        s = std::move(next);
    }
}
} // namespace detail

inline Gf2Series expand(const SeriesSpec& spec, std::size_t order) {
    Gf2Series r;
    r.coeffs.assign(order, 0);
    switch (spec.kind) {
    case SeriesSpec::Kind::polynomial:
        for (std::size_t i = 0; i < order && i < spec.num.size(); ++i)
            r.coeffs[i] = spec.num[i];
        return r;
    case SeriesSpec::Kind::rational: {
        if (spec.den.empty() || spec.den[0] != 1)
            fail("RationalDenominatorNotUnit",
                 "rational series denominator must have constant term 1: " + spec.text);
        for (std::size_t i = 0; i < order; ++i) {
            uint8_t v = i < spec.num.size() ? spec.num[i] : 0;
            std::size_t deg = spec.den.size() - 1;
            for (std::size_t j = 1; j <= deg && j <= i; ++j)
                v ^= static_cast<uint8_t>(spec.den[j] & r.coeffs[i - j]);
            r.coeffs[i] = v;
        }
        return r;
    }
    case SeriesSpec::Kind::catalan_g:
        return detail::expand_catalan_g(order);
    case SeriesSpec::Kind::catalan_f: {
        Gf2Series c = detail::expand_catalan_g(order);
        for (std::size_t i = 1; i < order; ++i) r.coeffs[i] = c.coeffs[i - 1];
        return r;
    }
    }
    fail("SeriesSyntax", "unreachable series kind");
}

// g * f^j at the truncation order of g.  This is column j (0-indexed) of the
// binary Riordan matrix B(g, f); f must have zero constant term.
inline Gf2Series column_series(const Gf2Series& g, const Gf2Series& f, std::size_t j) {
    detail::require_same_order(g, f);
    if (!f.coeffs.empty() && f.coeffs[0] != 0)
        fail("FNotProper", "f must have constant term 0 to form Riordan columns");
    Gf2Series r = g;
    for (std::size_t t = 0; t < j; ++t) r = series_mul(r, f);
    return r;
}

} // namespace wordrep
