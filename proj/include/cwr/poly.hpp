#pragma once

// Exact sparse bivariate polynomials over the integers in the variables
// w and r.  These carry every edge weight and invariant value in the
// library.  Values are immutable in spirit: all operations return new
// polynomials, so sharing across threads is safe.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace cwr {

// Exponent pair of a monomial: w^wexp * r^rexp.
struct Monomial {
    int wexp = 0;
    int rexp = 0;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Canonical display order: descending total degree, ties broken by
// descending r-exponent (the order used for rendering, e.g. "2r^2w + w^3").
struct MonomialOrder {
    bool operator()(const Monomial& x, const Monomial& y) const {
        const int dx = x.wexp + x.rexp, dy = y.wexp + y.rexp;
        if (dx != dy) return dx > dy;
        return x.rexp > y.rexp;
    }
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("polynomial coefficient overflow in add");
    return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("polynomial coefficient overflow in mul");
    return out;
}

class BivarPoly {
public:
    using TermMap = std::map<Monomial, std::int64_t, MonomialOrder>;

    BivarPoly() = default;

    static BivarPoly zero() { return {}; }
    static BivarPoly constant(std::int64_t c) { return monomial(0, 0, c); }
    static BivarPoly w() { return monomial(1, 0, 1); }
    static BivarPoly r() { return monomial(0, 1, 1); }

    static BivarPoly monomial(int wexp, int rexp, std::int64_t coeff) {
        BivarPoly p;
        if (coeff != 0) p.terms_[{wexp, rexp}] = coeff;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    std::int64_t coeff(int wexp, int rexp) const {
        auto it = terms_.find({wexp, rexp});
        return it == terms_.end() ? 0 : it->second;
    }

    // True when the polynomial is a single monomial with coefficient 1
    // (the shape of every edge weight).
    bool is_unit_monomial() const {
        return terms_.size() == 1 && terms_.begin()->second == 1;
    }

    friend BivarPoly operator+(const BivarPoly& p, const BivarPoly& q) {
        BivarPoly out = p;
        for (const auto& [m, c] : q.terms_) out.bump(m, c);
        return out;
    }

    friend BivarPoly operator-(const BivarPoly& p, const BivarPoly& q) {
        BivarPoly out = p;
        for (const auto& [m, c] : q.terms_) out.bump(m, checked_mul(c, -1));
        return out;
    }

    friend BivarPoly operator*(const BivarPoly& p, const BivarPoly& q) {
        BivarPoly out;
        for (const auto& [mp, cp] : p.terms_)
            for (const auto& [mq, cq] : q.terms_)
                out.bump({mp.wexp + mq.wexp, mp.rexp + mq.rexp}, checked_mul(cp, cq));
        return out;
    }

    friend bool operator==(const BivarPoly& p, const BivarPoly& q) {
        return p.terms_ == q.terms_;
    }

    // Exact division by a positive integer; the quotient must be exact.
    BivarPoly divided_exact(std::int64_t d) const {
        BivarPoly out;
        for (const auto& [m, c] : terms_) {
            if (c % d != 0)
                throw std::logic_error("inexact polynomial division by " + std::to_string(d));
            out.terms_[m] = c / d;
        }
        return out;
    }

    std::int64_t evaluate(std::int64_t wv, std::int64_t rv) const {
        std::int64_t total = 0;
        for (const auto& [m, c] : terms_) {
            std::int64_t t = c;
            for (int i = 0; i < m.wexp; ++i) t = checked_mul(t, wv);
            for (int i = 0; i < m.rexp; ++i) t = checked_mul(t, rv);
            total = checked_add(total, t);
        }
        return total;
    }

private:
    void bump(const Monomial& m, std::int64_t c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_[m] = c;
            return;
        }
        it->second = checked_add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }

    TermMap terms_;
};

inline BivarPoly add(const BivarPoly& p, const BivarPoly& q) { return p + q; }
inline BivarPoly mul(const BivarPoly& p, const BivarPoly& q) { return p * q; }

// w <-> r in every term; an involution.
inline BivarPoly swap_vars(const BivarPoly& p) {
    BivarPoly out;
    for (const auto& [m, c] : p.terms())
        out = out + BivarPoly::monomial(m.rexp, m.wexp, c);
    return out;
}

// p(w, r) -> p(w^2, r^2).
inline BivarPoly substitute_squares(const BivarPoly& p) {
    BivarPoly out;
    for (const auto& [m, c] : p.terms())
        out = out + BivarPoly::monomial(2 * m.wexp, 2 * m.rexp, c);
    return out;
}

enum class Var { w, r };

// Formal partial derivative with respect to `var`, then both variables
// evaluated at 1.  For CB2-style polynomials this reads off crossing counts.
inline std::int64_t partial_eval_deriv(const BivarPoly& p, Var var) {
    std::int64_t total = 0;
    for (const auto& [m, c] : p.terms()) {
        const int e = var == Var::w ? m.wexp : m.rexp;
        total = checked_add(total, checked_mul(c, e));
    }
    return total;
}

// --- text form --------------------------------------------------------------
//
// poly := "0" | term (("+" | "-") term)*
// term := [int] [factor] [factor]     factor := ("w" | "r") ["^" int]
// Whitespace-insensitive; factors may appear in either order.  Rendering
// emits terms in canonical order with the r factor first ("2r^2w + w^3").

inline std::string render_poly(const BivarPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const std::int64_t a = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        const bool has_var = m.wexp > 0 || m.rexp > 0;
        if (a != 1 || !has_var) out += std::to_string(a);
        if (m.rexp == 1) out += "r";
        else if (m.rexp > 1) out += "r^" + std::to_string(m.rexp);
        if (m.wexp == 1) out += "w";
        else if (m.wexp > 1) out += "w^" + std::to_string(m.wexp);
    }
    return out;
}

class PolyParseError : public std::runtime_error {
public:
    explicit PolyParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline std::int64_t parse_int(const std::string& s, size_t& i) {
    size_t start = i;
    std::int64_t v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        v = checked_add(checked_mul(v, 10), s[i] - '0');
        ++i;
    }
    if (i == start) throw PolyParseError("expected integer at \"" + s.substr(start) + "\"");
    return v;
}

}  // namespace detail

inline BivarPoly parse_poly(const std::string& text) {
    BivarPoly out;
    size_t i = 0;
    detail::skip_ws(text, i);
    if (i >= text.size())
        throw PolyParseError("empty polynomial text");
    bool first = true;
    while (i < text.size()) {
        std::int64_t sign = 1;
        if (!first) {
            if (text[i] == '+') ++i;
            else if (text[i] == '-') { sign = -1; ++i; }
            else throw PolyParseError("expected '+' or '-' at \"" + text.substr(i) + "\"");
            detail::skip_ws(text, i);
        } else if (text[i] == '-') {
            sign = -1;
            ++i;
            detail::skip_ws(text, i);
        }
        first = false;
        std::int64_t coeff = 1;
        bool saw_any = false;
        if (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            coeff = detail::parse_int(text, i);
            saw_any = true;
        }
        int wexp = 0, rexp = 0;
        detail::skip_ws(text, i);
        while (i < text.size() && (text[i] == 'w' || text[i] == 'r')) {
            const char v = text[i++];
            std::int64_t e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                e = detail::parse_int(text, i);
            }
            if (v == 'w') wexp += static_cast<int>(e);
            else rexp += static_cast<int>(e);
            saw_any = true;
            detail::skip_ws(text, i);
        }
        if (!saw_any)
            throw PolyParseError("malformed term at \"" + text.substr(i) + "\"");
        if (!(coeff == 0 && wexp == 0 && rexp == 0))
            out = out + BivarPoly::monomial(wexp, rexp, checked_mul(sign, coeff));
        detail::skip_ws(text, i);
    }
    return out;
}

}  // namespace cwr
