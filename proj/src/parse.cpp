#include "vflab/parse.hpp"

#include <cctype>

namespace vflab {

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    std::size_t column() const { return pos + 1; }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    mpz_class integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer", column());
        return mpz_class(text.substr(start, pos - start));
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= text.size() || !std::islower(static_cast<unsigned char>(text[pos])))
            throw ParseError("expected variable", column());
        ++pos;
        while (pos < text.size() &&
               (std::islower(static_cast<unsigned char>(text[pos])) ||
                std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }
};

// Generic recursive-descent parser producing either a Polynomial or a
// WeylOperator, depending on the atom handler.
template <typename Value, typename AtomFn>
Value parse_expression(Lexer& lx, const AtomFn& atom, const Value& zero);

template <typename Value, typename AtomFn>
Value parse_factor(Lexer& lx, const AtomFn& atom, const Value& zero) {
    Value base = zero;
    char c = lx.peek();
    if (c == '(') {
        lx.accept('(');
        base = parse_expression(lx, atom, zero);
        if (!lx.accept(')')) throw ParseError("expected ')'", lx.column());
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
        mpz_class num = lx.integer();
        if (lx.accept('/')) {
            std::size_t col = lx.column();
            mpz_class den = lx.integer();
            if (den == 0) throw ParseError("zero denominator", col);
            mpq_class q(num);
            q /= mpq_class(den);
            base = atom.constant(Rational(q));
        } else {
            base = atom.constant(Rational(mpq_class(num)));
        }
    } else if (std::islower(static_cast<unsigned char>(c))) {
        std::size_t col = lx.column();
        base = atom.symbol(lx.identifier(), col);
    } else {
        throw ParseError("expected coefficient, variable or '('", lx.column());
    }
    if (lx.accept('^')) {
        std::size_t col = lx.column();
        mpz_class e = lx.integer();
        if (e < 0 || e > 64) throw ParseError("exponent out of range", col);
        unsigned k = static_cast<unsigned>(e.get_ui());
        Value r = atom.one();
        for (unsigned i = 0; i < k; ++i) r = r * base;
        return r;
    }
    return base;
}

template <typename Value, typename AtomFn>
Value parse_term(Lexer& lx, const AtomFn& atom, const Value& zero) {
    Value v = parse_factor(lx, atom, zero);
    while (lx.peek() == '*') {
        lx.accept('*');
        v = v * parse_factor(lx, atom, zero);
    }
    return v;
}

template <typename Value, typename AtomFn>
Value parse_expression(Lexer& lx, const AtomFn& atom, const Value& zero) {
    bool negate = false;
    if (lx.peek() == '-') {
        lx.accept('-');
        negate = true;
    } else if (lx.peek() == '+') {
        lx.accept('+');
    }
    Value v = parse_term(lx, atom, zero);
    if (negate) v = zero - v;
    while (true) {
        char c = lx.peek();
        if (c == '+') {
            lx.accept('+');
            v += parse_term(lx, atom, zero);
        } else if (c == '-') {
            lx.accept('-');
            v -= parse_term(lx, atom, zero);
        } else {
            break;
        }
    }
    return v;
}

struct PolyAtoms {
    const VarSet& vars;

    Polynomial constant(const Rational& c) const { return Polynomial::constant(vars, c); }
    Polynomial one() const { return Polynomial::constant(vars, Rational(1)); }
    Polynomial symbol(const std::string& name, std::size_t col) const {
        auto idx = vars.index_of(name);
        if (!idx) throw ParseError("unknown variable '" + name + "'", col);
        return Polynomial::variable(vars, *idx);
    }
};

struct WeylAtoms {
    const WeylContext& ctx;

    WeylOperator constant(const Rational& c) const { return WeylOperator::one(ctx) * c; }
    WeylOperator one() const { return WeylOperator::one(ctx); }
    WeylOperator symbol(const std::string& name, std::size_t col) const {
        if (auto idx = ctx.coeff_vars().index_of(name)) {
            return WeylOperator::coefficient(ctx,
                                             Polynomial::variable(ctx.coeff_vars(), *idx));
        }
        if (name.size() > 1 && name[0] == 'd') {
            if (auto idx = ctx.vars().index_of(name.substr(1)))
                return WeylOperator::derivative(ctx, *idx);
        }
        throw ParseError("unknown symbol '" + name + "'", col);
    }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const VarSet& vars) {
    Lexer lx{text};
    Polynomial p = parse_expression(lx, PolyAtoms{vars}, Polynomial(vars));
    if (!lx.done()) throw ParseError("unexpected trailing input", lx.column());
    return p;
}

std::vector<std::string> scan_variables(const std::string& text) {
    std::vector<std::string> names;
    Lexer lx{text};
    while (!lx.done()) {
        char c = lx.peek();
        if (std::islower(static_cast<unsigned char>(c))) {
            std::string id = lx.identifier();
            bool known = false;
            for (const auto& n : names) known |= (n == id);
            if (!known) names.push_back(id);
        } else {
            ++lx.pos;
        }
    }
    return names;
}

Polynomial parse_polynomial_auto(const std::string& text,
                                 const std::vector<std::string>& preferred) {
    std::vector<std::string> names = preferred;
    for (const auto& n : scan_variables(text)) {
        bool known = false;
        for (const auto& k : names) known |= (k == n);
        if (!known) names.push_back(n);
    }
    return parse_polynomial(text, VarSet(names));
}

WeylOperator parse_weyl_operator(const std::string& text, const WeylContext& ctx) {
    Lexer lx{text};
    WeylOperator w = parse_expression(lx, WeylAtoms{ctx}, WeylOperator::zero(ctx));
    if (!lx.done()) throw ParseError("unexpected trailing input", lx.column());
    return w;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
        // trim
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
            item.erase(item.begin());
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
            item.pop_back();
        auto r = Rational::parse(item);
        if (!r) throw ParseError("bad rational '" + item + "'", start + 1);
        out.push_back(*r);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
    std::vector<unsigned> out;
    for (const auto& r : parse_rational_list(text)) {
        if (!r.is_integer() || r.sign() < 0)
            throw ParseError("expected non-negative integer list", 1);
        out.push_back(static_cast<unsigned>(r.num().get_ui()));
    }
    return out;
}

}  // namespace vflab
