#include "nambu/parser.hpp"

#include <cctype>

namespace nambu {

namespace {

class Parser {
public:
    Parser(const std::string& input, const Signature& sig) : in_(input), sig_(sig) {}

    Element run() {
        Element e = expr();
        skip_ws();
        if (pos_ != in_.size()) throw ParseError("trailing input", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < in_.size() ? in_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    Element expr() {
        bool neg = eat('-');
        Element acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Element term() {
        Element acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Element factor() {
        Element base = atom();
        if (eat('^')) {
            std::size_t at = pos_;
            skip_ws();
            if (pos_ >= in_.size() || !std::isdigit(static_cast<unsigned char>(in_[pos_])))
                throw ParseError("expected exponent", at);
            long e = 0;
            while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_])))
                e = e * 10 + (in_[pos_++] - '0');
            Element pw = Element::one(base.signature());
            for (long i = 0; i < e && !pw.is_zero(); ++i) pw = pw * base;
            return pw;
        }
        return base;
    }

    Element atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Element e = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_atom();
        if (std::isalpha(static_cast<unsigned char>(c))) return variable_atom();
        throw ParseError("expected rational, variable or '('", pos_);
    }

    Element rational_atom() {
        std::size_t start = pos_;
        auto digits = [&]() {
            std::string s;
            while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_])))
                s += in_[pos_++];
            return s;
        };
        std::string num = digits();
        std::string text = num;
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < in_.size() && in_[pos_] == '/') {
            ++pos_;
            skip_ws();
            std::string den = digits();
            if (den.empty()) throw ParseError("expected denominator", pos_);
            text += "/" + den;
        } else {
            pos_ = save;
        }
        try {
            return Element::constant(sig_, Rational::parse(text));
        } catch (const std::exception& e) {
            throw ParseError(e.what(), start);
        }
    }

    Element variable_atom() {
        std::size_t start = pos_;
        std::string name;
        while (pos_ < in_.size() && std::isalpha(static_cast<unsigned char>(in_[pos_])))
            name += in_[pos_++];
        std::string index;
        while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_])))
            index += in_[pos_++];
        if (name == "tau" && index.empty()) {
            if (!sig_.has_tau) throw ParseError("unknown variable 'tau' (signature has no tau)", start);
            return Element::tau(sig_);
        }
        if (index.empty()) throw ParseError("unknown variable '" + name + "'", start);
        if (index.size() > 6) throw ParseError("variable index out of range", start);
        int i = std::stoi(index);
        if (name == "x") {
            if (i < 1 || i > sig_.even_count)
                throw ParseError("unknown variable 'x" + index + "'", start);
            return Element::x(sig_, i);
        }
        if (name == "xi") {
            if (i < 1 || i > sig_.odd_total())
                throw ParseError("unknown variable 'xi" + index + "'", start);
            return Element::xi(sig_, i);
        }
        throw ParseError("unknown variable '" + name + index + "'", start);
    }

    const std::string& in_;
    Signature sig_;
    std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(const std::string& input, const Signature& sig) {
    return Parser(input, sig).run();
}

}  // namespace nambu
