#include "tscmon/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "tscmon/catalog.hpp"

namespace tscmon {
namespace {

enum class Tok : std::uint8_t {
    Ident,
    Number,
    String,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Dot,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    Ne,
    Plus,
    Minus,
    Star,
    Slash,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;   // Ident / String payload
    double number = 0.0;
    SourceLoc loc;
};

// Thrown inside the parser, converted to a ParseError at the boundary.
struct ParseFailure {
    ParseError error;
};

[[noreturn]] void fail(SourceLoc loc, std::string message) {
    throw ParseFailure{ParseError{loc, std::move(message)}};
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_blanks();
        Token tok;
        tok.loc = loc();
        if (pos_ >= text_.size()) {
            tok.kind = Tok::End;
            return tok;
        }
        char c = text_[pos_];
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
            tok.kind = Tok::Ident;
            tok.text = std::string(text_.substr(start, pos_ - start));
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(tok);
        if (c == '"') return lex_string(tok);
        advance();
        switch (c) {
        case '{': tok.kind = Tok::LBrace; return tok;
        case '}': tok.kind = Tok::RBrace; return tok;
        case '(': tok.kind = Tok::LParen; return tok;
        case ')': tok.kind = Tok::RParen; return tok;
        case ';': tok.kind = Tok::Semi; return tok;
        case ':': tok.kind = Tok::Colon; return tok;
        case ',': tok.kind = Tok::Comma; return tok;
        case '.': tok.kind = Tok::Dot; return tok;
        case '+': tok.kind = Tok::Plus; return tok;
        case '-': tok.kind = Tok::Minus; return tok;
        case '*': tok.kind = Tok::Star; return tok;
        case '/': tok.kind = Tok::Slash; return tok;
        case '<':
            tok.kind = eat('=') ? Tok::Le : Tok::Lt;
            return tok;
        case '>':
            tok.kind = eat('=') ? Tok::Ge : Tok::Gt;
            return tok;
        case '=':
            if (eat('=')) {
                tok.kind = Tok::EqEq;
                return tok;
            }
            fail(tok.loc, "expected '==' (single '=' is not an operator)");
        case '!':
            if (eat('=')) {
                tok.kind = Tok::Ne;
                return tok;
            }
            fail(tok.loc, "expected '!='");
        default: break;
        }
        fail(tok.loc, std::string("unexpected character '") + c + "'");
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    SourceLoc loc() const { return {line_, col_}; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    bool eat(char expected) {
        if (pos_ < text_.size() && text_[pos_] == expected) {
            advance();
            return true;
        }
        return false;
    }

    void skip_blanks() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token lex_number(Token tok) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        if (pos_ < text_.size() && text_[pos_] == '.' && pos_ + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            advance();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark_pos = pos_;
            int mark_line = line_, mark_col = col_;
            advance();
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
            } else {
                // not an exponent after all ("45s" style suffix follows)
                pos_ = mark_pos;
                line_ = mark_line;
                col_ = mark_col;
            }
        }
        std::string_view digits = text_.substr(start, pos_ - start);
        double value = 0.0;
        auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (res.ec != std::errc() || res.ptr != digits.data() + digits.size())
            fail(tok.loc, "malformed number literal");
        tok.kind = Tok::Number;
        tok.number = value;
        return tok;
    }

    Token lex_string(Token tok) {
        advance(); // opening quote
        std::string out;
        while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
            out.push_back(text_[pos_]);
            advance();
        }
        if (pos_ >= text_.size() || text_[pos_] != '"') fail(tok.loc, "unterminated string");
        advance(); // closing quote
        tok.kind = Tok::String;
        tok.text = std::move(out);
        return tok;
    }
};

bool is_identifier(std::string_view s) {
    if (s.empty() || !ident_start(s[0])) return false;
    for (char c : s)
        if (!ident_char(c)) return false;
    return true;
}

class Parser {
  public:
    explicit Parser(std::string_view text) : lexer_(text) { bump(); }

    TscSpec parse_spec() {
        TscSpec spec;
        expect_keyword("tsc");
        Token name = expect(Tok::String, "spec name string");
        if (!is_identifier(name.text))
            fail(name.loc, "spec name must be an identifier");
        spec.name = name.text;
        expect(Tok::LBrace, "'{'");
        spec.header = parse_header();
        parse_chart(spec);
        expect(Tok::RBrace, "'}'");
        expect(Tok::End, "end of input");
        return spec;
    }

  private:
    Lexer lexer_;
    Token cur_;
    Token ahead_;
    bool has_ahead_ = false;
    const AttributeCatalog& catalog_ = AttributeCatalog::standard();

    void bump() {
        if (has_ahead_) {
            cur_ = std::move(ahead_);
            has_ahead_ = false;
        } else {
            cur_ = lexer_.next();
        }
    }

    const Token& peek() {
        if (!has_ahead_) {
            ahead_ = lexer_.next();
            has_ahead_ = true;
        }
        return ahead_;
    }

    bool at(Tok k) const { return cur_.kind == k; }

    bool at_keyword(std::string_view kw) const { return cur_.kind == Tok::Ident && cur_.text == kw; }

    Token expect(Tok k, const char* what) {
        if (cur_.kind != k) fail(cur_.loc, std::string("expected ") + what);
        Token tok = std::move(cur_);
        bump();
        return tok;
    }

    void expect_keyword(const char* kw) {
        if (!at_keyword(kw)) fail(cur_.loc, std::string("expected '") + kw + "'");
        bump();
    }

    Header parse_header() {
        Header header;
        expect_keyword("activation");
        expect(Tok::Colon, "':'");
        Token act = expect(Tok::Ident, "activation mode");
        if (act.text != "initial")
            fail(act.loc, "unsupported activation mode '" + act.text + "' (only 'initial' is accepted)");
        expect(Tok::Semi, "';'");
        expect_keyword("quantifier");
        expect(Tok::Colon, "':'");
        Token quant = expect(Tok::Ident, "time quantification");
        if (quant.text != "exists")
            fail(quant.loc, "unsupported time quantification '" + quant.text + "' (only 'exists' is accepted)");
        expect(Tok::Semi, "';'");
        if (at_keyword("hourglass")) {
            bump();
            expect(Tok::Colon, "':'");
            HourglassBound hg;
            if (at(Tok::Lt)) {
                hg.comparator = BoundCmp::LessThan;
            } else if (at(Tok::Le)) {
                hg.comparator = BoundCmp::LessOrEqual;
            } else {
                fail(cur_.loc, "expected '<' or '<=' in hourglass bound");
            }
            bump();
            bool negative = false;
            if (at(Tok::Minus)) { // tolerated syntactically, rejected on value
                negative = true;
                bump();
            }
            Token num = expect(Tok::Number, "number");
            hg.bound = negative ? -num.number : num.number;
            Token unit = expect(Tok::Ident, "'s' unit suffix");
            if (unit.text != "s") fail(unit.loc, "hourglass bound must carry the 's' unit suffix");
            if (!(hg.bound > 0.0)) fail(num.loc, "bound must be positive");
            expect(Tok::Semi, "';'");
            header.hourglass = hg;
        }
        return header;
    }

    void parse_chart(TscSpec& spec) {
        expect_keyword("sequence");
        expect(Tok::LBrace, "'{'");
        do {
            spec.views.push_back(parse_view(static_cast<int>(spec.views.size()) + 1));
        } while (at_keyword("view"));
        expect(Tok::RBrace, "'}'");
    }

    SpatialView parse_view(int index) {
        SpatialView view;
        view.index = index;
        expect_keyword("view");
        view.id = expect(Tok::Ident, "view identifier").text;
        expect(Tok::LBrace, "'{'");
        do {
            view.constraints.push_back(parse_constraint());
        } while (!at(Tok::RBrace));
        expect(Tok::RBrace, "'}'");
        return view;
    }

    Constraint parse_constraint() {
        Constraint c;
        c.lhs = parse_expr();
        switch (cur_.kind) {
        case Tok::Lt: c.op = RelOp::Lt; break;
        case Tok::Le: c.op = RelOp::Le; break;
        case Tok::Gt: c.op = RelOp::Gt; break;
        case Tok::Ge: c.op = RelOp::Ge; break;
        case Tok::EqEq: c.op = RelOp::Eq; break;
        case Tok::Ne: c.op = RelOp::Ne; break;
        default: fail(cur_.loc, "expected a comparison operator");
        }
        bump();
        c.rhs = parse_expr();
        expect(Tok::Semi, "';'");
        return c;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            ExprKind op = at(Tok::Plus) ? ExprKind::Add : ExprKind::Sub;
            bump();
            lhs = Expr::binary(op, std::move(lhs), parse_term());
        }
        return lhs;
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        while (at(Tok::Star) || at(Tok::Slash)) {
            ExprKind op = at(Tok::Star) ? ExprKind::Mul : ExprKind::Div;
            bump();
            lhs = Expr::binary(op, std::move(lhs), parse_factor());
        }
        return lhs;
    }

    Expr parse_factor() {
        if (at(Tok::Number)) {
            Expr e = Expr::num(cur_.number);
            bump();
            return e;
        }
        if (at(Tok::Minus)) {
            bump();
            return Expr::neg(parse_factor());
        }
        if (at(Tok::LParen)) {
            bump();
            Expr e = parse_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (at(Tok::Ident)) {
            Token head = std::move(cur_);
            bump();
            if (at(Tok::Dot)) {
                bump();
                Token attr = expect(Tok::Ident, "attribute name");
                if (!catalog_.has_attribute(attr.text))
                    fail(attr.loc, "unknown attribute '" + attr.text + "'");
                return Expr::attr(head.text, attr.text);
            }
            if (at(Tok::LParen)) return parse_call(head);
            fail(head.loc, "expected '.' or '(' after identifier '" + head.text + "'");
        }
        fail(cur_.loc, "expected an expression");
    }

    Expr parse_call(const Token& name) {
        if (!catalog_.find_builtin(name.text))
            fail(name.loc, "unknown builtin '" + name.text + "'");
        expect(Tok::LParen, "'('");
        std::vector<Expr> args;
        if (!at(Tok::RParen)) {
            args.push_back(parse_arg());
            while (at(Tok::Comma)) {
                bump();
                args.push_back(parse_arg());
            }
        }
        expect(Tok::RParen, "')'");
        return Expr::call(name.text, std::move(args));
    }

    // A bare identifier directly followed by ',' or ')' is an object
    // reference; anything else is an expression.
    Expr parse_arg() {
        if (at(Tok::Ident)) {
            Tok follow = peek().kind;
            if (follow == Tok::Comma || follow == Tok::RParen) {
                Expr e = Expr::role_ref(cur_.text);
                bump();
                return e;
            }
        }
        return parse_expr();
    }
};

} // namespace

std::variant<TscSpec, ParseError> parse_tsc(std::string_view text) {
    try {
        Parser parser(text);
        return parser.parse_spec();
    } catch (const ParseFailure& f) {
        return f.error;
    }
}

} // namespace tscmon
