#include "contour/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace contour {

class ExprParser {
public:
    ExprParser(Expr& out, std::map<std::string, int>& names) : out_(out), names_(names) {}

    int parse_all(const std::string& text) {
        text_ = text;
        pos_ = 0;
        int r = expr();
        skip();
        if (pos_ != text_.size()) throw ExprSyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return r;
    }

private:
    Expr& out_;
    std::map<std::string, int>& names_;
    std::string text_;
    std::size_t pos_ = 0;

    int emit(Expr::Node n) {
        out_.tape_.push_back(n);
        return static_cast<int>(out_.tape_.size()) - 1;
    }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ExprSyntaxError(std::string("expected '") + c + "'", pos_);
    }

    int expr() {
        int l = term();
        for (;;) {
            if (eat('+')) l = emit({Expr::Op::Add, l, term()});
            else if (eat('-')) l = emit({Expr::Op::Sub, l, term()});
            else return l;
        }
    }
    int term() {
        int l = unary();
        for (;;) {
            if (eat('*')) l = emit({Expr::Op::Mul, l, unary()});
            else if (eat('/')) l = emit({Expr::Op::Div, l, unary()});
            else return l;
        }
    }
    int unary() {
        if (eat('-')) return emit({Expr::Op::Neg, unary()});
        return primary();
    }
    int primary() {
        skip();
        if (pos_ >= text_.size()) throw ExprSyntaxError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (eat('(')) {
            int r = expr();
            expect(')');
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) throw ExprSyntaxError("bad number", pos_);
            pos_ += static_cast<std::size_t>(end - begin);
            Expr::Node n{Expr::Op::Const};
            n.value = v;
            return emit(n);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            if (name == "sin" || name == "cos") {
                expect('(');
                int a = expr();
                expect(')');
                return emit({name == "sin" ? Expr::Op::Sin : Expr::Op::Cos, a});
            }
            if (name == "pow") {
                expect('(');
                int a = expr();
                expect(',');
                int b = expr();
                expect(')');
                return emit({Expr::Op::Pow, a, b});
            }
            if (auto it = names_.find(name); it != names_.end()) return it->second;
            throw ExprSyntaxError("unknown name '" + name + "'", start);
        }
        throw ExprSyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
    }
};

Expr Expr::parse(const std::string& text, const std::vector<std::pair<std::string, std::string>>& defs) {
    Expr e;
    e.source_ = text;
    std::map<std::string, int> names;
    ExprParser p(e, names);
    for (int k = 0; k < 3; ++k) {
        Node n{Op::Var};
        n.var = k;
        e.tape_.push_back(n);
        names[std::string(1, "uvw"[k])] = k;
    }
    for (const auto& [name, body] : defs) {
        if (names.count(name) || name == "sin" || name == "cos" || name == "pow")
            throw ExprSyntaxError("name '" + name + "' is reserved or defined twice", 0);
        names[name] = p.parse_all(body);
    }
    int root = p.parse_all(text);
    // The root must be the last slot so evaluation can return tape_.back().
    if (root != static_cast<int>(e.tape_.size()) - 1) e.tape_.push_back({Op::Add, root, -1});
    return e;
}

double Expr::eval(const Vec3& p) const { return eval_grad(p).value; }

Dual Expr::eval_grad(const Vec3& p) const {
    thread_local std::vector<Dual> s;
    s.assign(tape_.size(), Dual{});
    for (std::size_t i = 0; i < tape_.size(); ++i) {
        const Node& n = tape_[i];
        Dual& r = s[i];
        switch (n.op) {
            case Op::Const: r.value = n.value; break;
            case Op::Var:
                r.value = p[n.var];
                r.grad[n.var] = 1;
                break;
            case Op::Add:
                r = s[n.a];
                if (n.b >= 0) {
                    r.value += s[n.b].value;
                    for (int k = 0; k < 3; ++k) r.grad[k] += s[n.b].grad[k];
                }
                break;
            case Op::Sub:
                r.value = s[n.a].value - s[n.b].value;
                for (int k = 0; k < 3; ++k) r.grad[k] = s[n.a].grad[k] - s[n.b].grad[k];
                break;
            case Op::Mul:
                r.value = s[n.a].value * s[n.b].value;
                for (int k = 0; k < 3; ++k) r.grad[k] = s[n.a].grad[k] * s[n.b].value + s[n.a].value * s[n.b].grad[k];
                break;
            case Op::Div: {
                double q = s[n.b].value;
                r.value = s[n.a].value / q;
                for (int k = 0; k < 3; ++k) r.grad[k] = (s[n.a].grad[k] - r.value * s[n.b].grad[k]) / q;
                break;
            }
            case Op::Neg:
                r.value = -s[n.a].value;
                for (int k = 0; k < 3; ++k) r.grad[k] = -s[n.a].grad[k];
                break;
            case Op::Sin: {
                double c = std::cos(s[n.a].value);
                r.value = std::sin(s[n.a].value);
                for (int k = 0; k < 3; ++k) r.grad[k] = c * s[n.a].grad[k];
                break;
            }
            case Op::Cos: {
                double sn = std::sin(s[n.a].value);
                r.value = std::cos(s[n.a].value);
                for (int k = 0; k < 3; ++k) r.grad[k] = -sn * s[n.a].grad[k];
                break;
            }
            case Op::Pow: {
                const Dual& a = s[n.a];
                const Dual& b = s[n.b];
                r.value = std::pow(a.value, b.value);
                bool const_exp = b.grad[0] == 0 && b.grad[1] == 0 && b.grad[2] == 0;
                double da = const_exp ? (b.value == 0 ? 0 : b.value * std::pow(a.value, b.value - 1))
                                      : b.value * std::pow(a.value, b.value - 1);
                double db = const_exp ? 0 : r.value * std::log(a.value);
                for (int k = 0; k < 3; ++k) r.grad[k] = da * a.grad[k] + db * b.grad[k];
                break;
            }
        }
    }
    return s.back();
}

}  // namespace contour
