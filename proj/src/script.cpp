// Move-script language.
//
//   script  := line*
//   line    := blank* [move] blank* [comment] newline
//   move    := kind (blank+ field)*
//   field   := "variant=" key | "anchors=" id ("," id)*
//   key     := id, where commas are allowed inside braces: III_1^{0,a}
//   comment := "#" any*
//
// Each field may appear at most once; anchors are required. A variant may be
// omitted only for the removal kinds, which read it off the diagram.

#include <cctype>

#include "contour/moves.hpp"

namespace contour {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    MoveScript script() {
        MoveScript out;
        while (!at_end()) {
            skip_blanks();
            if (peek() == '#') skip_comment();
            if (!at_end() && peek() != '\n') {
                out.push_back(move());
                skip_blanks();
                if (peek() == '#') skip_comment();
                if (!at_end() && peek() != '\n') fail("expected end of line");
            }
            if (!at_end()) advance();
        }
        return out;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ScriptSyntaxError(line_, col_, what); }

    static bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }
    static bool is_word(char c) {
        return c != '\0' && c != '\n' && c != '#' && c != ',' && c != '=' && !is_blank(c);
    }
    void skip_blanks() {
        while (!at_end() && is_blank(peek())) advance();
    }
    void skip_comment() {
        while (!at_end() && peek() != '\n') advance();
    }

    std::string word(const char* what) {
        std::string w;
        while (is_word(peek())) {
            w += peek();
            advance();
        }
        if (w.empty()) fail(std::string("expected ") + what);
        return w;
    }

    std::string key() {
        std::string w;
        int depth = 0;
        while (is_word(peek()) || (depth > 0 && peek() == ',')) {
            if (peek() == '{') ++depth;
            if (peek() == '}') --depth;
            w += peek();
            advance();
        }
        if (w.empty()) fail("expected variant key");
        if (depth != 0) fail("unbalanced braces in variant key");
        return w;
    }

    MoveSite move() {
        const std::size_t kl = line_, kc = col_;
        const std::string name = word("move kind");
        auto kind = parse_move_kind(name);
        if (!kind) throw ScriptSyntaxError(kl, kc, "unknown move kind '" + name + "'");
        MoveSite s{*kind, {}, ""};
        bool have_variant = false, have_anchors = false;
        while (true) {
            const bool spaced = is_blank(peek());
            skip_blanks();
            if (at_end() || peek() == '\n' || peek() == '#') break;
            if (!spaced) fail("expected whitespace before field");
            const std::size_t fl = line_, fc = col_;
            const std::string field = word("field name");
            if (peek() != '=') fail("expected '=' after '" + field + "'");
            advance();
            if (field == "variant") {
                if (have_variant) throw ScriptSyntaxError(fl, fc, "duplicate variant field");
                have_variant = true;
                s.variant = key();
            } else if (field == "anchors") {
                if (have_anchors) throw ScriptSyntaxError(fl, fc, "duplicate anchors field");
                have_anchors = true;
                s.anchors.push_back(word("anchor id"));
                while (peek() == ',') {
                    advance();
                    s.anchors.push_back(word("anchor id"));
                }
            } else {
                throw ScriptSyntaxError(fl, fc, "unknown field '" + field + "'");
            }
        }
        if (!have_anchors) throw ScriptSyntaxError(kl, kc, "move has no anchors field");
        if (!have_variant && *kind != MoveKind::SwallowtailRemove && *kind != MoveKind::LipsRemove)
            throw ScriptSyntaxError(kl, kc, to_string(*kind) + " needs a variant field");
        return s;
    }
};

}  // namespace

MoveScript parse_script(const std::string& text) { return Parser(text).script(); }

std::string print_site(const MoveSite& site) {
    std::string out = to_string(site.kind);
    if (!site.variant.empty()) out += " variant=" + site.variant;
    out += " anchors=";
    for (std::size_t i = 0; i < site.anchors.size(); ++i) out += (i ? "," : "") + site.anchors[i];
    return out;
}

std::string print_script(const MoveScript& script) {
    std::string out;
    for (const auto& s : script) out += print_site(s) + "\n";
    return out;
}

}  // namespace contour
